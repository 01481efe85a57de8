//! Text grammar: `{a,b|c,d}`, dyadic literals, `*`, `*n`, `^`, `v`, sums
//! and negation. Braces build forms verbatim; literals and sums come out
//! canonical.

use super::{Dyadic, Game};
use crate::error::{Error, Result};
use crate::text::Cursor;

pub fn parse_game(text: &str) -> Result<Game> {
    let mut c = Cursor::new(text);
    let g = expr(&mut c)?;
    c.skip_ws();
    if !c.at_end() {
        return Err(c.error("unexpected trailing input"));
    }
    Ok(g)
}

fn expr(c: &mut Cursor) -> Result<Game> {
    c.skip_ws();
    let mut acc = if c.eat('-') {
        term(c)?.neg()
    } else {
        term(c)?
    };
    loop {
        c.skip_ws();
        if c.eat('+') {
            acc = acc.add(term(c)?).canonical();
        } else if c.peek() == Some('-') {
            c.bump();
            acc = acc.sub(term(c)?).canonical();
        } else {
            return Ok(acc);
        }
    }
}

fn term(c: &mut Cursor) -> Result<Game> {
    c.skip_ws();
    match c.peek() {
        Some('{') => braces(c),
        Some('(') => {
            c.bump();
            let g = expr(c)?;
            c.skip_ws();
            c.expect(')')?;
            Ok(g)
        }
        Some('-') => {
            c.bump();
            Ok(term(c)?.neg())
        }
        Some(ch) if ch.is_ascii_digit() || "*^v↑↓".contains(ch) => literal(c),
        Some(ch) => Err(c.error(format!("unexpected character {ch:?}"))),
        None => Err(c.error("unexpected end of input")),
    }
}

fn literal(c: &mut Cursor) -> Result<Game> {
    let start = c.pos();
    let mut value = Game::zero();
    if c.peek().is_some_and(|ch| ch.is_ascii_digit()) {
        let text = c.take_while(|ch| ch.is_ascii_digit() || ch == '/' || ch == '.');
        let d: Dyadic = text
            .parse()
            .map_err(|_| Error::parse(start, format!("bad number {text:?}")))?;
        value = Game::number(d);
    }
    let mut ups: i64 = 0;
    while let Some(ch) = c.peek() {
        match ch {
            '^' | '↑' => ups += 1,
            'v' | '↓' => ups -= 1,
            _ => break,
        }
        c.bump();
    }
    let unit = if ups >= 0 { Game::up() } else { Game::down() };
    for _ in 0..ups.unsigned_abs() {
        value = value.add(unit);
    }
    if c.eat('*') {
        let digits = c.take_while(|ch| ch.is_ascii_digit());
        let n: u32 = if digits.is_empty() {
            1
        } else {
            digits
                .parse()
                .map_err(|_| Error::parse(start, "bad nimber index"))?
        };
        value = value.add(Game::nimber(n));
    }
    if c.pos() == start {
        return Err(c.error("expected a literal"));
    }
    Ok(value.canonical())
}

enum Item {
    Elem(Game),
    Bars(usize),
}

fn braces(c: &mut Cursor) -> Result<Game> {
    let open = c.pos();
    c.expect('{')?;
    let mut items = Vec::new();
    loop {
        c.skip_ws();
        match c.peek() {
            Some('}') => {
                c.bump();
                break;
            }
            Some('|') => {
                let run = c.take_while(|ch| ch == '|');
                items.push(Item::Bars(run.len()));
            }
            Some(',') => {
                c.bump();
            }
            None => return Err(Error::parse(open, "unclosed brace")),
            _ => items.push(Item::Elem(expr(c)?)),
        }
    }
    build(&items).map_err(|m| Error::parse(open, m))
}

fn build(items: &[Item]) -> std::result::Result<Game, String> {
    let max = items
        .iter()
        .filter_map(|i| match i {
            Item::Bars(k) => Some(*k),
            _ => None,
        })
        .max()
        .ok_or("missing '|' separator")?;
    let splits: Vec<usize> = items
        .iter()
        .enumerate()
        .filter(|(_, i)| matches!(i, Item::Bars(k) if *k == max))
        .map(|(ix, _)| ix)
        .collect();
    if splits.len() != 1 {
        return Err(format!("ambiguous separator of width {max}"));
    }
    let (l, r) = (&items[..splits[0]], &items[splits[0] + 1..]);
    Ok(Game::new(side(l)?, side(r)?))
}

fn side(items: &[Item]) -> std::result::Result<Vec<Game>, String> {
    if items.iter().any(|i| matches!(i, Item::Bars(_))) {
        return Ok(vec![build(items)?]);
    }
    Ok(items
        .iter()
        .map(|i| match i {
            Item::Elem(g) => *g,
            Item::Bars(_) => unreachable!(),
        })
        .collect())
}

impl std::str::FromStr for Game {
    type Err = Error;
    fn from_str(s: &str) -> Result<Game> {
        parse_game(s)
    }
}
