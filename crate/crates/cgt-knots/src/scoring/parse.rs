//! Text grammar for scoring games: `<a,b|c,d>` with integer leaves, `*`,
//! `n*`, stacked bars `<2|2||1|3>`, sums, negation and the operator
//! functions `cool`, `oplus`, `odot`, `join`, `meet`, `delta`, `clamp01`.

use super::SGame;
use crate::error::{Error, Result};
use crate::extensions;
use crate::text::Cursor;

pub fn parse_scoring(text: &str) -> Result<SGame> {
    let mut c = Cursor::new(text);
    let g = expr(&mut c)?;
    c.skip_ws();
    if !c.at_end() {
        return Err(c.error("unexpected trailing input"));
    }
    Ok(g)
}

fn expr(c: &mut Cursor) -> Result<SGame> {
    c.skip_ws();
    let mut acc = term(c)?;
    loop {
        c.skip_ws();
        if c.eat('+') {
            acc = acc.add(term(c)?);
        } else if c.eat('-') {
            acc = acc.sub(term(c)?);
        } else {
            return Ok(acc);
        }
    }
}

fn term(c: &mut Cursor) -> Result<SGame> {
    c.skip_ws();
    match c.peek() {
        Some('<') => brackets(c),
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
        Some('*') => {
            c.bump();
            Ok(SGame::star())
        }
        Some(ch) if ch.is_ascii_digit() => {
            let start = c.pos();
            let digits = c.take_while(|ch| ch.is_ascii_digit());
            let n: i64 = digits
                .parse()
                .map_err(|_| Error::parse(start, "integer out of range"))?;
            Ok(if c.eat('*') {
                SGame::starred(n)
            } else {
                SGame::leaf(n)
            })
        }
        Some(ch) if ch.is_ascii_alphabetic() => call(c),
        Some(ch) => Err(c.error(format!("unexpected character {ch:?}"))),
        None => Err(c.error("unexpected end of input")),
    }
}

fn call(c: &mut Cursor) -> Result<SGame> {
    let start = c.pos();
    let name = c.take_while(|ch| ch.is_ascii_alphanumeric() || ch == '_');
    c.skip_ws();
    c.expect('(')?;
    let mut args = Vec::new();
    loop {
        args.push(expr(c)?);
        c.skip_ws();
        if c.eat(')') {
            break;
        }
        c.expect(',')?;
    }
    let int = |g: SGame| {
        g.leaf_value()
            .ok_or_else(|| Error::parse(start, format!("{name}: expected an integer argument")))
    };
    let arity = |n: usize| {
        if args.len() == n {
            Ok(())
        } else {
            Err(Error::parse(start, format!("{name} takes {n} arguments")))
        }
    };
    match name.as_str() {
        "cool" => {
            arity(2)?;
            Ok(extensions::cool(args[0], int(args[1])?))
        }
        "heat" => {
            arity(2)?;
            Ok(extensions::cool(args[0], -int(args[1])?))
        }
        "oplus" | "odot" => {
            if args.len() < 3 {
                return Err(Error::parse(start, format!("{name} takes n and at least two games")));
            }
            let n = int(args[0])?;
            let op = if name == "oplus" { extensions::oplus } else { extensions::odot };
            args[2..].iter().try_fold(args[1], |acc, g| op(n, acc, *g))
        }
        "join" | "meet" => {
            if args.len() < 2 {
                return Err(Error::parse(start, format!("{name} takes at least two games")));
            }
            let op = if name == "join" { extensions::join } else { extensions::meet };
            Ok(args[1..].iter().fold(args[0], |acc, g| op(acc, *g)))
        }
        "delta" => {
            arity(2)?;
            Ok(extensions::delta(int(args[0])?, args[1]))
        }
        "clamp01" => {
            arity(1)?;
            Ok(extensions::clamp01(args[0]))
        }
        "upside" => {
            arity(1)?;
            Ok(args[0].upside())
        }
        "downside" => {
            arity(1)?;
            Ok(args[0].downside())
        }
        _ => Err(Error::parse(start, format!("unknown function {name:?}"))),
    }
}

enum Item {
    Elem(SGame),
    Bars(usize),
}

fn brackets(c: &mut Cursor) -> Result<SGame> {
    let open = c.pos();
    c.expect('<')?;
    let mut items = Vec::new();
    loop {
        c.skip_ws();
        match c.peek() {
            Some('>') => {
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
            None => return Err(Error::parse(open, "unclosed bracket")),
            _ => items.push(Item::Elem(expr(c)?)),
        }
    }
    build(&items).map_err(|e| match e {
        Error::Parse { .. } => e,
        other => Error::parse(open, other.to_string()),
    })
}

fn build(items: &[Item]) -> Result<SGame> {
    let max = items
        .iter()
        .filter_map(|i| match i {
            Item::Bars(k) => Some(*k),
            _ => None,
        })
        .max()
        .ok_or_else(|| Error::Malformed("missing '|' separator".into()))?;
    let splits: Vec<usize> = items
        .iter()
        .enumerate()
        .filter(|(_, i)| matches!(i, Item::Bars(k) if *k == max))
        .map(|(ix, _)| ix)
        .collect();
    if splits.len() != 1 {
        return Err(Error::Malformed(format!("ambiguous separator of width {max}")));
    }
    let (l, r) = (&items[..splits[0]], &items[splits[0] + 1..]);
    SGame::build(side(l)?, side(r)?)
}

fn side(items: &[Item]) -> Result<Vec<SGame>> {
    if items.iter().any(|i| matches!(i, Item::Bars(_))) {
        return Ok(vec![build(items)?]);
    }
    Ok(items
        .iter()
        .filter_map(|i| match i {
            Item::Elem(g) => Some(*g),
            Item::Bars(_) => None,
        })
        .collect())
}

impl std::str::FromStr for SGame {
    type Err = Error;
    fn from_str(s: &str) -> Result<SGame> {
        parse_scoring(s)
    }
}
