//! Rational tangles and pseudodiagrams `[a1(b1), ..., an(bn)]`: continued
//! fraction values, knot and unknot tests, and the moves of To Knot or Not
//! to Knot.

mod reduce;
mod solve;

use std::fmt;

use crate::error::{Error, Result};
use crate::text::Cursor;

pub use reduce::{classify_shadow, is_odd_even, reduce_shadow, Mode, ShadowClass};
pub use solve::{
    normalize, predicted_outcomes, solve, solve_class, sum_class, sum_outcomes, sum_winner,
    tkontk_value, SumVerdict,
};

/// `p/q` with `q >= 0`, reduced; `1/0` is infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExtRational {
    p: i64,
    q: i64,
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

impl ExtRational {
    pub const INFINITY: ExtRational = ExtRational { p: 1, q: 0 };

    pub fn new(p: i64, q: i64) -> ExtRational {
        Self::reduce(p as i128, q as i128)
    }

    fn reduce(p: i128, q: i128) -> ExtRational {
        assert!(p != 0 || q != 0, "0/0 is not a tangle value");
        let (p, q) = if q < 0 { (-p, -q) } else { (p, q) };
        let g = gcd(p, q);
        let (p, q) = (p / g, q / g);
        let p = if q == 0 { 1 } else { p };
        ExtRational {
            p: i64::try_from(p).expect("numerator overflow"),
            q: i64::try_from(q).expect("denominator overflow"),
        }
    }

    pub fn numerator(self) -> i64 {
        self.p
    }

    pub fn denominator(self) -> i64 {
        self.q
    }

    pub fn is_infinite(self) -> bool {
        self.q == 0
    }

    pub fn recip(self) -> ExtRational {
        Self::reduce(self.q as i128, self.p as i128)
    }

    pub fn add_int(self, k: i64) -> ExtRational {
        if self.is_infinite() {
            return self;
        }
        Self::reduce(self.p as i128 + k as i128 * self.q as i128, self.q as i128)
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            f.write_str("1/0")
        } else {
            write!(f, "{}/{}", self.p, self.q)
        }
    }
}

/// `an + 1/(a(n-1) + 1/(... + 1/a1))`; the empty list is `1/0`.
pub fn cf_value(terms: &[i64]) -> ExtRational {
    terms
        .iter()
        .fold(ExtRational::INFINITY, |v, &a| v.recip().add_int(a))
}

/// One twist region: `a` resolved twists and `b` unresolved crossings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Twist {
    pub a: i64,
    pub b: u32,
}

impl Twist {
    pub fn new(a: i64, b: u32) -> Twist {
        Twist { a, b }
    }

    pub fn shadow(b: u32) -> Twist {
        Twist { a: 0, b }
    }
}

/// A rational pseudodiagram, closed into a knot or link.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Pseudo(pub Vec<Twist>);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Move {
    pub region: usize,
    pub sign: i8,
}

impl Pseudo {
    pub fn shadow(counts: &[u32]) -> Pseudo {
        Pseudo(counts.iter().map(|&b| Twist::shadow(b)).collect())
    }

    pub fn resolved(terms: &[i64]) -> Pseudo {
        Pseudo(terms.iter().map(|&a| Twist::new(a, 0)).collect())
    }

    pub fn regions(&self) -> &[Twist] {
        &self.0
    }

    pub fn unresolved(&self) -> u32 {
        self.0.iter().map(|t| t.b).sum()
    }

    pub fn crossings(&self) -> u64 {
        self.0.iter().map(|t| t.a.unsigned_abs() + t.b as u64).sum()
    }

    pub fn is_resolved(&self) -> bool {
        self.unresolved() == 0
    }

    pub fn is_shadow(&self) -> bool {
        self.0.iter().all(|t| t.a == 0)
    }

    /// Knot-ness does not depend on how crossings get resolved.
    pub fn is_knot(&self) -> bool {
        let terms: Vec<i64> = self.0.iter().map(|t| t.a + t.b as i64).collect();
        cf_value(&terms).numerator() % 2 != 0
    }

    pub fn value(&self) -> Result<ExtRational> {
        if !self.is_resolved() {
            return Err(Error::Domain("pseudodiagram has unresolved crossings".into()));
        }
        Ok(cf_value(&self.terms()))
    }

    fn terms(&self) -> Vec<i64> {
        self.0.iter().map(|t| t.a).collect()
    }

    pub fn is_unknot(&self) -> Result<bool> {
        let v = self.value()?;
        if v.numerator() % 2 == 0 {
            return Err(Error::Link);
        }
        Ok(v.numerator().abs() == 1)
    }

    pub fn legal_moves(&self) -> Vec<Move> {
        let mut out = Vec::new();
        for (region, t) in self.0.iter().enumerate() {
            if t.b > 0 {
                out.push(Move { region, sign: 1 });
                out.push(Move { region, sign: -1 });
            }
        }
        out
    }

    pub fn play(&self, m: Move) -> Result<Pseudo> {
        if !matches!(m.sign, 1 | -1) {
            return Err(Error::Domain(format!("sign must be +1 or -1, got {}", m.sign)));
        }
        match self.0.get(m.region) {
            Some(t) if t.b > 0 => {
                let mut next = self.clone();
                next.0[m.region] = Twist::new(t.a + m.sign as i64, t.b - 1);
                Ok(next)
            }
            _ => Err(Error::Domain(format!("no unresolved crossing in region {}", m.region))),
        }
    }

    /// Every position reachable in one move, `+1` before `-1`.
    pub fn moves(&self) -> Vec<Pseudo> {
        self.legal_moves()
            .into_iter()
            .map(|m| self.play(m).unwrap())
            .collect()
    }

    pub fn reversed(&self) -> Pseudo {
        Pseudo(self.0.iter().rev().copied().collect())
    }
}

impl fmt::Display for Twist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, b) => write!(f, "({b})"),
            (a, b) => write!(f, "{a}({b})"),
        }
    }
}

impl fmt::Display for Pseudo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{t}")?;
        }
        f.write_str("]")
    }
}

pub fn parse_tangle(text: &str) -> Result<Pseudo> {
    let mut c = Cursor::new(text);
    let t = bracket(&mut c)?;
    c.skip_ws();
    if !c.at_end() {
        return Err(c.error("unexpected trailing input"));
    }
    Ok(t)
}

/// Components of a connected sum written `[..] + [..] + ...`.
pub fn parse_sum(text: &str) -> Result<Vec<Pseudo>> {
    let mut c = Cursor::new(text);
    let mut parts = vec![bracket(&mut c)?];
    loop {
        c.skip_ws();
        if c.at_end() {
            return Ok(parts);
        }
        if !c.eat('+') {
            return Err(c.error("expected '+' between components"));
        }
        parts.push(bracket(&mut c)?);
    }
}

fn bracket(c: &mut Cursor) -> Result<Pseudo> {
    c.skip_ws();
    c.expect('[')?;
    let mut twists = Vec::new();
    c.skip_ws();
    if c.eat(']') {
        return Ok(Pseudo(twists));
    }
    loop {
        twists.push(item(c)?);
        c.skip_ws();
        if c.eat(']') {
            return Ok(Pseudo(twists));
        }
        c.expect(',')?;
    }
}

fn integer(c: &mut Cursor) -> Result<Option<i64>> {
    c.skip_ws();
    let start = c.pos();
    let neg = c.eat('-');
    let digits = c.take_while(|ch| ch.is_ascii_digit());
    if digits.is_empty() {
        if neg {
            return Err(Error::parse(start, "expected digits after '-'"));
        }
        return Ok(None);
    }
    let n: i64 = digits
        .parse()
        .map_err(|_| Error::parse(start, "integer out of range"))?;
    Ok(Some(if neg { -n } else { n }))
}

fn item(c: &mut Cursor) -> Result<Twist> {
    let a = integer(c)?;
    c.skip_ws();
    if c.eat('(') {
        c.skip_ws();
        let start = c.pos();
        let b = match integer(c)? {
            Some(b) if b >= 0 => u32::try_from(b).map_err(|_| Error::parse(start, "count too large"))?,
            _ => return Err(Error::parse(start, "expected a crossing count")),
        };
        c.skip_ws();
        c.expect(')')?;
        Ok(Twist::new(a.unwrap_or(0), b))
    } else {
        match a {
            Some(a) => Ok(Twist::new(a, 0)),
            None => Err(c.error("expected a twist count")),
        }
    }
}

impl std::str::FromStr for Pseudo {
    type Err = Error;
    fn from_str(s: &str) -> Result<Pseudo> {
        parse_tangle(s)
    }
}
