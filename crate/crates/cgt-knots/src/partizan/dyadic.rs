//! Dyadic rationals `n / 2^k`, the short surreal numbers.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use crate::error::Error;

/// Exact value `numerator / 2^exponent`, always stored reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dyadic {
    numerator: i64,
    exponent: u32,
}

impl Dyadic {
    pub const ZERO: Dyadic = Dyadic {
        numerator: 0,
        exponent: 0,
    };

    pub fn new(numerator: i64, exponent: u32) -> Self {
        let mut d = Dyadic {
            numerator,
            exponent,
        };
        d.reduce();
        d
    }

    pub fn integer(n: i64) -> Self {
        Dyadic {
            numerator: n,
            exponent: 0,
        }
    }

    fn reduce(&mut self) {
        if self.numerator == 0 {
            self.exponent = 0;
            return;
        }
        let tz = self.numerator.trailing_zeros().min(self.exponent);
        self.numerator >>= tz;
        self.exponent -= tz;
    }

    pub fn numerator(self) -> i64 {
        self.numerator
    }

    pub fn exponent(self) -> u32 {
        self.exponent
    }

    pub fn is_integer(self) -> bool {
        self.exponent == 0
    }

    pub fn as_integer(self) -> Option<i64> {
        self.is_integer().then_some(self.numerator)
    }

    fn aligned(self, other: Dyadic) -> (i64, i64, u32) {
        let e = self.exponent.max(other.exponent);
        (
            self.numerator << (e - self.exponent),
            other.numerator << (e - other.exponent),
            e,
        )
    }

    pub fn floor(self) -> i64 {
        self.numerator >> self.exponent
    }

    pub fn ceil(self) -> i64 {
        -((-self.numerator) >> self.exponent)
    }

    pub fn half(self) -> Dyadic {
        Dyadic::new(self.numerator, self.exponent + 1)
    }

    /// The simpler-than relation: smaller denominator wins, and among
    /// integers the one of smaller magnitude wins.
    pub fn simpler_than(self, other: Dyadic) -> bool {
        if self.exponent != other.exponent {
            return self.exponent < other.exponent;
        }
        self.exponent == 0 && self.numerator.abs() < other.numerator.abs()
    }

    /// Simplest number strictly between the bounds; `None` is unbounded.
    pub fn simplest_between(lo: Option<Dyadic>, hi: Option<Dyadic>) -> Option<Dyadic> {
        if let (Some(l), Some(h)) = (lo, hi) {
            if l >= h {
                return None;
            }
        }
        let above_lo = |x: Dyadic| lo.is_none_or(|l| x > l);
        let below_hi = |x: Dyadic| hi.is_none_or(|h| x < h);
        if above_lo(Dyadic::ZERO) && below_hi(Dyadic::ZERO) {
            return Some(Dyadic::ZERO);
        }
        // all candidates share a sign now
        match (lo, hi) {
            (Some(l), _) if l >= Dyadic::ZERO => {
                let n = Dyadic::integer(l.floor() + 1);
                if below_hi(n) {
                    return Some(n);
                }
            }
            (_, Some(h)) => {
                let n = Dyadic::integer(h.ceil() - 1);
                if above_lo(n) {
                    return Some(n);
                }
            }
            _ => unreachable!("zero lies in an unbounded interval"),
        }
        let (l, h) = (lo?, hi?);
        for k in 1..62 {
            // smallest multiple of 2^-k strictly above l
            let scaled = if l.exponent <= k {
                l.numerator << (k - l.exponent)
            } else {
                l.numerator >> (l.exponent - k)
            };
            let cand = Dyadic::new(scaled + 1, k);
            if cand > l && cand < h {
                return Some(cand);
            }
        }
        None
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(*other);
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: Dyadic) -> Dyadic {
        let (a, b, e) = self.aligned(rhs);
        Dyadic::new(a + b, e)
    }
}

impl Sub for Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: Dyadic) -> Dyadic {
        self + (-rhs)
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            numerator: -self.numerator,
            exponent: self.exponent,
        }
    }
}

impl From<i64> for Dyadic {
    fn from(n: i64) -> Self {
        Dyadic::integer(n)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 0 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/{}", self.numerator, 1u64 << self.exponent)
        }
    }
}

impl FromStr for Dyadic {
    type Err = Error;

    /// Accepts `n`, `p/2^k` and terminating binary decimals such as `2.75`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let bad = || Error::parse(0, format!("not a dyadic rational: {s:?}"));
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let value = if let Some((p, q)) = body.split_once('/') {
            let p: i64 = p.parse().map_err(|_| bad())?;
            let q: u64 = q.parse().map_err(|_| bad())?;
            if q == 0 || !q.is_power_of_two() {
                return Err(bad());
            }
            Dyadic::new(p, q.trailing_zeros())
        } else if let Some((int, frac)) = body.split_once('.') {
            let int: i64 = if int.is_empty() {
                0
            } else {
                int.parse().map_err(|_| bad())?
            };
            if frac.is_empty() || !frac.bytes().all(|c| c.is_ascii_digit()) || frac.len() > 18 {
                return Err(bad());
            }
            let digits: i128 = frac.parse().map_err(|_| bad())?;
            let denom = 10i128.pow(frac.len() as u32);
            // digits / denom must be n / 2^k
            let mut k = 0u32;
            let mut num = digits;
            let mut den = denom;
            let g = gcd(num, den);
            num /= g;
            den /= g;
            while den % 2 == 0 {
                den /= 2;
                k += 1;
            }
            if den != 1 {
                return Err(bad());
            }
            Dyadic::integer(int) + Dyadic::new(num as i64, k)
        } else {
            Dyadic::integer(body.parse().map_err(|_| bad())?)
        };
        Ok(if neg { -value } else { value })
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs().max(1)
    } else {
        gcd(b, a % b)
    }
}
