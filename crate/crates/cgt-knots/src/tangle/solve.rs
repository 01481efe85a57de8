use std::fmt;

use dashmap::DashMap;
use once_cell::sync::Lazy;
use rustc_hash::FxBuildHasher;

use super::{Pseudo, Twist};
use crate::boolean::{class_join, outcome_of_class, u_values, BoolClass};
use crate::error::{Error, Result};
use crate::extensions::{extend_outcomes, MonotoneMap};
use crate::scoring::{SGame, ScoreOutcome};

static VALUES: Lazy<DashMap<Vec<Twist>, SGame, FxBuildHasher>> =
    Lazy::new(|| DashMap::with_hasher(FxBuildHasher));

fn merge(x: Twist, y: Twist) -> Twist {
    Twist::new(x.a + y.a, x.b + y.b)
}

/// A position with the same game tree: zero regions merged, empty pairs
/// and single-crossing ends folded in, then the least of the list, its
/// reverse and their mirror images.
pub fn normalize(t: &Pseudo) -> Pseudo {
    let mut v = t.0.clone();
    loop {
        let n = v.len();
        let zero = Twist::new(0, 0);
        if let Some(i) = (1..n.saturating_sub(1)).find(|&i| v[i] == zero) {
            let m = merge(v[i - 1], v[i + 1]);
            v.splice(i - 1..=i + 1, [m]);
        } else if n >= 2 && v[0] == zero && v[1] == zero {
            v.drain(..2);
        } else if n >= 2 && v[n - 1] == zero && v[n - 2] == zero {
            v.truncate(n - 2);
        } else if n >= 2 && unit(v[0]) {
            let m = merge(v[0], v[1]);
            v.splice(..2, [m]);
        } else if n >= 2 && unit(v[n - 1]) {
            let m = merge(v[n - 2], v[n - 1]);
            v.splice(n - 2.., [m]);
        } else {
            break;
        }
    }
    let mirror = |w: &[Twist]| w.iter().map(|t| Twist::new(-t.a, t.b)).collect::<Vec<_>>();
    let rev: Vec<Twist> = v.iter().rev().copied().collect();
    let best = [mirror(&v), mirror(&rev), rev, v]
        .into_iter()
        .min()
        .unwrap();
    Pseudo(best)
}

fn unit(t: Twist) -> bool {
    matches!((t.a, t.b), (1, 0) | (-1, 0) | (0, 1))
}

/// The scoring game of a knot pseudodiagram: 1 when the final knot is
/// knotted, 0 for the unknot.
pub fn tkontk_value(t: &Pseudo) -> Result<SGame> {
    if !t.is_knot() {
        return Err(Error::Link);
    }
    Ok(value_rec(&normalize(t)))
}

fn value_rec(t: &Pseudo) -> SGame {
    if t.is_resolved() {
        return SGame::leaf(i64::from(!t.is_unknot().expect("knot positions stay knots")));
    }
    if let Some(g) = VALUES.get(&t.0) {
        return *g;
    }
    let options: Vec<SGame> = t.moves().iter().map(|c| value_rec(&normalize(c))).collect();
    let g = SGame::node(options.clone(), options);
    VALUES.insert(t.0.clone(), g);
    g
}

pub fn solve(t: &Pseudo) -> Result<ScoreOutcome> {
    Ok(tkontk_value(t)?.outcomes())
}

pub fn solve_class(t: &Pseudo) -> Result<BoolClass> {
    u_values(tkontk_value(t)?)
}

/// Outcomes of a connected sum by minimax over all components at once.
pub fn sum_outcomes(ts: &[Pseudo]) -> Result<ScoreOutcome> {
    let gs = ts.iter().map(tkontk_value).collect::<Result<Vec<_>>>()?;
    if gs.is_empty() {
        return Ok(ScoreOutcome { lout: 0, rout: 0 });
    }
    Ok(extend_outcomes(&MonotoneMap::max_n(gs.len()), &gs))
}

/// Class of a connected sum, joined from the component classes.
pub fn sum_class(ts: &[Pseudo]) -> Result<BoolClass> {
    let mut acc = solve_class(&Pseudo::default())?;
    for t in ts {
        acc = class_join(acc, solve_class(t)?);
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SumVerdict {
    Ursula,
    Lear,
    FirstPlayer,
    SecondPlayer,
}

impl SumVerdict {
    /// 1 is a Lear win. Left (Lear) moving first gets `lout`.
    pub fn from_outcome(o: ScoreOutcome) -> SumVerdict {
        match (o.lout >= 1, o.rout >= 1) {
            (true, true) => SumVerdict::Lear,
            (false, false) => SumVerdict::Ursula,
            (true, false) => SumVerdict::FirstPlayer,
            (false, true) => SumVerdict::SecondPlayer,
        }
    }
}

impl fmt::Display for SumVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SumVerdict::Ursula => "Ursula wins",
            SumVerdict::Lear => "King Lear wins",
            SumVerdict::FirstPlayer => "first player wins",
            SumVerdict::SecondPlayer => "second player wins",
        })
    }
}

/// Winner of a connected sum of rational knot shadows, read off from
/// which components reduce to odd-even shadows.
pub fn sum_winner(ts: &[Pseudo]) -> Result<SumVerdict> {
    let mut favourable = true;
    for t in ts {
        favourable &= super::classify_shadow(t)?.reduces_to_odd_even;
    }
    let crossings: u64 = ts.iter().map(Pseudo::crossings).sum();
    Ok(if favourable {
        SumVerdict::Ursula
    } else if crossings % 2 == 1 {
        SumVerdict::FirstPlayer
    } else {
        SumVerdict::SecondPlayer
    })
}

/// Outcomes predicted by the class of a sum.
pub fn predicted_outcomes(ts: &[Pseudo]) -> Result<ScoreOutcome> {
    Ok(outcome_of_class(sum_class(ts)?))
}
