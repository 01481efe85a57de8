use std::collections::{BTreeSet, VecDeque};

use super::Pseudo;
use crate::boolean::{BoolClass, UValue};
use crate::error::{Error, Result};
use crate::scoring::Temper;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Isotopies and phony Reidemeister I moves.
    R1,
    /// Also phony Reidemeister II moves.
    R1R2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShadowClass {
    pub reduces_to_odd_even: bool,
    pub bool_class: BoolClass,
}

#[derive(Debug, Clone, Copy)]
enum Kind {
    Isotopy,
    R1,
    R2,
}

fn counts(t: &Pseudo) -> Result<Vec<u32>> {
    if !t.is_shadow() {
        return Err(Error::Domain(format!("{t} has resolved crossings")));
    }
    Ok(t.0.iter().map(|x| x.b).collect())
}

fn oriented(v: Vec<u32>) -> Vec<u32> {
    let rev: Vec<u32> = v.iter().rev().copied().collect();
    v.min(rev)
}

/// `[(a1),...,(an)]` with every `ai >= 1`, exactly one of `a1`, `an` odd
/// and the rest even.
pub fn is_odd_even(t: &Pseudo) -> bool {
    let Ok(v) = counts(t) else { return false };
    odd_even(&v)
}

fn odd_even(v: &[u32]) -> bool {
    let n = v.len();
    if n == 0 || v.contains(&0) {
        return false;
    }
    if n == 1 {
        return v[0] % 2 == 1;
    }
    let ends = (v[0] % 2) + (v[n - 1] % 2);
    ends == 1 && v[1..n - 1].iter().all(|a| a % 2 == 0)
}

/// Every single-step rewrite of `v`, in rule order and then site order.
fn rewrites(v: &[u32], mode: Mode) -> Vec<(Kind, Vec<u32>)> {
    let n = v.len();
    let mut out = Vec::new();
    if n >= 2 && v[0] == 0 && v[1] == 0 {
        out.push((Kind::Isotopy, v[2..].to_vec()));
    }
    for i in 1..n.saturating_sub(1) {
        if v[i] == 0 {
            let mut w = v[..i - 1].to_vec();
            w.push(v[i - 1] + v[i + 1]);
            w.extend_from_slice(&v[i + 2..]);
            out.push((Kind::Isotopy, w));
        }
    }
    if n >= 2 && v[n - 1] == 0 && v[n - 2] == 0 {
        out.push((Kind::Isotopy, v[..n - 2].to_vec()));
    }
    if n >= 2 && v[0] == 1 {
        let mut w = v[1..].to_vec();
        w[0] += 1;
        out.push((Kind::Isotopy, w));
    }
    if n >= 2 && v[n - 1] == 1 {
        let mut w = v[..n - 1].to_vec();
        w[n - 2] += 1;
        out.push((Kind::Isotopy, w));
    }
    if n >= 2 && v[0] == 0 && v[1] >= 1 {
        let mut w = v.to_vec();
        w[1] -= 1;
        out.push((Kind::R1, w));
    }
    if n >= 2 && v[n - 1] == 0 && v[n - 2] >= 1 {
        let mut w = v.to_vec();
        w[n - 2] -= 1;
        out.push((Kind::R1, w));
    }
    if mode == Mode::R1R2 {
        for i in 0..n {
            if v[i] >= 2 {
                let mut w = v.to_vec();
                w[i] -= 2;
                out.push((Kind::R2, w));
            }
        }
    }
    out
}

/// Greedy rewriting to a fixpoint, first applicable rule first. Returns the
/// normal form and the number of Reidemeister I moves used.
pub fn reduce_shadow(t: &Pseudo, mode: Mode) -> Result<(Pseudo, usize)> {
    let mut v = counts(t)?;
    let mut r1 = 0;
    while let Some((kind, w)) = rewrites(&v, mode).into_iter().next() {
        if matches!(kind, Kind::R1) {
            r1 += 1;
        }
        v = w;
    }
    Ok((Pseudo::shadow(&oriented(v)), r1))
}

/// Whether some chain of isotopies and Reidemeister I moves reaches an
/// odd-even shadow or the empty diagram.
fn reaches_odd_even(start: Vec<u32>) -> bool {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::from([oriented(start)]);
    while let Some(v) = queue.pop_front() {
        if v.is_empty() || odd_even(&v) {
            return true;
        }
        if !seen.insert(v.clone()) {
            continue;
        }
        for (_, w) in rewrites(&v, Mode::R1) {
            let w = oriented(w);
            if !seen.contains(&w) {
                queue.push_back(w);
            }
        }
    }
    false
}

/// Class of a rational knot shadow from its Reidemeister I reductions:
/// `u- = 0` always, `u+ = 0` exactly when an odd-even shadow is reachable.
pub fn classify_shadow(t: &Pseudo) -> Result<ShadowClass> {
    let v = counts(t)?;
    if !t.is_knot() {
        return Err(Error::Link);
    }
    let good = reaches_odd_even(v);
    let temper = Temper::of_parity(t.unresolved() as usize);
    Ok(ShadowClass {
        reduces_to_odd_even: good,
        bool_class: BoolClass {
            temper,
            u_minus: UValue::Zero,
            u_plus: if good { UValue::Zero } else { UValue::One },
        },
    })
}
