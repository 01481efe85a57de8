#![allow(dead_code)]

use std::collections::HashMap;

use cgt_knots::boolean::{u_values, BoolClass};
use cgt_knots::partizan::Game;
use cgt_knots::{SGame, Temper};
use once_cell::sync::Lazy;

/// Keeps the first game of every `≈` class, bucketed by cheap invariants.
pub fn dedup(gs: &[SGame]) -> Vec<SGame> {
    let mut buckets: HashMap<_, Vec<SGame>> = HashMap::new();
    let mut reps = Vec::new();
    for &g in gs {
        let key = (g.temper(), g.outcomes(), g.upside().outcomes(), g.downside().outcomes());
        let b = buckets.entry(key).or_default();
        if !b.iter().any(|r| r.s_equiv(g)) {
            b.push(g);
            reps.push(g);
        }
    }
    reps
}

/// Nonempty subsets of `xs` with at most `k` elements.
fn small_subsets(xs: &[SGame], k: usize) -> Vec<Vec<SGame>> {
    let mut out = vec![vec![]];
    for &x in xs {
        let grown: Vec<Vec<SGame>> = out
            .iter()
            .filter(|s| s.len() < k)
            .map(|s| {
                let mut s = s.clone();
                s.push(x);
                s
            })
            .collect();
        out.extend(grown);
    }
    out.retain(|s| !s.is_empty());
    out
}

/// Nonempty index sets of pairwise incomparable elements.
fn antichain_indices(comparable: &[Vec<bool>]) -> Vec<Vec<usize>> {
    fn rec(i: usize, cur: &mut Vec<usize>, cmp: &[Vec<bool>], out: &mut Vec<Vec<usize>>) {
        if i == cmp.len() {
            if !cur.is_empty() {
                out.push(cur.clone());
            }
            return;
        }
        rec(i + 1, cur, cmp, out);
        if cur.iter().all(|&j| !cmp[i][j]) {
            cur.push(i);
            rec(i + 1, cur, cmp, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, &mut Vec::new(), comparable, &mut out);
    out
}

/// Nonempty option sets with no option dominating another.
fn antichains(xs: &[SGame]) -> Vec<Vec<SGame>> {
    let cmp: Vec<Vec<bool>> = (0..xs.len())
        .map(|i| {
            (0..xs.len())
                .map(|j| i != j && (xs[i].s_leq(xs[j]) || xs[j].s_leq(xs[i])))
                .collect()
        })
        .collect();
    antichain_indices(&cmp)
        .into_iter()
        .map(|s| s.into_iter().map(|i| xs[i]).collect())
        .collect()
}

/// Every game with options drawn from `reps`, one temper at a time.
fn next_level(reps: &[SGame], max_options: Option<usize>) -> Vec<SGame> {
    let mut out = Vec::new();
    for t in [Temper::Even, Temper::Odd] {
        let xs: Vec<SGame> = reps.iter().copied().filter(|g| g.temper() == t).collect();
        if xs.is_empty() {
            continue;
        }
        let (ls, rs) = match max_options {
            Some(k) => (small_subsets(&xs, k), small_subsets(&xs, k)),
            None => (antichains(&xs), antichains(&xs)),
        };
        for l in &ls {
            for r in &rs {
                out.push(SGame::build(l.clone(), r.clone()).unwrap());
            }
        }
    }
    out
}

/// Class representatives level by level: entry `d` holds one game of depth
/// at most `d` for every class reachable at that depth.
pub fn levels(values: &[i64], depth: u32, max_options: Option<usize>) -> Vec<Vec<SGame>> {
    let mut reps: Vec<SGame> = values.iter().map(|&v| SGame::leaf(v)).collect();
    let mut out = vec![reps.clone()];
    for _ in 0..depth {
        let mut all = reps.clone();
        all.extend(next_level(&reps, max_options));
        reps = dedup(&all);
        out.push(reps.clone());
    }
    out
}

/// Every class of depth at most 2 with leaves in `{-1, 0, 1}`.
pub static SCORING_POOL: Lazy<Vec<SGame>> =
    Lazy::new(|| levels(&[-1, 0, 1], 2, None).pop().unwrap());

/// Two-valued representatives by depth, up to depth 5.
pub static TWO_VALUED: Lazy<Vec<Vec<SGame>>> = Lazy::new(|| levels(&[0, 1], 5, None));

pub fn two_valued(depth: usize) -> &'static [SGame] {
    &TWO_VALUED[depth]
}

/// The deepest two-valued level.
pub fn two_valued_all() -> &'static [SGame] {
    TWO_VALUED.last().unwrap()
}

/// One representative per class over the deepest two-valued level.
pub static CLASS_REPS: Lazy<HashMap<BoolClass, SGame>> = Lazy::new(|| {
    let mut m = HashMap::new();
    for &g in two_valued_all() {
        m.entry(u_values(g).unwrap()).or_insert(g);
    }
    m
});

/// An i-game representative of temper `t` whose sides are both `u`.
pub fn igame_rep(t: Temper, u: cgt_knots::boolean::UValue) -> SGame {
    CLASS_REPS[&BoolClass { temper: t, u_minus: u, u_plus: u }]
}

/// Canonical partizan forms born by day `n`.
pub fn partizan_pool(n: u32) -> Vec<Game> {
    let mut pool = vec![Game::zero()];
    for _ in 0..n {
        let cmp: Vec<Vec<bool>> = (0..pool.len())
            .map(|i| {
                (0..pool.len())
                    .map(|j| i != j && (pool[i].leq(pool[j]) || pool[j].leq(pool[i])))
                    .collect()
            })
            .collect();
        let mut sets: Vec<Vec<Game>> = antichain_indices(&cmp)
            .into_iter()
            .map(|s| s.into_iter().map(|i| pool[i]).collect())
            .collect();
        sets.push(vec![]);
        let mut next: Vec<Game> = Vec::new();
        for l in &sets {
            for r in &sets {
                next.push(Game::new(l.iter().copied(), r.iter().copied()).canonical());
            }
        }
        next.sort_by(|a, b| a.structural_cmp(*b));
        next.dedup();
        pool = next;
    }
    pool
}

pub fn s(text: &str) -> SGame {
    cgt_knots::scoring::parse_scoring(text).unwrap()
}

pub fn g(text: &str) -> Game {
    cgt_knots::partizan::parse_game(text).unwrap()
}

/// A sum inequality: `None` when the hypotheses fail.
pub struct Law {
    pub name: &'static str,
    pub check: fn(SGame, SGame) -> Option<bool>,
}

fn tempers(g: SGame, h: SGame, a: Temper, b: Temper) -> bool {
    g.temper() == a && h.temper() == b
}

use Temper::{Even, Odd};

pub const LAWS: [Law; 12] = [
    Law { name: "uno", check: |g, h| tempers(g, h, Even, Even).then(|| (g + h).rout() >= g.rout() + h.rout()) },
    Law { name: "dos", check: |g, h| tempers(g, h, Odd, Even).then(|| (g + h).lout() >= g.lout() + h.rout()) },
    Law { name: "tres", check: |g, h| tempers(g, h, Even, Even).then(|| (g + h).lout() <= g.lout() + h.lout()) },
    Law { name: "cuatro", check: |g, h| tempers(g, h, Odd, Even).then(|| (g + h).rout() <= g.rout() + h.lout()) },
    Law { name: "cinco", check: |g, _| Some((g - g).rout() >= 0) },
    Law { name: "seis", check: |g, _| Some((g - g).lout() <= 0) },
    Law { name: "siete", check: |g, h| (g.is_igame() && tempers(g, h, Even, Odd)).then(|| (g + h).rout() >= g.rout() + h.rout()) },
    Law { name: "ocho", check: |g, h| (g.is_igame() && tempers(g, h, Odd, Odd)).then(|| (g + h).lout() >= g.lout() + h.rout()) },
    Law { name: "nueve", check: |g, h| (g.is_igame() && tempers(g, h, Even, Even)).then(|| (g + h).lout() >= g.rout() + h.lout()) },
    Law { name: "diez", check: |g, h| (g.is_igame() && tempers(g, h, Even, Odd)).then(|| (g + h).lout() <= g.lout() + h.lout()) },
    Law { name: "once", check: |g, h| (g.is_igame() && tempers(g, h, Odd, Odd)).then(|| (g + h).rout() <= g.rout() + h.lout()) },
    Law { name: "doce", check: |g, h| (g.is_igame() && tempers(g, h, Even, Even)).then(|| (g + h).rout() <= g.lout() + h.rout()) },
];

/// `(checked, violated)` for one law over all ordered pairs of `pool`.
pub fn check_law(law: &Law, pool: &[SGame]) -> (usize, Vec<(SGame, SGame)>) {
    let mut checked = 0;
    let mut bad = Vec::new();
    for &g in pool {
        for &h in pool {
            match (law.check)(g, h) {
                Some(true) => checked += 1,
                Some(false) => {
                    checked += 1;
                    bad.push((g, h));
                }
                None => {}
            }
        }
    }
    (checked, bad)
}
