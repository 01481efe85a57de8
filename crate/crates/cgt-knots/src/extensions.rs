//! Extensions of order-preserving integer maps to scoring games, the named
//! operators built from them, and cooling.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::Arc;

use dashmap::DashMap;
use once_cell::sync::Lazy;
use rustc_hash::{FxBuildHasher, FxHashMap};

use crate::error::{Error, Result};
use crate::scoring::{SGame, ScoreOutcome};

type Eval = dyn Fn(&[i64]) -> i64 + Send + Sync;

/// A weakly order-preserving map `Z^k -> Z`, optionally restricted to a
/// finite value set per argument.
#[derive(Clone)]
pub struct MonotoneMap {
    id: u32,
    name: String,
    domains: Vec<Option<BTreeSet<i64>>>,
    eval: Arc<Eval>,
}

impl std::fmt::Debug for MonotoneMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "MonotoneMap({}/{})", self.name, self.arity())
    }
}

static NEXT_MAP: AtomicU32 = AtomicU32::new(0);
static EXTEND: Lazy<DashMap<(u32, Box<[u32]>), SGame, FxBuildHasher>> =
    Lazy::new(|| DashMap::with_hasher(FxBuildHasher));
static COOL: Lazy<DashMap<(u32, i64), SGame, FxBuildHasher>> =
    Lazy::new(|| DashMap::with_hasher(FxBuildHasher));
static NAMED: Lazy<DashMap<String, MonotoneMap>> = Lazy::new(DashMap::new);

const PROBE: std::ops::RangeInclusive<i64> = -4..=4;

impl MonotoneMap {
    /// Checks monotonicity on the domain grid (or a probe grid for
    /// unrestricted arguments) before accepting `eval`.
    pub fn new(
        name: impl Into<String>,
        domains: Vec<Option<BTreeSet<i64>>>,
        eval: impl Fn(&[i64]) -> i64 + Send + Sync + 'static,
    ) -> Result<MonotoneMap> {
        let map = MonotoneMap {
            id: NEXT_MAP.fetch_add(1, Ordering::Relaxed),
            name: name.into(),
            domains,
            eval: Arc::new(eval),
        };
        map.check_monotone()?;
        Ok(map)
    }

    fn cached(name: &str, make: impl FnOnce() -> MonotoneMap) -> MonotoneMap {
        if let Some(m) = NAMED.get(name) {
            return m.clone();
        }
        NAMED.entry(name.to_string()).or_insert_with(make).clone()
    }

    pub fn arity(&self) -> usize {
        self.domains.len()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn apply(&self, xs: &[i64]) -> i64 {
        (self.eval)(xs)
    }

    fn grid(&self, i: usize) -> Vec<i64> {
        match &self.domains[i] {
            Some(s) => s.iter().copied().collect(),
            None => PROBE.collect(),
        }
    }

    fn check_monotone(&self) -> Result<()> {
        let k = self.arity();
        let grids: Vec<Vec<i64>> = (0..k).map(|i| self.grid(i)).collect();
        let total: usize = grids.iter().map(Vec::len).product();
        if k > 3 || total > 100_000 {
            return Ok(());
        }
        let mut point = vec![0usize; k];
        for _ in 0..total {
            let xs: Vec<i64> = (0..k).map(|i| grids[i][point[i]]).collect();
            let here = self.apply(&xs);
            for i in 0..k {
                if point[i] + 1 < grids[i].len() {
                    let mut ys = xs.clone();
                    ys[i] = grids[i][point[i] + 1];
                    if self.apply(&ys) < here {
                        return Err(Error::Domain(format!("{} is not order-preserving", self.name)));
                    }
                }
            }
            for i in 0..k {
                point[i] += 1;
                if point[i] < grids[i].len() {
                    break;
                }
                point[i] = 0;
            }
        }
        Ok(())
    }

    fn check_operands(&self, gs: &[SGame]) -> Result<()> {
        if gs.len() != self.arity() {
            return Err(Error::Domain(format!(
                "{} takes {} operands, got {}",
                self.name,
                self.arity(),
                gs.len()
            )));
        }
        for (g, dom) in gs.iter().zip(&self.domains) {
            if let Some(dom) = dom {
                if let Some(v) = g.values().iter().find(|v| !dom.contains(v)) {
                    return Err(Error::Domain(format!("{}: leaf {v} outside the domain", self.name)));
                }
            }
        }
        Ok(())
    }

    pub fn sum() -> MonotoneMap {
        MonotoneMap::cached("sum", || {
            MonotoneMap::new("sum", vec![None, None], |x| x[0] + x[1]).unwrap()
        })
    }

    pub fn max() -> MonotoneMap {
        MonotoneMap::cached("max", || {
            MonotoneMap::new("max", vec![None, None], |x| x[0].max(x[1])).unwrap()
        })
    }

    /// `max` of `n` arguments.
    pub fn max_n(n: usize) -> MonotoneMap {
        MonotoneMap::cached(&format!("max{n}"), || {
            MonotoneMap::new(format!("max{n}"), vec![None; n], |x| {
                x.iter().copied().max().unwrap_or(i64::MIN)
            })
            .unwrap()
        })
    }

    pub fn min() -> MonotoneMap {
        MonotoneMap::cached("min", || {
            MonotoneMap::new("min", vec![None, None], |x| x[0].min(x[1])).unwrap()
        })
    }

    fn range(n: i64) -> Option<BTreeSet<i64>> {
        Some((0..n).collect())
    }

    /// `min(x + y, n - 1)` on `{0..n-1}`.
    pub fn oplus(n: i64) -> MonotoneMap {
        MonotoneMap::cached(&format!("oplus{n}"), || {
            MonotoneMap::new(format!("oplus{n}"), vec![Self::range(n), Self::range(n)], move |x| {
                (x[0] + x[1]).min(n - 1)
            })
            .unwrap()
        })
    }

    /// `max(0, x + y - (n - 1))` on `{0..n-1}`.
    pub fn odot(n: i64) -> MonotoneMap {
        MonotoneMap::cached(&format!("odot{n}"), || {
            MonotoneMap::new(format!("odot{n}"), vec![Self::range(n), Self::range(n)], move |x| {
                (x[0] + x[1] - (n - 1)).max(0)
            })
            .unwrap()
        })
    }

    /// 0 below `m`, 1 from `m` on.
    pub fn delta(m: i64) -> MonotoneMap {
        MonotoneMap::cached(&format!("delta{m}"), || {
            MonotoneMap::new(format!("delta{m}"), vec![None], move |x| i64::from(x[0] >= m)).unwrap()
        })
    }

    pub fn clamp01() -> MonotoneMap {
        MonotoneMap::cached("clamp01", || {
            MonotoneMap::new("clamp01", vec![None], |x| x[0].clamp(0, 1)).unwrap()
        })
    }

    /// `max(0, min(2, a + b - 1))`, the product carrying sums of 3-valued
    /// embeddings.
    pub fn star3() -> MonotoneMap {
        MonotoneMap::cached("star3", || {
            MonotoneMap::new("star3", vec![Self::range(3), Self::range(3)], |x| {
                (x[0] + x[1] - 1).clamp(0, 2)
            })
            .unwrap()
        })
    }
}

/// Parallel play: a move in the result is a move in one operand.
pub fn extend(f: &MonotoneMap, gs: &[SGame]) -> Result<SGame> {
    f.check_operands(gs)?;
    Ok(extend_unchecked(f, gs))
}

fn extend_unchecked(f: &MonotoneMap, gs: &[SGame]) -> SGame {
    if gs.iter().all(|g| g.is_leaf()) {
        let xs: Vec<i64> = gs.iter().map(|g| g.leaf_value().unwrap()).collect();
        return SGame::leaf(f.apply(&xs));
    }
    let key = (f.id, gs.iter().map(|g| g.id()).collect::<Box<[u32]>>());
    if let Some(g) = EXTEND.get(&key) {
        return *g;
    }
    let mut left = Vec::new();
    let mut right = Vec::new();
    let mut tuple = gs.to_vec();
    for i in 0..gs.len() {
        for &o in gs[i].left() {
            tuple[i] = o;
            left.push(extend_unchecked(f, &tuple));
        }
        for &o in gs[i].right() {
            tuple[i] = o;
            right.push(extend_unchecked(f, &tuple));
        }
        tuple[i] = gs[i];
    }
    let r = SGame::node(left, right);
    EXTEND.insert(key, r);
    r
}

/// Outcomes of `f~(gs)` by direct minimax, without building the game.
pub fn extend_outcomes(f: &MonotoneMap, gs: &[SGame]) -> ScoreOutcome {
    let mut memo = FxHashMap::default();
    let mut tuple = gs.to_vec();
    outcomes_rec(f, &mut tuple, &mut memo)
}

fn outcomes_rec(
    f: &MonotoneMap,
    gs: &mut Vec<SGame>,
    memo: &mut FxHashMap<Box<[u32]>, ScoreOutcome>,
) -> ScoreOutcome {
    if gs.iter().all(|g| g.is_leaf()) {
        let xs: Vec<i64> = gs.iter().map(|g| g.leaf_value().unwrap()).collect();
        let v = f.apply(&xs);
        return ScoreOutcome { lout: v, rout: v };
    }
    let key: Box<[u32]> = gs.iter().map(|g| g.id()).collect();
    if let Some(o) = memo.get(&key) {
        return *o;
    }
    let mut lout = i64::MIN;
    let mut rout = i64::MAX;
    for i in 0..gs.len() {
        let here = gs[i];
        for &o in here.left() {
            gs[i] = o;
            lout = lout.max(outcomes_rec(f, gs, memo).rout);
        }
        for &o in here.right() {
            gs[i] = o;
            rout = rout.min(outcomes_rec(f, gs, memo).lout);
        }
        gs[i] = here;
    }
    let out = ScoreOutcome { lout, rout };
    memo.insert(key, out);
    out
}

/// Outcomes of `g + h` without building the sum.
pub fn sum_outcomes(g: SGame, h: SGame) -> ScoreOutcome {
    extend_outcomes(&MonotoneMap::sum(), &[g, h])
}

fn checked_binary(f: MonotoneMap, g: SGame, h: SGame) -> Result<SGame> {
    extend(&f, &[g, h])
}

pub fn oplus(n: i64, g: SGame, h: SGame) -> Result<SGame> {
    checked_binary(MonotoneMap::oplus(n), g, h)
}

pub fn odot(n: i64, g: SGame, h: SGame) -> Result<SGame> {
    checked_binary(MonotoneMap::odot(n), g, h)
}

/// `g ∨ h`, the extension of max.
pub fn join(g: SGame, h: SGame) -> SGame {
    extend_unchecked(&MonotoneMap::max(), &[g, h])
}

/// `g ∧ h`, the extension of min.
pub fn meet(g: SGame, h: SGame) -> SGame {
    extend_unchecked(&MonotoneMap::min(), &[g, h])
}

pub fn delta(m: i64, g: SGame) -> SGame {
    extend_unchecked(&MonotoneMap::delta(m), &[g])
}

pub fn clamp01(g: SGame) -> SGame {
    extend_unchecked(&MonotoneMap::clamp01(), &[g])
}

/// `g_n = <(g^L)_n - n | (g^R)_n + n>`; heating is cooling by `-n`.
pub fn cool(g: SGame, n: i64) -> SGame {
    if g.is_leaf() || n == 0 {
        return g;
    }
    let key = (g.id(), n);
    if let Some(r) = COOL.get(&key) {
        return *r;
    }
    let left = g.left().iter().map(|o| cool(*o, n).shift(-n)).collect();
    let right = g.right().iter().map(|o| cool(*o, n).shift(n)).collect();
    let r = SGame::node(left, right);
    COOL.insert(key, r);
    r
}

pub fn heat(g: SGame, n: i64) -> SGame {
    cool(g, -n)
}
