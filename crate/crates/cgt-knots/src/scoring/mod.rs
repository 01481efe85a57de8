//! Well-tempered integer-valued scoring games: outcomes, i-games, sides and
//! the indistinguishability preorder.

mod parse;

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::atomic::{AtomicU32, Ordering as AtomicOrdering};

use dashmap::DashMap;
use once_cell::sync::Lazy;
use rustc_hash::FxBuildHasher;

use crate::error::{Error, Result};

pub use parse::parse_scoring;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Temper {
    Even,
    Odd,
}

impl Temper {
    pub fn flip(self) -> Temper {
        match self {
            Temper::Even => Temper::Odd,
            Temper::Odd => Temper::Even,
        }
    }

    pub fn xor(self, other: Temper) -> Temper {
        if self == other {
            Temper::Even
        } else {
            Temper::Odd
        }
    }

    pub fn of_parity(moves: usize) -> Temper {
        if moves.is_multiple_of(2) {
            Temper::Even
        } else {
            Temper::Odd
        }
    }
}

impl fmt::Display for Temper {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Temper::Even => "even",
            Temper::Odd => "odd",
        })
    }
}

/// Left and right outcomes: the final score under perfect play when Left,
/// respectively Right, moves first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ScoreOutcome {
    pub lout: i64,
    pub rout: i64,
}

enum Kind {
    Leaf(i64),
    Branch { left: Box<[SGame]>, right: Box<[SGame]> },
}

pub struct SNode {
    id: u32,
    temper: Temper,
    depth: u32,
    kind: Kind,
}

/// Interned scoring game; `==` is form identity.
#[derive(Clone, Copy)]
pub struct SGame(&'static SNode);

impl PartialEq for SGame {
    fn eq(&self, other: &Self) -> bool {
        self.0.id == other.0.id
    }
}

impl Eq for SGame {}

impl Hash for SGame {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.id.hash(state)
    }
}

impl fmt::Debug for SGame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(PartialEq, Eq, Hash)]
enum Key {
    Leaf(i64),
    Branch(Box<[u32]>, Box<[u32]>),
}

type Memo<K, V> = DashMap<K, V, FxBuildHasher>;

fn memo<K: Eq + Hash, V>() -> Memo<K, V> {
    DashMap::with_hasher(FxBuildHasher)
}

static NEXT_ID: AtomicU32 = AtomicU32::new(0);
static INTERN: Lazy<Memo<Key, SGame>> = Lazy::new(memo);
static OUTCOMES: Lazy<Memo<u32, ScoreOutcome>> = Lazy::new(memo);
static NEG: Lazy<Memo<u32, SGame>> = Lazy::new(memo);
static ADD: Lazy<Memo<(u32, u32), SGame>> = Lazy::new(memo);
static IGAME: Lazy<Memo<u32, bool>> = Lazy::new(memo);
static UPSIDE: Lazy<Memo<u32, SGame>> = Lazy::new(memo);
static DOWNSIDE: Lazy<Memo<u32, SGame>> = Lazy::new(memo);
static ILEQ: Lazy<Memo<(u32, u32), bool>> = Lazy::new(memo);
static BOUNDS: Lazy<Memo<u32, (i64, i64)>> = Lazy::new(memo);
static IN_I: Lazy<Memo<(u32, i64), bool>> = Lazy::new(memo);

fn ids(opts: &mut Vec<SGame>) -> Box<[u32]> {
    opts.sort_by_key(|g| g.0.id);
    opts.dedup();
    opts.iter().map(|g| g.0.id).collect()
}

impl SGame {
    pub fn leaf(n: i64) -> SGame {
        let key = Key::Leaf(n);
        if let Some(g) = INTERN.get(&key) {
            return *g;
        }
        *INTERN.entry(key).or_insert_with(|| {
            SGame(Box::leak(Box::new(SNode {
                id: NEXT_ID.fetch_add(1, AtomicOrdering::Relaxed),
                temper: Temper::Even,
                depth: 0,
                kind: Kind::Leaf(n),
            })))
        })
    }

    /// `<left | right>`; both sides nonempty and all options of one temper.
    pub fn build(
        left: impl IntoIterator<Item = SGame>,
        right: impl IntoIterator<Item = SGame>,
    ) -> Result<SGame> {
        let left: Vec<SGame> = left.into_iter().collect();
        let right: Vec<SGame> = right.into_iter().collect();
        if left.is_empty() || right.is_empty() {
            return Err(Error::Malformed("both sides need an option".into()));
        }
        let t = left[0].temper();
        if left.iter().chain(&right).any(|g| g.temper() != t) {
            return Err(Error::Malformed("options of mixed temper".into()));
        }
        Ok(SGame::node(left, right))
    }

    /// Builds a node whose well-temperedness the caller guarantees.
    pub(crate) fn node(mut left: Vec<SGame>, mut right: Vec<SGame>) -> SGame {
        debug_assert!(!left.is_empty() && !right.is_empty());
        let key = Key::Branch(ids(&mut left), ids(&mut right));
        if let Some(g) = INTERN.get(&key) {
            return *g;
        }
        *INTERN.entry(key).or_insert_with(|| {
            let temper = left[0].temper().flip();
            let depth = 1 + left.iter().chain(&right).map(|g| g.depth()).max().unwrap_or(0);
            SGame(Box::leak(Box::new(SNode {
                id: NEXT_ID.fetch_add(1, AtomicOrdering::Relaxed),
                temper,
                depth,
                kind: Kind::Branch {
                    left: left.into_boxed_slice(),
                    right: right.into_boxed_slice(),
                },
            })))
        })
    }

    /// `<n | n>`, written `n*`.
    pub fn starred(n: i64) -> SGame {
        SGame::node(vec![SGame::leaf(n)], vec![SGame::leaf(n)])
    }

    pub fn star() -> SGame {
        SGame::starred(0)
    }

    /// `<n + * | m + *>`.
    pub fn d(n: i64, m: i64) -> SGame {
        SGame::node(vec![SGame::starred(n)], vec![SGame::starred(m)])
    }

    /// `<<0 | m> | *>`.
    pub fn q(m: i64) -> SGame {
        let inner = SGame::node(vec![SGame::leaf(0)], vec![SGame::leaf(m)]);
        SGame::node(vec![inner], vec![SGame::star()])
    }

    pub fn id(self) -> u32 {
        self.0.id
    }

    pub fn temper(self) -> Temper {
        self.0.temper
    }

    pub fn depth(self) -> u32 {
        self.0.depth
    }

    pub fn leaf_value(self) -> Option<i64> {
        match self.0.kind {
            Kind::Leaf(n) => Some(n),
            Kind::Branch { .. } => None,
        }
    }

    pub fn is_leaf(self) -> bool {
        self.leaf_value().is_some()
    }

    pub fn left(self) -> &'static [SGame] {
        match &self.0.kind {
            Kind::Leaf(_) => &[],
            Kind::Branch { left, .. } => left,
        }
    }

    pub fn right(self) -> &'static [SGame] {
        match &self.0.kind {
            Kind::Leaf(_) => &[],
            Kind::Branch { right, .. } => right,
        }
    }

    /// Every leaf value occurring in the game tree.
    pub fn values(self) -> BTreeSet<i64> {
        let mut out = BTreeSet::new();
        let mut seen = rustc_hash::FxHashSet::default();
        let mut stack = vec![self];
        while let Some(g) = stack.pop() {
            if !seen.insert(g.id()) {
                continue;
            }
            match g.leaf_value() {
                Some(n) => {
                    out.insert(n);
                }
                None => stack.extend(g.left().iter().chain(g.right())),
            }
        }
        out
    }

    /// Smallest and largest leaf value.
    pub fn bounds(self) -> (i64, i64) {
        if let Some(n) = self.leaf_value() {
            return (n, n);
        }
        if let Some(b) = BOUNDS.get(&self.0.id) {
            return *b;
        }
        let b = self
            .left()
            .iter()
            .chain(self.right())
            .map(|g| g.bounds())
            .fold((i64::MAX, i64::MIN), |(lo, hi), (a, b)| (lo.min(a), hi.max(b)));
        BOUNDS.insert(self.0.id, b);
        b
    }

    pub fn in_range(self, lo: i64, hi: i64) -> bool {
        let (a, b) = self.bounds();
        lo <= a && b <= hi
    }

    pub fn outcomes(self) -> ScoreOutcome {
        if let Some(n) = self.leaf_value() {
            return ScoreOutcome { lout: n, rout: n };
        }
        if let Some(o) = OUTCOMES.get(&self.0.id) {
            return *o;
        }
        let lout = self.left().iter().map(|g| g.outcomes().rout).max().unwrap();
        let rout = self.right().iter().map(|g| g.outcomes().lout).min().unwrap();
        let o = ScoreOutcome { lout, rout };
        OUTCOMES.insert(self.0.id, o);
        o
    }

    pub fn lout(self) -> i64 {
        self.outcomes().lout
    }

    pub fn rout(self) -> i64 {
        self.outcomes().rout
    }

    pub fn neg(self) -> SGame {
        if let Some(n) = self.leaf_value() {
            return SGame::leaf(-n);
        }
        if let Some(g) = NEG.get(&self.0.id) {
            return *g;
        }
        let r = SGame::node(
            self.right().iter().map(|g| g.neg()).collect(),
            self.left().iter().map(|g| g.neg()).collect(),
        );
        NEG.insert(self.0.id, r);
        r
    }

    pub fn add(self, other: SGame) -> SGame {
        match (self.leaf_value(), other.leaf_value()) {
            (Some(a), Some(b)) => return SGame::leaf(a + b),
            (_, Some(0)) => return self,
            (Some(0), _) => return other,
            _ => {}
        }
        let key = (self.id().min(other.id()), self.id().max(other.id()));
        if let Some(g) = ADD.get(&key) {
            return *g;
        }
        let mut left: Vec<SGame> = self.left().iter().map(|g| g.add(other)).collect();
        left.extend(other.left().iter().map(|h| self.add(*h)));
        let mut right: Vec<SGame> = self.right().iter().map(|g| g.add(other)).collect();
        right.extend(other.right().iter().map(|h| self.add(*h)));
        let r = SGame::node(left, right);
        ADD.insert(key, r);
        r
    }

    pub fn sub(self, other: SGame) -> SGame {
        self.add(other.neg())
    }

    pub fn shift(self, n: i64) -> SGame {
        self.add(SGame::leaf(n))
    }

    pub fn sum(games: impl IntoIterator<Item = SGame>) -> SGame {
        games.into_iter().fold(SGame::leaf(0), SGame::add)
    }

    /// Every option an i-game, and even-tempered positions have `lout >= rout`.
    pub fn is_igame(self) -> bool {
        if self.is_leaf() {
            return true;
        }
        if let Some(b) = IGAME.get(&self.0.id) {
            return *b;
        }
        let o = self.outcomes();
        let r = (self.temper() == Temper::Odd || o.lout >= o.rout)
            && self.left().iter().chain(self.right()).all(|g| g.is_igame());
        IGAME.insert(self.0.id, r);
        r
    }

    /// The i-game Left falls back on when she gets the last move.
    pub fn upside(self) -> SGame {
        self.side(true)
    }

    /// The i-game Right falls back on when he gets the last move.
    pub fn downside(self) -> SGame {
        self.side(false)
    }

    fn side(self, up: bool) -> SGame {
        if self.is_leaf() {
            return self;
        }
        let table = if up { &UPSIDE } else { &DOWNSIDE };
        if let Some(g) = table.get(&self.0.id) {
            return *g;
        }
        let rebuilt = SGame::node(
            self.left().iter().map(|g| g.side(up)).collect(),
            self.right().iter().map(|g| g.side(up)).collect(),
        );
        let o = rebuilt.outcomes();
        let r = if rebuilt.temper() == Temper::Even && o.lout < o.rout {
            SGame::leaf(if up { o.rout } else { o.lout })
        } else {
            rebuilt
        };
        table.insert(self.0.id, r);
        r
    }

    /// `a ≲ b` for i-games of one temper: `lout(a - b) <= 0`.
    pub fn igame_leq(self, other: SGame) -> Result<bool> {
        if self.temper() != other.temper() {
            return Err(Error::TemperMismatch);
        }
        if !self.is_igame() || !other.is_igame() {
            return Err(Error::NotIGame);
        }
        Ok(self.igame_leq_unchecked(other))
    }

    fn igame_leq_unchecked(self, other: SGame) -> bool {
        if self == other {
            return true;
        }
        let key = (self.id(), other.id());
        if let Some(b) = ILEQ.get(&key) {
            return *b;
        }
        let r = self.sub(other).lout() <= 0;
        ILEQ.insert(key, r);
        r
    }

    pub fn igame_equiv(self, other: SGame) -> Result<bool> {
        Ok(self.igame_leq(other)? && other.igame_leq(self)?)
    }

    /// `g ≲ h`: same temper and both sides compare.
    pub fn s_leq(self, other: SGame) -> bool {
        self.temper() == other.temper()
            && self.upside().igame_leq_unchecked(other.upside())
            && self.downside().igame_leq_unchecked(other.downside())
    }

    /// `g ≈ h`.
    pub fn s_equiv(self, other: SGame) -> bool {
        self.s_leq(other) && other.s_leq(self)
    }

    /// Membership in `I_n`: even positions have `lout >= rout`, odd ones
    /// `lout - rout >= n`.
    pub fn in_i_n(self, n: i64) -> bool {
        if self.is_leaf() {
            return true;
        }
        let key = (self.0.id, n);
        if let Some(b) = IN_I.get(&key) {
            return *b;
        }
        let o = self.outcomes();
        let here = match self.temper() {
            Temper::Even => o.lout >= o.rout,
            Temper::Odd => o.lout - o.rout >= n,
        };
        let r = here && self.left().iter().chain(self.right()).all(|g| g.in_i_n(n));
        IN_I.insert(key, r);
        r
    }

    /// Applies `f` to every leaf.
    pub fn map_leaves(self, f: &dyn Fn(i64) -> SGame) -> SGame {
        let mut cache = rustc_hash::FxHashMap::default();
        self.map_leaves_rec(f, &mut cache)
    }

    fn map_leaves_rec(
        self,
        f: &dyn Fn(i64) -> SGame,
        cache: &mut rustc_hash::FxHashMap<u32, SGame>,
    ) -> SGame {
        if let Some(n) = self.leaf_value() {
            return f(n);
        }
        if let Some(g) = cache.get(&self.id()) {
            return *g;
        }
        let left = self.left().iter().map(|g| g.map_leaves_rec(f, cache)).collect();
        let right = self.right().iter().map(|g| g.map_leaves_rec(f, cache)).collect();
        let r = SGame::node(left, right);
        cache.insert(self.id(), r);
        r
    }

    /// A game whose upside is `a` and whose downside is `b`, for i-games
    /// `b ≲ a` of one temper. Leaves are projected onto the values of `a`
    /// and `b`, nearest first, ties downward.
    pub fn with_sides(a: SGame, b: SGame) -> Result<SGame> {
        if !b.igame_leq(a)? {
            return Err(Error::Domain("downside must lie below upside".into()));
        }
        let h = a
            .sub(b)
            .map_leaves(&|n| if n > 0 { SGame::d(0, n) } else { SGame::leaf(n) });
        let g = h.add(b);
        let allowed: Vec<i64> = a.values().union(&b.values()).copied().collect();
        let project = |n: i64| {
            let best = allowed
                .iter()
                .copied()
                .min_by(|x, y| {
                    (x - n)
                        .abs()
                        .cmp(&(y - n).abs())
                        .then_with(|| x.cmp(y))
                })
                .unwrap();
            SGame::leaf(best)
        };
        Ok(g.map_leaves(&project))
    }

    pub fn structural_cmp(self, other: SGame) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        match (self.leaf_value(), other.leaf_value()) {
            (Some(a), Some(b)) => return a.cmp(&b),
            (Some(_), None) => return Ordering::Less,
            (None, Some(_)) => return Ordering::Greater,
            _ => {}
        }
        self.depth()
            .cmp(&other.depth())
            .then_with(|| cmp_lists(self.left(), other.left()))
            .then_with(|| cmp_lists(self.right(), other.right()))
    }
}

fn sorted(opts: &[SGame]) -> Vec<SGame> {
    let mut v = opts.to_vec();
    v.sort_by(|a, b| a.structural_cmp(*b));
    v
}

fn cmp_lists(a: &[SGame], b: &[SGame]) -> Ordering {
    let (a, b) = (sorted(a), sorted(b));
    a.len().cmp(&b.len()).then_with(|| {
        a.iter()
            .zip(&b)
            .map(|(x, y)| x.structural_cmp(*y))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    })
}

impl fmt::Display for SGame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.leaf_value() {
            return write!(f, "{n}");
        }
        let (l, r) = (self.left(), self.right());
        if l.len() == 1 && l == r {
            if let Some(n) = l[0].leaf_value() {
                return if n == 0 { f.write_str("*") } else { write!(f, "{n}*") };
            }
        }
        let join = |opts: &[SGame]| {
            sorted(opts)
                .iter()
                .map(|g| g.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "<{}|{}>", join(l), join(r))
    }
}

impl std::ops::Add for SGame {
    type Output = SGame;
    fn add(self, rhs: SGame) -> SGame {
        SGame::add(self, rhs)
    }
}

impl std::ops::Sub for SGame {
    type Output = SGame;
    fn sub(self, rhs: SGame) -> SGame {
        SGame::sub(self, rhs)
    }
}

impl std::ops::Neg for SGame {
    type Output = SGame;
    fn neg(self) -> SGame {
        SGame::neg(self)
    }
}
