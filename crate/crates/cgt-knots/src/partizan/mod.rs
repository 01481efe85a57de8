//! Short partizan games: interned forms, order, canonical forms, numbers,
//! nimbers and Norton multiplication.

mod dyadic;
mod format;
mod parse;

use std::cmp::Ordering;
use std::hash::{Hash, Hasher};
use std::sync::atomic::{AtomicU32, Ordering as AtomicOrdering};

use dashmap::DashMap;
use once_cell::sync::Lazy;
use rustc_hash::FxBuildHasher;

use crate::error::{Error, Result};

pub use dyadic::Dyadic;
pub use parse::parse_game;

type Memo<K, V> = DashMap<K, V, FxBuildHasher>;

fn memo<K: Eq + Hash, V>() -> Memo<K, V> {
    DashMap::with_hasher(FxBuildHasher)
}

pub struct Node {
    id: u32,
    birthday: u32,
    left: Box<[Game]>,
    right: Box<[Game]>,
}

/// A loop-free game form. Forms are interned: structurally identical forms
/// are the same node, so `==` is form identity.
#[derive(Clone, Copy)]
pub struct Game(&'static Node);

impl PartialEq for Game {
    fn eq(&self, other: &Self) -> bool {
        self.0.id == other.0.id
    }
}

impl Eq for Game {}

impl Hash for Game {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.id.hash(state)
    }
}

impl std::fmt::Debug for Game {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OutcomeClass {
    LeftWins,
    RightWins,
    FirstPlayerWins,
    SecondPlayerWins,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Flags {
    pub is_number: bool,
    pub is_impartial: bool,
    pub is_all_small: bool,
}

static NEXT_ID: AtomicU32 = AtomicU32::new(0);
static INTERN: Lazy<DashMap<(Box<[u32]>, Box<[u32]>), Game, FxBuildHasher>> =
    Lazy::new(|| DashMap::with_hasher(FxBuildHasher));

static LEQ: Lazy<Memo<(u32, u32), bool>> = Lazy::new(memo);
static NEG: Lazy<Memo<u32, Game>> = Lazy::new(memo);
static ADD: Lazy<Memo<(u32, u32), Game>> = Lazy::new(memo);
static CANON: Lazy<Memo<u32, Game>> = Lazy::new(memo);
static NUMBER: Lazy<Memo<u32, Option<Dyadic>>> = Lazy::new(memo);
static NIM: Lazy<Memo<u32, u32>> = Lazy::new(memo);
static NORTON: Lazy<Memo<(u32, u32), Game>> = Lazy::new(memo);
static KAYLES: Lazy<Memo<u32, Game>> = Lazy::new(memo);
static GRUNDY: Lazy<Memo<u32, Game>> = Lazy::new(memo);

fn sorted_ids(options: &mut Vec<Game>) -> Box<[u32]> {
    options.sort_by_key(|g| g.0.id);
    options.dedup();
    options.iter().map(|g| g.0.id).collect()
}

impl Game {
    /// Interns the form `{left | right}`; repeated options collapse.
    pub fn new(left: impl IntoIterator<Item = Game>, right: impl IntoIterator<Item = Game>) -> Game {
        let mut left: Vec<Game> = left.into_iter().collect();
        let mut right: Vec<Game> = right.into_iter().collect();
        let key = (sorted_ids(&mut left), sorted_ids(&mut right));
        if let Some(g) = INTERN.get(&key) {
            return *g;
        }
        *INTERN.entry(key).or_insert_with(|| {
            let birthday = left
                .iter()
                .chain(&right)
                .map(|g| g.0.birthday + 1)
                .max()
                .unwrap_or(0);
            let node = Node {
                id: NEXT_ID.fetch_add(1, AtomicOrdering::Relaxed),
                birthday,
                left: left.into_boxed_slice(),
                right: right.into_boxed_slice(),
            };
            Game(Box::leak(Box::new(node)))
        })
    }

    pub fn zero() -> Game {
        Game::new([], [])
    }

    pub fn one() -> Game {
        Game::new([Game::zero()], [])
    }

    pub fn star() -> Game {
        Game::nimber(1)
    }

    pub fn up() -> Game {
        Game::new([Game::zero()], [Game::star()])
    }

    pub fn down() -> Game {
        Game::up().neg()
    }

    pub fn nimber(n: u32) -> Game {
        let opts: Vec<Game> = (0..n).map(Game::nimber).collect();
        Game::new(opts.clone(), opts)
    }

    pub fn integer(n: i64) -> Game {
        Game::number(Dyadic::integer(n))
    }

    /// Canonical form of a dyadic rational.
    pub fn number(d: Dyadic) -> Game {
        if let Some(n) = d.as_integer() {
            return match n.cmp(&0) {
                Ordering::Equal => Game::zero(),
                Ordering::Greater => Game::new([Game::integer(n - 1)], []),
                Ordering::Less => Game::new([], [Game::integer(n + 1)]),
            };
        }
        let (m, k) = (d.numerator(), d.exponent());
        Game::new(
            [Game::number(Dyadic::new(m - 1, k))],
            [Game::number(Dyadic::new(m + 1, k))],
        )
    }

    pub fn id(self) -> u32 {
        self.0.id
    }

    pub fn left(self) -> &'static [Game] {
        &self.0.left
    }

    pub fn right(self) -> &'static [Game] {
        &self.0.right
    }

    pub fn birthday(self) -> u32 {
        self.0.birthday
    }

    pub fn neg(self) -> Game {
        if let Some(g) = NEG.get(&self.0.id) {
            return *g;
        }
        let r = Game::new(
            self.right().iter().map(|g| g.neg()),
            self.left().iter().map(|g| g.neg()),
        );
        NEG.insert(self.0.id, r);
        r
    }

    pub fn add(self, other: Game) -> Game {
        let zero = Game::zero();
        if self == zero {
            return other;
        }
        if other == zero {
            return self;
        }
        let key = (self.id().min(other.id()), self.id().max(other.id()));
        if let Some(g) = ADD.get(&key) {
            return *g;
        }
        let left = self
            .left()
            .iter()
            .map(|gl| gl.add(other))
            .chain(other.left().iter().map(|hl| self.add(*hl)));
        let left: Vec<Game> = left.collect();
        let right = self
            .right()
            .iter()
            .map(|gr| gr.add(other))
            .chain(other.right().iter().map(|hr| self.add(*hr)));
        let right: Vec<Game> = right.collect();
        let r = Game::new(left, right);
        ADD.insert(key, r);
        r
    }

    pub fn sub(self, other: Game) -> Game {
        self.add(other.neg())
    }

    /// `self <= other`: holds unless some `self^L >= other` or some
    /// `other^R <= self`.
    pub fn leq(self, other: Game) -> bool {
        if self == other {
            return true;
        }
        let key = (self.id(), other.id());
        if let Some(b) = LEQ.get(&key) {
            return *b;
        }
        let r = !(self.left().iter().any(|gl| other.leq(*gl))
            || other.right().iter().any(|hr| hr.leq(self)));
        LEQ.insert(key, r);
        r
    }

    pub fn geq(self, other: Game) -> bool {
        other.leq(self)
    }

    /// Equality of values (not of forms).
    pub fn equals(self, other: Game) -> bool {
        self.leq(other) && other.leq(self)
    }

    pub fn lt(self, other: Game) -> bool {
        self.leq(other) && !other.leq(self)
    }

    pub fn fuzzy(self, other: Game) -> bool {
        !self.leq(other) && !other.leq(self)
    }

    /// `self ◁ other`: less than or confused with.
    pub fn lf(self, other: Game) -> bool {
        !other.leq(self)
    }

    pub fn outcome(self) -> OutcomeClass {
        let zero = Game::zero();
        match (zero.leq(self), self.leq(zero)) {
            (true, true) => OutcomeClass::SecondPlayerWins,
            (true, false) => OutcomeClass::LeftWins,
            (false, true) => OutcomeClass::RightWins,
            (false, false) => OutcomeClass::FirstPlayerWins,
        }
    }

    /// Deletes dominated options and bypasses reversible ones until neither
    /// applies.
    pub fn canonical(self) -> Game {
        if let Some(g) = CANON.get(&self.0.id) {
            return *g;
        }
        let mut left: Vec<Game> = self.left().iter().map(|g| g.canonical()).collect();
        let mut right: Vec<Game> = self.right().iter().map(|g| g.canonical()).collect();
        let result = loop {
            drop_dominated(&mut left, |a, b| a.leq(b));
            drop_dominated(&mut right, |a, b| b.leq(a));
            let current = Game::new(left.iter().copied(), right.iter().copied());
            let mut changed = false;
            if let Some(i) = left
                .iter()
                .position(|x| x.right().iter().any(|xr| xr.leq(current)))
            {
                let x = left.swap_remove(i);
                let xr = *x.right().iter().find(|xr| xr.leq(current)).unwrap();
                left.extend_from_slice(xr.left());
                changed = true;
            } else if let Some(i) = right
                .iter()
                .position(|x| x.left().iter().any(|xl| current.leq(*xl)))
            {
                let x = right.swap_remove(i);
                let xl = *x.left().iter().find(|xl| current.leq(**xl)).unwrap();
                right.extend_from_slice(xl.right());
                changed = true;
            }
            if !changed {
                break current;
            }
            left.sort_by_key(|g| g.id());
            left.dedup();
            right.sort_by_key(|g| g.id());
            right.dedup();
        };
        CANON.insert(self.0.id, result);
        CANON.insert(result.0.id, result);
        result
    }

    pub fn is_canonical(self) -> bool {
        self.canonical() == self
    }

    /// Value of the game when it equals a number.
    pub fn as_number(self) -> Option<Dyadic> {
        self.canonical().canonical_number()
    }

    fn canonical_number(self) -> Option<Dyadic> {
        if let Some(v) = NUMBER.get(&self.0.id) {
            return *v;
        }
        let lefts: Option<Vec<Dyadic>> = self.left().iter().map(|g| g.canonical_number()).collect();
        let rights: Option<Vec<Dyadic>> = self.right().iter().map(|g| g.canonical_number()).collect();
        let v = match (lefts, rights) {
            (Some(l), Some(r)) => {
                let lo = l.into_iter().max();
                let hi = r.into_iter().min();
                Dyadic::simplest_between(lo, hi)
            }
            _ => None,
        };
        NUMBER.insert(self.0.id, v);
        v
    }

    pub fn is_number(self) -> bool {
        self.as_number().is_some()
    }

    /// Left and right stopping values.
    pub fn stops(self) -> (Dyadic, Dyadic) {
        let c = self.canonical();
        (c.left_stop(), c.right_stop())
    }

    fn left_stop(self) -> Dyadic {
        match self.canonical_number() {
            Some(v) => v,
            None => self
                .left()
                .iter()
                .map(|g| g.right_stop())
                .max()
                .expect("canonical non-numbers have left options"),
        }
    }

    fn right_stop(self) -> Dyadic {
        match self.canonical_number() {
            Some(v) => v,
            None => self
                .right()
                .iter()
                .map(|g| g.left_stop())
                .min()
                .expect("canonical non-numbers have right options"),
        }
    }

    pub fn classify(self) -> Flags {
        let c = self.canonical();
        Flags {
            is_number: c.canonical_number().is_some(),
            is_impartial: c.impartial_form(),
            is_all_small: c.all_small_form(),
        }
    }

    /// Every position has identical left and right option sets.
    pub fn impartial_form(self) -> bool {
        self.left() == self.right() && self.left().iter().all(|g| g.impartial_form())
    }

    /// Every position has options for both players or for neither.
    pub fn all_small_form(self) -> bool {
        self.left().is_empty() == self.right().is_empty()
            && self.left().iter().chain(self.right()).all(|g| g.all_small_form())
    }

    /// Grundy value via the mex rule.
    pub fn nim_value(self) -> Result<u32> {
        if self.impartial_form() {
            return Ok(self.mex_value());
        }
        let c = self.canonical();
        if c.impartial_form() {
            Ok(c.mex_value())
        } else {
            Err(Error::NotImpartial)
        }
    }

    fn mex_value(self) -> u32 {
        if let Some(v) = NIM.get(&self.0.id) {
            return *v;
        }
        let seen: Vec<u32> = self.left().iter().map(|g| g.mex_value()).collect();
        let v = mex(&seen);
        NIM.insert(self.0.id, v);
        v
    }

    /// Kayles row of length `n`.
    pub fn kayles(n: u32) -> Game {
        if let Some(g) = KAYLES.get(&n) {
            return *g;
        }
        let mut opts = Vec::new();
        for take in 1..=2u32.min(n) {
            for i in 0..=(n - take) {
                opts.push(Game::kayles(i).add(Game::kayles(n - take - i)));
            }
        }
        let g = Game::new(opts.clone(), opts);
        KAYLES.insert(n, g);
        g
    }

    /// Grundy's game heap of size `n`.
    pub fn grundy(n: u32) -> Game {
        if let Some(g) = GRUNDY.get(&n) {
            return *g;
        }
        let opts: Vec<Game> = (1..n)
            .filter(|&i| 2 * i < n)
            .map(|i| Game::grundy(i).add(Game::grundy(n - i)))
            .collect();
        let g = Game::new(opts.clone(), opts);
        GRUNDY.insert(n, g);
        g
    }

    /// Norton product `self.a`; depends on the form of `a`, which must be
    /// positive.
    pub fn norton(self, a: Game) -> Result<Game> {
        if a.outcome() != OutcomeClass::LeftWins {
            return Err(Error::NonPositiveMultiplier);
        }
        Ok(self.canonical().norton_rec(a))
    }

    fn norton_rec(self, a: Game) -> Game {
        let key = (self.id(), a.id());
        if let Some(g) = NORTON.get(&key) {
            return *g;
        }
        let r = match self.canonical_number().and_then(Dyadic::as_integer) {
            Some(n) => {
                let mut acc = Game::zero();
                let step = if n >= 0 { a } else { a.neg() };
                for _ in 0..n.unsigned_abs() {
                    acc = acc.add(step).canonical();
                }
                acc
            }
            None => {
                let twice = a.add(a).canonical();
                let mut left = Vec::new();
                for gl in self.left() {
                    let p = gl.norton_rec(a);
                    left.extend(a.left().iter().map(|al| p.add(*al).canonical()));
                    left.extend(a.right().iter().map(|ar| p.add(twice).sub(*ar).canonical()));
                }
                let mut right = Vec::new();
                for gr in self.right() {
                    let p = gr.norton_rec(a);
                    right.extend(a.left().iter().map(|al| p.sub(*al).canonical()));
                    right.extend(a.right().iter().map(|ar| p.sub(twice).add(*ar).canonical()));
                }
                Game::new(left, right).canonical()
            }
        };
        NORTON.insert(key, r);
        r
    }

    /// A game `h` with `h + h = self` and the same outcome, as
    /// `(1/2).(self + 2n) - n` for `self + 2n` positive.
    pub fn half(self) -> Game {
        let g = self.canonical();
        let half = Game::number(Dyadic::new(1, 1));
        match g.outcome() {
            OutcomeClass::SecondPlayerWins => Game::zero(),
            OutcomeClass::LeftWins => half.norton(g).expect("positive"),
            OutcomeClass::RightWins => g.neg().half().neg(),
            OutcomeClass::FirstPlayerWins => {
                let n = (-g.floor_int()).max(0) + 1;
                let shifted = g.add(Game::integer(2 * n)).canonical();
                let h = half.norton(shifted).expect("shifted game is positive");
                h.sub(Game::integer(n)).canonical()
            }
        }
    }

    /// Least integer `n` with `n >= self`.
    pub fn ceil_int(self) -> i64 {
        let (l, _) = self.stops();
        let mut n = l.floor() - 1;
        while !Game::integer(n).geq(self) {
            n += 1;
        }
        n
    }

    /// Greatest integer `n` with `n <= self`.
    pub fn floor_int(self) -> i64 {
        let (_, r) = self.stops();
        let mut n = r.ceil() + 1;
        while !Game::integer(n).leq(self) {
            n -= 1;
        }
        n
    }

    /// A deterministic structural order, independent of interning order.
    pub fn structural_cmp(self, other: Game) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        self.birthday()
            .cmp(&other.birthday())
            .then_with(|| cmp_option_lists(self.left(), other.left()))
            .then_with(|| cmp_option_lists(self.right(), other.right()))
    }
}

fn cmp_option_lists(a: &[Game], b: &[Game]) -> Ordering {
    let mut a: Vec<Game> = a.to_vec();
    let mut b: Vec<Game> = b.to_vec();
    a.sort_by(|x, y| x.structural_cmp(*y));
    b.sort_by(|x, y| x.structural_cmp(*y));
    a.len().cmp(&b.len()).then_with(|| {
        a.iter()
            .zip(&b)
            .map(|(x, y)| x.structural_cmp(*y))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    })
}

fn drop_dominated(options: &mut Vec<Game>, worse: impl Fn(Game, Game) -> bool) {
    let mut i = 0;
    while i < options.len() {
        let x = options[i];
        let dominated = options
            .iter()
            .enumerate()
            .any(|(j, &y)| j != i && worse(x, y) && (!worse(y, x) || j < i));
        if dominated {
            options.remove(i);
        } else {
            i += 1;
        }
    }
}

pub fn mex(values: &[u32]) -> u32 {
    (0..).find(|v| !values.contains(v)).unwrap()
}

/// Nim-sum: binary addition without carries.
pub fn nim_add(m: u32, n: u32) -> u32 {
    m ^ n
}

impl std::ops::Add for Game {
    type Output = Game;
    fn add(self, rhs: Game) -> Game {
        Game::add(self, rhs)
    }
}

impl std::ops::Sub for Game {
    type Output = Game;
    fn sub(self, rhs: Game) -> Game {
        Game::sub(self, rhs)
    }
}

impl std::ops::Neg for Game {
    type Output = Game;
    fn neg(self) -> Game {
        Game::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interning_is_identity() {
        let a = Game::new([Game::zero()], [Game::zero()]);
        assert_eq!(a, Game::star());
        assert_eq!(Game::new([Game::zero(), Game::zero()], []), Game::one());
    }

    #[test]
    fn basic_order() {
        let (z, s, o) = (Game::zero(), Game::star(), Game::one());
        assert!(s.leq(o));
        assert!(s.fuzzy(z));
        assert_eq!(o.outcome(), OutcomeClass::LeftWins);
        assert_eq!(s.outcome(), OutcomeClass::FirstPlayerWins);
        assert_eq!(z.outcome(), OutcomeClass::SecondPlayerWins);
        assert_eq!(o.neg().outcome(), OutcomeClass::RightWins);
    }

    #[test]
    fn sums_are_forms() {
        let o = Game::one();
        assert_eq!(o + o, Game::new([o], []));
        assert_eq!(o + o.neg(), Game::new([o.neg()], [o]));
        assert_eq!((o + o.neg()).canonical(), Game::zero());
    }

    #[test]
    fn negation_examples() {
        assert_eq!(Game::zero().neg(), Game::zero());
        assert_eq!(Game::star().neg(), Game::star());
        assert_eq!(Game::integer(-1).neg(), Game::one());
    }

    #[test]
    fn canonical_numbers() {
        assert_eq!(Game::integer(7), Game::new([Game::integer(6)], []));
        let half = Game::number("1/2".parse().unwrap());
        assert_eq!(half, Game::new([Game::zero()], [Game::one()]));
        assert!(half.is_canonical());
    }

    #[test]
    fn stops_of_switch() {
        let pm = Game::new([Game::one()], [Game::integer(-1)]);
        assert_eq!(pm.stops(), (Dyadic::integer(1), Dyadic::integer(-1)));
        assert_eq!(Game::star().stops(), (Dyadic::ZERO, Dyadic::ZERO));
    }

    #[test]
    fn mex_rule() {
        assert_eq!(mex(&[0, 1, 3]), 2);
        assert_eq!(mex(&[]), 0);
    }
}
