//! The representation of `I_-2` scoring games as partizan games, the side
//! maps for games with at most three values, and overheating by `{1*|}`.

use dashmap::DashMap;
use once_cell::sync::Lazy;
use rustc_hash::FxBuildHasher;

use crate::error::{Error, Result};
use crate::partizan::Game;
use crate::extensions::cool;
use crate::scoring::{SGame, Temper};

type Memo<K> = DashMap<K, Game, FxBuildHasher>;

static PSI: Lazy<Memo<u32>> = Lazy::new(|| DashMap::with_hasher(FxBuildHasher));
static SIDES: Lazy<Memo<(bool, u32)>> = Lazy::new(|| DashMap::with_hasher(FxBuildHasher));
static INVERSE: Lazy<DashMap<u32, SGame, FxBuildHasher>> =
    Lazy::new(|| DashMap::with_hasher(FxBuildHasher));
static FUNNY: Lazy<Memo<(bool, Box<[u32]>, Box<[u32]>)>> =
    Lazy::new(|| DashMap::with_hasher(FxBuildHasher));

/// `psi(<L|R>) = {psi(L)|psi(R)}`, canonical; defined on `I_-2`.
pub fn psi(g: SGame) -> Result<Game> {
    if !g.in_i_n(-2) {
        return Err(Error::Domain(format!("{g} is not in I_-2")));
    }
    Ok(psi_rec(g))
}

fn psi_rec(g: SGame) -> Game {
    if let Some(n) = g.leaf_value() {
        return Game::integer(n);
    }
    if let Some(x) = PSI.get(&g.id()) {
        return *x;
    }
    let left: Vec<Game> = g.left().iter().map(|o| psi_rec(*o)).collect();
    let right: Vec<Game> = g.right().iter().map(|o| psi_rec(*o)).collect();
    let x = Game::new(left, right).canonical();
    PSI.insert(g.id(), x);
    x
}

/// `{L|R}` unless at least two integers `x` satisfy `L ◁ x ◁ R` for every
/// option, in which case the largest (or smallest) such integer.
pub fn funny_bracket(left: &[Game], right: &[Game], largest: bool) -> Game {
    let key = (
        largest,
        left.iter().map(|g| g.id()).collect::<Box<[u32]>>(),
        right.iter().map(|g| g.id()).collect::<Box<[u32]>>(),
    );
    if let Some(x) = FUNNY.get(&key) {
        return *x;
    }
    let plain = Game::new(left.iter().copied(), right.iter().copied()).canonical();
    let x = if left.is_empty() || right.is_empty() {
        plain
    } else {
        let bound = left
            .iter()
            .chain(right)
            .map(|g| {
                let (l, r) = g.stops();
                l.floor().abs().max(r.floor().abs())
            })
            .max()
            .unwrap_or(0)
            + 2;
        let fits: Vec<i64> = (-bound..=bound)
            .filter(|&n| {
                let x = Game::integer(n);
                left.iter().all(|gl| !x.leq(*gl)) && right.iter().all(|gr| !gr.leq(x))
            })
            .collect();
        if fits.len() >= 2 {
            Game::integer(if largest { *fits.last().unwrap() } else { fits[0] })
        } else {
            plain
        }
    };
    FUNNY.insert(key, x);
    x
}

/// `psi(g+)` computed directly from `g`, for games valued in `{0,1,2}`.
pub fn psi_plus(g: SGame) -> Result<Game> {
    side_map(g, true)
}

/// `psi(g-)` computed directly from `g`, for games valued in `{0,1,2}`.
pub fn psi_minus(g: SGame) -> Result<Game> {
    side_map(g, false)
}

fn side_map(g: SGame, largest: bool) -> Result<Game> {
    if !g.in_range(0, 2) {
        return Err(Error::Domain(format!("{g} takes values outside {{0,1,2}}")));
    }
    Ok(side_rec(g, largest))
}

fn side_rec(g: SGame, largest: bool) -> Game {
    if let Some(n) = g.leaf_value() {
        return Game::integer(n);
    }
    let key = (largest, g.id());
    if let Some(x) = SIDES.get(&key) {
        return *x;
    }
    let left: Vec<Game> = g.left().iter().map(|o| side_rec(*o, largest)).collect();
    let right: Vec<Game> = g.right().iter().map(|o| side_rec(*o, largest)).collect();
    let x = funny_bracket(&left, &right, largest);
    SIDES.insert(key, x);
    x
}

/// `E = {1*|}`.
pub fn e_game() -> Game {
    Game::new([Game::one().add(Game::star()).canonical()], [])
}

/// `x.E`, the image of heating by one under the representation.
pub fn overheat_e(x: Game) -> Game {
    x.norton(e_game()).expect("{1*|} is positive")
}

/// An even-tempered game `h` in `I_-2` with `psi(h) = x`; away from the
/// integers the options of `x` are realized one for one.
pub fn psi_inverse(x: Game) -> SGame {
    let x = x.canonical();
    if let Some(n) = x.as_number().and_then(|d| d.as_integer()) {
        return SGame::leaf(n);
    }
    if let Some(g) = INVERSE.get(&x.id()) {
        return *g;
    }
    let odd = |y: &Game| psi_inverse(*y).add(kernel_odd());
    let left = x.left().iter().map(odd).collect();
    let right = x.right().iter().map(odd).collect();
    let h = SGame::node(left, right);
    debug_assert!(h.in_i_n(-2));
    INVERSE.insert(x.id(), h);
    h
}

/// `<-1|1>`, the odd-tempered element of the kernel of `psi`.
pub fn kernel_odd() -> SGame {
    SGame::node(vec![SGame::leaf(-1)], vec![SGame::leaf(1)])
}

/// An even-tempered `h` with `h + h ≈ g`.
pub fn halve(g: SGame) -> Result<SGame> {
    if g.temper() != Temper::Even {
        return Err(Error::Domain(format!("{g} is odd-tempered")));
    }
    let mut n = 0;
    while !(cool(g.upside(), -n).in_i_n(-2) && cool(g.downside(), -n).in_i_n(-2)) {
        n += 1;
    }
    let k = cool(g, -n);
    let lo = psi(k.downside())?;
    let hi = psi(k.upside())?;
    let x1 = psi_inverse(lo.half());
    let x2 = psi_inverse(hi.sub(lo).canonical().half());
    let j = if x2.is_leaf() { x1 } else { SGame::with_sides(x1.add(x2), x1)? };
    Ok(cool(j, n))
}
