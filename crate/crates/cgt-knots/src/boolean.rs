//! Two-valued games classified by the Norton multiples `u.{1/2|}`, the
//! rounded operations on those multiples, and related invariants of
//! few-valued games.

use std::fmt;

use once_cell::sync::Lazy;
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::extensions::{self, MonotoneMap};
use crate::partizan::{parse_game, Game};
use crate::psi::{funny_bracket, psi_minus, psi_plus};
use crate::scoring::{SGame, ScoreOutcome, Temper};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum UValue {
    Zero,
    Quarter,
    ThreeEighths,
    Half,
    HalfStar,
    FiveEighths,
    ThreeQuarters,
    One,
}

impl UValue {
    pub const ALL: [UValue; 8] = [
        UValue::Zero,
        UValue::Quarter,
        UValue::ThreeEighths,
        UValue::Half,
        UValue::HalfStar,
        UValue::FiveEighths,
        UValue::ThreeQuarters,
        UValue::One,
    ];

    pub fn label(self) -> &'static str {
        match self {
            UValue::Zero => "0",
            UValue::Quarter => "1/4",
            UValue::ThreeEighths => "3/8",
            UValue::Half => "1/2",
            UValue::HalfStar => "1/2*",
            UValue::FiveEighths => "5/8",
            UValue::ThreeQuarters => "3/4",
            UValue::One => "1",
        }
    }

    /// The letter naming `u.{1/2|}` among the even-tempered values.
    pub fn letter(self) -> &'static str {
        match self {
            UValue::Zero => "0",
            UValue::Quarter => "a",
            UValue::ThreeEighths => "b",
            UValue::Half => "c",
            UValue::HalfStar => "d",
            UValue::FiveEighths => "e",
            UValue::ThreeQuarters => "f",
            UValue::One => "1",
        }
    }

    pub fn from_label(s: &str) -> Option<UValue> {
        UValue::ALL.into_iter().find(|u| u.label() == s)
    }

    /// `u` itself as a partizan game.
    pub fn game(self) -> Game {
        UGAMES[self as usize]
    }

    /// `u.{1/2|}`.
    pub fn referent(self) -> Game {
        REFERENTS[self as usize]
    }

    pub fn leq(self, other: UValue) -> bool {
        self.game().leq(other.game())
    }

    /// Greatest element of U below `x + y`.
    pub fn cup(self, other: UValue) -> UValue {
        let s = self.game().add(other.game()).canonical();
        greatest_below(s)
    }

    /// Least element of U above `x + y - 1`.
    pub fn cap(self, other: UValue) -> UValue {
        let s = self.game().add(other.game()).sub(Game::one()).canonical();
        least_above(s)
    }
}

impl fmt::Display for UValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

fn greatest_below(s: Game) -> UValue {
    let below: Vec<UValue> = UValue::ALL.into_iter().filter(|u| u.game().leq(s)).collect();
    *below
        .iter()
        .find(|u| below.iter().all(|v| v.leq(**u)))
        .expect("U has a greatest element below every sum")
}

fn least_above(s: Game) -> UValue {
    let above: Vec<UValue> = UValue::ALL.into_iter().filter(|u| s.leq(u.game())).collect();
    *above
        .iter()
        .find(|u| above.iter().all(|v| u.leq(*v)))
        .expect("U has a least element above every sum")
}

static UGAMES: Lazy<Vec<Game>> = Lazy::new(|| {
    UValue::ALL
        .iter()
        .map(|u| parse_game(u.label()).unwrap())
        .collect()
});

/// `{1/2|}`.
pub fn boolean_unit() -> Game {
    Game::new([Game::number(crate::Dyadic::new(1, 1))], [])
}

static REFERENTS: Lazy<Vec<Game>> = Lazy::new(|| {
    let unit = boolean_unit();
    UGAMES.iter().map(|u| u.norton(unit).unwrap()).collect()
});

static IDENTIFY: Lazy<FxHashMap<Game, (Temper, UValue)>> = Lazy::new(|| {
    let mut m = FxHashMap::default();
    for u in UValue::ALL {
        m.insert(u.referent(), (Temper::Even, u));
        m.insert(u.referent().add(Game::star()).canonical(), (Temper::Odd, u));
    }
    assert_eq!(m.len(), 16, "the sixteen referents must be distinct");
    m
});

/// Temper and U-value of a canonical partizan game among the sixteen
/// referents `u.1` and `u.1 + *`.
pub fn identify(x: Game) -> Option<(Temper, UValue)> {
    IDENTIFY.get(&x.canonical()).copied()
}

/// Even-tempered referents carry the letter of their U-value, odd ones the
/// letter followed by `*`.
pub fn referent_name(temper: Temper, u: UValue) -> String {
    match (temper, u) {
        (Temper::Even, u) => u.letter().to_string(),
        (Temper::Odd, UValue::Zero) => "*".to_string(),
        (Temper::Odd, u) => format!("{}*", u.letter()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BoolClass {
    pub temper: Temper,
    pub u_minus: UValue,
    pub u_plus: UValue,
}

impl fmt::Display for BoolClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.temper, self.u_minus, self.u_plus)
    }
}

/// Classification of a `{0,1}`-valued game by parity and both sides.
pub fn u_values(g: SGame) -> Result<BoolClass> {
    if !g.in_range(0, 1) {
        return Err(Error::Domain(format!("{g} is not {{0,1}}-valued")));
    }
    let side = |x: Game| {
        let (t, u) = identify(x).unwrap_or_else(|| panic!("side value {x} of {g} is not a referent"));
        assert_eq!(t, g.temper(), "referent parity disagrees with {g}");
        u
    };
    Ok(BoolClass {
        temper: g.temper(),
        u_minus: side(psi_minus(g)?),
        u_plus: side(psi_plus(g)?),
    })
}

pub fn class_join(a: BoolClass, b: BoolClass) -> BoolClass {
    BoolClass {
        temper: a.temper.xor(b.temper),
        u_minus: a.u_minus.cup(b.u_minus),
        u_plus: a.u_plus.cup(b.u_plus),
    }
}

pub fn class_meet(a: BoolClass, b: BoolClass) -> BoolClass {
    BoolClass {
        temper: a.temper.xor(b.temper),
        u_minus: a.u_minus.cap(b.u_minus),
        u_plus: a.u_plus.cap(b.u_plus),
    }
}

/// Outcomes predicted from the class alone.
pub fn outcome_of_class(c: BoolClass) -> ScoreOutcome {
    let half = Game::number(crate::Dyadic::new(1, 1));
    match c.temper {
        Temper::Even => ScoreOutcome {
            lout: c.u_minus.game().ceil_int(),
            rout: c.u_plus.game().floor_int(),
        },
        Temper::Odd => ScoreOutcome {
            lout: c.u_plus.game().sub(half).canonical().ceil_int(),
            rout: c.u_minus.game().add(half).canonical().floor_int(),
        },
    }
}

/// Key of a two-valued game under indistinguishability by `⊕2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Oplus2Class {
    /// `None` for the one class that mixes both parities.
    pub temper: Option<Temper>,
    pub u_plus: UValue,
    pub u_minus_cup_half: UValue,
}

impl Oplus2Class {
    pub fn merged(&self) -> bool {
        self.temper.is_none()
    }
}

pub fn oplus2_class(g: SGame) -> Result<Oplus2Class> {
    let c = u_values(g)?;
    let low = c.u_minus.cup(UValue::Half);
    let merged = low == UValue::One && c.u_plus == UValue::One;
    Ok(Oplus2Class {
        temper: if merged { None } else { Some(c.temper) },
        u_plus: c.u_plus,
        u_minus_cup_half: low,
    })
}

/// `[delta_1(g), ..., delta_{n-1}(g)]` for an `n`-valued game.
pub fn delta_decompose(g: SGame, n: i64) -> Result<Vec<SGame>> {
    if n < 2 || !g.in_range(0, n - 1) {
        return Err(Error::Domain(format!("{g} is not {n}-valued")));
    }
    Ok((1..n).map(|m| extensions::delta(m, g)).collect())
}

/// Left outcome of an `n`-valued game recovered from its threshold games.
pub fn lout_from_deltas(deltas: &[SGame]) -> i64 {
    deltas
        .iter()
        .enumerate()
        .filter(|(_, d)| d.lout() == 1)
        .map(|(i, _)| i as i64 + 1)
        .max()
        .unwrap_or(0)
}

/// An even-tempered `{0,1,2}`-valued i-game whose representation is
/// `1 + x.^`.
pub fn embed_partizan_3valued(x: Game) -> Result<SGame> {
    let eps = x.norton(Game::up())?.canonical();
    if !eps.all_small_form() {
        return Err(Error::Domain(format!("{eps} is not all-small in form")));
    }
    let mut memo = FxHashMap::default();
    let g = phi_form(eps, Temper::Even, &mut memo);
    Ok(g.downside())
}

fn phi_form(eps: Game, temper: Temper, memo: &mut FxHashMap<(Game, Temper), SGame>) -> SGame {
    if let Some(g) = memo.get(&(eps, temper)) {
        return *g;
    }
    let g = if eps.left().is_empty() {
        match temper {
            Temper::Even => SGame::leaf(1),
            Temper::Odd => SGame::node(vec![SGame::leaf(0)], vec![SGame::leaf(2)]),
        }
    } else {
        let t = temper.flip();
        let left = eps.left().iter().map(|e| phi_form(*e, t, memo)).collect();
        let right = eps.right().iter().map(|e| phi_form(*e, t, memo)).collect();
        SGame::node(left, right)
    };
    memo.insert((eps, temper), g);
    g
}

/// The sum law carried by the embedding: `max(0, min(2, a + b - 1))`.
pub fn triple_star(g: SGame, h: SGame) -> Result<SGame> {
    extensions::extend(&MonotoneMap::star3(), &[g, h])
}

/// Row and column headers of the bracket tables.
pub const TABLE_ROWS: [&[UValue]; 9] = [
    &[UValue::Zero],
    &[UValue::Quarter],
    &[UValue::ThreeEighths],
    &[UValue::HalfStar],
    &[UValue::Half],
    &[UValue::Half, UValue::HalfStar],
    &[UValue::FiveEighths],
    &[UValue::ThreeQuarters],
    &[UValue::One],
];

pub const TABLE_COLUMNS: [&[UValue]; 9] = [
    &[UValue::Zero],
    &[UValue::Quarter],
    &[UValue::ThreeEighths],
    &[UValue::Half, UValue::HalfStar],
    &[UValue::Half],
    &[UValue::HalfStar],
    &[UValue::FiveEighths],
    &[UValue::ThreeQuarters],
    &[UValue::One],
];

pub fn antichain_name(temper: Temper, set: &[UValue]) -> String {
    set.iter()
        .map(|u| referent_name(temper, *u))
        .collect::<Vec<_>>()
        .join(",")
}

/// Downside brackets `{A|B}` over the nonempty antichains of the options'
/// parity; entries are named by their referents.
pub fn bracket_table(options: Temper) -> Vec<Vec<String>> {
    let games = |set: &[UValue]| -> Vec<Game> {
        set.iter()
            .map(|u| match options {
                Temper::Even => u.referent(),
                Temper::Odd => u.referent().add(Game::star()).canonical(),
            })
            .collect()
    };
    TABLE_ROWS
        .iter()
        .map(|row| {
            TABLE_COLUMNS
                .iter()
                .map(|col| {
                    let x = funny_bracket(&games(row), &games(col), false);
                    match identify(x) {
                        Some((t, u)) => referent_name(t, u),
                        None => format!("?{x}"),
                    }
                })
                .collect()
        })
        .collect()
}

pub fn cup_table() -> Vec<Vec<UValue>> {
    UValue::ALL
        .iter()
        .map(|x| UValue::ALL.iter().map(|y| x.cup(*y)).collect())
        .collect()
}

pub fn cap_table() -> Vec<Vec<UValue>> {
    UValue::ALL
        .iter()
        .map(|x| UValue::ALL.iter().map(|y| x.cap(*y)).collect())
        .collect()
}

/// Fixed text layout of the four tables.
pub fn tables_text() -> String {
    let mut out = String::new();
    let mut grid = |title: &str, cols: Vec<String>, rows: Vec<(String, Vec<String>)>| {
        out.push_str(title);
        out.push('\n');
        out.push_str(&format!("{:>6} |", ""));
        for c in &cols {
            out.push_str(&format!(" {c:>5}"));
        }
        out.push('\n');
        for (h, cells) in rows {
            out.push_str(&format!("{h:>6} |"));
            for c in cells {
                out.push_str(&format!(" {c:>5}"));
            }
            out.push('\n');
        }
        out.push('\n');
    };
    let labels: Vec<String> = UValue::ALL.iter().map(|u| u.label().to_string()).collect();
    for (title, table) in [("cup", cup_table()), ("cap", cap_table())] {
        let rows = UValue::ALL
            .iter()
            .zip(table)
            .map(|(u, r)| (u.label().to_string(), r.iter().map(|v| v.label().to_string()).collect()))
            .collect();
        grid(title, labels.clone(), rows);
    }
    for (title, opts) in [("even", Temper::Even), ("odd", Temper::Odd)] {
        let cols = TABLE_COLUMNS.iter().map(|c| antichain_name(opts, c)).collect();
        let rows = TABLE_ROWS
            .iter()
            .zip(bracket_table(opts))
            .map(|(r, cells)| (antichain_name(opts, r), cells))
            .collect();
        grid(&format!("brackets over {title} options"), cols, rows);
    }
    out
}
