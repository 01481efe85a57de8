mod common;

use std::collections::BTreeSet;

use cgt_knots::extensions::{
    clamp01, cool, delta, extend, extend_outcomes, heat, join, meet, odot, oplus, MonotoneMap,
};
use cgt_knots::{SGame, Temper};
use common::{levels, s, SCORING_POOL};

fn boolean_pool() -> Vec<SGame> {
    levels(&[0, 1], 3, None).pop().unwrap()
}

fn three_valued_pool() -> Vec<SGame> {
    levels(&[0, 1, 2], 2, Some(2)).pop().unwrap()
}

/// Outcomes of `f~(g)` for a unary `f` by plain minimax on the tree of `g`.
fn mapped_outcomes(f: &dyn Fn(i64) -> i64, g: SGame) -> (i64, i64) {
    fn go(f: &dyn Fn(i64) -> i64, g: SGame, left: bool) -> i64 {
        if let Some(v) = g.leaf_value() {
            return f(v);
        }
        let opts = if left { g.left() } else { g.right() };
        let vals = opts.iter().map(|&o| go(f, o, !left));
        if left { vals.max().unwrap() } else { vals.min().unwrap() }
    }
    (go(f, g, true), go(f, g, false))
}

#[test]
fn extension_of_addition_is_the_sum() {
    let sum = MonotoneMap::sum();
    assert_eq!(extend(&sum, &[SGame::leaf(2), s("<3|4>")]).unwrap(), s("<5|6>"));
    for &g in SCORING_POOL.iter().step_by(2) {
        for &h in SCORING_POOL.iter().step_by(3) {
            assert_eq!(extend(&sum, &[g, h]).unwrap(), g + h);
        }
    }
}

#[test]
fn temper_of_an_extension_is_the_parity_sum() {
    let pool = boolean_pool();
    for &g in pool.iter().step_by(3) {
        for &h in pool.iter().step_by(4) {
            assert_eq!(join(g, h).temper(), g.temper().xor(h.temper()));
        }
    }
}

#[test]
fn outcomes_slide_through_unary_maps() {
    let maps: [(&str, fn(i64) -> i64); 3] = [
        ("double", |x| 2 * x),
        ("floor0", |x| x.max(0)),
        ("step", |x| i64::from(x >= 1)),
    ];
    for (name, f) in maps {
        let m = MonotoneMap::new(name, vec![None], move |xs: &[i64]| f(xs[0])).unwrap();
        for &g in SCORING_POOL.iter() {
            let e = extend(&m, &[g]).unwrap();
            assert_eq!((e.lout(), e.rout()), mapped_outcomes(&f, g), "{name} {g}");
            assert_eq!(e.lout(), f(g.lout()));
            assert_eq!(e.rout(), f(g.rout()));
        }
    }
}

#[test]
fn local_minimax_agrees_with_built_games() {
    let pool = three_valued_pool();
    let f = MonotoneMap::oplus(3);
    for &g in pool.iter().step_by(5) {
        for &h in pool.iter().step_by(7) {
            let built = extend(&f, &[g, h]).unwrap().outcomes();
            assert_eq!(extend_outcomes(&f, &[g, h]), built);
        }
    }
}

#[test]
fn composition_lifts() {
    let pool = three_valued_pool();
    let shifted = MonotoneMap::new("inc", vec![None], |xs: &[i64]| xs[0] + 1).unwrap();
    let both = MonotoneMap::new("double_inc", vec![None], |xs: &[i64]| 2 * xs[0] + 1).unwrap();
    let double = MonotoneMap::new("double", vec![None], |xs: &[i64]| 2 * xs[0]).unwrap();
    for &g in &pool {
        let step = extend(&double, &[g]).unwrap();
        assert_eq!(extend(&shifted, &[step]).unwrap(), extend(&both, &[g]).unwrap());
    }
}

#[test]
fn named_operators() {
    assert_eq!(oplus(3, SGame::leaf(1), SGame::leaf(2)).unwrap(), SGame::leaf(2));
    assert_eq!(odot(3, SGame::leaf(1), SGame::leaf(1)).unwrap(), SGame::leaf(0));
    assert!(oplus(2, SGame::leaf(2), SGame::leaf(0)).is_err());
    for &g in &boolean_pool() {
        assert_eq!(join(g, SGame::leaf(0)), g);
        assert_eq!(meet(g, SGame::leaf(1)), g);
        assert_eq!(oplus(2, g, g).unwrap(), join(g, g));
        assert_eq!(odot(2, g, g).unwrap(), meet(g, g));
        assert_eq!(clamp01(g), g);
    }
    for &k in &three_valued_pool() {
        assert!(oplus(3, k, SGame::star()).unwrap().s_equiv(k + SGame::star()), "{k}");
        assert!(delta(1, k).values().iter().all(|v| *v == 0 || *v == 1));
    }
}

#[test]
fn bounding_functions_bound_extensions() {
    let pool = three_valued_pool();
    let lo = MonotoneMap::min();
    let hi = MonotoneMap::max();
    for &g in pool.iter().step_by(3) {
        for &h in pool.iter().step_by(5) {
            if g.temper() != h.temper() {
                continue;
            }
            assert!(extend(&lo, &[g, h]).unwrap().s_leq(extend(&hi, &[g, h]).unwrap()));
        }
    }
    for &g in &pool {
        assert!(delta(2, g).s_leq(delta(1, g)));
    }
}

#[test]
fn extensions_respect_equivalence() {
    let pool = three_valued_pool();
    let f = MonotoneMap::oplus(3);
    for &g in &pool {
        let g2 = g + SGame::star() + SGame::star();
        for &h in pool.iter().step_by(4) {
            let a = extend(&f, &[g, h]).unwrap();
            let b = extend(&f, &[g2, h]).unwrap();
            assert!(a.s_equiv(b), "{g} {h}");
        }
    }
}

#[test]
fn extensions_of_igames_are_igames() {
    let pool: Vec<SGame> = three_valued_pool().into_iter().filter(|g| g.is_igame()).collect();
    let f = MonotoneMap::oplus(3);
    for &g in &pool {
        for &h in pool.iter().step_by(2) {
            let e = extend(&f, &[g, h]).unwrap();
            assert!(e.is_igame(), "{g} {h}");
        }
    }
    let all = three_valued_pool();
    for &g in all.iter().step_by(2) {
        for &h in all.iter().step_by(3) {
            let e = extend(&f, &[g, h]).unwrap();
            let ups = extend(&f, &[g.upside(), h.upside()]).unwrap();
            let downs = extend(&f, &[g.downside(), h.downside()]).unwrap();
            assert!(e.upside().igame_equiv(ups.upside()).unwrap(), "{g} {h}");
            assert!(e.downside().igame_equiv(downs.downside()).unwrap(), "{g} {h}");
        }
    }
}

#[test]
fn rejects_bad_maps_and_operands() {
    assert!(MonotoneMap::new("neg", vec![None], |xs: &[i64]| -xs[0]).is_err());
    let dom: BTreeSet<i64> = [0, 1].into();
    let m = MonotoneMap::new("id01", vec![Some(dom)], |xs: &[i64]| xs[0]).unwrap();
    assert!(extend(&m, &[SGame::leaf(2)]).is_err());
    assert!(extend(&m, &[SGame::leaf(0), SGame::leaf(0)]).is_err());
}

#[test]
fn cooling_facts() {
    let pool = &*SCORING_POOL;
    for &g in pool {
        for n in -2..=2 {
            let c = cool(g, n);
            match g.temper() {
                Temper::Even => assert_eq!(c.outcomes(), g.outcomes(), "{g} {n}"),
                Temper::Odd => {
                    assert_eq!(c.lout(), g.lout() - n, "{g} {n}");
                    assert_eq!(c.rout(), g.rout() + n, "{g} {n}");
                }
            }
            for m in -1..=1 {
                assert_eq!(cool(c, m), cool(g, n + m));
            }
            assert_eq!(heat(c, n), g);
        }
    }
    for k in -3..=3 {
        assert_eq!(cool(SGame::leaf(k), 5), SGame::leaf(k));
    }
}

#[test]
fn cooling_is_additive_and_keeps_order() {
    let pool = &*SCORING_POOL;
    for &g in pool.iter().step_by(2) {
        for &h in pool.iter().step_by(3) {
            assert!(cool(g + h, 1).s_equiv(cool(g, 1) + cool(h, 1)));
            for n in [-1, 1] {
                assert_eq!(g.s_leq(h), cool(g, n).s_leq(cool(h, n)), "{g} {h} {n}");
            }
        }
    }
}

#[test]
fn cooling_slides_membership() {
    for &g in SCORING_POOL.iter() {
        for n in -4..=2 {
            for m in -1..=1 {
                assert_eq!(g.in_i_n(n), cool(g, m).in_i_n(n - 2 * m), "{g} {n} {m}");
            }
        }
    }
}
