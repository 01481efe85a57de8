use std::collections::BTreeSet;

use cgt_knots::boolean::{outcome_of_class, UValue};
use cgt_knots::tangle::{
    cf_value, classify_shadow, is_odd_even, normalize, parse_sum, parse_tangle, reduce_shadow,
    solve, solve_class, sum_outcomes, sum_winner, tkontk_value, Mode, Pseudo, SumVerdict, Twist,
};
use proptest::prelude::*;

fn t(s: &str) -> Pseudo {
    parse_tangle(s).unwrap()
}

/// Continuant read from the other end: `K(a1..an) = a1 K(a2..an) + K(a3..an)`.
fn continuant(a: &[i64]) -> i128 {
    match a.len() {
        0 => 1,
        1 => a[0] as i128,
        _ => a[0] as i128 * continuant(&a[1..]) + continuant(&a[2..]),
    }
}

fn compositions(total: u32, min_part: u32) -> Vec<Vec<u32>> {
    if total == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in min_part.max(1)..=total {
        for mut rest in compositions(total - first, min_part) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Rational knot shadows with `crossings` crossings and every region
/// nonempty, one per reversal pair.
fn knot_shadows(crossings: u32) -> Vec<Pseudo> {
    let mut seen = BTreeSet::new();
    for v in compositions(crossings, 1) {
        let rev: Vec<u32> = v.iter().rev().copied().collect();
        seen.insert(v.min(rev));
    }
    seen.into_iter()
        .map(|v| Pseudo::shadow(&v))
        .filter(Pseudo::is_knot)
        .collect()
}

#[test]
fn continued_fraction_numerators_match_continuants() {
    for a in [vec![2, 3, 2, 4], vec![3, -2, -5, 3], vec![1, 1, 1, 1, 1], vec![0, 1, 3], vec![]] {
        let v = cf_value(&a);
        assert_eq!(v.numerator().abs() as i128, continuant(&a).abs(), "{a:?}");
    }
}

#[test]
fn shadow_classification_agrees_with_brute_force() {
    let mut n = 0;
    for c in 1..=9 {
        for s in knot_shadows(c) {
            let class = classify_shadow(&s).unwrap().bool_class;
            let brute = solve_class(&s).unwrap();
            assert_eq!(class, brute, "{s}");
            assert_eq!(outcome_of_class(class), solve(&s).unwrap(), "{s}");
            n += 1;
        }
    }
    assert!(n > 150, "{n}");
}

#[test]
fn downside_is_zero_for_every_small_shadow() {
    for c in 1..=9 {
        for s in knot_shadows(c) {
            assert_eq!(solve_class(&s).unwrap().u_minus, UValue::Zero, "{s}");
        }
    }
}

#[test]
fn shadows_with_empty_regions_classify_correctly() {
    for c in 0..=7 {
        for len in 1..=5 {
            for v in cartesian(c, len) {
                let s = Pseudo::shadow(&v);
                if !s.is_knot() {
                    continue;
                }
                assert_eq!(
                    classify_shadow(&s).unwrap().bool_class,
                    solve_class(&s).unwrap(),
                    "{s}"
                );
            }
        }
    }
}

fn cartesian(total: u32, len: usize) -> Vec<Vec<u32>> {
    if len == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    (0..=total)
        .flat_map(|first| {
            cartesian(total - first, len - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

#[test]
fn the_six_irreducible_shadows_favour_lear() {
    for s in [
        "[(3),(1),(3)]",
        "[(2),(1),(2),(2)]",
        "[(2),(2),(1),(2)]",
        "[(2),(1),(1),(2)]",
        "[(2),(2),(1),(2),(2)]",
        "[(2),(2)]",
    ] {
        let c = solve_class(&t(s)).unwrap();
        assert_eq!((c.u_minus, c.u_plus), (UValue::Zero, UValue::One), "{s}");
        assert!(!classify_shadow(&t(s)).unwrap().reduces_to_odd_even);
    }
}

#[test]
fn odd_even_shadows_have_zero_upside() {
    for c in 1..=9 {
        for s in knot_shadows(c).into_iter().filter(is_odd_even) {
            assert_eq!(solve_class(&s).unwrap().u_plus, UValue::Zero, "{s}");
        }
    }
}

#[test]
fn greedy_normal_form_agrees_with_search() {
    for c in 1..=9 {
        for s in knot_shadows(c) {
            let (nf, _) = reduce_shadow(&s, Mode::R1).unwrap();
            let greedy = nf.regions().is_empty() || is_odd_even(&nf);
            assert_eq!(greedy, classify_shadow(&s).unwrap().reduces_to_odd_even, "{s} -> {nf}");
        }
    }
}

#[test]
fn reidemeister_one_steps_add_a_star() {
    let star = tkontk_value(&t("[(1)]")).unwrap();
    for s in ["[(0),(3),(3)]", "[(0),(2),(2),(1)]", "[(3),(1),(0)]", "[(0),(4)]", "[(3),(2),(0)]"] {
        let p = t(s);
        let (nf, r1) = reduce_shadow(&p, Mode::R1).unwrap();
        let mut shifted = tkontk_value(&nf).unwrap();
        for _ in 0..r1 {
            shifted = shifted + star;
        }
        let a = solve_class(&p).unwrap();
        let b = cgt_knots::boolean::u_values(shifted).unwrap();
        assert_eq!((a.u_minus, a.u_plus), (b.u_minus, b.u_plus), "{s}");
        assert_eq!(a.temper, b.temper, "{s}");
    }
}

#[test]
fn reidemeister_two_steps_are_monotone() {
    for c in 3..=8 {
        for s in knot_shadows(c) {
            let v: Vec<u32> = s.regions().iter().map(|r| r.b).collect();
            for i in 0..v.len() {
                if v[i] < 2 {
                    continue;
                }
                let mut w = v.clone();
                w[i] -= 2;
                let r = Pseudo::shadow(&w);
                let (a, b) = (solve_class(&s).unwrap(), solve_class(&r).unwrap());
                assert!(b.u_plus.leq(a.u_plus), "{s} -> {r}");
                assert!(a.u_minus.leq(b.u_minus), "{s} -> {r}");
            }
        }
    }
}

#[test]
fn isotopies_preserve_every_resolution() {
    // [(1),(a),...] = [(a+1),...]: the leading crossing becomes one more in region 2.
    for signs in 0..(1u32 << 4) {
        let s: Vec<i64> = (0..4).map(|k| if signs >> k & 1 == 1 { 1 } else { -1 }).collect();
        let before = cf_value(&[s[0], s[1] + s[2], s[3]]);
        let after = cf_value(&[s[0] + s[1] + s[2], s[3]]);
        assert_eq!(before.numerator().abs(), after.numerator().abs());
        let with_zero = cf_value(&[s[0], s[1], 0, s[2], s[3]]);
        let merged = cf_value(&[s[0], s[1] + s[2], s[3]]);
        assert_eq!(with_zero, merged);
        let reversed = cf_value(&[s[3], s[2], s[1], s[0]]);
        assert_eq!(reversed.numerator().abs(), cf_value(&s).numerator().abs());
    }
}

fn sums_up_to(max: u32) -> Vec<Vec<Pseudo>> {
    let pool: Vec<Pseudo> = (1..=max).flat_map(knot_shadows).collect();
    let mut out = Vec::new();
    fn grow(pool: &[Pseudo], from: usize, left: u64, cur: &mut Vec<Pseudo>, out: &mut Vec<Vec<Pseudo>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        for i in from..pool.len() {
            if pool[i].crossings() <= left {
                cur.push(pool[i].clone());
                grow(pool, i, left - pool[i].crossings(), cur, out);
                cur.pop();
            }
        }
    }
    grow(&pool, 0, max as u64, &mut Vec::new(), &mut out);
    out
}

#[test]
fn sum_winner_matches_minimax() {
    let sums = sums_up_to(9);
    assert!(sums.len() > 300);
    for ts in &sums {
        let brute = SumVerdict::from_outcome(sum_outcomes(ts).unwrap());
        assert_eq!(sum_winner(ts).unwrap(), brute, "{ts:?}");
    }
}

#[test]
fn sum_examples() {
    assert_eq!(sum_winner(&parse_sum("[(1)] + [(1)]").unwrap()).unwrap(), SumVerdict::Ursula);
    assert_eq!(sum_winner(&[t("[(2),(2)]")]).unwrap(), SumVerdict::SecondPlayer);
    assert_eq!(sum_winner(&[t("[(3),(1),(3)]")]).unwrap(), SumVerdict::FirstPlayer);
}

proptest! {
    #[test]
    fn format_round_trips(v in prop::collection::vec((-5i64..6, 0u32..4), 0..7)) {
        let p = Pseudo(v.into_iter().map(|(a, b)| Twist::new(a, b)).collect());
        prop_assert_eq!(parse_tangle(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn moves_spend_one_crossing(v in prop::collection::vec((-3i64..4, 0u32..3), 1..5)) {
        let p = Pseudo(v.into_iter().map(|(a, b)| Twist::new(a, b)).collect());
        for m in p.moves() {
            prop_assert_eq!(m.unresolved() + 1, p.unresolved());
            prop_assert_eq!(m.is_knot(), p.is_knot());
        }
    }

    #[test]
    fn normalizing_keeps_knot_type(v in prop::collection::vec((-3i64..4, 0u32..3), 1..6)) {
        let p = Pseudo(v.into_iter().map(|(a, b)| Twist::new(a, b)).collect());
        let q = normalize(&p);
        prop_assert_eq!(p.is_knot(), q.is_knot());
        prop_assert_eq!(p.unresolved(), q.unresolved());
        if p.is_knot() && p.unresolved() <= 5 {
            prop_assert_eq!(tkontk_value(&p).unwrap(), tkontk_value(&q).unwrap());
        }
    }

    #[test]
    fn numerator_is_the_continuant(a in prop::collection::vec(-6i64..7, 0..8)) {
        prop_assert_eq!(cf_value(&a).numerator().abs() as i128, continuant(&a).abs());
    }
}
