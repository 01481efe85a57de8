use std::collections::{BTreeSet, HashMap};

use cgt_knots::tangle::{parse_sum, Pseudo};
use kgt::play::{analyze, apply, engine_move, legal_moves, parse_position, position_text, verdict, Player, Session, SumMove};

/// Final score (1 knotted) under perfect play by plain minimax on positions.
fn brute(ts: &[Pseudo], lear_to_move: bool, memo: &mut HashMap<(String, bool), i64>) -> i64 {
    let key = (position_text(ts), lear_to_move);
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let moves = legal_moves(ts);
    let v = if moves.is_empty() {
        i64::from(!ts.iter().all(|t| t.is_unknot().unwrap()))
    } else {
        let vals = moves.iter().map(|&m| brute(&apply(ts, m).unwrap(), !lear_to_move, memo));
        if lear_to_move { vals.max().unwrap() } else { vals.min().unwrap() }
    };
    memo.insert(key, v);
    v
}

fn compositions(total: u32) -> Vec<Vec<u32>> {
    if total == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=total {
        for mut rest in compositions(total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn shadows(max: u32) -> Vec<Pseudo> {
    let mut seen = BTreeSet::new();
    for n in 1..=max {
        for v in compositions(n) {
            let rev: Vec<u32> = v.iter().rev().copied().collect();
            seen.insert(v.min(rev));
        }
    }
    seen.into_iter().map(|v| Pseudo::shadow(&v)).filter(Pseudo::is_knot).collect()
}

/// Single shadows and two-component sums with at most `max` crossings.
fn sums(max: u64) -> Vec<Vec<Pseudo>> {
    let one = shadows(max as u32);
    let mut out: Vec<Vec<Pseudo>> = one.iter().map(|t| vec![t.clone()]).collect();
    for (i, a) in one.iter().enumerate() {
        for b in &one[i..] {
            if a.crossings() + b.crossings() <= max {
                out.push(vec![a.clone(), b.clone()]);
            }
        }
    }
    out
}

fn pos(text: &str) -> Vec<Pseudo> {
    parse_position(text).unwrap()
}

#[test]
fn lear_has_already_won() {
    let p = pos("[0,(1),3]");
    for m in legal_moves(&p) {
        assert_eq!(verdict(&apply(&p, m).unwrap()), Some("knotted"));
    }
    let m = engine_move(&p, Player::Ursula).unwrap();
    assert_eq!(m, legal_moves(&p)[0]);
}

#[test]
fn single_crossing_loses_for_lear() {
    let p = pos("[(1)]");
    let a = analyze(&p).unwrap();
    assert_eq!((a.temper.as_str(), a.lout, a.rout), ("odd", 0, 0));
    let m = engine_move(&p, Player::Lear).unwrap();
    assert_eq!(m, SumMove { component: 0, region: 0, sign: 1 });
    assert_eq!(verdict(&apply(&p, m).unwrap()), Some("unknot"));
}

#[test]
fn first_player_keeps_the_win() {
    let mut memo = HashMap::new();
    let p = pos("[(3),(1),(3)]");
    for mover in [Player::Lear, Player::Ursula] {
        let lear = mover == Player::Lear;
        assert_eq!(brute(&p, lear, &mut memo), i64::from(lear), "{mover}");
        let child = apply(&p, engine_move(&p, mover).unwrap()).unwrap();
        assert_eq!(brute(&child, !lear, &mut memo), i64::from(lear), "{mover}");
    }
    let p = pos("[(2),(2)]");
    assert_eq!((brute(&p, true, &mut memo), brute(&p, false, &mut memo)), (0, 1));
}

#[test]
fn engine_never_worsens_its_outcome() {
    let mut memo = HashMap::new();
    let mut checked = 0;
    for p in sums(7) {
        for mover in [Player::Lear, Player::Ursula] {
            let lear = mover == Player::Lear;
            let best = brute(&p, lear, &mut memo);
            let m = engine_move(&p, mover).unwrap();
            let got = brute(&apply(&p, m).unwrap(), !lear, &mut memo);
            assert_eq!(got, best, "{} {mover}", position_text(&p));
            checked += 1;
        }
        let a = analyze(&p).unwrap();
        assert_eq!(a.lout, brute(&p, true, &mut memo), "{}", position_text(&p));
        assert_eq!(a.rout, brute(&p, false, &mut memo), "{}", position_text(&p));
    }
    assert!(checked > 100);
}

#[test]
fn engine_rejects_finished_positions() {
    let p = pos("[(1)]");
    let done = apply(&p, legal_moves(&p)[1]).unwrap();
    assert!(legal_moves(&done).is_empty());
    assert!(engine_move(&done, Player::Lear).is_err());
}

#[test]
fn links_are_refused() {
    assert!(parse_position("[2]").is_err());
    assert!(parse_position("[(1)] + [2]").is_err());
    assert!(parse_position("[(1").is_err());
}

#[test]
fn sessions_alternate_and_replay() {
    let p = pos("[(3),(1),(3)]");
    let mut s = Session::new("a".into(), p.clone(), Player::Ursula, Player::Ursula).unwrap();
    let mut views = vec![s.view().unwrap()];
    while !legal_moves(&s.position).is_empty() {
        assert_eq!(s.turn, Player::Ursula);
        let m = legal_moves(&s.position)[legal_moves(&s.position).len() - 1];
        s.human_move(m).unwrap();
        views.push(s.view().unwrap());
    }
    let v = s.view().unwrap();
    assert!(v.terminal);
    assert_eq!(v.verdict.as_deref(), Some("knotted"));
    assert_eq!(v.history.len(), 7);

    let mut r = Session::new("b".into(), p, Player::Ursula, Player::Ursula).unwrap();
    let mut replayed = vec![r.view().unwrap()];
    for m in v.history.iter().step_by(2) {
        r.human_move(*m).unwrap();
        replayed.push(r.view().unwrap());
    }
    for (a, b) in views.iter().zip(&replayed) {
        assert_eq!(a.analysis, b.analysis);
        assert_eq!(a.history, b.history);
    }
}

#[test]
fn engine_as_lear_always_knots_the_seven() {
    let p = pos("[(3),(1),(3)]");
    fn explore(s: Session, n: &mut usize) {
        if legal_moves(&s.position).is_empty() {
            assert_eq!(verdict(&s.position), Some("knotted"));
            *n += 1;
            return;
        }
        for m in legal_moves(&s.position) {
            let mut t = s.clone();
            t.human_move(m).unwrap();
            explore(t, n);
        }
    }
    let mut n = 0;
    explore(Session::new("c".into(), p, Player::Ursula, Player::Lear).unwrap(), &mut n);
    assert!(n > 0);
}

#[test]
fn human_out_of_turn_is_refused() {
    let p = parse_sum("[(2),(2)]").unwrap();
    let mut s = Session::new("d".into(), p, Player::Lear, Player::Ursula).unwrap();
    assert_eq!(s.turn, Player::Lear);
    assert!(s.engine_move.is_some());
    let bad = SumMove { component: 3, region: 0, sign: 1 };
    assert!(s.human_move(bad).is_err());
    assert_eq!(s.history.len(), 1);
}
