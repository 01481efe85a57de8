//! Play on connected sums of rational pseudodiagrams: analysis, the engine
//! and sessions.

use std::fmt;
use std::time::Instant;

use cgt_knots::boolean::outcome_of_class;
use cgt_knots::tangle::{parse_sum, sum_class, Move, Pseudo};
use cgt_knots::ScoreOutcome;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Player {
    Lear,
    Ursula,
}

impl Player {
    pub fn other(self) -> Player {
        match self {
            Player::Lear => Player::Ursula,
            Player::Ursula => Player::Lear,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::Lear => "lear",
            Player::Ursula => "ursula",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumMove {
    pub component: usize,
    pub region: usize,
    pub sign: i8,
}

impl fmt::Display for SumMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {:+}", self.component, self.region, self.sign)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Analysis {
    pub temper: String,
    pub u_minus: String,
    pub u_plus: String,
    pub lout: i64,
    pub rout: i64,
    pub winner_if_lear_first: Player,
    pub winner_if_ursula_first: Player,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlayError {
    Parse(String),
    Domain(String),
    Illegal(String),
    WrongTurn,
    Terminal,
}

impl fmt::Display for PlayError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlayError::Parse(m) | PlayError::Domain(m) | PlayError::Illegal(m) => f.write_str(m),
            PlayError::WrongTurn => f.write_str("not your turn"),
            PlayError::Terminal => f.write_str("the game is over"),
        }
    }
}

impl std::error::Error for PlayError {}

impl From<cgt_knots::Error> for PlayError {
    fn from(e: cgt_knots::Error) -> PlayError {
        match e {
            cgt_knots::Error::Parse { .. } => PlayError::Parse(e.to_string()),
            _ => PlayError::Domain(e.to_string()),
        }
    }
}

pub type Position = Vec<Pseudo>;

/// A connected sum of knot pseudodiagrams.
pub fn parse_position(text: &str) -> Result<Position, PlayError> {
    let ts = parse_sum(text)?;
    if let Some(t) = ts.iter().find(|t| !t.is_knot()) {
        return Err(PlayError::Domain(format!("{t} closes into a link")));
    }
    Ok(ts)
}

pub fn position_text(ts: &[Pseudo]) -> String {
    ts.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" + ")
}

fn winner(knotted: bool) -> Player {
    if knotted { Player::Lear } else { Player::Ursula }
}

pub fn analyze(ts: &[Pseudo]) -> Result<Analysis, PlayError> {
    let c = sum_class(ts)?;
    let o = outcome_of_class(c);
    Ok(Analysis {
        temper: c.temper.to_string(),
        u_minus: c.u_minus.label().to_string(),
        u_plus: c.u_plus.label().to_string(),
        lout: o.lout,
        rout: o.rout,
        winner_if_lear_first: winner(o.lout >= 1),
        winner_if_ursula_first: winner(o.rout >= 1),
    })
}

fn outcomes(ts: &[Pseudo]) -> Result<ScoreOutcome, PlayError> {
    Ok(outcome_of_class(sum_class(ts)?))
}

/// Component by component, region by region, `+1` before `-1`.
pub fn legal_moves(ts: &[Pseudo]) -> Vec<SumMove> {
    ts.iter()
        .enumerate()
        .flat_map(|(component, t)| {
            t.legal_moves().into_iter().map(move |m| SumMove { component, region: m.region, sign: m.sign })
        })
        .collect()
}

pub fn apply(ts: &[Pseudo], m: SumMove) -> Result<Position, PlayError> {
    let t = ts
        .get(m.component)
        .ok_or_else(|| PlayError::Illegal(format!("no component {}", m.component)))?;
    let next = t
        .play(Move { region: m.region, sign: m.sign })
        .map_err(|e| PlayError::Illegal(e.to_string()))?;
    let mut out = ts.to_vec();
    out[m.component] = next;
    Ok(out)
}

pub fn is_terminal(ts: &[Pseudo]) -> bool {
    ts.iter().all(Pseudo::is_resolved)
}

/// `knotted` or `unknot` once every crossing is resolved.
pub fn verdict(ts: &[Pseudo]) -> Option<&'static str> {
    if !is_terminal(ts) {
        return None;
    }
    let unknot = ts.iter().all(|t| t.is_unknot().unwrap_or(false));
    Some(if unknot { "unknot" } else { "knotted" })
}

/// Lear takes the child with the best outcome when Ursula moves next,
/// Ursula the child with the worst outcome when Lear moves next; the first
/// such move in `legal_moves` order.
pub fn engine_move(ts: &[Pseudo], mover: Player) -> Result<SumMove, PlayError> {
    let mut best: Option<(i64, SumMove)> = None;
    for m in legal_moves(ts) {
        let o = outcomes(&apply(ts, m)?)?;
        let score = match mover {
            Player::Lear => o.rout,
            Player::Ursula => -o.lout,
        };
        if best.is_none_or(|(s, _)| score > s) {
            best = Some((score, m));
        }
    }
    best.map(|(_, m)| m).ok_or(PlayError::Terminal)
}

#[derive(Debug, Clone)]
pub struct Session {
    pub id: String,
    pub position: Position,
    pub human: Player,
    pub turn: Player,
    pub history: Vec<SumMove>,
    pub engine_move: Option<SumMove>,
    pub last_seen: Instant,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionView {
    pub id: String,
    pub position: String,
    pub human: Player,
    pub turn: Player,
    pub moves: Vec<SumMove>,
    pub history: Vec<SumMove>,
    pub engine_move: Option<SumMove>,
    pub analysis: Analysis,
    pub terminal: bool,
    pub verdict: Option<String>,
}

impl Session {
    /// Starts a game; the engine moves at once if it goes first.
    pub fn new(id: String, position: Position, human: Player, first: Player) -> Result<Session, PlayError> {
        let mut s = Session {
            id,
            position,
            human,
            turn: first,
            history: Vec::new(),
            engine_move: None,
            last_seen: Instant::now(),
        };
        s.engine_reply()?;
        Ok(s)
    }

    fn engine_reply(&mut self) -> Result<(), PlayError> {
        self.engine_move = None;
        if self.turn != self.human && !is_terminal(&self.position) {
            let m = engine_move(&self.position, self.turn)?;
            self.position = apply(&self.position, m)?;
            self.history.push(m);
            self.engine_move = Some(m);
            self.turn = self.turn.other();
        }
        Ok(())
    }

    pub fn human_move(&mut self, m: SumMove) -> Result<(), PlayError> {
        self.last_seen = Instant::now();
        if is_terminal(&self.position) {
            return Err(PlayError::Terminal);
        }
        if self.turn != self.human {
            return Err(PlayError::WrongTurn);
        }
        self.position = apply(&self.position, m)?;
        self.history.push(m);
        self.turn = self.turn.other();
        self.engine_reply()
    }

    pub fn view(&self) -> Result<SessionView, PlayError> {
        Ok(SessionView {
            id: self.id.clone(),
            position: position_text(&self.position),
            human: self.human,
            turn: self.turn,
            moves: legal_moves(&self.position),
            history: self.history.clone(),
            engine_move: self.engine_move,
            analysis: analyze(&self.position)?,
            terminal: is_terminal(&self.position),
            verdict: verdict(&self.position).map(String::from),
        })
    }
}
