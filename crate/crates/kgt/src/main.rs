use std::io::{self, BufRead, Write};
use std::process::ExitCode;
use std::time::Duration;

use cgt_knots::boolean::{tables_text, u_values};
use cgt_knots::knotdet::{determinant_is_one, parse_gauss, solve_generic, Diagram};
use cgt_knots::partizan::parse_game;
use cgt_knots::psi::psi;
use cgt_knots::scoring::parse_scoring;
use cgt_knots::tangle::{parse_tangle, sum_class, sum_outcomes, SumVerdict};
use cgt_knots::{Error, OutcomeClass};
use clap::{Parser, Subcommand, ValueEnum};
use kgt::play::{self, PlayError, Player, Session, SumMove};

#[derive(Parser)]
#[command(name = "kgt", version, about = "Combinatorial games, scoring games and To Knot or Not to Knot")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Canonical form of a partizan game.
    Canon { expr: String },
    /// Outcome class of a partizan game, or both outcomes of a scoring game.
    Outcome {
        expr: String,
        #[arg(long)]
        scoring: bool,
    },
    /// Image of a scoring game in the partizan games.
    Psi { expr: String },
    /// Temper and both side values of a {0,1}-valued scoring game.
    U { expr: String },
    /// Evaluate `canon(..)`, `psi(..)`, `u(..)` or `outcome(..)`; bare scoring
    /// expressions print as such.
    Eval { expr: String },
    /// Cup, cap and bracket tables.
    Tables,
    Tangle {
        #[command(subcommand)]
        cmd: TangleCmd,
    },
    /// Determinant of a resolved Gauss code, or determinant-one counts for a shadow.
    Knotdet { code: String },
    Tkontk {
        #[command(subcommand)]
        cmd: TkontkCmd,
    },
    /// JSON play service.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value_t = 1800)]
        ttl_secs: u64,
    },
}

#[derive(Subcommand)]
enum TangleCmd {
    /// Continued fraction value and closure type.
    Eval { tangle: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    Lear,
    Ursula,
}

impl From<Side> for Player {
    fn from(s: Side) -> Player {
        match s {
            Side::Lear => Player::Lear,
            Side::Ursula => Player::Ursula,
        }
    }
}

#[derive(Subcommand)]
enum TkontkCmd {
    /// Class, outcomes and winner of a connected sum.
    Solve { position: String },
    /// Exhaustive solve of a general shadow, deciding unknots by determinant.
    SolveGeneric {
        #[arg(long)]
        shadow: String,
    },
    /// Play a sum against the engine on the terminal.
    Play {
        position: String,
        #[arg(long, value_enum, default_value_t = Side::Ursula)]
        human: Side,
        #[arg(long, value_enum, default_value_t = Side::Lear)]
        first: Side,
    },
}

enum Failure {
    Parse(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Parse { .. } | Error::Malformed(_) => Failure::Parse(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

impl From<PlayError> for Failure {
    fn from(e: PlayError) -> Failure {
        match e {
            PlayError::Parse(m) => Failure::Parse(m),
            e => Failure::Domain(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Failure {
        Failure::Domain(e.to_string())
    }
}

type Out = Result<(), Failure>;

fn outcome_name(o: OutcomeClass) -> &'static str {
    match o {
        OutcomeClass::LeftWins => "L",
        OutcomeClass::RightWins => "R",
        OutcomeClass::FirstPlayerWins => "N",
        OutcomeClass::SecondPlayerWins => "P",
    }
}

fn canon(expr: &str) -> Result<String, Failure> {
    Ok(parse_game(expr)?.canonical().braces())
}

fn psi_text(expr: &str) -> Result<String, Failure> {
    Ok(psi(parse_scoring(expr)?)?.to_string())
}

fn u_text(expr: &str) -> Result<String, Failure> {
    Ok(u_values(parse_scoring(expr)?)?.to_string())
}

fn outcome_text(expr: &str, scoring: bool) -> Result<String, Failure> {
    if scoring {
        let o = parse_scoring(expr)?.outcomes();
        Ok(format!("lout {} rout {}", o.lout, o.rout))
    } else {
        Ok(outcome_name(parse_game(expr)?.outcome()).to_string())
    }
}

fn eval(expr: &str) -> Result<String, Failure> {
    let e = expr.trim();
    let call = |name: &str| {
        e.strip_prefix(name)
            .and_then(|r| r.trim_start().strip_prefix('('))
            .and_then(|r| r.strip_suffix(')'))
    };
    if let Some(a) = call("canon") {
        canon(a)
    } else if let Some(a) = call("psi") {
        psi_text(a)
    } else if let Some(a) = call("u") {
        u_text(a)
    } else if let Some(a) = call("outcome") {
        outcome_text(a, a.contains('<'))
    } else if e.contains('<') || e.contains('(') {
        Ok(parse_scoring(e)?.to_string())
    } else {
        Ok(parse_game(e)?.canonical().to_string())
    }
}

fn tangle_eval(text: &str) -> Out {
    let t = parse_tangle(text)?;
    let v = t.value()?;
    let kind = if !t.is_knot() {
        "link"
    } else if t.is_unknot()? {
        "unknot"
    } else {
        "knot"
    };
    println!("{v} {kind}");
    Ok(())
}

fn diagram(code: &str) -> Result<Diagram, Failure> {
    if code.trim() == "petals" {
        Ok(Diagram::petals())
    } else {
        Ok(parse_gauss(code)?)
    }
}

fn knotdet(code: &str) -> Out {
    let d = diagram(code)?;
    if d.is_resolved() {
        println!("{}", d.determinant()?);
    } else {
        let rs = d.resolutions();
        let ones = rs.iter().filter(|r| determinant_is_one(r)).count();
        println!("crossings {} resolutions {} determinant-one {}", d.crossings(), rs.len(), ones);
    }
    Ok(())
}

fn solve(text: &str) -> Out {
    let ts = play::parse_position(text)?;
    let c = sum_class(&ts)?;
    let o = sum_outcomes(&ts)?;
    println!("class {c}");
    println!("lout {} rout {}", o.lout, o.rout);
    println!("{}", SumVerdict::from_outcome(o));
    Ok(())
}

fn solve_generic_cmd(code: &str) -> Out {
    let d = diagram(code)?;
    let (o, c) = solve_generic(&d, &determinant_is_one)?;
    println!("class {c}");
    println!("lout {} rout {}", o.lout, o.rout);
    println!("{}", SumVerdict::from_outcome(o));
    Ok(())
}

fn parse_move(line: &str, single: bool) -> Option<SumMove> {
    let nums: Vec<i64> = line.split_whitespace().map(|w| w.parse().ok()).collect::<Option<_>>()?;
    let (component, region, sign) = match (nums.as_slice(), single) {
        ([c, r, s], _) => (*c, *r, *s),
        ([r, s], true) => (0, *r, *s),
        _ => return None,
    };
    if component < 0 || region < 0 || (sign != 1 && sign != -1) {
        return None;
    }
    Some(SumMove { component: component as usize, region: region as usize, sign: sign as i8 })
}

fn report(s: &Session, out: &mut impl Write) -> Out {
    let v = s.view()?;
    let a = &v.analysis;
    writeln!(out, "position {}", v.position)?;
    writeln!(
        out,
        "class ({}, {}, {}) lout {} rout {}",
        a.temper, a.u_minus, a.u_plus, a.lout, a.rout
    )?;
    if let Some(verdict) = v.verdict {
        writeln!(out, "{verdict}")?;
    } else {
        writeln!(out, "{} to move", v.turn)?;
    }
    Ok(())
}

fn play_loop(text: &str, human: Player, first: Player) -> Out {
    let position = play::parse_position(text)?;
    let single = position.len() == 1;
    let mut s = Session::new("tty".into(), position, human, first)?;
    let stdin = io::stdin();
    let mut lines = stdin.lock().lines();
    let mut out = io::stdout();
    loop {
        if let Some(m) = s.engine_move {
            writeln!(out, "engine {m}")?;
        }
        report(&s, &mut out)?;
        if play::is_terminal(&s.position) {
            return Ok(());
        }
        loop {
            write!(out, "move> ")?;
            out.flush()?;
            let Some(line) = lines.next().transpose()? else {
                writeln!(out)?;
                return Ok(());
            };
            match parse_move(&line, single) {
                None => writeln!(out, "expected: component region sign")?,
                Some(m) => match s.human_move(m) {
                    Ok(()) => break,
                    Err(e) => writeln!(out, "{e}")?,
                },
            }
        }
    }
}

fn print(r: Result<String, Failure>) -> Out {
    println!("{}", r?);
    Ok(())
}

fn run(cli: Cli) -> Out {
    match cli.cmd {
        Cmd::Canon { expr } => print(canon(&expr)),
        Cmd::Outcome { expr, scoring } => print(outcome_text(&expr, scoring)),
        Cmd::Psi { expr } => print(psi_text(&expr)),
        Cmd::U { expr } => print(u_text(&expr)),
        Cmd::Eval { expr } => print(eval(&expr)),
        Cmd::Tables => {
            print!("{}", tables_text());
            Ok(())
        }
        Cmd::Tangle { cmd: TangleCmd::Eval { tangle } } => tangle_eval(&tangle),
        Cmd::Knotdet { code } => knotdet(&code),
        Cmd::Tkontk { cmd } => match cmd {
            TkontkCmd::Solve { position } => solve(&position),
            TkontkCmd::SolveGeneric { shadow } => solve_generic_cmd(&shadow),
            TkontkCmd::Play { position, human, first } => play_loop(&position, human.into(), first.into()),
        },
        Cmd::Serve { port, ttl_secs } => {
            let rt = tokio::runtime::Runtime::new()?;
            rt.block_on(kgt::service::serve(port, Duration::from_secs(ttl_secs)))?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Parse(m)) => {
            eprintln!("parse error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
