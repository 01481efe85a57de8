//! Exact combinatorial game theory for partizan and well-tempered scoring
//! games, with a complete solver for To Knot or Not to Knot on rational
//! pseudodiagrams and a knot-determinant based solver for general shadows.

pub mod boolean;
pub mod error;
pub mod extensions;
pub mod knotdet;
pub mod partizan;
pub mod psi;
pub mod scoring;
pub mod tangle;
mod text;

pub use error::{Error, Result};
pub use partizan::{Dyadic, Game, OutcomeClass};
pub use scoring::{SGame, ScoreOutcome, Temper};
