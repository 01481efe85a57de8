//! Play engine and HTTP service for To Knot or Not to Knot on connected sums
//! of rational pseudodiagrams.

pub mod play;
pub mod service;
