//! Exact majorisation, relative majorisation and axiomatic (relative) entropies.
//!
//! Structural questions (orderings, feasibility, embeddings) are answered with
//! exact rationals. Divergence and entropy values are binary logarithms in
//! `f64`, with `+∞` carried by [`ExtReal`].

pub mod axioms;
pub mod bijection;
pub mod catalytic;
pub mod divergences;
pub mod error;
pub mod json;
pub mod majorisation;
pub mod prob;
pub mod rational;
pub mod relmaj;
pub mod sampling;

pub use error::{MajorError, Result};
pub use prob::{BlockVec, Channel, ExtReal, ProbVec};
pub use rational::Rational;
