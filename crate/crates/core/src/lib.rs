//! Probabilistic Stirling numbers, their degenerate versions, per-family
//! closed forms and probabilistic Euler polynomials, in exact rational
//! arithmetic.

pub mod cli;
pub mod combinatorics;
pub mod error;
pub mod euler;
pub mod rational;
pub mod rv;
pub mod series;
pub mod stirling;

pub use combinatorics::Triangle;
pub use error::{Error, Result};
pub use rational::Rational;
pub use rv::RvSpec;
pub use series::EgfSeries;
pub use stirling::Kind;
