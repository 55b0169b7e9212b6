//! Exact small-ball probabilities for random signed sums, the Fourier and
//! Diophantine bounds that control them, and the random-matrix and
//! random-polynomial experiments built on top.

pub mod ball;
pub mod binomial;
pub mod cli;
pub mod dist;
pub mod error;
pub mod experiments;
pub mod extremal;
pub mod fourier;
pub mod gap;
pub mod lcd;
pub mod multiset;
pub mod numtheory;
pub mod polyforms;
pub mod rational;
pub mod sign;

pub use error::{Error, Result};
pub use multiset::{CoefficientMultiset, Point2};
pub use rational::Rational;
pub use sign::SignDistribution;
pub use cli::SCHEMA_VERSION;
