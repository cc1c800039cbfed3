//! Bradley-Terry ranking from pairwise comparisons.
//!
//! Fits player strengths π (and the Davidson tie parameter ν) by asynchronous
//! fixed-point iteration. The α-family of updates contains Zermelo's classic
//! rule (α = 1) and a much faster rule (α = 0); both converge to the same
//! maximum-likelihood estimate whenever the interaction network is strongly
//! connected. A logistic prior gives a MAP estimate that always exists.

pub mod bench;
pub mod cli;
pub mod error;
pub mod graph;
pub mod io;
pub mod likelihood;
pub mod model;
pub mod rates;
pub mod solvers;
pub mod synth;

pub use error::{Error, Result};
pub use model::{
    normalize_geometric_mean, validate, Algorithm, ComparisonData, FitResult, Init, Mode,
    SolverSpec, StopRule, Strengths, Termination, TiesModel,
};
pub use solvers::{fit, UpdateRule};
