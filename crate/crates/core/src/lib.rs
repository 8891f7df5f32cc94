//! Shared geometry of the three-state simplex and the entropy functions
//! used by the static and dynamic solvers.

pub mod entropy;
pub mod numerics;
pub mod simplex;

pub use entropy::{d2_entropy_j, d_entropy_i, d_entropy_j, entropy_i, entropy_j};
pub use simplex::{AprioriParams, Measure3, ModelParams, Spin, XmCoords, SIMPLEX_TOL};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Param(String),
    #[error("argument outside domain: {0}")]
    Domain(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("{what}: found {count} solutions where one was required")]
    Multiple { what: String, count: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
