//! Independent spin-flip dynamics of the mean-field Widom-Rowlinson model.
//!
//! Conditioning on a time-`t` configuration turns the time-zero spins on the
//! occupied sites into a random-field Curie-Weiss model with effective
//! coupling `beta_tilde`, field `h_t` and field bias equal to the conditioning
//! magnetization. An empirical measure is bad exactly when the potential of
//! that model has several global minimizers.

pub mod badset;
pub mod bifurcation;
pub mod kernel;
pub mod minimizers;
pub mod potential;
pub mod spec_kernel;
pub mod times;
pub mod typical;

pub use badset::{bad_set, is_bad, row_maxwell_points, BadSet, Topology};
pub use bifurcation::{
    atypicality_inequality, bifurcation_curve, c1_curve, containment_polygon, BifurcationCurve,
};
pub use kernel::{h_field, transition_prob, T3};
pub use minimizers::{global_minimizers, MinimizerReport, GLOBAL_TIE_TOL, MERGE_TOL};
pub use potential::{effective_params, RfcwPotential};
pub use spec_kernel::specification_kernel;
pub use times::{transition_times, TransitionTimes};
pub use typical::{atypicality_margin, symmetric_minimizer_axis, typical_curve, TypicalCurve};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] cwwr_core::Error),
    #[error("bad empirical measure: global minimizers {minima:?}")]
    BadPoint { minima: Vec<f64> },
}

pub type Result<T> = std::result::Result<T, Error>;
