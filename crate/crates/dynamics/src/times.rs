//! Transition times of the bad set.

use cwwr_core::numerics::bisect_predicate;
use cwwr_core::{Error as CoreError, Measure3};
use serde::Serialize;

use crate::badset::{is_bad, row_bistable};
use crate::kernel::{h_field, T3};
use crate::Result;

/// Bracket width of the bisected times.
pub const TIME_TOL: f64 = 1e-9;
/// Earliest time probed; the bad set is empty there for every coupling used.
const T_MIN: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "regime", rename_all = "snake_case")]
pub enum TransitionTimes {
    /// `beta <= 2`: no bad measures at any time.
    AlwaysGibbs,
    /// `2 < beta <= 3`: a single threshold where the symmetric line appears.
    Single { threshold: f64, t3: f64 },
    /// `beta > 3`: arcs appear at `t1`, join the axis at `t2`, and detach
    /// from it into a single line at `t3`.
    Three { t1: f64, t2: f64, t3: f64 },
}

/// Whether the face row (no holes) carries a bistable potential.
pub fn face_bistable(beta: f64, t: f64) -> Result<bool> {
    Ok(row_bistable(0.5 * beta, h_field(t)?))
}

pub fn transition_times(beta: f64) -> Result<TransitionTimes> {
    if !beta.is_finite() {
        return Err(CoreError::Param(format!("beta must be finite, got {beta}")).into());
    }
    if beta <= 2.0 {
        return Ok(TransitionTimes::AlwaysGibbs);
    }
    if beta <= 3.0 {
        let threshold = -0.25 * (1.0 - 2.0 / beta).ln();
        return Ok(TransitionTimes::Single { threshold, t3: T3 });
    }
    let pred_err = std::cell::Cell::new(None);
    let guard = |r: Result<bool>| {
        r.unwrap_or_else(|e| {
            pred_err.set(Some(e));
            false
        })
    };
    let (_, t1) = bisect_predicate(|t| guard(face_bistable(beta, t)), T_MIN, T3, TIME_TOL)?;
    let centre = Measure3::new(0.5, 0.0, 0.5)?;
    let guard2 = |r: Result<bool>| {
        r.unwrap_or_else(|e| {
            pred_err.set(Some(e));
            false
        })
    };
    let (_, t2) = bisect_predicate(|t| guard2(is_bad(&centre, beta, t)), t1, T3, TIME_TOL)?;
    if let Some(e) = pred_err.take() {
        return Err(e);
    }
    Ok(TransitionTimes::Three { t1, t2, t3: T3 })
}
