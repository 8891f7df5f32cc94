//! Critical exponents of the magnetization, from the closed-form curve.

use cwwr_core::numerics::{bisect, linear_fit};
use cwwr_core::{AprioriParams, Error, Result};
use serde::Serialize;

use crate::closed::beta_of_m;
use crate::stationary::critical_beta;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BetaExponent {
    /// Log-log slope of `m` against `beta - beta_c`.
    pub slope: f64,
    /// Extrapolated `lim m^2 / (beta - beta_c)`.
    pub amplitude: f64,
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| (lo.ln() + (hi / lo).ln() * k as f64 / (n - 1) as f64).exp())
        .collect()
}

/// Positive magnetization of the symmetric model at repulsion `beta > beta_c`.
/// `beta(m)` is increasing on `(0, 1)`, so the root is bracketed.
pub fn m_of_beta(beta: f64, q: f64) -> Result<f64> {
    let a = AprioriParams::symmetric_from_q(q)?;
    if beta <= critical_beta(q)? {
        return Err(Error::Param(format!("beta={beta} is not above criticality")));
    }
    bisect(|m| beta_of_m(m, &a).unwrap() - beta, 1e-12, 1.0 - 1e-15, 1e-13)
}

/// Positive magnetization at `beta_c(q)` with field `h` and `l = log(2/q)`.
pub fn m_of_field(h: f64, q: f64) -> Result<f64> {
    if h <= 0.0 {
        return Err(Error::Param(format!("field must be positive, got {h}")));
    }
    let a = AprioriParams::new(h, (2.0 / q).ln())?;
    let bc = critical_beta(q)?;
    let lo = h.tanh();
    bisect(|m| beta_of_m(m, &a).unwrap() - bc, lo + 1e-15, 1.0 - 1e-15, 1e-15)
}

/// Fit over `beta - beta_c` in `[1e-4, 1e-2]`.
pub fn exponent_beta(q: f64) -> Result<BetaExponent> {
    if !(q > 0.0) {
        return Err(Error::Param(format!("q must be positive, got {q}")));
    }
    let bc = critical_beta(q)?;
    let deltas = log_grid(1e-4, 1e-2, 30);
    let mut ms = Vec::with_capacity(deltas.len());
    for &d in &deltas {
        ms.push(m_of_beta(bc + d, q)?);
    }
    let lx: Vec<f64> = deltas.iter().map(|d| d.ln()).collect();
    let ly: Vec<f64> = ms.iter().map(|m| m.ln()).collect();
    let slope = linear_fit(&lx, &ly)?.slope;
    let ratio: Vec<f64> = ms.iter().zip(&deltas).map(|(m, d)| m * m / d).collect();
    let amplitude = linear_fit(&deltas, &ratio)?.intercept;
    Ok(BetaExponent { slope, amplitude })
}

/// Fit over `h` in `[1e-6, 1e-3]` at `beta = beta_c(q)`.
pub fn exponent_field(q: f64) -> Result<f64> {
    if !(q > 0.0) {
        return Err(Error::Param(format!("q must be positive, got {q}")));
    }
    let hs = log_grid(1e-6, 1e-3, 30);
    let mut ms = Vec::with_capacity(hs.len());
    for &h in &hs {
        ms.push(m_of_field(h, q)?);
    }
    let lx: Vec<f64> = hs.iter().map(|h| h.ln()).collect();
    let ly: Vec<f64> = ms.iter().map(|m| m.ln()).collect();
    Ok(linear_fit(&lx, &ly)?.slope)
}
