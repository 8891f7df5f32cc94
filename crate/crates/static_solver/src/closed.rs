//! Closed-form curve of stationary points: each magnetization `m != 0`
//! determines the repulsion `beta(m)` and density `x(m)` at which
//! `(x(m), m)` is stationary.

use cwwr_core::{d_entropy_i, entropy_i, AprioriParams, Error, Measure3, Result};
use serde::Serialize;

fn log_e(m: f64, a: &AprioriParams) -> Result<f64> {
    if m == 0.0 || !(m > -1.0 && m < 1.0) {
        return Err(Error::Domain(format!("closed solution needs m in (-1,0)u(0,1), got {m}")));
    }
    let ip = d_entropy_i(m)?;
    Ok(-a.l + a.log_cosh_h() + (ip - a.h) / m - m * ip + entropy_i(m)?)
}

/// Repulsion strength at which magnetization `m` is stationary. May be
/// infinite when the exponential overflows.
pub fn beta_of_m(m: f64, a: &AprioriParams) -> Result<f64> {
    let le = log_e(m, a)?;
    let ip = d_entropy_i(m)?;
    Ok((2.0 / m) * (ip - a.h) * (1.0 + le.exp()))
}

/// Occupation density of the stationary point with magnetization `m`.
pub fn x_of_m(m: f64, a: &AprioriParams) -> Result<f64> {
    let le = log_e(m, a)?;
    Ok(if le > 0.0 {
        let r = (-le).exp();
        r / (1.0 + r)
    } else {
        1.0 / (1.0 + le.exp())
    })
}

/// Stationary measure with magnetization `m`, built so that the hole weight
/// `E/(1+E)` keeps full relative precision when it is tiny.
pub fn closed_point(m: f64, a: &AprioriParams) -> Result<Measure3> {
    let le = log_e(m, a)?;
    let (x, zero) = if le > 0.0 {
        let r = (-le).exp();
        (r / (1.0 + r), 1.0 / (1.0 + r))
    } else {
        let e = le.exp();
        (1.0 / (1.0 + e), e / (1.0 + e))
    };
    Measure3::new(0.5 * x * (1.0 - m), zero, 0.5 * x * (1.0 + m))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurveSample {
    pub m: f64,
    pub beta: f64,
    pub x: f64,
    pub nu: Measure3,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriticalCurve {
    pub samples: Vec<CurveSample>,
}

/// Samples the closed-form curve on `k` cell-centred magnetizations of
/// `(-1, 1)`, dropping `m = 0` and points where `beta(m)` overflows.
pub fn critical_curve(a: &AprioriParams, k: usize) -> Result<CriticalCurve> {
    if k == 0 {
        return Err(Error::Param("m-grid needs at least one point".into()));
    }
    let mut samples = Vec::with_capacity(k);
    for i in 0..k {
        let m = -1.0 + (2.0 * i as f64 + 1.0) / k as f64;
        if m.abs() < 1e-12 {
            continue;
        }
        let beta = beta_of_m(m, a)?;
        let x = x_of_m(m, a)?;
        if !beta.is_finite() {
            continue;
        }
        let nu = closed_point(m, a)?;
        samples.push(CurveSample { m, beta, x, nu });
    }
    Ok(CriticalCurve { samples })
}
