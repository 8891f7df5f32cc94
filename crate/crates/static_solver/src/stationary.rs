use cwwr_core::numerics::{bisect, bisect_predicate, sym2_eigenvalues};
use cwwr_core::{Error, Measure3, ModelParams, Result};
use serde::Serialize;

use crate::closed::{beta_of_m, closed_point};
use crate::free_energy::{free_energy, hessian, stationarity_residual};
use crate::symmetric::symmetric_fixed_points;

/// Eigenvalues below this magnitude count as zero.
pub const DEGENERATE_EIG: f64 = 1e-9;
/// Free-energy gap under which two maximizers are reported together.
pub const TIE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StationaryKind {
    Maximum,
    Saddle,
    Minimum,
    Degenerate,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StationaryPoint {
    pub nu: Measure3,
    pub kind: StationaryKind,
    pub value: f64,
}

/// `2 + e q`.
pub fn critical_beta(q: f64) -> Result<f64> {
    if !(q >= 0.0 && q.is_finite()) {
        return Err(Error::Param(format!("q must be non-negative, got {q}")));
    }
    Ok(2.0 + std::f64::consts::E * q)
}

/// Classifies a stationary point by the signs of the Hessian eigenvalues.
pub fn hessian_classify(nu: &Measure3, p: &ModelParams) -> Result<StationaryKind> {
    let (r1, r2) = stationarity_residual(nu, p)?;
    if r1.abs().max(r2.abs()) > 1e-6 {
        return Err(Error::Param(format!("measure is not stationary: residuals ({r1}, {r2})")));
    }
    let (a, b, c) = hessian(nu, p);
    let (lo, hi) = sym2_eigenvalues(a, b, c);
    Ok(if lo.abs() < DEGENERATE_EIG || hi.abs() < DEGENERATE_EIG {
        StationaryKind::Degenerate
    } else if hi < 0.0 {
        StationaryKind::Maximum
    } else if lo > 0.0 {
        StationaryKind::Minimum
    } else {
        StationaryKind::Saddle
    })
}

/// Magnetizations `m != 0` at which the closed-form curve passes through
/// the given repulsion. Scanned in `u = atanh m` on a log-spaced grid.
fn closed_form_roots(p: &ModelParams) -> Result<Vec<f64>> {
    let a = p.apriori();
    let n = 4000;
    let (umin, umax) = (1e-8f64, 18.0f64);
    let ratio = (umax / umin).ln();
    // sign flips below this level are rounding noise on the flat part of
    // the curve next to the symmetric point
    let noise = 1e-11 * p.beta.abs().max(1.0);
    let mut roots = Vec::new();
    for sign in [-1.0, 1.0] {
        let g = |u: f64| beta_of_m((sign * u).tanh(), &a).map(|b| b - p.beta).unwrap_or(f64::NAN);
        let mut prev: Option<(f64, f64)> = None;
        for k in 0..n {
            let u = umin * (ratio * k as f64 / (n - 1) as f64).exp();
            let v = g(u);
            if !v.is_finite() {
                prev = None;
                continue;
            }
            if v.abs() <= noise {
                continue;
            }
            if let Some((pu, pv)) = prev {
                if pv.signum() != v.signum() {
                    let r = bisect(g, pu, u, 0.0)?;
                    roots.push((sign * r).tanh());
                }
            }
            prev = Some((u, v));
        }
    }
    Ok(roots)
}

/// All stationary points found from the closed-form curve and, for
/// symmetric a priori measures, the symmetric fixed-point equation.
pub fn stationary_points(p: &ModelParams) -> Result<Vec<StationaryPoint>> {
    let a = p.apriori();
    let mut nus = Vec::new();
    for m in closed_form_roots(p)? {
        nus.push(closed_point(m, &a)?);
    }
    if p.alpha.p_plus == p.alpha.p_minus {
        for n1 in symmetric_fixed_points(p.beta, p.q())? {
            nus.push(Measure3::new(n1, 1.0 - 2.0 * n1, n1)?);
        }
    }
    let mut out = Vec::new();
    for nu in nus {
        if !nu.is_interior() {
            continue;
        }
        let kind = hessian_classify(&nu, p)?;
        out.push(StationaryPoint { nu, kind, value: free_energy(&nu, p) });
    }
    out.sort_by(|u, v| {
        let (a, b) = (u.nu.to_xm(), v.nu.to_xm());
        a.m.total_cmp(&b.m).then(a.x.total_cmp(&b.x))
    });
    Ok(out)
}

/// Global maximizers of the free energy. Saddles and minima are excluded;
/// degenerate points are kept (they occur at criticality). Points within
/// the tie tolerance of the best value are all reported, ordered by `(m, x)`.
pub fn maximizers(p: &ModelParams) -> Result<Vec<StationaryPoint>> {
    let cands: Vec<StationaryPoint> = stationary_points(p)?
        .into_iter()
        .filter(|s| matches!(s.kind, StationaryKind::Maximum | StationaryKind::Degenerate))
        .collect();
    let best = cands
        .iter()
        .map(|s| s.value)
        .fold(f64::NEG_INFINITY, f64::max);
    if !best.is_finite() {
        return Err(Error::Numerical(format!("no maximizer found at beta={}", p.beta)));
    }
    Ok(cands.into_iter().filter(|s| best - s.value < TIE_TOL).collect())
}

/// Symmetric a priori measure with hole-to-spin ratio `q`.
pub fn symmetric_alpha(q: f64) -> Result<Measure3> {
    if !(q > 0.0 && q.is_finite()) {
        return Err(Error::Param(format!("q must be positive, got {q}")));
    }
    let side = 1.0 / (2.0 + q);
    Measure3::new(side, q * side, side)
}

/// Repulsion at which the maximizer splits into a symmetric pair, located
/// by bisection on the maximizer count over `[lo, hi]`.
pub fn detect_split_beta(q: f64, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    let alpha = symmetric_alpha(q)?;
    let two = |beta: f64| {
        ModelParams::new(beta, alpha)
            .and_then(|p| maximizers(&p))
            .map(|v| v.len() == 2)
            .unwrap_or(false)
    };
    let (a, b) = bisect_predicate(two, lo, hi, tol)?;
    Ok(0.5 * (a + b))
}
