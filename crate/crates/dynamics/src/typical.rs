//! Typical empirical measures: the time-evolved static maximizers, and their
//! distance to the bad set.

use cwwr_core::entropy::{d_entropy_i, entropy_i};
use cwwr_core::numerics::bisect;
use cwwr_core::{Error as CoreError, Measure3};
use serde::Serialize;

use crate::badset::bad_set;
use crate::Result;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TypicalCurve {
    /// Points ordered by static magnetization from `-m_beta` to `m_beta`.
    pub points: Vec<Measure3>,
    pub m_beta: f64,
}

/// `2 I'(m) / m`, continued by its limit 2 at `m = 0`.
fn slope_ratio(m: f64) -> f64 {
    if m == 0.0 {
        return 2.0;
    }
    2.0 * d_entropy_i(m).unwrap_or(f64::INFINITY) / m
}

/// Largest magnetization of an asymmetric maximizer: `2 I'(m)/m = beta`.
pub fn m_beta(beta: f64) -> Result<f64> {
    if !(beta > 2.0 && beta.is_finite()) {
        return Err(CoreError::Param(format!("typical curve needs beta > 2, got {beta}")).into());
    }
    let hi = 1.0 - f64::EPSILON;
    if slope_ratio(hi) <= beta {
        return Ok(hi);
    }
    Ok(bisect(|m| slope_ratio(m) - beta, 0.0, hi, 0.0)?)
}

/// Symmetric hole density for which magnetization `m` maximizes the
/// pressure at coupling `beta`.
pub fn typical_alpha0(m: f64, beta: f64) -> Result<f64> {
    if m == 0.0 {
        return Err(CoreError::Domain("hole density is degenerate at m = 0".into()).into());
    }
    let ip = d_entropy_i(m)?;
    let r = 2.0 * ip / m;
    let e = (ip / m - m * ip + entropy_i(m)?).exp();
    Ok((beta - r) / (beta + r * (e - 1.0)))
}

/// Occupied density `2 I'(m)/(beta m)` of the maximizer with magnetization `m`.
pub fn typical_occupation(m: f64, beta: f64) -> f64 {
    (slope_ratio(m) / beta).min(1.0)
}

/// Time-evolved asymmetric maximizers, `2 n + 1` points.
pub fn typical_curve(beta: f64, t: f64, n: usize) -> Result<TypicalCurve> {
    if !(t >= 0.0) || n == 0 {
        return Err(CoreError::Param(format!("invalid time {t} or sample count {n}")).into());
    }
    let mb = m_beta(beta)?;
    let decay = (-2.0 * t).exp();
    let mut points = Vec::with_capacity(2 * n + 1);
    for k in -(n as i64)..=(n as i64) {
        let m = mb * k as f64 / n as f64;
        let x = if k.unsigned_abs() as usize == n { 1.0 } else { typical_occupation(m, beta) };
        let me = m * decay;
        points.push(Measure3::new(0.5 * x * (1.0 - me), 1.0 - x, 0.5 * x * (1.0 + me))?);
    }
    Ok(TypicalCurve { points, m_beta: mb })
}

/// Symmetric maximizers occupy the axis segment with occupied density in
/// `(0, 2/beta]`; returns its endpoints. Holes and the symmetric magnetization
/// are invariant under the dynamics.
pub fn symmetric_minimizer_axis(beta: f64) -> Result<(Measure3, Measure3)> {
    if !(beta > 0.0) {
        return Err(CoreError::Param(format!("axis needs beta > 0, got {beta}")).into());
    }
    let x = (2.0 / beta).min(1.0);
    Ok((Measure3::new(0.0, 1.0, 0.0)?, Measure3::symmetric(1.0 - x)?))
}

fn point_segment_distance(p: &Measure3, a: &Measure3, b: &Measure3) -> f64 {
    let (p, a, b) = (p.as_array(), a.as_array(), b.as_array());
    let d: Vec<f64> = (0..3).map(|i| b[i] - a[i]).collect();
    let len2: f64 = d.iter().map(|v| v * v).sum();
    let s = if len2 > 0.0 {
        ((0..3).map(|i| (p[i] - a[i]) * d[i]).sum::<f64>() / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    (0..3).map(|i| (p[i] - a[i] - s * d[i]).powi(2)).sum::<f64>().sqrt()
}

/// Smallest Euclidean distance between the bad set at resolution `rows`
/// and the typical measures (the evolved curve and the symmetric axis).
/// Infinite when there are no bad measures.
pub fn atypicality_margin(beta: f64, t: f64, rows: usize) -> Result<f64> {
    if t == 0.0 || beta <= 2.0 {
        return Ok(f64::INFINITY);
    }
    let bad = bad_set(beta, t, rows)?;
    if bad.is_empty() {
        return Ok(f64::INFINITY);
    }
    let curve = typical_curve(beta, t, 2000)?;
    let (a0, a1) = symmetric_minimizer_axis(beta)?;
    let mut best = f64::INFINITY;
    for p in bad.points() {
        best = best.min(point_segment_distance(&p.nu, &a0, &a1));
        for w in curve.points.windows(2) {
            best = best.min(point_segment_distance(&p.nu, &w[0], &w[1]));
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints_on_face() {
        let c = typical_curve(5.0, 0.0, 100).unwrap();
        assert_eq!(c.points.first().unwrap().p_zero, 0.0);
        assert_eq!(c.points.last().unwrap().p_zero, 0.0);
        assert!(typical_alpha0(c.m_beta, 5.0).unwrap().abs() < 1e-9);
        assert!((c.points[100].p_zero - 0.6).abs() < 1e-12);
    }

    #[test]
    fn alpha0_matches_occupation() {
        let beta = 4.0;
        for m in [0.2, 0.5, 0.8] {
            let a0 = typical_alpha0(m, beta).unwrap();
            let l = ((1.0 - a0) / a0).ln();
            let ip = d_entropy_i(m).unwrap();
            let e = (-l + ip / m - m * ip + entropy_i(m).unwrap()).exp();
            assert!((1.0 / (1.0 + e) - typical_occupation(m, beta)).abs() < 1e-12);
        }
    }

    #[test]
    fn minimal_symmetric_hole_density() {
        // q_m = (beta - 2)/e gives nu(0) = 1 - 2/beta
        let (_, top) = symmetric_minimizer_axis(4.0).unwrap();
        assert!((top.p_zero - 0.5).abs() < 1e-15);
    }
}
