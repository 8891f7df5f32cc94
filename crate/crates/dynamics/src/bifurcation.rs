//! Fold (saddle-node) curve of the effective potential at fixed field.
//!
//! For a magnetization `M` the bias making `M` stationary is explicit in the
//! coupling, so the two fold conditions reduce to one equation in the
//! coupling, continued in `M` from the symmetric point `M = 0`.

use cwwr_core::entropy::d_entropy_i;
use cwwr_core::numerics::bisect;
use cwwr_core::{Error as CoreError, Measure3};
use serde::Serialize;

use crate::kernel::{h_field, T3};
use crate::potential::equilibrium_bias;
use crate::Result;

const M_STEPS: usize = 2000;
const LOCAL_SUBDIVISIONS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BifurcationSample {
    pub m: f64,
    pub alpha12: f64,
    pub beta12: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BifurcationCurve {
    pub h_t: f64,
    /// Samples ordered by `m`, starting at the symmetric point `m = 0`.
    pub samples: Vec<BifurcationSample>,
    /// Magnetization of the cusp, where `alpha12` is maximal.
    pub mu: f64,
    /// Magnetization where the fold coupling equals that of the face row.
    pub ml: f64,
}

/// Curvature at `m` for coupling `bt` and the bias making `m` stationary.
fn fold_residual(bt: f64, m: f64, h: f64) -> (f64, f64) {
    let a = equilibrium_bias(m, bt, h);
    let (tp, tm) = ((bt * m + h).tanh(), (bt * m - h).tanh());
    let (sp, sm) = (1.0 - tp * tp, 1.0 - tm * tm);
    (1.0 - bt * (0.5 * (sp + sm) + 0.5 * a * (sp - sm)), a)
}

/// Fold coupling at `m` closest to `prev`, searched in widening windows.
fn beta12_near(m: f64, h: f64, prev: f64) -> Option<f64> {
    let g = |b: f64| fold_residual(b, m, h).0;
    for w in [0.05, 0.1, 0.2, 0.5, 1.0, 2.0, 4.0] {
        let (lo, hi) = ((prev - w).max(1.0), prev + w);
        let step = (hi - lo) / LOCAL_SUBDIVISIONS as f64;
        let mut best: Option<(f64, f64)> = None;
        let mut b0 = lo;
        let mut v0 = g(b0);
        for k in 1..=LOCAL_SUBDIVISIONS {
            let b1 = lo + step * k as f64;
            let v1 = g(b1);
            if v0.is_finite() && v1.is_finite() && (v0 == 0.0 || v0.signum() != v1.signum()) {
                let d = (0.5 * (b0 + b1) - prev).abs();
                if best.map_or(true, |(_, bd)| d < bd) {
                    best = Some((b0, d));
                }
            }
            b0 = b1;
            v0 = v1;
        }
        if let Some((b, _)) = best {
            return bisect(g, b, b + step, 0.0).ok();
        }
    }
    None
}

fn sample_at(m: f64, h: f64, prev: f64) -> Option<BifurcationSample> {
    let b = beta12_near(m, h, prev)?;
    let a = fold_residual(b, m, h).1;
    a.is_finite().then_some(BifurcationSample { m, alpha12: a, beta12: b })
}

/// Raw fold curve at field `h`, continued in `m` until it is lost.
fn fold_samples(h: f64) -> Vec<BifurcationSample> {
    let start = h.cosh().powi(2);
    let mut out = vec![BifurcationSample { m: 0.0, alpha12: 0.0, beta12: start }];
    for k in 1..M_STEPS {
        let m = k as f64 / M_STEPS as f64;
        let prev = out.last().unwrap().beta12;
        match sample_at(m, h, prev) {
            Some(s) if s.alpha12.abs() <= 1.0 => out.push(s),
            _ => break,
        }
    }
    out
}

/// Cusp of the fold curve: the sample maximizing `alpha12`, refined by
/// golden-section search.
fn refine_cusp(samples: &[BifurcationSample], h: f64) -> BifurcationSample {
    let (k, _) = samples
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.alpha12.total_cmp(&b.1.alpha12))
        .unwrap();
    if k == 0 || k + 1 >= samples.len() {
        return samples[k];
    }
    let prev = samples[k].beta12;
    let alpha = |m: f64| sample_at(m, h, prev).map_or(f64::NEG_INFINITY, |s| s.alpha12);
    let (mut a, mut b) = (samples[k - 1].m, samples[k + 1].m);
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let (mut c, mut d) = (b - r * (b - a), a + r * (b - a));
    let (mut fc, mut fd) = (alpha(c), alpha(d));
    while b - a > 1e-12 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = alpha(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = alpha(d);
        }
    }
    sample_at(0.5 * (a + b), h, prev).unwrap_or(samples[k])
}

/// Cusp of the fold curve at time `t` in `(0, t3)`.
pub fn cusp(t: f64) -> Result<BifurcationSample> {
    check_time(t)?;
    let h = h_field(t)?;
    let samples = fold_samples(h);
    if samples.len() < 3 {
        return Err(CoreError::Numerical(format!("fold curve lost at t = {t}")).into());
    }
    Ok(refine_cusp(&samples, h))
}

fn check_time(t: f64) -> Result<()> {
    if !(t > 0.0 && t < T3) {
        return Err(CoreError::Param(format!("time must lie in (0, {T3}), got {t}")).into());
    }
    Ok(())
}

pub fn bifurcation_curve(beta: f64, t: f64) -> Result<BifurcationCurve> {
    if !(beta > 3.0 && beta.is_finite()) {
        return Err(CoreError::Param(format!("fold curve needs beta > 3, got {beta}")).into());
    }
    check_time(t)?;
    let h = h_field(t)?;
    let mut samples = fold_samples(h);
    if samples.len() < 3 {
        return Err(CoreError::Numerical(format!("fold curve lost at t = {t}")).into());
    }
    let top = refine_cusp(&samples, h);
    let face = 0.5 * beta;
    let ml = if samples[0].beta12 <= face {
        0.0
    } else {
        match samples.iter().position(|s| s.beta12 <= face) {
            Some(k) => {
                let prev = samples[k].beta12;
                let f = |m: f64| sample_at(m, h, prev).map_or(f64::NAN, |s| s.beta12 - face);
                bisect(f, samples[k - 1].m, samples[k].m, 0.0)?
            }
            None => f64::INFINITY,
        }
    };
    let at = samples.partition_point(|s| s.m < top.m);
    if samples.get(at).map_or(true, |s| s.m != top.m) {
        samples.insert(at, top);
    }
    Ok(BifurcationCurve { h_t: h, samples, mu: top.m, ml })
}

impl BifurcationCurve {
    fn to_measure(s: &BifurcationSample, beta: f64) -> Option<Measure3> {
        let r = s.beta12 / beta;
        Measure3::new(r * (1.0 - s.alpha12), 1.0 - 2.0 * r, r * (1.0 + s.alpha12)).ok()
    }

    /// Samples on the branch from the face row (`ml`) to the cusp (`mu`).
    fn branch(&self) -> Vec<BifurcationSample> {
        if !(self.ml < self.mu) {
            return Vec::new();
        }
        let mut out = Vec::new();
        let prev = self.samples.iter().find(|s| s.m >= self.ml).map(|s| s.beta12);
        if self.ml > 0.0 {
            if let Some(s) = prev.and_then(|p| sample_at(self.ml, self.h_t, p)) {
                out.push(s);
            }
        }
        out.extend(self.samples.iter().filter(|s| s.m >= self.ml && s.m <= self.mu).copied());
        out
    }
}

/// The fold branch mapped to the simplex, from the face to the cusp.
pub fn c1_curve(beta: f64, t: f64) -> Result<Vec<Measure3>> {
    let curve = bifurcation_curve(beta, t)?;
    Ok(curve.branch().iter().filter_map(|s| BifurcationCurve::to_measure(s, beta)).collect())
}

/// Closed boundary of the fold region in `(nu(1) - nu(-1), 1 - nu(0))`
/// coordinates: the branch, the segment joining the mirrored cusps, the
/// mirrored branch and the face segment.
pub fn containment_polygon(beta: f64, t: f64) -> Result<Vec<(f64, f64)>> {
    let c1 = c1_curve(beta, t)?;
    let pts: Vec<(f64, f64)> = c1.iter().map(|p| (p.p_plus - p.p_minus, 1.0 - p.p_zero)).collect();
    let mut poly = pts.clone();
    poly.extend(pts.iter().rev().map(|&(d, x)| (-d, x)));
    Ok(poly)
}

/// Whether `(d, x)` lies inside `poly` or within `tol` of its boundary.
pub fn polygon_contains(poly: &[(f64, f64)], p: (f64, f64), tol: f64) -> bool {
    let n = poly.len();
    if n < 3 {
        return false;
    }
    let mut inside = false;
    let mut near = false;
    for i in 0..n {
        let (a, b) = (poly[i], poly[(i + 1) % n]);
        if (a.1 > p.1) != (b.1 > p.1) {
            let xc = a.0 + (p.1 - a.1) * (b.0 - a.0) / (b.1 - a.1);
            if p.0 < xc {
                inside = !inside;
            }
        }
        near |= segment_distance(p, a, b) <= tol;
    }
    inside || near
}

fn segment_distance(p: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let len2 = dx * dx + dy * dy;
    let s = if len2 > 0.0 {
        (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    ((p.0 - a.0 - s * dx).powi(2) + (p.1 - a.1 - s * dy).powi(2)).sqrt()
}

/// `I'(e^{2t} alpha12) / (e^{2t} beta12 alpha12)` at the cusp of time `t`.
pub fn atypicality_inequality(t: f64) -> Result<f64> {
    let top = cusp(t)?;
    let s = (2.0 * t).exp() * top.alpha12;
    if !(s > 0.0 && s < 1.0) {
        return Err(CoreError::Numerical(format!("cusp bias {s} outside (0,1) at t = {t}")).into());
    }
    Ok(d_entropy_i(s)? / (s * top.beta12))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::RfcwPotential;

    #[test]
    fn samples_are_folds() {
        let curve = bifurcation_curve(5.0, 0.07).unwrap();
        for s in curve.samples.iter().filter(|s| s.m > 0.0) {
            let p = RfcwPotential::new(s.beta12, s.alpha12, curve.h_t).unwrap();
            assert!(p.phi_d1(s.m).abs() < 1e-10);
            assert!(p.phi_d2(s.m).abs() < 1e-10, "{s:?}");
        }
        assert!(curve.ml > 0.0 && curve.ml < curve.mu);
    }

    #[test]
    fn c1_points_follow_formula() {
        let beta = 5.0;
        for p in c1_curve(beta, 0.07).unwrap() {
            assert!((p.p_minus + p.p_zero + p.p_plus - 1.0).abs() < 1e-12);
        }
        let c1 = c1_curve(beta, 0.07).unwrap();
        assert!((c1[0].p_zero).abs() < 1e-9, "branch starts on the face");
    }

    #[test]
    fn polygon_membership() {
        let sq = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)];
        assert!(polygon_contains(&sq, (0.5, 0.5), 0.0));
        assert!(!polygon_contains(&sq, (1.5, 0.5), 0.0));
        assert!(polygon_contains(&sq, (1.05, 0.5), 0.1));
    }
}
