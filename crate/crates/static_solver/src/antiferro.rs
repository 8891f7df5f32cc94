//! Negative repulsion. Maximizers are symmetric, and the occupation density
//! maximizes `V(x) = x (l - log 2) - J(x) - beta x^2 / 4`.

use std::f64::consts::LN_2;

use cwwr_core::numerics::bisect;
use cwwr_core::{d2_entropy_j, d_entropy_j, entropy_j, Error, Result};
use serde::Serialize;

pub fn v_potential(x: f64, beta: f64, l: f64) -> Result<f64> {
    Ok(x * (l - LN_2) - entropy_j(x)? - beta * x * x / 4.0)
}

pub fn v_d1(x: f64, beta: f64, l: f64) -> Result<f64> {
    Ok(l - LN_2 - d_entropy_j(x)? - beta * x / 2.0)
}

pub fn v_d2(x: f64, beta: f64) -> Result<f64> {
    Ok(-d2_entropy_j(x)? - beta / 2.0)
}

/// Point `(1/beta, alpha(0))` of the bifurcation set generated by `x`.
pub fn bifurcation_point(x: f64) -> Result<(f64, f64)> {
    let inv_beta = -x * (1.0 - x) / 2.0;
    let e = d_entropy_j(x)? - 1.0 / (1.0 - x);
    Ok((inv_beta, 1.0 / (2.0 * e.exp() + 1.0)))
}

/// Occupation bias `l` of the bifurcation point generated by `x`.
pub fn bifurcation_l(x: f64) -> Result<f64> {
    Ok(LN_2 + d_entropy_j(x)? - 1.0 / (1.0 - x))
}

/// Occupation bias on the Maxwell line.
pub fn maxwell_l(beta: f64) -> f64 {
    beta / 4.0
}

/// Hole weight `alpha(0)` on the Maxwell line; only defined below `-8`.
pub fn maxwell_alpha0(beta: f64) -> Result<f64> {
    if !(beta < -8.0) {
        return Err(Error::Param(format!(
            "the Maxwell line needs beta < -8, got {beta}"
        )));
    }
    Ok(1.0 / ((beta / 4.0).exp() + 1.0))
}

/// All local maxima `(x, V(x))` of `V`, ordered by `x`. The scan runs in
/// logit coordinates so maxima hugging either end are resolved.
pub fn antiferro_maximizers(beta: f64, l: f64) -> Result<Vec<(f64, f64)>> {
    let sig = |s: f64| 1.0 / (1.0 + (-s).exp());
    let d1 = |s: f64| v_d1(sig(s), beta, l).unwrap_or(f64::NAN);
    let span = 40.0 + beta.abs() + l.abs();
    let n = (2.0 * span / 0.005).ceil() as usize;
    let mut out = Vec::new();
    let mut prev = (-span, d1(-span));
    for k in 1..=n {
        let s = -span + 2.0 * span * k as f64 / n as f64;
        let v = d1(s);
        if prev.1 > 0.0 && v <= 0.0 {
            let r = if v == 0.0 { s } else { bisect(d1, prev.0, s, 0.0)? };
            let x = sig(r);
            if x > 0.0 && x < 1.0 {
                out.push((x, v_potential(x, beta, l)?));
            }
        }
        prev = (s, v);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AntiferroDiagram {
    /// `(1/beta(x), alpha0(x))` for cell-centred `x` in `(0, 1)`.
    pub bifurcation: Vec<(f64, f64)>,
    /// `(1/beta, alpha_c(0))` for `beta < -8`.
    pub maxwell: Vec<(f64, f64)>,
}

pub fn antiferro_diagram(n_bifurcation: usize, n_maxwell: usize) -> Result<AntiferroDiagram> {
    let mut bifurcation = Vec::with_capacity(n_bifurcation);
    for k in 0..n_bifurcation {
        let x = (k as f64 + 0.5) / n_bifurcation as f64;
        bifurcation.push(bifurcation_point(x)?);
    }
    let mut maxwell = Vec::with_capacity(n_maxwell);
    for k in 0..n_maxwell {
        // 1/beta spans (-1/8, 0) exclusive
        let inv_beta = -0.125 * (k as f64 + 1.0) / (n_maxwell as f64 + 1.0);
        maxwell.push((inv_beta, maxwell_alpha0(1.0 / inv_beta)?));
    }
    Ok(AntiferroDiagram { bifurcation, maxwell })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bifurcation_solves_both_conditions() {
        for k in 1..50 {
            let x = k as f64 / 50.0;
            let (ib, a0) = bifurcation_point(x).unwrap();
            let (beta, l) = (1.0 / ib, bifurcation_l(x).unwrap());
            assert!((a0 - 1.0 / (1.0 + l.exp())).abs() < 1e-14);
            assert!(v_d1(x, beta, l).unwrap().abs() < 1e-10);
            assert!(v_d2(x, beta).unwrap().abs() < 1e-9);
        }
    }

    #[test]
    fn cusp_at_one_half() {
        let (ib, a0) = bifurcation_point(0.5).unwrap();
        assert!((ib + 0.125).abs() < 1e-15);
        assert!((a0 - 1.0 / (1.0 + (-2.0f64).exp())).abs() < 1e-14);
        // every other bifurcation point lies at weaker repulsion
        for k in 1..100 {
            let x = k as f64 / 100.0;
            assert!(bifurcation_point(x).unwrap().0 >= ib);
        }
    }

    #[test]
    fn maxwell_values() {
        assert!((maxwell_alpha0(-16.0).unwrap() - 0.982014).abs() < 1e-6);
        assert!(maxwell_alpha0(-8.0).is_err());
        for x in [0.01, 0.2, 0.37] {
            let (a, b) = (v_potential(x, -16.0, -4.0).unwrap(), v_potential(1.0 - x, -16.0, -4.0).unwrap());
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn equal_maxima_on_maxwell_line() {
        let mx = antiferro_maximizers(-16.0, maxwell_l(-16.0)).unwrap();
        assert_eq!(mx.len(), 2);
        assert!((mx[0].0 + mx[1].0 - 1.0).abs() < 1e-10);
        assert!((mx[0].1 - mx[1].1).abs() < 1e-10);
    }

    #[test]
    fn single_maximum_above_minus_eight() {
        for l in [-2.0, 0.0, 1.0] {
            assert_eq!(antiferro_maximizers(-6.0, l).unwrap().len(), 1);
        }
    }
}
