//! Symmetric stationary points `nu(1) = nu(-1)` of a symmetric model.

use cwwr_core::numerics::bisect;
use cwwr_core::{Error, Measure3, Result};

/// All roots `nu(1)` in `(0, 1/2)` of `exp(-beta nu) = q nu / (1 - 2 nu)`,
/// in increasing order. Solved in `s = log(nu / (1 - 2 nu))`, where the
/// equation reads `log q + s + beta nu = 0`.
pub fn symmetric_fixed_points(beta: f64, q: f64) -> Result<Vec<f64>> {
    if !(q > 0.0 && q.is_finite()) || !beta.is_finite() {
        return Err(Error::Param(format!("need q > 0 and finite beta, got q={q}, beta={beta}")));
    }
    let nu_of = |s: f64| {
        let r = s.exp();
        if r.is_infinite() {
            0.5
        } else {
            r / (1.0 + 2.0 * r)
        }
    };
    let f = |s: f64| q.ln() + s + beta * nu_of(s);
    let lo = -q.ln().abs() - beta.abs() - 50.0;
    let hi = q.ln().abs() + beta.abs() / 2.0 + 50.0;
    let n = ((hi - lo) / 0.005).ceil() as usize;
    let mut roots = Vec::new();
    let mut prev_s = lo;
    let mut prev = f(lo);
    for k in 1..=n {
        let s = lo + (hi - lo) * k as f64 / n as f64;
        let v = f(s);
        if v == 0.0 {
            roots.push(nu_of(s));
        } else if prev != 0.0 && prev.signum() != v.signum() {
            let r = bisect(f, prev_s, s, 1e-14)?;
            roots.push(nu_of(r));
        }
        prev_s = s;
        prev = v;
    }
    Ok(roots)
}

/// The unique symmetric stationary point. When the repulsion is negative
/// enough for several roots to coexist, the multiplicity is reported.
pub fn symmetric_fixed_point(beta: f64, q: f64) -> Result<Measure3> {
    let roots = symmetric_fixed_points(beta, q)?;
    match roots.as_slice() {
        [nu] => {
            if beta > 0.0 {
                debug_assert!(*nu > 0.0 && *nu < 1.0 / (2.0 + q));
            }
            Measure3::new(*nu, 1.0 - 2.0 * nu, *nu)
        }
        _ => Err(Error::Multiple {
            what: format!("symmetric fixed point at beta={beta}, q={q}"),
            count: roots.len(),
        }),
    }
}
