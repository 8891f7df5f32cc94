use cwwr_core::{Error as CoreError, Measure3, ModelParams, Spin};

use crate::minimizers::{global_minimizers, GLOBAL_TIE_TOL};
use crate::potential::effective_params;
use crate::{Error, Result};

/// Limiting single-site conditional probability of `eta1` at time `t` given
/// that the rest of the configuration has empirical measure `alpha_f`.
///
/// Occupied values carry the factor `exp(-beta x / 2)` with `x = alpha_f({-1,1})`,
/// which is what the single-site interaction with the first layer produces
/// and what reduces to the static kernel at `t = 0`.
pub fn specification_kernel(eta1: Spin, alpha_f: &Measure3, p: &ModelParams, t: f64) -> Result<f64> {
    if !p.alpha.is_symmetric(1e-12) {
        return Err(CoreError::Param("the dynamic kernel needs a symmetric a priori measure".into()).into());
    }
    if !(t > 0.0) {
        return Err(CoreError::Param(format!("kernel needs t > 0, got {t}")).into());
    }
    let x = alpha_f.occupied();
    let (a0, a1) = (p.alpha.p_zero, p.alpha.p_plus);
    let m_star = if x > 0.0 {
        let pot = effective_params(alpha_f, p.beta, t)?;
        let report = global_minimizers(&pot, GLOBAL_TIE_TOL);
        if !report.unique {
            return Err(Error::BadPoint { minima: report.minima.iter().map(|v| v.0).collect() });
        }
        report.minima[0].0
    } else {
        0.0
    };
    let y = 0.5 * p.beta * x * m_star;
    let pref = a1 * (-0.5 * p.beta * x).exp();
    let decay = (-2.0 * t).exp();
    let occupied = |s: f64| pref * (y.cosh() + s * decay * y.sinh());
    let z = a0 + 2.0 * pref * y.cosh();
    Ok(match eta1 {
        Spin::Zero => a0 / z,
        Spin::Plus => occupied(1.0) / z,
        Spin::Minus => occupied(-1.0) / z,
    })
}
