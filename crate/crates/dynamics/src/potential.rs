use cwwr_core::numerics::ln_cosh;
use cwwr_core::{Error, Measure3};
use serde::Serialize;

use crate::kernel::h_field;

/// Random-field Curie-Weiss potential
/// `phi(m) = m^2/2 - (1/bt) [p+ log cosh(bt m + h) + p- log cosh(bt m - h)]`
/// with `p± = (1 ± bias)/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RfcwPotential {
    pub beta_tilde: f64,
    pub bias: f64,
    pub h_t: f64,
}

/// Potential seen from the time-`t` empirical measure `alpha_f`.
pub fn effective_params(alpha_f: &Measure3, beta: f64, t: f64) -> Result<RfcwPotential, Error> {
    let occ = alpha_f.occupied();
    if occ <= 0.0 {
        return Err(Error::Param("conditioning measure has no occupied sites".into()));
    }
    RfcwPotential::new(
        0.5 * beta * occ,
        (alpha_f.p_plus - alpha_f.p_minus) / occ,
        h_field(t)?,
    )
}

impl RfcwPotential {
    pub fn new(beta_tilde: f64, bias: f64, h_t: f64) -> Result<Self, Error> {
        if !beta_tilde.is_finite() || !h_t.is_finite() || h_t < 0.0 {
            return Err(Error::Param(format!(
                "invalid potential parameters beta_tilde={beta_tilde}, h={h_t}"
            )));
        }
        if !(-1.0..=1.0).contains(&bias) {
            return Err(Error::Param(format!("bias must lie in [-1,1], got {bias}")));
        }
        Ok(RfcwPotential { beta_tilde, bias, h_t })
    }

    fn weights(&self) -> (f64, f64) {
        (0.5 * (1.0 + self.bias), 0.5 * (1.0 - self.bias))
    }

    /// Potential value. At `beta_tilde = 0` the limit is returned up to an
    /// additive constant.
    pub fn phi(&self, m: f64) -> f64 {
        let (pp, pm) = self.weights();
        let b = self.beta_tilde;
        if b == 0.0 {
            return 0.5 * m * m - m * self.bias * self.h_t.tanh();
        }
        0.5 * m * m - (pp * ln_cosh(b * m + self.h_t) + pm * ln_cosh(b * m - self.h_t)) / b
    }

    pub fn phi_d1(&self, m: f64) -> f64 {
        let (pp, pm) = self.weights();
        let b = self.beta_tilde;
        m - pp * (b * m + self.h_t).tanh() - pm * (b * m - self.h_t).tanh()
    }

    pub fn phi_d2(&self, m: f64) -> f64 {
        let (pp, pm) = self.weights();
        let b = self.beta_tilde;
        let s = |z: f64| 1.0 - z.tanh().powi(2);
        1.0 - b * (pp * s(b * m + self.h_t) + pm * s(b * m - self.h_t))
    }

    pub fn phi_d3(&self, m: f64) -> f64 {
        let (pp, pm) = self.weights();
        let b = self.beta_tilde;
        let st = |z: f64| {
            let t = z.tanh();
            (1.0 - t * t) * t
        };
        2.0 * b * b * (pp * st(b * m + self.h_t) + pm * st(b * m - self.h_t))
    }

    /// Bias at which `m` is a stationary point, for the same coupling and field.
    pub fn equilibrium_bias(&self, m: f64) -> f64 {
        equilibrium_bias(m, self.beta_tilde, self.h_t)
    }

    pub fn with_bias(&self, bias: f64) -> Self {
        RfcwPotential { bias, ..*self }
    }
}

/// `(2m - T+ - T-)/(T+ - T-)` with `T± = tanh(bt m ± h)`; requires `h > 0`.
pub fn equilibrium_bias(m: f64, beta_tilde: f64, h: f64) -> f64 {
    let tp = (beta_tilde * m + h).tanh();
    let tm = (beta_tilde * m - h).tanh();
    (2.0 * m - tp - tm) / (tp - tm)
}
