//! Spin entropy `I(m)` and occupation entropy `J(x)`.
//!
//! Values at the endpoints use the continuous extension. Derivatives diverge
//! there, so derivative calls at the endpoints return a domain error instead
//! of an infinity.

use std::f64::consts::LN_2;

use crate::{Error, Result};

fn xlnx(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

/// `I(m) = ((1-m)/2) log(1-m) + ((1+m)/2) log(1+m)` on `[-1, 1]`.
pub fn entropy_i(m: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&m) {
        return Err(Error::Domain(format!("I(m) needs m in [-1,1], got {m}")));
    }
    if m.abs() == 1.0 {
        return Ok(LN_2);
    }
    Ok(0.5 * (1.0 - m) * (-m).ln_1p() + 0.5 * (1.0 + m) * m.ln_1p())
}

/// `I'(m) = atanh(m)` on `(-1, 1)`.
pub fn d_entropy_i(m: f64) -> Result<f64> {
    if !(m > -1.0 && m < 1.0) {
        return Err(Error::Domain(format!("I'(m) needs m in (-1,1), got {m}")));
    }
    Ok(m.signum() * m.abs().atanh())
}

/// `J(x) = (1-x) log(1-x) + x log x - x log 2` on `[0, 1]`.
pub fn entropy_j(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("J(x) needs x in [0,1], got {x}")));
    }
    Ok(xlnx(1.0 - x) + xlnx(x) - x * LN_2)
}

/// `J'(x) = log x - log(1-x) - log 2` on `(0, 1)`.
pub fn d_entropy_j(x: f64) -> Result<f64> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::Domain(format!("J'(x) needs x in (0,1), got {x}")));
    }
    Ok(x.ln() - (-x).ln_1p() - LN_2)
}

/// `J''(x) = 1/x + 1/(1-x)` on `(0, 1)`.
pub fn d2_entropy_j(x: f64) -> Result<f64> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::Domain(format!("J''(x) needs x in (0,1), got {x}")));
    }
    Ok(1.0 / x + 1.0 / (1.0 - x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_values() {
        assert_eq!(entropy_i(0.0).unwrap(), 0.0);
        assert_eq!(d_entropy_i(0.0).unwrap(), 0.0);
        assert!((entropy_j(2.0 / 3.0).unwrap() + 3f64.ln()).abs() < 1e-15);
        assert!(d_entropy_j(2.0 / 3.0).unwrap().abs() < 1e-15);
    }

    #[test]
    fn endpoint_extensions() {
        assert_eq!(entropy_i(1.0).unwrap(), LN_2);
        assert_eq!(entropy_i(-1.0).unwrap(), LN_2);
        assert_eq!(entropy_j(0.0).unwrap(), 0.0);
        assert!((entropy_j(1.0).unwrap() + LN_2).abs() < 1e-15);
        assert!(d_entropy_i(1.0).is_err());
        assert!(d_entropy_j(0.0).is_err());
        assert!(d2_entropy_j(1.0).is_err());
        assert!(entropy_i(1.5).is_err());
        assert!(entropy_j(-0.1).is_err());
    }

    #[test]
    fn i_at_one_half_against_bernoulli_oracle() {
        // log 2 minus the Shannon entropy of Bernoulli((1+m)/2)
        let p: f64 = 0.75;
        let shannon = -(p * p.ln() + (1.0 - p) * (1.0 - p).ln());
        let oracle = LN_2 - shannon;
        let v = entropy_i(0.5).unwrap();
        assert!((v - oracle).abs() < 1e-15);
        assert!((v - 0.13082).abs() < 1e-5);
        // its finite-difference derivative matches atanh
        let e = 1e-6;
        let fd = (entropy_i(0.5 + e).unwrap() - entropy_i(0.5 - e).unwrap()) / (2.0 * e);
        assert!((fd - d_entropy_i(0.5).unwrap()).abs() < 1e-8);
    }

    #[test]
    fn small_m_ratio() {
        let m = 1e-4;
        assert!((d_entropy_i(m).unwrap() / m - 1.0).abs() < 1e-6);
    }
}
