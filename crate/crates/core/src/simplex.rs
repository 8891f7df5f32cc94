use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Tolerance on the normalization of a [`Measure3`].
pub const SIMPLEX_TOL: f64 = 1e-12;

/// A single-site state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Spin {
    Minus,
    Zero,
    Plus,
}

impl Spin {
    pub const ALL: [Spin; 3] = [Spin::Minus, Spin::Zero, Spin::Plus];

    pub fn value(self) -> i32 {
        match self {
            Spin::Minus => -1,
            Spin::Zero => 0,
            Spin::Plus => 1,
        }
    }

    pub fn from_value(v: i32) -> Result<Spin> {
        match v {
            -1 => Ok(Spin::Minus),
            0 => Ok(Spin::Zero),
            1 => Ok(Spin::Plus),
            _ => Err(Error::Param(format!("spin must be -1, 0 or 1, got {v}"))),
        }
    }

    pub fn flip(self) -> Spin {
        match self {
            Spin::Minus => Spin::Plus,
            Spin::Zero => Spin::Zero,
            Spin::Plus => Spin::Minus,
        }
    }
}

/// Probability measure on {-1, 0, +1}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Measure3 {
    pub p_minus: f64,
    pub p_zero: f64,
    pub p_plus: f64,
}

impl Measure3 {
    /// Validates and renormalizes. Components may undershoot zero by at most
    /// the simplex tolerance, and the total must be within it of one.
    pub fn new(p_minus: f64, p_zero: f64, p_plus: f64) -> Result<Self> {
        let ps = [p_minus, p_zero, p_plus];
        if ps.iter().any(|p| !p.is_finite()) {
            return Err(Error::Param(format!("non-finite measure {ps:?}")));
        }
        if ps.iter().any(|&p| p < -SIMPLEX_TOL || p > 1.0 + SIMPLEX_TOL) {
            return Err(Error::Param(format!("component outside [0,1] in {ps:?}")));
        }
        let total: f64 = ps.iter().sum();
        if (total - 1.0).abs() > SIMPLEX_TOL {
            return Err(Error::Param(format!("measure {ps:?} sums to {total}")));
        }
        let c = |p: f64| p.max(0.0);
        let total = c(p_minus) + c(p_zero) + c(p_plus);
        Ok(Measure3 {
            p_minus: c(p_minus) / total,
            p_zero: c(p_zero) / total,
            p_plus: c(p_plus) / total,
        })
    }

    pub fn uniform() -> Self {
        Measure3 { p_minus: 1.0 / 3.0, p_zero: 1.0 / 3.0, p_plus: 1.0 / 3.0 }
    }

    /// Symmetric measure with the given hole weight.
    pub fn symmetric(p_zero: f64) -> Result<Self> {
        let side = (1.0 - p_zero) / 2.0;
        Measure3::new(side, p_zero, side)
    }

    pub fn get(&self, s: Spin) -> f64 {
        match s {
            Spin::Minus => self.p_minus,
            Spin::Zero => self.p_zero,
            Spin::Plus => self.p_plus,
        }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.p_minus, self.p_zero, self.p_plus]
    }

    /// Mass on the occupied states.
    pub fn occupied(&self) -> f64 {
        self.p_minus + self.p_plus
    }

    pub fn is_interior(&self) -> bool {
        self.p_minus > 0.0 && self.p_zero > 0.0 && self.p_plus > 0.0
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        (self.p_plus - self.p_minus).abs() <= tol
    }

    /// The ± reflection.
    pub fn reflect(&self) -> Self {
        Measure3 { p_minus: self.p_plus, p_zero: self.p_zero, p_plus: self.p_minus }
    }

    pub fn distance(&self, other: &Measure3) -> f64 {
        let d = [
            self.p_minus - other.p_minus,
            self.p_zero - other.p_zero,
            self.p_plus - other.p_plus,
        ];
        d.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn to_xm(&self) -> XmCoords {
        let x = self.p_plus + self.p_minus;
        let m = if x > 0.0 { (self.p_plus - self.p_minus) / x } else { 0.0 };
        XmCoords { x: x.min(1.0), m: m.clamp(-1.0, 1.0) }
    }
}

/// Occupation density and magnetization on occupied sites.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct XmCoords {
    pub x: f64,
    pub m: f64,
}

impl XmCoords {
    pub fn new(x: f64, m: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&x) || !(-1.0..=1.0).contains(&m) {
            return Err(Error::Param(format!("(x, m) = ({x}, {m}) out of range")));
        }
        Ok(XmCoords { x, m })
    }

    pub fn to_measure(&self) -> Result<Measure3> {
        let XmCoords { x, m } = XmCoords::new(self.x, self.m)?;
        Measure3::new(0.5 * x * (1.0 - m), 1.0 - x, 0.5 * x * (1.0 + m))
    }
}

/// Field-type asymmetry `h` and occupation bias `l` of an interior a priori measure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AprioriParams {
    pub h: f64,
    pub l: f64,
}

impl AprioriParams {
    pub fn new(h: f64, l: f64) -> Result<Self> {
        if !h.is_finite() || !l.is_finite() {
            return Err(Error::Param(format!("non-finite (h, l) = ({h}, {l})")));
        }
        Ok(AprioriParams { h, l })
    }

    pub fn from_measure(alpha: &Measure3) -> Result<Self> {
        if !alpha.is_interior() {
            return Err(Error::Param("a priori measure must be interior".into()));
        }
        let h = 0.5 * (alpha.p_plus / alpha.p_minus).ln();
        let l = ((1.0 - alpha.p_zero) / alpha.p_zero).ln();
        AprioriParams::new(h, l)
    }

    pub fn to_measure(&self) -> Result<Measure3> {
        let p_zero = 1.0 / (1.0 + self.l.exp());
        let occ = 1.0 - p_zero;
        // e^{±h}/(2 cosh h) written without overflow
        let plus = 1.0 / (1.0 + (-2.0 * self.h).exp());
        let minus = 1.0 / (1.0 + (2.0 * self.h).exp());
        Measure3::new(occ * minus, p_zero, occ * plus)
    }

    /// Stable `log(2 cosh h)`.
    pub fn log_two_cosh_h(&self) -> f64 {
        let a = self.h.abs();
        a + (-2.0 * a).exp().ln_1p()
    }

    /// Stable `log cosh h`.
    pub fn log_cosh_h(&self) -> f64 {
        self.log_two_cosh_h() - std::f64::consts::LN_2
    }

    /// Symmetric model with hole-to-spin ratio `q = alpha(0)/alpha(1)`.
    pub fn symmetric_from_q(q: f64) -> Result<Self> {
        if !(q > 0.0 && q.is_finite()) {
            return Err(Error::Param(format!("q must be positive, got {q}")));
        }
        AprioriParams::new(0.0, (2.0 / q).ln())
    }
}

/// Repulsion strength together with an interior a priori measure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub beta: f64,
    pub alpha: Measure3,
}

impl ModelParams {
    pub fn new(beta: f64, alpha: Measure3) -> Result<Self> {
        if !beta.is_finite() {
            return Err(Error::Param(format!("beta must be finite, got {beta}")));
        }
        if !alpha.is_interior() {
            return Err(Error::Param("a priori measure must be interior".into()));
        }
        Ok(ModelParams { beta, alpha })
    }

    pub fn apriori(&self) -> AprioriParams {
        AprioriParams::from_measure(&self.alpha).expect("interior by construction")
    }

    /// `alpha(0)/alpha(1)`.
    pub fn q(&self) -> f64 {
        self.alpha.p_zero / self.alpha.p_plus
    }

    /// `(alpha(1) - alpha(-1)) / (alpha(1) + alpha(-1))`.
    pub fn alpha_star(&self) -> f64 {
        (self.alpha.p_plus - self.alpha.p_minus) / self.alpha.occupied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn to_xm_examples() {
        let c = Measure3::uniform().to_xm();
        assert!((c.x - 2.0 / 3.0).abs() < 1e-15 && c.m.abs() < 1e-15);
        let c = Measure3::new(0.15, 0.40, 0.45).unwrap().to_xm();
        assert!((c.x - 0.6).abs() < 1e-15 && (c.m - 0.5).abs() < 1e-14);
        let c = Measure3::new(0.0, 1.0, 0.0).unwrap().to_xm();
        assert_eq!((c.x, c.m), (0.0, 0.0));
    }

    #[test]
    fn from_xm_examples() {
        let u = XmCoords::new(2.0 / 3.0, 0.0).unwrap().to_measure().unwrap();
        assert!(u.distance(&Measure3::uniform()) < 1e-15);
        let p = XmCoords::new(1.0, 1.0).unwrap().to_measure().unwrap();
        assert_eq!(p.as_array(), [0.0, 0.0, 1.0]);
        let v = XmCoords::new(0.6, 0.5).unwrap().to_measure().unwrap();
        assert!(v.distance(&Measure3::new(0.15, 0.40, 0.45).unwrap()) < 1e-15);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Measure3::new(0.5, 0.5, 0.1).is_err());
        assert!(Measure3::new(-0.1, 0.6, 0.5).is_err());
        assert!(Measure3::new(f64::NAN, 0.5, 0.5).is_err());
        assert!(XmCoords::new(1.1, 0.0).is_err());
        assert!(XmCoords::new(0.5, -1.5).is_err());
        assert!(AprioriParams::from_measure(&Measure3::new(0.0, 0.5, 0.5).unwrap()).is_err());
        assert!(ModelParams::new(1.0, Measure3::new(0.5, 0.0, 0.5).unwrap()).is_err());
    }

    #[test]
    fn renormalizes_within_tolerance() {
        let m = Measure3::new(0.2, 0.3, 0.5 + 5e-13).unwrap();
        assert!((m.p_minus + m.p_zero + m.p_plus - 1.0).abs() < 1e-15);
    }

    #[test]
    fn apriori_uniform() {
        let a = AprioriParams::from_measure(&Measure3::uniform()).unwrap();
        assert!(a.h.abs() < 1e-15);
        assert!((a.l - 2f64.ln()).abs() < 1e-15);
        let p = ModelParams::new(1.0, Measure3::uniform()).unwrap();
        assert!((p.q() - 1.0).abs() < 1e-15 && p.alpha_star().abs() < 1e-15);
    }

    #[test]
    fn spin_roundtrip() {
        for s in Spin::ALL {
            assert_eq!(Spin::from_value(s.value()).unwrap(), s);
            assert_eq!(s.flip().flip(), s);
        }
        assert!(Spin::from_value(2).is_err());
    }
}
