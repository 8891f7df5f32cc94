use cwwr_core::{Error, Measure3, Result, Spin};
use serde::Serialize;
use statrs::function::gamma::ln_gamma;

/// Numbers of sites in each state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CountState {
    pub n_minus: usize,
    pub n_zero: usize,
    pub n_plus: usize,
}

impl CountState {
    pub fn new(n_minus: usize, n_zero: usize, n_plus: usize) -> Self {
        CountState { n_minus, n_zero, n_plus }
    }

    pub fn total(&self) -> usize {
        self.n_minus + self.n_zero + self.n_plus
    }

    pub fn occupied(&self) -> usize {
        self.n_minus + self.n_plus
    }

    pub fn get(&self, s: Spin) -> usize {
        match s {
            Spin::Minus => self.n_minus,
            Spin::Zero => self.n_zero,
            Spin::Plus => self.n_plus,
        }
    }

    pub fn to_measure(&self) -> Result<Measure3> {
        let n = self.total();
        if n == 0 {
            return Err(Error::Param("empty count state".into()));
        }
        let n = n as f64;
        Measure3::new(self.n_minus as f64 / n, self.n_zero as f64 / n, self.n_plus as f64 / n)
    }

    /// Rounds `n * alpha_f` in the spin slots and assigns the remainder to
    /// the hole slot.
    pub fn from_measure(alpha_f: &Measure3, n: usize) -> Result<Self> {
        let nf = n as f64;
        let mut plus = (nf * alpha_f.p_plus).round() as usize;
        let mut minus = (nf * alpha_f.p_minus).round() as usize;
        while plus + minus > n {
            if plus >= minus {
                plus -= 1;
            } else {
                minus -= 1;
            }
        }
        Ok(CountState::new(minus, n - plus - minus, plus))
    }
}

/// Table of `ln k!` for `k <= n`.
pub(crate) struct LnFactorials(Vec<f64>);

impl LnFactorials {
    pub fn new(n: usize) -> Self {
        LnFactorials((0..=n).map(|k| ln_gamma(k as f64 + 1.0)).collect())
    }

    pub fn binom(&self, n: usize, k: usize) -> f64 {
        self.0[n] - self.0[k] - self.0[n - k]
    }

    pub fn multinomial(&self, s: &CountState) -> f64 {
        self.0[s.total()] - self.0[s.n_minus] - self.0[s.n_zero] - self.0[s.n_plus]
    }
}

/// `k * ln p` with the convention `0 * ln 0 = 0`.
pub(crate) fn xlogp(k: usize, ln_p: f64) -> f64 {
    if k == 0 {
        0.0
    } else {
        k as f64 * ln_p
    }
}
