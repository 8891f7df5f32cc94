//! Numerical certificate of badness: two conditioning sequences with the
//! same limit but opposite sub-linear perturbations of the magnetization.

use cwwr_core::{Error, Measure3, Result};
use rayon::prelude::*;
use serde::Serialize;

use crate::counts::CountState;
use crate::evolved::evolved_conditional_law;

/// Sites moved between the plus and minus slots are `ceil(c sqrt(n))`.
pub const DEFAULT_SHIFT_COEFF: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProbeVerdict {
    Gap,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeRow {
    pub n: usize,
    pub shift: usize,
    /// Conditional law `[minus, zero, plus]` with plus sites added.
    pub law_plus: [f64; 3],
    /// Conditional law with minus sites added.
    pub law_minus: [f64; 3],
    pub gap: f64,
    /// Change of the gap when the shift grows by one site.
    pub discretization_error: f64,
    pub verdict: ProbeVerdict,
}

/// Conditioning counts on `n - 1` sites near `alpha_f`, shifted by `shift`
/// sites towards plus and towards minus.
pub fn probe_counts(alpha_f: &Measure3, n: usize, shift: usize) -> Result<(CountState, CountState)> {
    if n < 2 {
        return Err(Error::Param("probe needs at least two sites".into()));
    }
    let base = CountState::from_measure(alpha_f, n - 1)?;
    if base.n_plus < shift || base.n_minus < shift {
        return Err(Error::Param(format!(
            "cannot move {shift} sites at n = {n}: counts {base:?}"
        )));
    }
    Ok((
        CountState::new(base.n_minus - shift, base.n_zero, base.n_plus + shift),
        CountState::new(base.n_minus + shift, base.n_zero, base.n_plus - shift),
    ))
}

fn gap_at(n: usize, beta: f64, alpha: &Measure3, t: f64, alpha_f: &Measure3, shift: usize)
    -> Result<([f64; 3], [f64; 3], f64)> {
    let (up, down) = probe_counts(alpha_f, n, shift)?;
    let a = evolved_conditional_law(n, beta, alpha, t, &up)?;
    let b = evolved_conditional_law(n, beta, alpha, t, &down)?;
    let gap = (0..3).map(|k| (a[k] - b[k]).abs()).fold(0.0, f64::max);
    Ok((a, b, gap))
}

/// Runs the two sequences at every size in `sizes`.
pub fn badness_probe(
    beta: f64,
    alpha: &Measure3,
    t: f64,
    alpha_f: &Measure3,
    sizes: &[usize],
    shift_coeff: f64,
) -> Result<Vec<ProbeRow>> {
    if !(shift_coeff > 0.0) {
        return Err(Error::Param(format!("shift coefficient must be positive, got {shift_coeff}")));
    }
    sizes
        .par_iter()
        .map(|&n| {
            let shift = (shift_coeff * (n as f64).sqrt()).ceil() as usize;
            let (law_plus, law_minus, gap) = gap_at(n, beta, alpha, t, alpha_f, shift)?;
            let (_, _, wider) = gap_at(n, beta, alpha, t, alpha_f, shift + 1)?;
            let discretization_error = (wider - gap).abs();
            let verdict = if gap >= 10.0 * discretization_error {
                ProbeVerdict::Gap
            } else {
                ProbeVerdict::Inconclusive
            };
            Ok(ProbeRow { n, shift, law_plus, law_minus, gap, discretization_error, verdict })
        })
        .collect()
}
