use cwwr_core::numerics::bisect;
use serde::Serialize;

use crate::potential::RfcwPotential;

/// Number of intervals of the `phi'` sign scan on `[-1, 1]`.
pub const SCAN_POINTS: usize = 10_000;
/// Minima closer than this (in `m`) are the same minimum.
pub const MERGE_TOL: f64 = 1e-9;
/// Default value tolerance for a tie between global minima.
pub const GLOBAL_TIE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MinimizerReport {
    /// Global minimizers `(m*, phi(m*))`, ordered by `m*`.
    pub minima: Vec<(f64, f64)>,
    pub unique: bool,
    /// Value gap from the best to the next-best local minimum, if any.
    pub gap: Option<f64>,
    /// Every local minimum found, ordered by position.
    pub local_minima: Vec<(f64, f64)>,
}

/// Local minima of `phi` from a sign scan of `phi'` on `[-1, 1]`. All
/// stationary points lie there because `|E tanh| < 1`.
pub fn local_minima(p: &RfcwPotential) -> Vec<f64> {
    let n = SCAN_POINTS;
    let grid: Vec<f64> = (0..=n).map(|k| -1.0 + 2.0 * k as f64 / n as f64).collect();
    let d: Vec<f64> = grid.iter().map(|&m| p.phi_d1(m)).collect();
    let mut out: Vec<f64> = Vec::new();
    let mut k = 0;
    while k < n {
        if d[k] < 0.0 && d[k + 1] > 0.0 {
            let r = bisect(|m| p.phi_d1(m), grid[k], grid[k + 1], 0.0).expect("bracketed");
            out.push(r);
            k += 1;
        } else if d[k] < 0.0 && d[k + 1] == 0.0 {
            // exact zeros: a minimum if the run of zeros is followed by a rise
            let mut j = k + 1;
            while j < n && d[j] == 0.0 {
                j += 1;
            }
            if d[j] > 0.0 {
                out.push(0.5 * (grid[k + 1] + grid[j - 1]));
            }
            k = j;
        } else {
            k += 1;
        }
    }
    if d[0] == 0.0 && d[1] > 0.0 {
        out.insert(0, grid[0]);
    }
    out.dedup_by(|a, b| (*a - *b).abs() < MERGE_TOL);
    out
}

/// Global minimizers of the potential, tied within `tol` in value.
pub fn global_minimizers(p: &RfcwPotential, tol: f64) -> MinimizerReport {
    let local: Vec<(f64, f64)> = local_minima(p).into_iter().map(|m| (m, p.phi(m))).collect();
    let best = local.iter().map(|v| v.1).fold(f64::INFINITY, f64::min);
    let minima: Vec<(f64, f64)> = local.iter().copied().filter(|v| v.1 - best <= tol).collect();
    let mut values: Vec<f64> = local.iter().map(|v| v.1).collect();
    values.sort_by(f64::total_cmp);
    let gap = values.get(1).map(|v| v - values[0]);
    MinimizerReport { unique: minima.len() == 1, minima, gap, local_minima: local }
}
