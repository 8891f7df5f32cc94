//! Conditional probabilities of the time-evolved measure.
//!
//! Holes never move, so a time-`t` configuration fixes the occupied sites of
//! the initial one. For the other sites, only the numbers `j` and `i` of
//! agreements among the plus and minus sites at time `t` matter.

use cwwr_core::numerics::LogSumExp;
use cwwr_core::{Error, Measure3, Result, Spin};

use crate::counts::{xlogp, CountState, LnFactorials};

/// Log transition probabilities `(same sign, opposite sign)`.
fn log_flip(t: f64) -> Result<(f64, f64)> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::Param(format!("time must be finite and non-negative, got {t}")));
    }
    let e = (-2.0 * t).exp();
    Ok(((0.5 * (1.0 + e)).ln(), (0.5 * (1.0 - e)).ln()))
}

/// Unnormalized log joint probability of `(eta_1 = s, eta_rest)` for one
/// fixed configuration of the other `n - 1` sites with counts `rest`,
/// indexed as `[minus, zero, plus]`. Factors shared by all three cases are
/// dropped.
pub fn evolved_log_weights(
    n: usize,
    beta: f64,
    alpha: &Measure3,
    t: f64,
    rest: &CountState,
) -> Result<[f64; 3]> {
    if n < 1 || rest.total() != n - 1 {
        return Err(Error::Param(format!(
            "conditioning has {} sites, expected {}",
            rest.total(),
            n.saturating_sub(1)
        )));
    }
    let (ls, ld) = log_flip(t)?;
    let (la_m, la_0, la_p) = (alpha.p_minus.ln(), alpha.p_zero.ln(), alpha.p_plus.ln());
    let f = LnFactorials::new(n);
    let (kp, km) = (rest.n_plus, rest.n_minus);
    let nf = n as f64;
    // site 1 initially a hole, plus, or minus
    let (mut w0, mut wp, mut wm) = (LogSumExp::new(), LogSumExp::new(), LogSumExp::new());
    for j in 0..=kp {
        for i in 0..=km {
            let np = j + (km - i);
            let nm = (kp - j) + i;
            let base = f.binom(kp, j)
                + f.binom(km, i)
                + xlogp(j + i, ls)
                + xlogp(kp - j + km - i, ld)
                + xlogp(np, la_p)
                + xlogp(nm, la_m);
            w0.add(base - beta * (np * nm) as f64 / nf);
            wp.add(base - beta * ((np + 1) * nm) as f64 / nf);
            wm.add(base - beta * (np * (nm + 1)) as f64 / nf);
        }
    }
    let (w0, wp, wm) = (w0.value(), wp.value(), wm.value());
    let pair = |a: f64, b: f64| {
        let mut acc = LogSumExp::new();
        acc.add(a);
        acc.add(b);
        acc.value()
    };
    let hole = if alpha.p_zero > 0.0 { la_0 + w0 } else { f64::NEG_INFINITY };
    let plus = pair(la_p + ls + wp, la_m + ld + wm);
    let minus = pair(la_m + ls + wm, la_p + ld + wp);
    Ok([minus, hole, plus])
}

/// `mu_{t,n}(eta_1 = . | eta_rest)` as `[minus, zero, plus]`.
pub fn evolved_conditional_law(
    n: usize,
    beta: f64,
    alpha: &Measure3,
    t: f64,
    rest: &CountState,
) -> Result<[f64; 3]> {
    let w = evolved_log_weights(n, beta, alpha, t, rest)?;
    let mut acc = LogSumExp::new();
    w.iter().for_each(|&v| acc.add(v));
    let z = acc.value();
    Ok(w.map(|v| (v - z).exp()))
}

pub fn evolved_conditional(
    n: usize,
    beta: f64,
    alpha: &Measure3,
    t: f64,
    eta1: Spin,
    rest: &CountState,
) -> Result<f64> {
    let law = evolved_conditional_law(n, beta, alpha, t, rest)?;
    Ok(law[(eta1.value() + 1) as usize])
}

/// Probability that site 1 is a hole given only which of the other sites
/// are holes, `occupied` of them being occupied.
pub fn hole_marginal(n: usize, beta: f64, alpha: &Measure3, t: f64, occupied: usize) -> Result<f64> {
    if occupied > n.saturating_sub(1) {
        return Err(Error::Param(format!("{occupied} occupied sites among {} ", n - 1)));
    }
    let f = LnFactorials::new(n);
    let (mut num, mut den) = (LogSumExp::new(), LogSumExp::new());
    for kp in 0..=occupied {
        let rest = CountState::new(occupied - kp, n - 1 - occupied, kp);
        let w = evolved_log_weights(n, beta, alpha, t, &rest)?;
        let c = f.binom(occupied, kp);
        num.add(c + w[1]);
        w.iter().for_each(|&v| den.add(c + v));
    }
    Ok((num.value() - den.value()).exp())
}

/// Law of the number of initially plus sites given the full time-`t`
/// configuration `eta` (symmetric a priori measure), from the agreement sums.
pub fn first_layer_law(n: usize, beta: f64, t: f64, eta: &CountState) -> Result<Vec<f64>> {
    if eta.total() != n {
        return Err(Error::Param("configuration size mismatch".into()));
    }
    let (ls, ld) = log_flip(t)?;
    let f = LnFactorials::new(n);
    let (kp, km) = (eta.n_plus, eta.n_minus);
    let k = kp + km;
    let mut acc = vec![LogSumExp::new(); k + 1];
    for j in 0..=kp {
        for i in 0..=km {
            let (np, nm) = (j + km - i, kp - j + i);
            acc[np].add(
                f.binom(kp, j) + f.binom(km, i) + xlogp(j + i, ls) + xlogp(k - j - i, ld)
                    - beta * (np * nm) as f64 / n as f64,
            );
        }
    }
    normalize(acc)
}

/// The same law from the Curie-Weiss form on the occupied sites: coupling
/// `beta k / n`, field `atanh(exp(-2t))` along the time-`t` spins.
pub fn curie_weiss_law(n: usize, beta: f64, t: f64, eta: &CountState) -> Result<Vec<f64>> {
    if eta.total() != n || !(t > 0.0) {
        return Err(Error::Param("size mismatch or t <= 0".into()));
    }
    let h = (-2.0 * t).exp().atanh();
    let f = LnFactorials::new(n);
    let (kp, km) = (eta.n_plus, eta.n_minus);
    let k = kp + km;
    let coupling = beta * k as f64 / n as f64;
    let mut acc = vec![LogSumExp::new(); k + 1];
    for j in 0..=kp {
        for i in 0..=km {
            let np = j + km - i;
            let mag = 2.0 * np as f64 - k as f64;
            let agree = (j + i) as f64 - (k - j - i) as f64;
            acc[np].add(f.binom(kp, j) + f.binom(km, i) + coupling * mag * mag / (4.0 * k as f64) + h * agree);
        }
    }
    normalize(acc)
}

fn normalize(acc: Vec<LogSumExp>) -> Result<Vec<f64>> {
    let mut total = LogSumExp::new();
    acc.iter().for_each(|a| total.merge(a));
    let z = total.value();
    if !z.is_finite() {
        return Err(Error::Numerical("law has no mass".into()));
    }
    Ok(acc.iter().map(|a| (a.value() - z).exp()).collect())
}
