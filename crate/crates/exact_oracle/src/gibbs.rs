use cwwr_core::numerics::LogSumExp;
use cwwr_core::{Error, Measure3, Result};

use crate::counts::{xlogp, CountState, LnFactorials};

fn check_size(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Param("system size must be at least 1".into()));
    }
    Ok(())
}

/// Unnormalized log probability of the count state `s` in a system of `n` sites.
fn log_weight(s: &CountState, beta: f64, n: usize, f: &LnFactorials, alpha: &Measure3) -> f64 {
    f.multinomial(s)
        + xlogp(s.n_minus, alpha.p_minus.ln())
        + xlogp(s.n_zero, alpha.p_zero.ln())
        + xlogp(s.n_plus, alpha.p_plus.ln())
        - beta * (s.n_plus * s.n_minus) as f64 / n as f64
}

fn states(n: usize) -> impl Iterator<Item = CountState> {
    (0..=n).flat_map(move |a| (0..=n - a).map(move |b| CountState::new(a, b, n - a - b)))
}

pub fn log_partition_function(n: usize, beta: f64, alpha: &Measure3) -> Result<f64> {
    check_size(n)?;
    let f = LnFactorials::new(n);
    let mut acc = LogSumExp::new();
    for s in states(n) {
        acc.add(log_weight(&s, beta, n, &f, alpha));
    }
    Ok(acc.value())
}

pub fn partition_function(n: usize, beta: f64, alpha: &Measure3) -> Result<f64> {
    Ok(log_partition_function(n, beta, alpha)?.exp())
}

/// Partition function by enumerating all `3^n` configurations with the
/// pair Hamiltonian `(beta / 2n) * #{ordered pairs with opposite spins}`.
pub fn partition_function_enumerated(n: usize, beta: f64, alpha: &Measure3) -> Result<f64> {
    check_size(n)?;
    if n > 10 {
        return Err(Error::Param(format!("enumeration limited to 10 sites, got {n}")));
    }
    let a = alpha.as_array();
    let mut z = 0.0;
    let mut config = vec![0usize; n];
    for code in 0..3usize.pow(n as u32) {
        let mut c = code;
        for v in config.iter_mut() {
            *v = c % 3;
            c /= 3;
        }
        let mut pairs = 0usize;
        for i in 0..n {
            for j in 0..n {
                if (config[i] == 0 && config[j] == 2) || (config[i] == 2 && config[j] == 0) {
                    pairs += 1;
                }
            }
        }
        let prior: f64 = config.iter().map(|&k| a[k]).product();
        z += prior * (-beta * pairs as f64 / (2.0 * n as f64)).exp();
    }
    Ok(z)
}

/// Exact log probabilities of the counts, in lexicographic order of
/// `(n_minus, n_zero)`.
pub fn empirical_log_law(n: usize, beta: f64, alpha: &Measure3) -> Result<Vec<(CountState, f64)>> {
    let log_z = log_partition_function(n, beta, alpha)?;
    let f = LnFactorials::new(n);
    Ok(states(n).map(|s| (s, log_weight(&s, beta, n, &f, alpha) - log_z)).collect())
}

/// Exact law of the counts, ordered as in [`empirical_log_law`].
pub fn empirical_law(n: usize, beta: f64, alpha: &Measure3) -> Result<Vec<(CountState, f64)>> {
    Ok(empirical_log_law(n, beta, alpha)?.into_iter().map(|(s, l)| (s, l.exp())).collect())
}

/// States whose probability is within relative `1e-9` of the largest.
pub fn law_modes(law: &[(CountState, f64)]) -> Vec<CountState> {
    let best = law.iter().map(|(_, p)| *p).fold(0.0, f64::max);
    law.iter().filter(|(_, p)| *p >= best * (1.0 - 1e-9)).map(|(s, _)| *s).collect()
}

/// `beta nu(1) nu(-1) + sum nu ln(nu/alpha)`, the negative free energy
/// before subtracting its minimum.
pub fn rate_function(nu: &Measure3, beta: f64, alpha: &Measure3) -> f64 {
    let rel = |p: f64, a: f64| if p > 0.0 { p * (p / a).ln() } else { 0.0 };
    beta * nu.p_plus * nu.p_minus
        + rel(nu.p_minus, alpha.p_minus)
        + rel(nu.p_zero, alpha.p_zero)
        + rel(nu.p_plus, alpha.p_plus)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_systems() {
        let u = Measure3::uniform();
        assert!((partition_function(1, 3.0, &u).unwrap() - 1.0).abs() < 1e-15);
        let z2 = 1.0 - 2.0 / 9.0 * (1.0 - (-0.5f64).exp());
        assert!((partition_function(2, 1.0, &u).unwrap() - z2).abs() < 1e-14);
        assert!((z2 - 0.912563).abs() < 1e-6);
        assert!((partition_function(50, 0.0, &u).unwrap() - 1.0).abs() < 1e-12);
        assert!(partition_function(0, 1.0, &u).is_err());
    }

    #[test]
    fn law_sums_to_one() {
        let a = Measure3::new(0.2, 0.5, 0.3).unwrap();
        let law = empirical_law(40, 2.5, &a).unwrap();
        assert_eq!(law.len(), 41 * 42 / 2);
        assert!((law.iter().map(|(_, p)| p).sum::<f64>() - 1.0).abs() < 1e-12);
    }
}
