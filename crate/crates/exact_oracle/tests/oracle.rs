use cwwr_core::{Measure3, ModelParams, Spin};
use cwwr_dynamics::{bad_set, specification_kernel, transition_times, TransitionTimes, Topology};
use cwwr_oracle::*;
use proptest::prelude::*;

fn priors() -> Vec<Measure3> {
    vec![
        Measure3::uniform(),
        Measure3::new(0.2, 0.5, 0.3).unwrap(),
        Measure3::new(0.45, 0.1, 0.45).unwrap(),
    ]
}

#[test]
fn count_sum_matches_enumeration() {
    for a in priors() {
        for beta in [-4.0, 0.0, 1.0, 6.0] {
            for n in 1..=8 {
                let z = partition_function(n, beta, &a).unwrap();
                let e = partition_function_enumerated(n, beta, &a).unwrap();
                assert!(((z - e) / e).abs() < 1e-12, "n = {n}, beta = {beta}");
            }
        }
    }
}

#[test]
fn modes_sit_at_static_maximizers() {
    let n = 400;
    let a = Measure3::uniform();
    let law = empirical_law(n, 6.0, &a).unwrap();
    let modes = law_modes(&law);
    assert_eq!(modes.len(), 2);
    assert_eq!(modes[0].n_minus, modes[1].n_plus);
    let maxs = cwwr_static::maximizers(&ModelParams::new(6.0, a).unwrap()).unwrap();
    assert_eq!(maxs.len(), 2);
    for m in modes {
        let nu = m.to_measure().unwrap();
        let d = maxs.iter().map(|s| s.nu.distance(&nu)).fold(f64::INFINITY, f64::min);
        assert!(d < 3.0 / n as f64, "mode {nu:?} at distance {d}");
    }
}

#[test]
fn log_probabilities_follow_rate_function() {
    let a = Measure3::new(0.2, 0.5, 0.3).unwrap();
    let beta = 2.0;
    let floor = -cwwr_static::pressure(&ModelParams::new(beta, a).unwrap()).unwrap().value;
    for n in [200, 800] {
        let law = empirical_log_law(n, beta, &a).unwrap();
        for (s, lp) in law.iter().step_by(97) {
            let nu = s.to_measure().unwrap();
            if nu.p_minus.min(nu.p_zero).min(nu.p_plus) < 0.05 {
                continue;
            }
            let lhs = -lp / n as f64;
            let rhs = rate_function(&nu, beta, &a) - floor;
            let nf = n as f64;
            assert!((lhs - rhs).abs() < 2.0 * nf.ln() / nf, "n = {n}: {lhs} vs {rhs}");
        }
    }
}

#[test]
fn holes_are_conserved() {
    let a = Measure3::new(0.3, 0.4, 0.3).unwrap();
    for k in [0, 7, 19] {
        let h0 = hole_marginal(20, 4.0, &a, 0.0, k).unwrap();
        for t in [0.05, 0.3, 2.0] {
            assert!((hole_marginal(20, 4.0, &a, t, k).unwrap() - h0).abs() < 1e-12);
        }
    }
}

#[test]
fn first_layer_is_curie_weiss() {
    for (n, eta) in [(10, CountState::new(3, 2, 5)), (200, CountState::new(70, 60, 70)), (150, CountState::new(20, 40, 90))] {
        for t in [0.05, 0.4] {
            let a = first_layer_law(n, 5.0, t, &eta).unwrap();
            let b = curie_weiss_law(n, 5.0, t, &eta).unwrap();
            for (p, q) in a.iter().zip(&b) {
                assert!((p - q).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn initial_time_gives_static_kernel() {
    let n = 2000;
    let a = Measure3::uniform();
    let af = Measure3::new(0.2, 0.3, 0.5).unwrap();
    let rest = CountState::from_measure(&af, n - 1).unwrap();
    let law = evolved_conditional_law(n, 3.0, &a, 0.0, &rest).unwrap();
    let w = [(-3.0 * af.p_plus).exp(), 1.0, (-3.0 * af.p_minus).exp()];
    let z: f64 = w.iter().sum();
    for k in 0..3 {
        assert!((law[k] - w[k] / z).abs() < 1e-3);
    }
}

#[test]
fn conditional_converges_to_kernel_at_good_points() {
    let n = 2000;
    let p = ModelParams::new(5.0, Measure3::uniform()).unwrap();
    for (af, t) in [
        (Measure3::uniform(), 0.1),
        (Measure3::new(0.2, 0.3, 0.5).unwrap(), 0.1),
        (Measure3::new(0.1, 0.2, 0.7).unwrap(), 0.05),
    ] {
        let rest = CountState::from_measure(&af, n - 1).unwrap();
        let law = evolved_conditional_law(n, 5.0, &p.alpha, t, &rest).unwrap();
        for s in Spin::ALL {
            let g = specification_kernel(s, &af, &p, t).unwrap();
            assert!((law[(s.value() + 1) as usize] - g).abs() < 0.01);
        }
    }
}

fn arc_point(beta: f64, t: f64) -> (Measure3, Vec<Measure3>) {
    let b = bad_set(beta, t, 400).unwrap();
    assert_eq!(b.topology, Topology::TwoArcs);
    let pts: Vec<Measure3> = b.points().map(|p| p.nu).collect();
    let face = pts.iter().filter(|p| p.p_zero == 0.0 && p.p_plus > p.p_minus).copied().next().unwrap();
    (face, pts)
}

#[test]
fn probe_separates_bad_from_good_points() {
    let beta = 5.0;
    let TransitionTimes::Three { t1, t2, .. } = transition_times(beta).unwrap() else { panic!() };
    let t = 0.5 * (t1 + t2);
    let (bad, pts) = arc_point(beta, t);
    let u = Measure3::uniform();
    let row = &badness_probe(beta, &u, t, &bad, &[2000], DEFAULT_SHIFT_COEFF).unwrap()[0];
    assert!(row.gap > 0.05, "gap {}", row.gap);
    assert_eq!(row.verdict, ProbeVerdict::Gap);

    let mut a = bad.p_plus - bad.p_minus;
    let good = loop {
        a += 1e-3;
        let g = Measure3::new(0.5 * (1.0 - a), 0.0, 0.5 * (1.0 + a)).unwrap();
        if pts.iter().all(|p| p.distance(&g) >= 0.05) {
            break g;
        }
    };
    let row = &badness_probe(beta, &u, t, &good, &[2000], DEFAULT_SHIFT_COEFF).unwrap()[0];
    assert!(row.gap < 0.01, "gap {}", row.gap);
}

#[test]
fn weak_coupling_probe_closes() {
    let u = Measure3::uniform();
    for af in [Measure3::uniform(), Measure3::new(0.1, 0.0, 0.9).unwrap()] {
        let rows = badness_probe(1.0, &u, 0.3, &af, &[500, 2000], DEFAULT_SHIFT_COEFF).unwrap();
        assert!(rows[1].gap < rows[0].gap && rows[1].gap < 0.01);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn conditional_law_is_a_distribution(km in 0usize..30, k0 in 0usize..30, kp in 0usize..30,
                                         beta in -5.0f64..8.0, t in 0.0f64..2.0) {
        let n = km + k0 + kp + 1;
        let law = evolved_conditional_law(n, beta, &Measure3::uniform(), t, &CountState::new(km, k0, kp)).unwrap();
        prop_assert!((law.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        prop_assert!(law.iter().all(|p| *p >= 0.0));
    }

    #[test]
    fn conditional_is_reflection_covariant(km in 0usize..30, k0 in 0usize..30, kp in 0usize..30,
                                           beta in 0.0f64..8.0, t in 0.0f64..2.0) {
        let n = km + k0 + kp + 1;
        let u = Measure3::uniform();
        let a = evolved_conditional_law(n, beta, &u, t, &CountState::new(km, k0, kp)).unwrap();
        let b = evolved_conditional_law(n, beta, &u, t, &CountState::new(kp, k0, km)).unwrap();
        prop_assert!((a[0] - b[2]).abs() < 1e-12 && (a[1] - b[1]).abs() < 1e-12);
    }
}
