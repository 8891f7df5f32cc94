use cwwr_core::numerics::sym2_eigenvalues;
use cwwr_core::{
    d2_entropy_j, d_entropy_i, d_entropy_j, entropy_i, entropy_j, AprioriParams, Error, Measure3,
    ModelParams, Result, XmCoords,
};
use serde::Serialize;

/// Default number of grid points per axis for the coarse pressure scan.
pub const PRESSURE_GRID: usize = 400;
/// Gradient norm at which local ascent stops.
pub const ASCENT_TOL: f64 = 1e-10;

fn rel_term(nu: f64, alpha: f64) -> f64 {
    if nu == 0.0 {
        0.0
    } else {
        nu * (nu / alpha).ln()
    }
}

/// `-beta nu(1) nu(-1) - I(nu | alpha)`, with `0 log 0 = 0` on the boundary.
pub fn free_energy(nu: &Measure3, p: &ModelParams) -> f64 {
    let a = &p.alpha;
    -p.beta * nu.p_plus * nu.p_minus
        - rel_term(nu.p_minus, a.p_minus)
        - rel_term(nu.p_zero, a.p_zero)
        - rel_term(nu.p_plus, a.p_plus)
}

/// The two stationarity residuals; both vanish at stationary points.
pub fn stationarity_residual(nu: &Measure3, p: &ModelParams) -> Result<(f64, f64)> {
    if !nu.is_interior() {
        return Err(Error::Domain("stationarity residual needs an interior measure".into()));
    }
    let a = &p.alpha;
    let zero = (nu.p_zero / a.p_zero).ln();
    let r1 = p.beta * nu.p_minus + (nu.p_plus / a.p_plus).ln() - zero;
    let r2 = p.beta * nu.p_plus + (nu.p_minus / a.p_minus).ln() - zero;
    Ok((r1, r2))
}

/// Hessian of the free energy in `(nu(1), nu(-1))` as `(a11, a12, a22)`.
pub fn hessian(nu: &Measure3, p: &ModelParams) -> (f64, f64, f64) {
    let z = 1.0 / nu.p_zero;
    (
        -(1.0 / nu.p_plus + z),
        -(p.beta + z),
        -(1.0 / nu.p_minus + z),
    )
}

/// Maximum value and a maximizing measure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PressureResult {
    pub value: f64,
    pub argmax: Measure3,
}

/// The reparametrized functional in `(x, m)`, excluding the additive constant
/// `log alpha(0)`.
pub fn reparam_functional(x: f64, m: f64, beta: f64, a: &AprioriParams) -> Result<f64> {
    let c = a.l - a.log_two_cosh_h();
    Ok(-beta * x * x / 4.0 + x * c - entropy_j(x)?
        + x * (beta * x * m * m / 4.0 + a.h * m - entropy_i(m)?))
}

fn reparam_derivatives(x: f64, m: f64, beta: f64, a: &AprioriParams) -> Result<([f64; 2], [f64; 3])> {
    let c = a.l - a.log_two_cosh_h();
    let ip = d_entropy_i(m)?;
    let gx = -beta * x / 2.0 + c - d_entropy_j(x)? + beta * x * m * m / 2.0 + a.h * m - entropy_i(m)?;
    let gm = x * (beta * x * m / 2.0 + a.h - ip);
    let hxx = -beta / 2.0 - d2_entropy_j(x)? + beta * m * m / 2.0;
    let hxm = beta * x * m + a.h - ip;
    let hmm = x * (beta * x / 2.0 - 1.0 / (1.0 - m * m));
    Ok(([gx, gm], [hxx, hxm, hmm]))
}

/// Cell-centred grid points of `(0,1) x (-1,1)`.
fn xm_grid(n: usize) -> impl Iterator<Item = (usize, usize, f64, f64)> {
    (0..n).flat_map(move |i| {
        (0..n).map(move |j| {
            let x = (i as f64 + 0.5) / n as f64;
            let m = -1.0 + (2.0 * j as f64 + 1.0) / n as f64;
            (i, j, x, m)
        })
    })
}

/// Grid cells that are local maxima among their 8 neighbours, best first.
fn grid_seeds(values: &[f64], n: usize, keep: usize) -> Vec<usize> {
    let mut seeds = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let v = values[i * n + j];
            let mut is_max = true;
            for di in -1i64..=1 {
                for dj in -1i64..=1 {
                    let (a, b) = (i as i64 + di, j as i64 + dj);
                    if (di, dj) == (0, 0) || a < 0 || b < 0 || a >= n as i64 || b >= n as i64 {
                        continue;
                    }
                    if values[a as usize * n + b as usize] > v {
                        is_max = false;
                    }
                }
            }
            if is_max {
                seeds.push(i * n + j);
            }
        }
    }
    // order-independent: sort by value, then index
    seeds.sort_by(|&a, &b| values[b].total_cmp(&values[a]).then(a.cmp(&b)));
    seeds.truncate(keep);
    seeds
}

/// Damped Newton ascent on a smooth function of two variables restricted to
/// an open domain. `eval` returns value, gradient and Hessian, or `None`
/// outside the domain.
fn ascend<F>(mut z: [f64; 2], eval: F) -> Result<[f64; 2]>
where
    F: Fn([f64; 2]) -> Option<(f64, [f64; 2], [f64; 3])>,
{
    let (mut f, mut g, mut h) =
        eval(z).ok_or_else(|| Error::Numerical("ascent started outside the domain".into()))?;
    for _ in 0..500 {
        let gn = g[0].hypot(g[1]);
        if gn < ASCENT_TOL {
            return Ok(z);
        }
        // Newton step on -H, shifted to be positive definite
        let (lo, _) = sym2_eigenvalues(-h[0], -h[1], -h[2]);
        let mut mu = if lo > 1e-12 { 0.0 } else { 1e-8 - lo + 1e-3 * gn };
        let mut accepted = false;
        for _ in 0..80 {
            let (a, b, c) = (-h[0] + mu, -h[1], -h[2] + mu);
            let det = a * c - b * b;
            let step = [(c * g[0] - b * g[1]) / det, (a * g[1] - b * g[0]) / det];
            let cand = [z[0] + step[0], z[1] + step[1]];
            if let Some((fc, gc, hc)) = eval(cand) {
                let gcn = gc[0].hypot(gc[1]);
                if fc >= f - 1e-15 * f.abs().max(1.0) || gcn < gn {
                    z = cand;
                    f = fc;
                    g = gc;
                    h = hc;
                    accepted = true;
                    break;
                }
            }
            mu = if mu == 0.0 { 1e-6 } else { mu * 4.0 };
        }
        if !accepted {
            break;
        }
    }
    if g[0].hypot(g[1]) < 1e-8 {
        Ok(z)
    } else {
        Err(Error::Numerical(format!("ascent stalled with gradient {g:?}")))
    }
}

/// Local maximization of the free energy from a seed, in `(nu(1), nu(-1))`.
pub fn ascend_free_energy(seed: &Measure3, p: &ModelParams) -> Result<Measure3> {
    let eval = |z: [f64; 2]| {
        let (n1, nm) = (z[0], z[1]);
        let n0 = 1.0 - n1 - nm;
        if !(n1 > 0.0 && nm > 0.0 && n0 > 0.0) {
            return None;
        }
        let nu = Measure3 { p_minus: nm, p_zero: n0, p_plus: n1 };
        let (r1, r2) = stationarity_residual(&nu, p).ok()?;
        let (a11, a12, a22) = hessian(&nu, p);
        Some((free_energy(&nu, p), [-r1, -r2], [a11, a12, a22]))
    };
    let z = ascend([seed.p_plus, seed.p_minus], eval)?;
    Measure3::new(z[1], 1.0 - z[0] - z[1], z[0])
}

/// Pressure as the supremum of the free energy over the simplex: coarse grid
/// scan followed by Newton ascent from the best grid maxima.
pub fn pressure(p: &ModelParams) -> Result<PressureResult> {
    pressure_with_grid(p, PRESSURE_GRID)
}

pub fn pressure_with_grid(p: &ModelParams, n: usize) -> Result<PressureResult> {
    let mut values = vec![0.0; n * n];
    for (i, j, x, m) in xm_grid(n) {
        let nu = XmCoords { x, m }.to_measure()?;
        values[i * n + j] = free_energy(&nu, p);
    }
    let mut best: Option<PressureResult> = None;
    for s in grid_seeds(&values, n, 6) {
        let (i, j) = (s / n, s % n);
        let x = (i as f64 + 0.5) / n as f64;
        let m = -1.0 + (2.0 * j as f64 + 1.0) / n as f64;
        let seed = XmCoords { x, m }.to_measure()?;
        let nu = ascend_free_energy(&seed, p)?;
        let value = free_energy(&nu, p);
        if best.map_or(true, |b| value > b.value) {
            best = Some(PressureResult { value, argmax: nu });
        }
    }
    best.ok_or_else(|| Error::Numerical("pressure scan produced no seed".into()))
}

/// Pressure computed independently from the `(x, m)` functional plus the
/// constant `log alpha(0)`.
pub fn pressure_reparam(p: &ModelParams) -> Result<PressureResult> {
    let n = PRESSURE_GRID;
    let a = p.apriori();
    let beta = p.beta;
    let mut values = vec![0.0; n * n];
    for (i, j, x, m) in xm_grid(n) {
        values[i * n + j] = reparam_functional(x, m, beta, &a)?;
    }
    let eval = |z: [f64; 2]| {
        let (x, m) = (z[0], z[1]);
        if !(x > 0.0 && x < 1.0 && m > -1.0 && m < 1.0) {
            return None;
        }
        let v = reparam_functional(x, m, beta, &a).ok()?;
        let (g, h) = reparam_derivatives(x, m, beta, &a).ok()?;
        Some((v, g, h))
    };
    let mut best: Option<PressureResult> = None;
    for s in grid_seeds(&values, n, 6) {
        let (i, j) = (s / n, s % n);
        let x = (i as f64 + 0.5) / n as f64;
        let m = -1.0 + (2.0 * j as f64 + 1.0) / n as f64;
        let z = ascend([x, m], eval)?;
        let value = reparam_functional(z[0], z[1], beta, &a)? + p.alpha.p_zero.ln();
        if best.map_or(true, |b| value > b.value) {
            let argmax = XmCoords { x: z[0], m: z[1] }.to_measure()?;
            best = Some(PressureResult { value, argmax });
        }
    }
    best.ok_or_else(|| Error::Numerical("pressure scan produced no seed".into()))
}
