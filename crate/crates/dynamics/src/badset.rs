//! Bad empirical measures: conditioning limits at which the effective
//! potential has two global minimizers (Maxwell points).
//!
//! The simplex is cut into rows of constant hole density, hence constant
//! effective coupling. On a row the stationary points of all potentials are
//! described by one curve `m -> bias(m)`; increasing parts are the stable
//! branches. Maxwell points are where two stable branches have equal depth,
//! found by bisection in the bias, so the measure-zero bad set is located
//! exactly on each row rather than sampled.

use cwwr_core::numerics::{bisect, bisect_predicate};
use cwwr_core::{Error as CoreError, Measure3};
use petgraph::unionfind::UnionFind;
use rayon::prelude::*;
use serde::Serialize;

use crate::bifurcation::cusp;
use crate::kernel::{h_field, T3};
use crate::minimizers::{global_minimizers, GLOBAL_TIE_TOL};
use crate::potential::{effective_params, equilibrium_bias, RfcwPotential};
use crate::Result;

const BRANCH_GRID: usize = 10_000;
/// Bias magnitude below which a bad point counts as lying on the symmetry axis.
pub const AXIS_TOL: f64 = 1e-9;
/// Linking distance between points of neighbouring rows, in lattice steps.
const LINK_STEPS: f64 = 3.0;

/// True iff the potential at `alpha_f` has several global minimizers.
pub fn is_bad(alpha_f: &Measure3, beta: f64, t: f64) -> Result<bool> {
    h_field(t)?;
    if alpha_f.occupied() <= 0.0 {
        return Ok(false);
    }
    let pot = effective_params(alpha_f, beta, t)?;
    Ok(!global_minimizers(&pot, GLOBAL_TIE_TOL).unique)
}

/// A Maxwell point on a row: the bias and the two equally deep wells.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MaxwellPoint {
    pub bias: f64,
    pub wells: (f64, f64),
}

#[derive(Debug, Clone, Copy)]
struct Branch {
    m_lo: f64,
    m_hi: f64,
}

/// Curvature of the potential at `m` for the bias making `m` stationary.
fn stationary_curvature(m: f64, bt: f64, h: f64) -> f64 {
    let a = equilibrium_bias(m, bt, h);
    let (pp, pm) = (0.5 * (1.0 + a), 0.5 * (1.0 - a));
    let s = |z: f64| 1.0 - z.tanh().powi(2);
    1.0 - bt * (pp * s(bt * m + h) + pm * s(bt * m - h))
}

fn stable_branches(bt: f64, h: f64) -> Vec<Branch> {
    let n = BRANCH_GRID;
    let grid: Vec<f64> = (0..=n).map(|k| -1.0 + 2.0 * k as f64 / n as f64).collect();
    let g: Vec<f64> = grid.iter().map(|&m| stationary_curvature(m, bt, h)).collect();
    let fold = |k: usize| {
        bisect(|m| stationary_curvature(m, bt, h), grid[k], grid[k + 1], 0.0).unwrap_or(grid[k])
    };
    let mut out = Vec::new();
    let mut start: Option<f64> = if g[0] > 0.0 { Some(grid[0]) } else { None };
    for k in 0..n {
        match (g[k] > 0.0, g[k + 1] > 0.0) {
            (false, true) => start = Some(fold(k)),
            (true, false) => {
                if let Some(s) = start.take() {
                    out.push(Branch { m_lo: s, m_hi: fold(k) });
                }
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Branch { m_lo: s, m_hi: grid[n] });
    }
    out
}

/// Position on a stable branch of the stationary point for bias `a`.
fn branch_position(b: &Branch, a: f64, bt: f64, h: f64) -> f64 {
    let f = |m: f64| equilibrium_bias(m, bt, h) - a;
    let (lo, hi) = (f(b.m_lo), f(b.m_hi));
    if lo >= 0.0 {
        return b.m_lo;
    }
    if hi <= 0.0 {
        return b.m_hi;
    }
    bisect(f, b.m_lo, b.m_hi, 0.0).expect("bias is monotone on a stable branch")
}

/// Bias range `[lo, hi]` covered by a stable branch.
fn branch_bias_range(b: &Branch, bt: f64, h: f64) -> (f64, f64) {
    (equilibrium_bias(b.m_lo, bt, h), equilibrium_bias(b.m_hi, bt, h))
}

/// Maxwell points on the row with coupling `bt` and field `h`, ordered by bias.
pub fn row_maxwell_points(bt: f64, h: f64) -> Vec<MaxwellPoint> {
    if bt <= 1.0 || h <= 0.0 {
        return Vec::new();
    }
    let branches = stable_branches(bt, h);
    let ranges: Vec<(f64, f64)> = branches.iter().map(|b| branch_bias_range(b, bt, h)).collect();
    let depth = |b: &Branch, a: f64| {
        let m = branch_position(b, a, bt, h);
        (m, RfcwPotential { beta_tilde: bt, bias: a, h_t: h }.phi(m))
    };
    let mut out = Vec::new();
    for k in 0..branches.len() {
        for l in k + 1..branches.len() {
            let lo = ranges[k].0.max(ranges[l].0).max(-1.0);
            let hi = ranges[k].1.min(ranges[l].1).min(1.0);
            if !(lo < hi) {
                continue;
            }
            let diff = |a: f64| depth(&branches[l], a).1 - depth(&branches[k], a).1;
            let (dlo, dhi) = (diff(lo), diff(hi));
            if !(dlo >= 0.0 && dhi <= 0.0) || dlo == dhi {
                continue;
            }
            let a = match bisect(diff, lo, hi, 0.0) {
                Ok(a) => a,
                Err(_) => continue,
            };
            let (mk, vk) = depth(&branches[k], a);
            let (ml, _) = depth(&branches[l], a);
            // another branch strictly deeper at this bias rules the point out
            let deeper = (0..branches.len()).any(|j| {
                j != k && j != l && ranges[j].0 <= a && a <= ranges[j].1 && depth(&branches[j], a).1 < vk - 1e-12
            });
            if deeper {
                continue;
            }
            let pot = RfcwPotential { beta_tilde: bt, bias: a, h_t: h };
            if global_minimizers(&pot, GLOBAL_TIE_TOL).unique {
                continue;
            }
            out.push(MaxwellPoint { bias: a, wells: (mk, ml) });
        }
    }
    out.sort_by(|p, q| p.bias.total_cmp(&q.bias));
    out
}

/// Whether some potential on the row has two local minima with a bias in
/// `[-1, 1]`: the minimum over `m` of the curvature along the stationary
/// curve is negative.
pub fn row_bistable(bt: f64, h: f64) -> bool {
    if bt <= 1.0 || h <= 0.0 {
        return false;
    }
    let curv = |m: f64| {
        if equilibrium_bias(m, bt, h).abs() > 1.0 {
            return f64::INFINITY;
        }
        stationary_curvature(m, bt, h)
    };
    let n = BRANCH_GRID;
    let (mut best, mut arg) = (f64::INFINITY, 0usize);
    for k in 0..=n {
        let v = curv(-1.0 + 2.0 * k as f64 / n as f64);
        if v < best {
            best = v;
            arg = k;
        }
    }
    if best < 0.0 {
        return true;
    }
    // golden-section refinement around the grid minimum
    let step = 2.0 / n as f64;
    let m0 = -1.0 + step * arg as f64;
    let (mut a, mut b) = ((m0 - step).max(-1.0), (m0 + step).min(1.0));
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let (mut c, mut d) = (b - r * (b - a), a + r * (b - a));
    let (mut fc, mut fd) = (curv(c), curv(d));
    for _ in 0..100 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = curv(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = curv(d);
        }
        if fc.min(fd) < 0.0 {
            return true;
        }
    }
    false
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Topology {
    Empty,
    TwoArcs,
    YShaped,
    Line,
    /// None of the four shapes; happens only within a resolution cell of a
    /// transition time.
    Unclassified,
}

impl Topology {
    pub fn as_str(&self) -> &'static str {
        match self {
            Topology::Empty => "empty",
            Topology::TwoArcs => "two_arcs",
            Topology::YShaped => "y_shaped",
            Topology::Line => "line",
            Topology::Unclassified => "unclassified",
        }
    }
}

/// A bad point found by the scan. `row` counts scanned rows from the
/// hole-richest one, starting at 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BadPoint {
    pub row: usize,
    pub nu: Measure3,
    pub bias: f64,
    pub wells: (f64, f64),
}

impl BadPoint {
    pub fn on_axis(&self) -> bool {
        self.bias.abs() <= AXIS_TOL
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BadSet {
    pub topology: Topology,
    /// Connected components, each ordered by row and then by `nu(1) - nu(-1)`.
    pub components: Vec<Vec<BadPoint>>,
    /// Hole-density spacing between the regular scanned rows.
    pub resolution: f64,
}

impl BadSet {
    pub fn points(&self) -> impl Iterator<Item = &BadPoint> {
        self.components.iter().flatten()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Components as polylines of measures.
    pub fn polylines(&self) -> Vec<Vec<Measure3>> {
        self.components.iter().map(|c| c.iter().map(|p| p.nu).collect()).collect()
    }
}

fn classify(components: &[Vec<BadPoint>]) -> Topology {
    let kinds: Vec<(bool, bool)> = components
        .iter()
        .map(|c| (c.iter().any(|p| p.on_axis()), c.iter().any(|p| !p.on_axis())))
        .collect();
    match kinds.as_slice() {
        [] => Topology::Empty,
        [(false, true), (false, true)] => Topology::TwoArcs,
        [(true, true)] => Topology::YShaped,
        [(true, false)] => Topology::Line,
        _ => Topology::Unclassified,
    }
}

/// Occupied density of a row through the middle of the arms that join the
/// symmetry axis before the first-order regime ends. The arms run from the
/// fold cusp up to the on-axis triple point and can be thinner than a row.
fn arm_row(beta: f64, t: f64, h: f64) -> Option<f64> {
    if !(beta > 3.0 && t < T3) {
        return None;
    }
    let top = cusp(t).ok()?;
    let x_cusp = 2.0 * top.beta12 / beta;
    if !(x_cusp > 0.0 && x_cusp < 1.0) {
        return None;
    }
    let axis_bad = |x: f64| {
        let pot = RfcwPotential { beta_tilde: 0.5 * beta * x, bias: 0.0, h_t: h };
        !global_minimizers(&pot, GLOBAL_TIE_TOL).unique
    };
    if axis_bad(x_cusp) || !axis_bad(1.0) {
        return None;
    }
    let (lo, hi) = bisect_predicate(axis_bad, x_cusp, 1.0, 1e-12).ok()?;
    Some(0.5 * (x_cusp + 0.5 * (lo + hi)))
}

/// Scans the rows of occupied density `j/rows`, `j = 1..=rows`, plus one row
/// through thin arms near the axis when present, links points on neighbouring
/// rows that are within three lattice steps of each other, and classifies
/// the result.
pub fn bad_set(beta: f64, t: f64, rows: usize) -> Result<BadSet> {
    if rows == 0 {
        return Err(CoreError::Param("resolution needs at least one row".into()).into());
    }
    let h = h_field(t)?;
    let n = rows as f64;
    let mut xs: Vec<f64> = (1..=rows).map(|j| j as f64 / n).collect();
    if let Some(x) = arm_row(beta, t, h) {
        if xs.iter().all(|r| (r - x).abs() > 1e-12) {
            xs.push(x);
            xs.sort_by(f64::total_cmp);
        }
    }
    let per_row: Vec<Vec<BadPoint>> = xs
        .par_iter()
        .enumerate()
        .map(|(k, &x)| {
            row_maxwell_points(0.5 * beta * x, h)
                .into_iter()
                .filter_map(|mp| {
                    let nu = Measure3::new(0.5 * x * (1.0 - mp.bias), 1.0 - x, 0.5 * x * (1.0 + mp.bias)).ok()?;
                    Some(BadPoint { row: k + 1, nu, bias: mp.bias, wells: mp.wells })
                })
                .collect()
        })
        .collect();
    let points: Vec<BadPoint> = per_row.into_iter().flatten().collect();
    let horiz = |p: &BadPoint| p.nu.p_plus - p.nu.p_minus;
    let gate = LINK_STEPS * 2.0 / n;
    let row_gap = (1.0 + 1e-9) / n;
    let mut uf = UnionFind::<usize>::new(points.len());
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let (p, q) = (&points[i], &points[j]);
            if q.nu.occupied() - p.nu.occupied() > row_gap {
                break;
            }
            if (horiz(p) - horiz(q)).abs() <= gate {
                uf.union(i, j);
            }
        }
    }
    let labels = uf.into_labeling();
    let mut groups: Vec<(usize, Vec<BadPoint>)> = Vec::new();
    for (i, p) in points.iter().enumerate() {
        match groups.iter_mut().find(|g| g.0 == labels[i]) {
            Some(g) => g.1.push(*p),
            None => groups.push((labels[i], vec![*p])),
        }
    }
    let mut components: Vec<Vec<BadPoint>> = groups.into_iter().map(|g| g.1).collect();
    for c in &mut components {
        c.sort_by(|p, q| p.row.cmp(&q.row).then(horiz(p).total_cmp(&horiz(q))));
    }
    components.sort_by(|a, b| {
        let key = |c: &Vec<BadPoint>| c.iter().map(horiz).fold(f64::INFINITY, f64::min);
        key(a).total_cmp(&key(b))
    });
    let topology = classify(&components);
    Ok(BadSet { topology, components, resolution: 1.0 / n })
}
