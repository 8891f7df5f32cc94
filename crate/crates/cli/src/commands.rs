use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use std::path::PathBuf;

use cwwr_core::{AprioriParams, Measure3, ModelParams, Spin};
use cwwr_dynamics::{
    atypicality_margin, bad_set, specification_kernel, transition_times, typical::typical_curve,
};
use cwwr_oracle::{badness_probe, evolved_conditional_law, CountState};

use crate::output::{num, Csv, Output, RunManifest};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Param(String),
    #[error("{0}")]
    Numerical(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Param(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl From<cwwr_core::Error> for CliError {
    fn from(e: cwwr_core::Error) -> Self {
        match e {
            cwwr_core::Error::Param(_) | cwwr_core::Error::Domain(_) => CliError::Param(e.to_string()),
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

impl From<cwwr_dynamics::Error> for CliError {
    fn from(e: cwwr_dynamics::Error) -> Self {
        match e {
            cwwr_dynamics::Error::Core(c) => c.into(),
            other => CliError::Numerical(other.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.into())
    }
}

type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "cwwr", version, about = "Curie-Weiss Widom-Rowlinson model: statics, dynamics and exact finite-size oracle")]
pub struct Cli {
    /// Write the result to a file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Record the wall-clock time in the output (breaks byte-identical reruns).
    #[arg(long, global = true)]
    pub record_time: bool,
    #[command(subcommand)]
    pub command: Command,
}

/// A priori measure, given directly, by hole ratio, or by field and chemical potential.
#[derive(Debug, Clone, Args)]
pub struct PriorArgs {
    /// A priori measure as `minus,zero,plus`.
    #[arg(long, value_parser = parse_measure, conflicts_with_all = ["q", "h", "l"])]
    pub alpha: Option<Measure3>,
    /// Symmetric a priori measure with hole-to-spin ratio q.
    #[arg(long, conflicts_with_all = ["h", "l"], allow_hyphen_values = true)]
    pub q: Option<f64>,
    /// Field h (requires --l).
    #[arg(long, requires = "l", allow_hyphen_values = true)]
    pub h: Option<f64>,
    /// Chemical potential l (requires --h).
    #[arg(long, requires = "h", allow_hyphen_values = true)]
    pub l: Option<f64>,
}

impl PriorArgs {
    fn measure(&self) -> Result<Measure3> {
        if let Some(a) = self.alpha {
            return Ok(a);
        }
        if let Some(q) = self.q {
            return Ok(cwwr_static::symmetric_alpha(q)?);
        }
        if let (Some(h), Some(l)) = (self.h, self.l) {
            return Ok(AprioriParams::new(h, l)?.to_measure()?);
        }
        Err(CliError::Param("specify the a priori measure with --alpha, --q or --h/--l".into()))
    }

    fn measure_or_uniform(&self) -> Result<Measure3> {
        if self.alpha.is_none() && self.q.is_none() && self.h.is_none() {
            return Ok(Measure3::uniform());
        }
        self.measure()
    }
}

fn parse_measure(s: &str) -> std::result::Result<Measure3, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<std::result::Result<_, _>>()?;
    if v.len() != 3 {
        return Err(format!("expected three comma-separated values, got {}", v.len()));
    }
    Measure3::new(v[0], v[1], v[2]).map_err(|e| e.to_string())
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Maximizers, pressure and classification of the static model (JSON).
    Static {
        #[arg(long, allow_hyphen_values = true)]
        beta: f64,
        #[command(flatten)]
        prior: PriorArgs,
    },
    /// Closed-form curve of stationary points (CSV).
    CriticalCurve {
        #[arg(long, allow_hyphen_values = true)]
        h: f64,
        #[arg(long, allow_hyphen_values = true)]
        l: f64,
        #[arg(long, default_value_t = 200)]
        m_grid: usize,
    },
    /// Fitted critical exponents and amplitude (JSON).
    Exponents {
        #[arg(long, allow_hyphen_values = true)]
        q: f64,
    },
    /// Antiferromagnetic bifurcation set and Maxwell line (CSV).
    Antiferro {
        #[arg(long, default_value_t = 200)]
        n_bifurcation: usize,
        #[arg(long, default_value_t = 100)]
        n_maxwell: usize,
    },
    /// Bad empirical measures at time t (CSV, topology in the result line).
    BadSet {
        #[arg(long, allow_hyphen_values = true)]
        beta: f64,
        #[arg(long)]
        t: f64,
        /// Number of hole-density rows scanned.
        #[arg(long, default_value_t = 400)]
        res: usize,
    },
    /// Transition times of the bad set (JSON).
    TransitionTimes {
        #[arg(long, allow_hyphen_values = true)]
        beta: f64,
    },
    /// Time-evolved typical measures (CSV, margin in the result line).
    TypicalCurve {
        #[arg(long)]
        beta: f64,
        #[arg(long)]
        t: f64,
        /// Points per half of the curve.
        #[arg(long, default_value_t = 500)]
        samples: usize,
        /// Rows of the bad-set scan used for the margin.
        #[arg(long, default_value_t = 200)]
        res: usize,
    },
    /// Exact finite-size conditional probabilities of the evolved measure (CSV).
    Oracle {
        #[arg(long = "N", alias = "n")]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        beta: f64,
        #[arg(long)]
        t: f64,
        /// Conditioning empirical measure as `minus,zero,plus`.
        #[arg(long, value_parser = parse_measure)]
        alpha_f: Measure3,
        #[command(flatten)]
        prior: PriorArgs,
    },
    /// Two-sequence badness probe over a list of sizes (CSV).
    Probe {
        #[arg(long, allow_hyphen_values = true)]
        beta: f64,
        #[arg(long)]
        t: f64,
        #[arg(long, value_parser = parse_measure)]
        alpha_f: Measure3,
        /// Comma-separated system sizes.
        #[arg(long, value_delimiter = ',', default_value = "500,1000,2000")]
        n_list: Vec<usize>,
        #[arg(long, default_value_t = cwwr_oracle::DEFAULT_SHIFT_COEFF)]
        shift_coeff: f64,
        #[command(flatten)]
        prior: PriorArgs,
    },
}

fn measure_json(m: &Measure3) -> Value {
    json!([m.p_minus, m.p_zero, m.p_plus])
}

fn measure_cells(m: &Measure3) -> [String; 3] {
    [num(m.p_minus), num(m.p_zero), num(m.p_plus)]
}

pub fn execute(cmd: &Command) -> Result<Output> {
    match cmd {
        Command::Static { beta, prior } => static_cmd(*beta, prior),
        Command::CriticalCurve { h, l, m_grid } => critical_curve_cmd(*h, *l, *m_grid),
        Command::Exponents { q } => exponents_cmd(*q),
        Command::Antiferro { n_bifurcation, n_maxwell } => antiferro_cmd(*n_bifurcation, *n_maxwell),
        Command::BadSet { beta, t, res } => bad_set_cmd(*beta, *t, *res),
        Command::TransitionTimes { beta } => Ok(Output::Json(serde_json::to_value(transition_times(*beta)?)?)),
        Command::TypicalCurve { beta, t, samples, res } => typical_cmd(*beta, *t, *samples, *res),
        Command::Oracle { n, beta, t, alpha_f, prior } => oracle_cmd(*n, *beta, *t, alpha_f, prior),
        Command::Probe { beta, t, alpha_f, n_list, shift_coeff, prior } => {
            probe_cmd(*beta, *t, alpha_f, n_list, *shift_coeff, prior)
        }
    }
}

fn static_cmd(beta: f64, prior: &PriorArgs) -> Result<Output> {
    let alpha = prior.measure()?;
    let p = ModelParams::new(beta, alpha)?;
    let maxs = cwwr_static::maximizers(&p)?;
    let pressure = cwwr_static::pressure(&p)?;
    let symmetric = alpha.is_symmetric(1e-12);
    let critical = if symmetric { Some(cwwr_static::critical_beta(p.q())?) } else { None };
    let classification = if maxs.len() == 1 { "unique" } else { "coexistence" };
    Ok(Output::Json(json!({
        "beta": beta,
        "alpha": measure_json(&alpha),
        "q": symmetric.then(|| p.q()),
        "critical_beta": critical,
        "classification": classification,
        "maximizers": maxs.iter().map(|s| json!({
            "nu": measure_json(&s.nu),
            "kind": s.kind,
            "value": s.value,
        })).collect::<Vec<_>>(),
        "pressure": pressure.value,
    })))
}

fn critical_curve_cmd(h: f64, l: f64, m_grid: usize) -> Result<Output> {
    let a = AprioriParams::new(h, l)?;
    let curve = cwwr_static::critical_curve(&a, m_grid)?;
    let mut csv = Csv::new(
        RunManifest::new("critical-curve", json!({"h": h, "l": l, "m_grid": m_grid})),
        vec!["m", "beta", "x", "nu_minus", "nu_zero", "nu_plus"],
    );
    for s in &curve.samples {
        let mut row = vec![num(s.m), num(s.beta), num(s.x)];
        row.extend(measure_cells(&s.nu));
        csv.rows.push(row);
    }
    Ok(Output::Csv(csv))
}

fn exponents_cmd(q: f64) -> Result<Output> {
    let b = cwwr_static::exponent_beta(q)?;
    let d = cwwr_static::exponent_field(q)?;
    Ok(Output::Json(json!({
        "q": q,
        "critical_beta": cwwr_static::critical_beta(q)?,
        "beta_slope": b.slope,
        "amplitude": b.amplitude,
        "field_slope": d,
    })))
}

fn antiferro_cmd(nb: usize, nm: usize) -> Result<Output> {
    let d = cwwr_static::antiferro_diagram(nb, nm)?;
    let mut csv = Csv::new(
        RunManifest::new("antiferro", json!({"n_bifurcation": nb, "n_maxwell": nm})),
        vec!["curve", "inv_beta", "alpha0"],
    );
    for (name, pts) in [("bifurcation", &d.bifurcation), ("maxwell", &d.maxwell)] {
        for (ib, a0) in pts {
            csv.rows.push(vec![name.to_string(), num(*ib), num(*a0)]);
        }
    }
    Ok(Output::Csv(csv))
}

fn bad_set_cmd(beta: f64, t: f64, res: usize) -> Result<Output> {
    let b = bad_set(beta, t, res)?;
    let mut csv = Csv::new(
        RunManifest::new("bad-set", json!({"beta": beta, "t": t, "res": res})),
        vec!["component_id", "nu_minus", "nu_zero", "nu_plus"],
    );
    csv.result = Some(json!({
        "topology": b.topology,
        "components": b.components.len(),
        "points": b.points().count(),
        "resolution": b.resolution,
    }));
    for (k, comp) in b.components.iter().enumerate() {
        for p in comp {
            let mut row = vec![k.to_string()];
            row.extend(measure_cells(&p.nu));
            csv.rows.push(row);
        }
    }
    Ok(Output::Csv(csv))
}

fn typical_cmd(beta: f64, t: f64, samples: usize, res: usize) -> Result<Output> {
    let c = typical_curve(beta, t, samples)?;
    let margin = atypicality_margin(beta, t, res)?;
    let mut csv = Csv::new(
        RunManifest::new("typical-curve", json!({"beta": beta, "t": t, "samples": samples, "res": res})),
        vec!["nu_minus", "nu_zero", "nu_plus"],
    );
    csv.result = Some(json!({"margin": margin.is_finite().then_some(margin), "m_beta": c.m_beta}));
    csv.rows = c.points.iter().map(|p| measure_cells(p).to_vec()).collect();
    Ok(Output::Csv(csv))
}

fn oracle_cmd(n: usize, beta: f64, t: f64, alpha_f: &Measure3, prior: &PriorArgs) -> Result<Output> {
    if n < 2 {
        return Err(CliError::Param("oracle needs N >= 2".into()));
    }
    let alpha = prior.measure_or_uniform()?;
    let rest = CountState::from_measure(alpha_f, n - 1)?;
    let law = evolved_conditional_law(n, beta, &alpha, t, &rest)?;
    let p = ModelParams::new(beta, alpha)?;
    let mut csv = Csv::new(
        RunManifest::new(
            "oracle",
            json!({"N": n, "beta": beta, "t": t, "alpha_f": measure_json(alpha_f), "alpha": measure_json(&alpha)}),
        ),
        vec!["eta1", "probability", "limit"],
    );
    csv.result = Some(json!({"rest_counts": [rest.n_minus, rest.n_zero, rest.n_plus]}));
    for s in Spin::ALL {
        let limit = specification_kernel(s, alpha_f, &p, t).unwrap_or(f64::NAN);
        csv.rows.push(vec![s.value().to_string(), num(law[(s.value() + 1) as usize]), num(limit)]);
    }
    Ok(Output::Csv(csv))
}

fn probe_cmd(
    beta: f64,
    t: f64,
    alpha_f: &Measure3,
    sizes: &[usize],
    c: f64,
    prior: &PriorArgs,
) -> Result<Output> {
    let alpha = prior.measure_or_uniform()?;
    let rows = badness_probe(beta, &alpha, t, alpha_f, sizes, c)?;
    let mut csv = Csv::new(
        RunManifest::new(
            "probe",
            json!({"beta": beta, "t": t, "alpha_f": measure_json(alpha_f), "alpha": measure_json(&alpha),
                   "n_list": sizes, "shift_coeff": c}),
        ),
        vec![
            "n", "shift", "gap", "discretization_error", "verdict",
            "plus_minus", "plus_zero", "plus_plus", "minus_minus", "minus_zero", "minus_plus",
        ],
    );
    for r in rows {
        let mut row = vec![
            r.n.to_string(),
            r.shift.to_string(),
            num(r.gap),
            num(r.discretization_error),
            serde_json::to_value(r.verdict)?.as_str().unwrap_or_default().to_string(),
        ];
        row.extend(r.law_plus.iter().map(|v| num(*v)));
        row.extend(r.law_minus.iter().map(|v| num(*v)));
        csv.rows.push(row);
    }
    Ok(Output::Csv(csv))
}
