use std::path::Path;
use std::time::Instant;

use clap::{Args, ValueEnum};
use hardy_core::means::{CauchySchwarzReport, MeanValues, QuadratureResult, SignSplitReport};
use hardy_core::measure::{measure_signs, MeasureReport};
use hardy_core::mollify::{
    alpha_coeffs, dirichlet_convolve, divisor_count_sieve, mobius_sieve, CoeffTable,
};
use hardy_core::paircorr::{f_alpha, lower_bound_curve, maximize, objective, ZeroCountModel};
use hardy_core::zeros::{gap_stats, n_pm_alpha, scan_zeros, DerivativeSign, GapNormalization};
use hardy_core::{theta, ScanConfig};
use serde_json::{json, Map, Value};

use crate::error::CliError;
use crate::output::{flatten_cfg, Cell, Run};

const TABLE1_T: [f64; 6] = [100.0, 200.0, 500.0, 1000.0, 5000.0, 10000.0];
const TABLE2_T: [f64; 10] = [
    100.0, 200.0, 500.0, 1000.0, 5000.0, 10000.0, 1e5, 1e6, 1e7, 1e8,
];

fn core(e: hardy_core::Error) -> CliError {
    CliError::from_core(e)
}

fn positive(flag: &str, v: f64) -> Result<(), CliError> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(CliError::Usage(format!(
            "invalid value for {flag}: must be positive (got {v})"
        )))
    }
}

fn non_negative(flag: &str, v: f64) -> Result<(), CliError> {
    if v >= 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(CliError::Usage(format!(
            "invalid value for {flag}: must be non-negative (got {v})"
        )))
    }
}

#[derive(Debug, Args)]
pub struct ZEvalArgs {
    /// Points at which to evaluate Z.
    #[arg(long = "t", value_delimiter = ',', allow_hyphen_values = true)]
    pub t: Vec<f64>,
    /// Grid start (with --to).
    #[arg(long, allow_negative_numbers = true, requires = "to")]
    pub from: Option<f64>,
    #[arg(long, allow_negative_numbers = true, requires = "from")]
    pub to: Option<f64>,
    #[arg(long, default_value_t = 0.01)]
    pub step: f64,
}

pub fn z_eval(a: &ZEvalArgs, cfg: &ScanConfig, dir: &Path) -> Result<(), CliError> {
    let mut points = a.t.clone();
    if let (Some(from), Some(to)) = (a.from, a.to) {
        positive("--step", a.step)?;
        if !(to > from) {
            return Err(CliError::Usage(
                "invalid value for --to: must exceed --from".into(),
            ));
        }
        let n = ((to - from) / a.step).round() as usize;
        points.extend((0..=n).map(|i| from + i as f64 * a.step));
    }
    if points.is_empty() {
        return Err(CliError::Usage("give --t or --from/--to".into()));
    }
    let mut rows = Vec::with_capacity(points.len());
    for &t in &points {
        let z = hardy_core::z_eval(t, cfg).map_err(core)?;
        rows.push((t, z, theta(t)));
    }
    if rows.len() <= 20 {
        for (t, z, _) in &rows {
            println!("Z({t}) = {z}");
        }
    }
    let mut run = Run::start(dir, "z-eval", cfg)?;
    run.param("t", &a.t);
    run.param("from", a.from);
    run.param("to", a.to);
    run.param("step", a.step);
    run.write_csv(
        "ztrace",
        &["t", "z", "theta"],
        rows.iter()
            .map(|&(t, z, th)| vec![Cell::Num(t), Cell::Num(z), Cell::Num(th)]),
    )?;
    run.finish()
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Normalization {
    /// (γ* - γ) ln T / 2π with a single height.
    LogT,
    /// Each gap scaled by the mean spacing at its midpoint.
    Local,
}

#[derive(Debug, Args)]
pub struct ZerosArgs {
    #[arg(long, default_value_t = 0.0)]
    pub from: f64,
    #[arg(long)]
    pub to: f64,
    /// Histogram bins on [0, max-gap].
    #[arg(long, default_value_t = 40)]
    pub bins: usize,
    /// Upper end of the gap histogram, in mean spacings.
    #[arg(long, default_value_t = 4.0)]
    pub max_gap: f64,
    #[arg(long, value_enum, default_value_t = Normalization::LogT)]
    pub normalization: Normalization,
}

pub fn zeros(a: &ZerosArgs, cfg: &ScanConfig, dir: &Path) -> Result<(), CliError> {
    non_negative("--from", a.from)?;
    positive("--to", a.to)?;
    let start = Instant::now();
    let scan = scan_zeros(a.from, a.to, cfg).map_err(core)?;
    let z = &scan.zeros;
    let plus = z
        .iter()
        .filter(|r| r.derivative_sign == DerivativeSign::Plus)
        .count();
    let mut run = Run::start(dir, "zeros", cfg)?;
    run.param("from", a.from);
    run.param("to", a.to);
    run.param("bins", a.bins);
    run.param("max_gap", a.max_gap);
    run.write_csv(
        "zeros",
        &["gamma", "bracket_width", "derivative_sign", "index_in_scan"],
        z.iter().map(|r| {
            vec![
                Cell::Num(r.gamma),
                Cell::Num(r.bracket_width),
                Cell::Text(r.derivative_sign.as_char().to_string()),
                Cell::Int(r.index_in_scan as i64),
            ]
        }),
    )?;
    let mut summary = Map::new();
    summary.insert("from".into(), a.from.into());
    summary.insert("to".into(), a.to.into());
    summary.insert("zero_count".into(), z.len().into());
    summary.insert("n_plus".into(), plus.into());
    summary.insert("n_minus".into(), (z.len() - plus).into());
    summary.insert("refinements".into(), scan.refinements.into());
    summary.insert("blocks".into(), scan.blocks.into());
    if z.len() >= 2 {
        let norm = match a.normalization {
            Normalization::LogT => GapNormalization::LogT,
            Normalization::Local => GapNormalization::Local,
        };
        let g = gap_stats(z, a.to, a.bins, a.max_gap, norm).map_err(core)?;
        let max = g.normalized_gaps.iter().cloned().fold(0.0, f64::max);
        summary.insert("normalization".into(), json!(norm));
        summary.insert("mean_normalized_gap".into(), g.mean_gap().into());
        summary.insert("max_normalized_gap".into(), max.into());
        run.write_csv(
            "gaps",
            &[
                "bin_lo",
                "bin_hi",
                "count",
                "predicted",
                "pair_count",
                "pair_predicted",
            ],
            (0..a.bins).map(|i| {
                vec![
                    Cell::Num(g.bin_edges[i]),
                    Cell::Num(g.bin_edges[i + 1]),
                    Cell::Int(g.histogram[i] as i64),
                    Cell::Num(g.predicted[i]),
                    Cell::Int(g.pair_counts[i] as i64),
                    Cell::Num(g.pair_predicted[i]),
                ]
            }),
        )?;
    }
    summary.insert(
        "runtime_seconds".into(),
        start.elapsed().as_secs_f64().into(),
    );
    flatten_cfg(&mut summary, cfg);
    run.write_json("summary", &Value::Object(summary))?;
    run.finish()
}

#[derive(Debug, Args)]
pub struct MeasureArgs {
    #[arg(long = "T", allow_negative_numbers = true)]
    pub t: f64,
    #[arg(long = "H", allow_negative_numbers = true)]
    pub h: f64,
}

const MEASURE_HEADER: [&str; 9] = [
    "T",
    "H",
    "mu_plus",
    "mu_minus",
    "ratio_plus",
    "zero_count",
    "audit_ok",
    "refinements",
    "status",
];

struct Row {
    t: f64,
    h: f64,
    outcome: Result<MeasureReport, hardy_core::Error>,
    seconds: f64,
}

fn measure_rows(pairs: &[(f64, f64)], cfg: &ScanConfig) -> Vec<Row> {
    pairs
        .iter()
        .map(|&(t, h)| {
            let s = Instant::now();
            let outcome = measure_signs(t, h, cfg);
            Row {
                t,
                h,
                outcome,
                seconds: s.elapsed().as_secs_f64(),
            }
        })
        .collect()
}

fn row_cells(r: &Row) -> Vec<Cell> {
    match &r.outcome {
        Ok(m) => vec![
            Cell::Num(m.t),
            Cell::Num(m.h),
            Cell::Num(m.mu_plus),
            Cell::Num(m.mu_minus),
            Cell::Num(m.ratio_plus),
            Cell::Int(m.zero_count as i64),
            Cell::Flag(m.audit_ok),
            Cell::Int(i64::from(m.grid_refinements)),
            Cell::Text("ok".into()),
        ],
        Err(e) => {
            let mut cells = vec![Cell::Num(r.t), Cell::Num(r.h)];
            cells.extend((0..4).map(|_| Cell::Text(String::new())));
            cells.push(Cell::Flag(false));
            cells.push(Cell::Text(String::new()));
            cells.push(Cell::Text(format!("error: {e}")));
            cells
        }
    }
}

fn row_json(r: &Row, cfg: &ScanConfig) -> Value {
    let mut obj = match &r.outcome {
        Ok(m) => match serde_json::to_value(m) {
            Ok(Value::Object(o)) => o,
            _ => Map::new(),
        },
        Err(e) => {
            let mut o = Map::new();
            o.insert("T".into(), r.t.into());
            o.insert("H".into(), r.h.into());
            o.insert("audit_ok".into(), false.into());
            o.insert("error".into(), e.to_string().into());
            o
        }
    };
    obj.insert(
        "status".into(),
        if r.outcome.is_ok() { "ok" } else { "error" }.into(),
    );
    obj.insert("runtime_seconds".into(), r.seconds.into());
    flatten_cfg(&mut obj, cfg);
    Value::Object(obj)
}

/// Rows that failed with a domain error make the command fail after its
/// files are written.
fn rows_status(rows: &[Row]) -> Result<(), CliError> {
    let failed: Vec<String> = rows
        .iter()
        .filter_map(|r| {
            r.outcome
                .as_ref()
                .err()
                .map(|e| format!("T={} H={}: {e}", r.t, r.h))
        })
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Domain(failed.join("; ")))
    }
}

fn write_table(
    command: &'static str,
    pairs: &[(f64, f64)],
    cfg: &ScanConfig,
    dir: &Path,
    single: bool,
) -> Result<(), CliError> {
    for &(t, h) in pairs {
        positive("--T", t)?;
        positive("--H", h)?;
    }
    let rows = measure_rows(pairs, cfg);
    for r in &rows {
        if let Err(e) = &r.outcome {
            if !e.is_domain_error() {
                return Err(core(e.clone()));
            }
        }
    }
    let mut run = Run::start(dir, command, cfg)?;
    run.param("T", pairs.iter().map(|p| p.0).collect::<Vec<_>>());
    run.param("H", pairs.iter().map(|p| p.1).collect::<Vec<_>>());
    run.write_csv("rows", &MEASURE_HEADER, rows.iter().map(row_cells))?;
    let json = if single {
        row_json(&rows[0], cfg)
    } else {
        Value::Array(rows.iter().map(|r| row_json(r, cfg)).collect())
    };
    run.write_json("report", &json)?;
    for r in &rows {
        if let Ok(m) = &r.outcome {
            eprintln!(
                "T={} H={} ratio_plus={:.6} zeros={}",
                m.t, m.h, m.ratio_plus, m.zero_count
            );
        }
    }
    run.finish()?;
    rows_status(&rows)
}

pub fn measure(a: &MeasureArgs, cfg: &ScanConfig, dir: &Path) -> Result<(), CliError> {
    write_table("measure", &[(a.t, a.h)], cfg, dir, true)
}

#[derive(Debug, Args)]
pub struct Table1Args {
    /// Left ends of the dyadic intervals (T, 2T].
    #[arg(long = "T", value_delimiter = ',', allow_hyphen_values = true, default_values_t = TABLE1_T)]
    pub t: Vec<f64>,
}

pub fn table1(a: &Table1Args, cfg: &ScanConfig, dir: &Path) -> Result<(), CliError> {
    let pairs: Vec<(f64, f64)> = a.t.iter().map(|&t| (t, t)).collect();
    write_table("table1", &pairs, cfg, dir, false)
}

#[derive(Debug, Args)]
pub struct Table2Args {
    #[arg(long = "T", value_delimiter = ',', allow_hyphen_values = true, default_values_t = TABLE2_T)]
    pub t: Vec<f64>,
    #[arg(long = "H", allow_negative_numbers = true, default_value_t = 100.0)]
    pub h: f64,
}

pub fn table2(a: &Table2Args, cfg: &ScanConfig, dir: &Path) -> Result<(), CliError> {
    let pairs: Vec<(f64, f64)> = a.t.iter().map(|&t| (t, a.h)).collect();
    write_table("table2", &pairs, cfg, dir, false)
}

#[derive(Debug, Args)]
pub struct MollifierArgs {
    /// Mollifier length.
    #[arg(long = "X", conflicts_with_all = ["t", "theta"], allow_negative_numbers = true)]
    pub x: Option<f64>,
    /// Height for X = T^theta.
    #[arg(long = "T", requires = "theta", allow_negative_numbers = true)]
    pub t: Option<f64>,
    #[arg(long, requires = "t", allow_negative_numbers = true)]
    pub theta: Option<f64>,
    /// Also write b(m) for m <= X².
    #[arg(long)]
    pub with_b: bool,
}

pub fn mollifier(a: &MollifierArgs, cfg: &ScanConfig, dir: &Path) -> Result<(), CliError> {
    let table = match (a.x, a.t, a.theta) {
        (Some(x), _, _) => CoeffTable::new(x),
        (None, Some(t), Some(th)) => CoeffTable::for_height(t, th),
        _ => return Err(CliError::Usage("give --X or --T with --theta".into())),
    }
    .map_err(core)?;
    let n = table.len();
    let beta_max = table.beta[1..].iter().map(|b| b.abs()).fold(0.0, f64::max);
    let d = divisor_count_sieve(table.b.len() - 1);
    let b_ok = (1..table.b.len()).all(|m| table.b[m].abs() <= d[m] as f64);
    let alpha = alpha_coeffs(n * n);
    let sq = dirichlet_convolve(&alpha, &alpha, n * n);
    let mu = mobius_sieve(n * n);
    let conv_err = (1..=n * n)
        .map(|k| (sq[k] - f64::from(mu[k])).abs())
        .fold(0.0, f64::max);

    let mut run = Run::start(dir, "mollifier", cfg)?;
    run.param("X", table.x);
    run.param("theta", table.theta);
    run.param("T", a.t);
    run.write_csv(
        "coeffs",
        &["nu", "alpha", "beta"],
        (1..=n).map(|nu| {
            vec![
                Cell::Int(nu as i64),
                Cell::Num(table.alpha[nu]),
                Cell::Num(table.beta[nu]),
            ]
        }),
    )?;
    if a.with_b {
        run.write_csv(
            "b",
            &["m", "b", "d"],
            (1..table.b.len()).map(|m| {
                vec![
                    Cell::Int(m as i64),
                    Cell::Num(table.b[m]),
                    Cell::Int(i64::from(d[m])),
                ]
            }),
        )?;
    }
    let summary = json!({
        "X": table.x,
        "theta": table.theta,
        "length": n,
        "abs_bound": table.abs_bound(),
        "max_abs_beta": beta_max,
        "beta_bound_ok": beta_max <= 1.0,
        "b_bound_ok": b_ok,
        "convolution_max_error": conv_err,
    });
    run.write_json("summary", &summary)?;
    run.finish()
}

#[derive(Debug, Args)]
pub struct MeansArgs {
    #[arg(long = "T", value_delimiter = ',', allow_hyphen_values = true, default_values_t = [1000.0, 10000.0])]
    pub t: Vec<f64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = [0.05, 0.2])]
    pub theta: Vec<f64>,
}

fn mean_cells(name: &str, q: &QuadratureResult) -> Vec<Cell> {
    vec![
        Cell::Num(q.t),
        Cell::Num(q.theta),
        Cell::Num(q.x),
        Cell::Text(name.into()),
        Cell::Num(q.value),
        Cell::Num(q.value_over_t()),
        Cell::Num(q.error_estimate),
        Cell::Int(q.nodes as i64),
        Cell::Flag(q.converged),
        Cell::Flag(q.within_hypothesis),
    ]
}

pub fn means(a: &MeansArgs, cfg: &ScanConfig, dir: &Path) -> Result<(), CliError> {
    for &t in &a.t {
        if !(t >= 100.0 && t.is_finite()) {
            return Err(CliError::Usage(format!(
                "invalid value for --T: must be at least 100 (got {t})"
            )));
        }
    }
    for &th in &a.theta {
        positive("--theta", th)?;
    }
    let mut results = Vec::new();
    for &t in &a.t {
        let mu = measure_signs(t, t, cfg).map_err(core)?.mu_plus;
        for &th in &a.theta {
            let m = MeanValues::compute(t, th, cfg).map_err(core)?;
            let split = SignSplitReport::from_means(&m);
            let cs = CauchySchwarzReport::from_parts(&m, mu);
            results.push((m, split, cs));
        }
    }

    let mut run = Run::start(dir, "means", cfg)?;
    run.param("T", &a.t);
    run.param("theta", &a.theta);
    let mut mean_rows = Vec::new();
    for (m, _, _) in &results {
        mean_rows.push(mean_cells("z_b2", &m.z_b2));
        mean_rows.push(mean_cells("abs_z_b2", &m.abs_z_b2));
        mean_rows.push(mean_cells("z2_b4", &m.z2_b4));
        mean_rows.push(mean_cells("positive_z_b2", &m.positive_z_b2));
    }
    run.write_csv(
        "means",
        &[
            "T",
            "theta",
            "X",
            "mean",
            "value",
            "value_over_t",
            "error_estimate",
            "nodes",
            "converged",
            "within_hypothesis",
        ],
        mean_rows,
    )?;
    run.write_csv(
        "checks",
        &[
            "T",
            "theta",
            "split_direct",
            "split_half_sum",
            "split_difference",
            "split_combined_error",
            "split_holds",
            "cs_lhs",
            "cs_mu_plus",
            "cs_fourth_moment",
            "cs_rhs",
            "cs_slack",
            "cs_holds",
            "triangle_holds",
        ],
        results.iter().map(|(m, s, c)| {
            vec![
                Cell::Num(s.t),
                Cell::Num(s.theta),
                Cell::Num(s.direct),
                Cell::Num(s.half_sum),
                Cell::Num(s.difference),
                Cell::Num(s.combined_error),
                Cell::Flag(s.holds),
                Cell::Num(c.lhs),
                Cell::Num(c.mu_plus),
                Cell::Num(c.fourth_moment),
                Cell::Num(c.rhs),
                Cell::Num(c.slack),
                Cell::Flag(c.holds),
                Cell::Flag(m.z_b2.value.abs() <= m.abs_z_b2.value),
            ]
        }),
    )?;
    let json: Vec<Value> = results
        .iter()
        .map(|(m, s, c)| {
            json!({
                "T": s.t,
                "theta": s.theta,
                "X": m.z_b2.x,
                "z_b2_over_t": m.z_b2.value_over_t(),
                "abs_z_b2_over_t": m.abs_z_b2.value_over_t(),
                "z2_b4_over_t": m.z2_b4.value_over_t(),
                "split_difference": s.difference,
                "split_combined_error": s.combined_error,
                "split_holds": s.holds,
                "cs_slack": c.slack,
                "cs_holds": c.holds,
            })
        })
        .collect();
    run.write_json("ladder", &Value::Array(json))?;
    run.finish()?;

    let bad: Vec<String> = results
        .iter()
        .filter(|(m, s, c)| !(s.holds && c.holds && m.z_b2.value.abs() <= m.abs_z_b2.value))
        .map(|(_, s, _)| format!("T={} theta={}", s.t, s.theta))
        .collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(CliError::Domain(format!(
            "identity checks failed at {}",
            bad.join(", ")
        )))
    }
}

#[derive(Debug, Args)]
pub struct PaircorrArgs {
    /// Absolute tolerance on A* and on the quadratures.
    #[arg(long, default_value_t = 1e-10, allow_negative_numbers = true)]
    pub tol: f64,
    /// Compare the lower-bound curve with zero counts up to this height.
    #[arg(long = "T", allow_negative_numbers = true)]
    pub t: Option<f64>,
    #[arg(long, value_delimiter = ',', default_values_t = [0.1, 0.25, 0.5, 0.75, 0.952])]
    pub alpha: Vec<f64>,
}

pub fn paircorr(a: &PaircorrArgs, cfg: &ScanConfig, dir: &Path) -> Result<(), CliError> {
    positive("--tol", a.tol)?;
    if let Some(t) = a.t {
        positive("--T", t)?;
    }
    for &al in &a.alpha {
        non_negative("--alpha", al)?;
    }
    let r = maximize(a.tol).map_err(core)?;
    let q = r.quadrature_tol;
    let mut curve = Vec::with_capacity(r.f_samples.len());
    for &(al, f) in &r.f_samples {
        curve.push((al, f, objective(al, q).map_err(core)?));
    }
    let f_star = f_alpha(r.a_star, q).map_err(core)?;

    let mut run = Run::start(dir, "paircorr", cfg)?;
    run.param("tol", a.tol);
    run.param("T", a.t);
    run.param("alpha", &a.alpha);
    run.write_csv(
        "curves",
        &["alpha", "f", "half_minus_f", "G_cumulative"],
        curve.iter().map(|&(al, f, g)| {
            vec![
                Cell::Num(al),
                Cell::Num(f),
                Cell::Num(0.5 - f),
                Cell::Num(g),
            ]
        }),
    )?;
    let mut summary = json!({
        "A_star": r.a_star,
        "G_star": r.g_star,
        "tol": a.tol,
        "quadrature_tol": q,
        "f_at_A_star": f_star,
    });
    if let Some(t) = a.t {
        // scan a little past T so the last zero below T has a successor
        let zeros = scan_zeros(0.0, t + 10.0 * hardy_core::zfunc::mean_gap(t), cfg)
            .map_err(core)?
            .zeros;
        let n_t = zeros.iter().filter(|z| z.gamma <= t).count() as u64;
        let counted =
            lower_bound_curve(&a.alpha, t, ZeroCountModel::Exact(n_t), q).map_err(core)?;
        let asym = lower_bound_curve(&a.alpha, t, ZeroCountModel::Asymptotic, q).map_err(core)?;
        let mut rows = Vec::new();
        for (i, &al) in a.alpha.iter().enumerate() {
            let (p, m) = n_pm_alpha(&zeros, t, al).map_err(core)?;
            rows.push(vec![
                Cell::Num(al),
                Cell::Num(f_alpha(al, q).map_err(core)?),
                Cell::Num(asym[i].1),
                Cell::Num(counted[i].1),
                Cell::Int(p as i64),
                Cell::Int(m as i64),
            ]);
        }
        run.write_csv(
            "lower_bound",
            &[
                "alpha",
                "f",
                "bound_asymptotic",
                "bound_counted",
                "n_plus",
                "n_minus",
            ],
            rows,
        )?;
        summary["T"] = t.into();
        summary["zero_count"] = n_t.into();
    }
    run.write_json("summary", &summary)?;
    eprintln!("A_star={:.10} G_star={:.10}", r.a_star, r.g_star);
    run.finish()
}
