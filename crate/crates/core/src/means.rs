//! Mollified mean values of Z over `[T, 2T]` and the two checks built on
//! them: the sign-split identity
//! `∫_{Z>0} Z|B|² = ½(∫ Z|B|² + ∫ |Z||B|²)` and the Cauchy–Schwarz step
//! `∫_{Z>0} Z|B|² ≤ μ₊^{1/2} (∫ Z²|B|⁴)^{1/2}`.
//!
//! Two independent panel layouts are used. The smooth integrands `Z|B|²` and
//! `Z²|B|⁴` go on a uniform grid; `|Z||B|²` and the positive part go on a grid
//! cut at every located zero, so no panel straddles a kink.

use serde::{Deserialize, Serialize};

use crate::dd::NeumaierSum;
use crate::error::{Error, Result};
use crate::measure::measure_signs;
use crate::mollify::{eval_b, CoeffTable};
use crate::par;
use crate::quad::GaussLegendre;
use crate::zeros::scan_zeros;
use crate::zfunc::{mean_gap, z_eval, ScanConfig};

const NODES_PER_PANEL: usize = 8;
/// Coarsest panel width, as a fraction of the local mean zero gap.
const BASE_PANEL_FRACTION: f64 = 0.5;
const MAX_LEVELS: u32 = 5;
const REL_TOL: f64 = 1e-6;
const EVAL_ULPS: f64 = 64.0;

/// Lemma ranges for θ; outside them a run is flagged, not refused.
const THETA_LIMIT_Z_B2: f64 = 0.25;
const THETA_LIMIT_ABS_Z_B2: f64 = 0.5;
const THETA_LIMIT_Z2_B4: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    /// Integrand evaluations at the finest level.
    pub nodes: usize,
    pub converged: bool,
    #[serde(rename = "T")]
    pub t: f64,
    pub theta: f64,
    #[serde(rename = "X")]
    pub x: f64,
    /// θ lies inside the range the corresponding lemma assumes.
    pub within_hypothesis: bool,
}

impl QuadratureResult {
    pub fn value_over_t(&self) -> f64 {
        self.value / self.t
    }
}

fn check_args(t: f64, theta: f64) -> Result<()> {
    if !(t >= 100.0 && t.is_finite()) {
        return Err(Error::invalid("T", "must be at least 100"));
    }
    if !(theta > 0.0 && theta.is_finite()) {
        return Err(Error::invalid("theta", "must be positive"));
    }
    Ok(())
}

/// Panel endpoints for one layout at one level.
fn panels(cuts: &[f64], level: u32) -> Vec<(f64, f64)> {
    let scale = BASE_PANEL_FRACTION / f64::from(1u32 << level);
    let mut out = Vec::new();
    for w in cuts.windows(2) {
        let (a, b) = (w[0], w[1]);
        let width = scale * mean_gap(0.5 * (a + b));
        let k = ((b - a) / width).ceil().max(1.0) as usize;
        let h = (b - a) / k as f64;
        for i in 0..k {
            let lo = a + i as f64 * h;
            let hi = if i + 1 == k { b } else { lo + h };
            out.push((lo, hi));
        }
    }
    out
}

/// Integrals of several functions of `(Z, |B|²)` over the given panels.
/// Sums are taken in panel order, so results do not depend on threading.
fn integrate<const K: usize>(
    layout: &[(f64, f64)],
    table: &CoeffTable,
    cfg: &ScanConfig,
    g: fn(f64, f64) -> [f64; K],
) -> Result<([f64; K], [f64; K])> {
    let gl = GaussLegendre::new(NODES_PER_PANEL);
    let per_panel = par::map(layout, |&(a, b)| -> Result<[f64; K]> {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        let mut acc = [0.0; K];
        for (x, w) in gl.nodes.iter().zip(&gl.weights) {
            let t = c + h * x;
            let z = z_eval(t, cfg)?;
            let b2 = eval_b(t, table)?.norm_sqr();
            for (s, v) in acc.iter_mut().zip(g(z, b2)) {
                *s += w * h * v;
            }
        }
        Ok(acc)
    });
    let mut sums = [NeumaierSum::new(); K];
    let mut abs = [0.0; K];
    for p in per_panel {
        let p = p?;
        for k in 0..K {
            sums[k].add(p[k]);
            abs[k] += p[k].abs();
        }
    }
    Ok((sums.map(|s| s.value()), abs))
}

/// Refine a layout by halving panel widths until every integral settles.
fn converge<const K: usize>(
    t: f64,
    theta: f64,
    cuts: &[f64],
    table: &CoeffTable,
    cfg: &ScanConfig,
    g: fn(f64, f64) -> [f64; K],
    limits: [f64; K],
) -> Result<[QuadratureResult; K]> {
    let mut prev: Option<[f64; K]> = None;
    let mut level = 0;
    loop {
        let layout = panels(cuts, level);
        let (vals, abs) = integrate(&layout, table, cfg, g)?;
        let nodes = layout.len() * NODES_PER_PANEL;
        if let Some(p) = prev {
            let deltas: [f64; K] = std::array::from_fn(|k| (vals[k] - p[k]).abs());
            let ok = (0..K).all(|k| deltas[k] <= REL_TOL * vals[k].abs().max(t));
            if ok || level + 1 >= MAX_LEVELS {
                return Ok(std::array::from_fn(|k| QuadratureResult {
                    value: vals[k],
                    // refinement delta plus round-off: each Z value is a sum of
                    // up to ~√(t/2π) terms, each node carries a few dozen ulps
                    error_estimate: deltas[k] + EVAL_ULPS * f64::EPSILON * abs[k],
                    nodes,
                    converged: ok,
                    t,
                    theta,
                    x: table.x,
                    within_hypothesis: theta < limits[k],
                }));
            }
        }
        prev = Some(vals);
        level += 1;
    }
}

fn uniform_pair(t: f64, theta: f64, cfg: &ScanConfig) -> Result<[QuadratureResult; 2]> {
    check_args(t, theta)?;
    let table = CoeffTable::for_height(t, theta)?;
    converge(
        t,
        theta,
        &[t, 2.0 * t],
        &table,
        cfg,
        |z, b2| [z * b2, z * z * b2 * b2],
        [THETA_LIMIT_Z_B2, THETA_LIMIT_Z2_B4],
    )
}

fn split_pair(t: f64, theta: f64, cfg: &ScanConfig) -> Result<[QuadratureResult; 2]> {
    check_args(t, theta)?;
    let table = CoeffTable::for_height(t, theta)?;
    let scan = scan_zeros(t, 2.0 * t, cfg)?;
    let mut cuts = Vec::with_capacity(scan.zeros.len() + 2);
    cuts.push(t);
    cuts.extend(scan.zeros.iter().map(|z| z.gamma).filter(|&g| g < 2.0 * t));
    cuts.push(2.0 * t);
    converge(
        t,
        theta,
        &cuts,
        &table,
        cfg,
        |z, b2| [z.abs() * b2, z.max(0.0) * b2],
        [THETA_LIMIT_ABS_Z_B2, THETA_LIMIT_Z_B2],
    )
}

/// `∫_T^{2T} Z(t) |B_X(½+it)|² dt` with `X = T^θ`.
pub fn mean_z_b2(t: f64, theta: f64, cfg: &ScanConfig) -> Result<QuadratureResult> {
    Ok(uniform_pair(t, theta, cfg)?[0])
}

/// `∫_T^{2T} |Z(t)| |B_X(½+it)|² dt`.
pub fn mean_abs_z_b2(t: f64, theta: f64, cfg: &ScanConfig) -> Result<QuadratureResult> {
    Ok(split_pair(t, theta, cfg)?[0])
}

/// `∫_T^{2T} Z(t)² |B_X(½+it)|⁴ dt`.
pub fn mean_z2_b4(t: f64, theta: f64, cfg: &ScanConfig) -> Result<QuadratureResult> {
    Ok(uniform_pair(t, theta, cfg)?[1])
}

/// All four integrals from one pass over each layout.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeanValues {
    pub z_b2: QuadratureResult,
    pub abs_z_b2: QuadratureResult,
    pub z2_b4: QuadratureResult,
    /// `∫_{Z>0} Z|B|²`, taken directly on the positive segments.
    pub positive_z_b2: QuadratureResult,
}

impl MeanValues {
    pub fn compute(t: f64, theta: f64, cfg: &ScanConfig) -> Result<Self> {
        let [z_b2, z2_b4] = uniform_pair(t, theta, cfg)?;
        let [abs_z_b2, positive_z_b2] = split_pair(t, theta, cfg)?;
        Ok(MeanValues {
            z_b2,
            abs_z_b2,
            z2_b4,
            positive_z_b2,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SignSplitReport {
    #[serde(rename = "T")]
    pub t: f64,
    pub theta: f64,
    /// Left side, integrated over the positive segments only.
    pub direct: f64,
    /// `½(∫ Z|B|² + ∫ |Z||B|²)`.
    pub half_sum: f64,
    pub difference: f64,
    pub combined_error: f64,
    pub holds: bool,
}

impl SignSplitReport {
    pub fn from_means(m: &MeanValues) -> Self {
        let direct = m.positive_z_b2.value;
        let half_sum = 0.5 * (m.z_b2.value + m.abs_z_b2.value);
        let difference = (direct - half_sum).abs();
        let combined_error = m.positive_z_b2.error_estimate
            + 0.5 * (m.z_b2.error_estimate + m.abs_z_b2.error_estimate);
        SignSplitReport {
            t: m.z_b2.t,
            theta: m.z_b2.theta,
            direct,
            half_sum,
            difference,
            combined_error,
            holds: difference <= combined_error,
        }
    }
}

pub fn sign_split_check(t: f64, theta: f64, cfg: &ScanConfig) -> Result<SignSplitReport> {
    Ok(SignSplitReport::from_means(&MeanValues::compute(
        t, theta, cfg,
    )?))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CauchySchwarzReport {
    #[serde(rename = "T")]
    pub t: f64,
    pub theta: f64,
    /// `∫_{Z>0} Z|B|²`.
    pub lhs: f64,
    /// Measure of `{T < t ≤ 2T : Z(t) > 0}`.
    pub mu_plus: f64,
    pub fourth_moment: f64,
    /// `μ₊^{1/2} (∫ Z²|B|⁴)^{1/2}`.
    pub rhs: f64,
    /// `rhs / lhs`.
    pub slack: f64,
    pub holds: bool,
}

impl CauchySchwarzReport {
    pub fn from_parts(m: &MeanValues, mu_plus: f64) -> Self {
        let lhs = m.positive_z_b2.value;
        let rhs = mu_plus.sqrt() * m.z2_b4.value.max(0.0).sqrt();
        let err = m.positive_z_b2.error_estimate
            + 0.5 * rhs * m.z2_b4.error_estimate / m.z2_b4.value.abs().max(f64::MIN_POSITIVE);
        CauchySchwarzReport {
            t: m.z_b2.t,
            theta: m.z_b2.theta,
            lhs,
            mu_plus,
            fourth_moment: m.z2_b4.value,
            rhs,
            slack: rhs / lhs,
            holds: lhs <= rhs + err,
        }
    }
}

pub fn cauchy_schwarz_check(t: f64, theta: f64, cfg: &ScanConfig) -> Result<CauchySchwarzReport> {
    let m = MeanValues::compute(t, theta, cfg)?;
    let mu = measure_signs(t, t, cfg)?.mu_plus;
    Ok(CauchySchwarzReport::from_parts(&m, mu))
}

/// One row of a `value / T` trend table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LadderRow {
    #[serde(rename = "T")]
    pub t: f64,
    pub theta: f64,
    #[serde(rename = "X")]
    pub x: f64,
    pub z_b2_over_t: f64,
    pub abs_z_b2_over_t: f64,
    pub z2_b4_over_t: f64,
    pub converged: bool,
}

pub fn trend_ladder(t_list: &[f64], theta: f64, cfg: &ScanConfig) -> Result<Vec<LadderRow>> {
    t_list
        .iter()
        .map(|&t| {
            let m = MeanValues::compute(t, theta, cfg)?;
            Ok(LadderRow {
                t,
                theta,
                x: m.z_b2.x,
                z_b2_over_t: m.z_b2.value_over_t(),
                abs_z_b2_over_t: m.abs_z_b2.value_over_t(),
                z2_b4_over_t: m.z2_b4.value_over_t(),
                converged: m.z_b2.converged && m.abs_z_b2.converged && m.z2_b4.converged,
            })
        })
        .collect()
}
