//! Zeros of Z on an interval: grid scan, bracketing refinement, a counting
//! audit, derivative-sign classification and gap statistics.
//!
//! The audit compares the number of located zeros with an independent count
//! `N(t)`: the smooth term `θ(t)/π + 1` is rounded to the nearest integer
//! with the parity fixed by the sign of `Z(t)` (Z changes sign at every
//! simple zero and `Z(0) < 0`). This is exact whenever `|S(t)| < 1`, and
//! audit endpoints are chosen where the rounding residual is small.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::paircorr::f_alpha;
use crate::par;
use crate::zfunc::{mean_gap, theta, z_eval, ScanConfig};

/// Grid doublings attempted before an audit failure is reported.
pub const MAX_REFINEMENTS: u32 = 4;

/// Nominal scan block length in mean gaps. Blocks are audited separately.
const BLOCK_GAPS: f64 = 256.0;

/// Candidate audit anchors probed on each side of a nominal boundary.
const ANCHOR_PROBES: usize = 12;

const ANCHOR_OK: f64 = 0.4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DerivativeSign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl DerivativeSign {
    fn of(z: f64) -> Self {
        if z > 0.0 {
            DerivativeSign::Plus
        } else {
            DerivativeSign::Minus
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            DerivativeSign::Plus => DerivativeSign::Minus,
            DerivativeSign::Minus => DerivativeSign::Plus,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            DerivativeSign::Plus => '+',
            DerivativeSign::Minus => '-',
        }
    }
}

impl fmt::Display for DerivativeSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroRecord {
    pub gamma: f64,
    pub bracket_width: f64,
    /// Sign of Z just after the zero.
    pub derivative_sign: DerivativeSign,
    pub index_in_scan: usize,
}

/// Parity-corrected estimate of N(t).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CountEstimate {
    pub count: i64,
    /// `θ(t)/π + 1 - count`; equals `-S(t)` when the estimate is exact.
    pub residual: f64,
}

/// Smooth part `θ(t)/π + 1` of N(t).
pub fn n_smooth(t: f64) -> f64 {
    theta(t) / std::f64::consts::PI + 1.0
}

pub fn count_estimate(t: f64, cfg: &ScanConfig) -> Result<CountEstimate> {
    if t <= 0.0 {
        return Ok(CountEstimate {
            count: 0,
            residual: 0.0,
        });
    }
    let smooth = n_smooth(t);
    let parity = if z_eval(t, cfg)? < 0.0 { 0 } else { 1 };
    let count = 2 * ((smooth - parity as f64) / 2.0).round() as i64 + parity;
    Ok(CountEstimate {
        count,
        residual: smooth - count as f64,
    })
}

/// Expected number of zeros on `(t0, t1]`.
pub fn count_audit(t0: f64, t1: f64, cfg: &ScanConfig) -> Result<i64> {
    if !(t0 >= 0.0 && t1 >= t0) {
        return Err(Error::invalid("interval", "need 0 <= t0 <= t1"));
    }
    if t0 == t1 {
        return Ok(0);
    }
    Ok(count_estimate(t1, cfg)?.count - count_estimate(t0, cfg)?.count)
}

/// Located zeros plus bookkeeping from the scan that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroScan {
    pub zeros: Vec<ZeroRecord>,
    /// Largest number of grid doublings any block needed.
    pub refinements: u32,
    pub blocks: usize,
}

#[derive(Debug, Clone, Copy)]
struct Anchor {
    t: f64,
    count: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Probe {
    Down,
    Up,
    Both,
}

fn pick_anchor(c: f64, probe: Probe, cfg: &ScanConfig) -> Result<Anchor> {
    let step = 0.29 * mean_gap(c);
    let mut best: Option<(f64, CountEstimate)> = None;
    for k in 0..=ANCHOR_PROBES {
        let offset = match probe {
            Probe::Down => -(k as f64) * step,
            Probe::Up => k as f64 * step,
            Probe::Both => {
                let m = k.div_ceil(2) as f64 * step;
                if k % 2 == 1 {
                    -m
                } else {
                    m
                }
            }
        };
        let t = (c + offset).max(0.0);
        let est = count_estimate(t, cfg)?;
        if best.is_none_or(|(_, b)| est.residual.abs() < b.residual.abs()) {
            best = Some((t, est));
        }
        if est.residual.abs() <= ANCHOR_OK || t == 0.0 {
            break;
        }
    }
    let (t, est) = best.expect("at least one probe");
    Ok(Anchor {
        t,
        count: est.count,
    })
}

/// `cfg.bisection_tol`, widened to four ulps of t where binary64 cannot
/// resolve the requested width (t above roughly 2·10⁶ at the default 1e-9).
pub fn effective_tol(t: f64, cfg: &ScanConfig) -> f64 {
    let ulp = f64::EPSILON * t.abs().max(f64::MIN_POSITIVE);
    cfg.bisection_tol.max(4.0 * ulp)
}

/// A zero found inside one block before global indexing.
#[derive(Debug, Clone, Copy)]
struct RawZero {
    gamma: f64,
    width: f64,
    after: DerivativeSign,
}

/// Bracketing false position (Illinois) with a bisection fallback when the
/// bracket stops halving, and a nudge of `tol/2` across the estimated root
/// once the estimate is that close.
fn refine<F>(f: &F, mut a: f64, mut fa: f64, mut b: f64, mut fb: f64, tol: f64) -> Result<RawZero>
where
    F: Fn(f64) -> Result<f64>,
{
    let (mut wa, mut wb) = (fa, fb);
    let mut side = 0i8;
    let mut slow = 0;
    while b - a > tol {
        let width = b - a;
        let x = if slow >= 2 {
            slow = 0;
            0.5 * (a + b)
        } else {
            let x = (a * wb - b * wa) / (wb - wa);
            let margin = (0.25 * tol).min(0.25 * width);
            x.clamp(a + margin, b - margin)
        };
        let fx = f(x)?;
        if fx == 0.0 {
            return Ok(RawZero {
                gamma: x,
                width: 0.0,
                after: DerivativeSign::of(fb),
            });
        }
        let toward_b = (fx > 0.0) == (fa > 0.0);
        if toward_b {
            a = x;
            fa = fx;
            wa = fx;
            if side == -1 {
                wb *= 0.5;
            }
            side = -1;
        } else {
            b = x;
            fb = fx;
            wb = fx;
            if side == 1 {
                wa *= 0.5;
            }
            side = 1;
        }
        if b - a > tol {
            // secant distance from x to the root, using true values
            let dist = fx.abs() * (b - a) / (fb - fa).abs();
            if dist < 0.25 * tol {
                let y = if toward_b {
                    x + 0.5 * tol
                } else {
                    x - 0.5 * tol
                };
                if y > a && y < b {
                    let fy = f(y)?;
                    if (fy > 0.0) == (fa > 0.0) {
                        a = y;
                        fa = fy;
                        wa = fy;
                    } else {
                        b = y;
                        fb = fy;
                        wb = fy;
                    }
                }
            }
        }
        if b - a > 0.5 * width {
            slow += 1;
        } else {
            slow = 0;
        }
    }
    Ok(RawZero {
        gamma: 0.5 * (a + b),
        width: b - a,
        after: DerivativeSign::of(fb),
    })
}

fn scan_block(a: f64, b: f64, density: f64, cfg: &ScanConfig) -> Result<Vec<RawZero>> {
    let f = |t: f64| z_eval(t, cfg);
    let mut out = Vec::new();
    let mut t = a;
    let mut z = f(a)?;
    // sign of the most recent nonzero sample (or the implied sign after an
    // exact zero at a node)
    let mut sign = if z == 0.0 { 0.0 } else { z.signum() };
    while t < b {
        let next = (t + mean_gap(t) / density).min(b);
        let zn = f(next)?;
        if zn == 0.0 {
            if sign != 0.0 {
                out.push(RawZero {
                    gamma: next,
                    width: 0.0,
                    after: DerivativeSign::of(-sign),
                });
                sign = -sign;
            }
        } else if sign == 0.0 {
            sign = zn.signum();
        } else if zn.signum() != sign {
            let (lo, flo) = if z.signum() == sign && z != 0.0 {
                (t, z)
            } else {
                // previous node was an exact zero; bracket from just past it
                (t, -zn)
            };
            out.push(refine(&f, lo, flo, next, zn, effective_tol(next, cfg))?);
            sign = zn.signum();
        }
        t = next;
        z = zn;
    }
    Ok(out)
}

fn scan_audited(lo: Anchor, hi: Anchor, cfg: &ScanConfig) -> Result<(Vec<RawZero>, u32)> {
    let expected = hi.count - lo.count;
    let mut density = cfg.samples_per_mean_gap;
    let mut found = 0;
    for refinements in 0..=MAX_REFINEMENTS {
        let zeros = scan_block(lo.t, hi.t, density, cfg)?;
        found = zeros.len() as i64;
        if found == expected {
            return Ok((zeros, refinements));
        }
        density *= 2.0;
    }
    Err(Error::AuditFailure {
        t0: lo.t,
        t1: hi.t,
        found,
        expected,
        refinements: MAX_REFINEMENTS,
    })
}

fn check_interval(t0: f64, t1: f64, cfg: &ScanConfig) -> Result<()> {
    cfg.validate()?;
    if !(t0 >= 0.0 && t1 > t0 && t1.is_finite()) {
        return Err(Error::invalid("interval", "need 0 <= t0 < t1 < inf"));
    }
    Ok(())
}

/// Locate every zero of Z in `(t0, t1]`, audited block by block.
pub fn scan_zeros(t0: f64, t1: f64, cfg: &ScanConfig) -> Result<ZeroScan> {
    check_interval(t0, t1, cfg)?;

    let mut nominal = vec![t0];
    let mut c = t0;
    loop {
        c += BLOCK_GAPS * mean_gap(c.max(1.0));
        // do not leave a sliver block at the end
        if c + 0.5 * BLOCK_GAPS * mean_gap(c) >= t1 {
            break;
        }
        nominal.push(c);
    }
    nominal.push(t1);

    let last = nominal.len() - 1;
    let probes: Vec<(f64, Probe)> = nominal
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            let p = if i == 0 {
                Probe::Down
            } else if i == last {
                Probe::Up
            } else {
                Probe::Both
            };
            (c, p)
        })
        .collect();
    let anchors = par::map(&probes, |&(c, p)| pick_anchor(c, p, cfg))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;

    let spans: Vec<(Anchor, Anchor)> = anchors.windows(2).map(|w| (w[0], w[1])).collect();
    let results = par::map(&spans, |&(lo, hi)| scan_audited(lo, hi, cfg));

    let mut zeros = Vec::new();
    let mut refinements = 0;
    for r in results {
        let (block, used) = r?;
        refinements = refinements.max(used);
        zeros.extend(block.into_iter().filter(|z| z.gamma > t0 && z.gamma <= t1));
    }
    let zeros: Vec<ZeroRecord> = zeros
        .into_iter()
        .enumerate()
        .map(|(i, z)| ZeroRecord {
            gamma: z.gamma,
            bracket_width: z.width,
            derivative_sign: z.after,
            index_in_scan: i,
        })
        .collect();
    check_alternation(&zeros)?;
    Ok(ZeroScan {
        zeros,
        refinements,
        blocks: spans.len(),
    })
}

/// Zeros of Z in `(t0, t1]`, sorted ascending.
pub fn find_zeros(t0: f64, t1: f64, cfg: &ScanConfig) -> Result<Vec<ZeroRecord>> {
    scan_zeros(t0, t1, cfg).map(|s| s.zeros)
}

fn check_alternation(zeros: &[ZeroRecord]) -> Result<()> {
    for w in zeros.windows(2) {
        if w[0].derivative_sign == w[1].derivative_sign {
            return Err(Error::AlternationViolation {
                left: w[0].gamma,
                right: w[1].gamma,
            });
        }
    }
    Ok(())
}

/// Re-derive each derivative sign from `Z(γ + ε)`, `ε = max(width, 1e-7)`,
/// and require strict alternation.
pub fn classify(zeros: &[ZeroRecord], cfg: &ScanConfig) -> Result<Vec<ZeroRecord>> {
    let signs = par::map(zeros, |z| {
        let eps = z.bracket_width.max(1e-7);
        z_eval(z.gamma + eps, cfg).map(DerivativeSign::of)
    });
    let out = zeros
        .iter()
        .zip(signs)
        .map(|(z, s)| {
            s.map(|derivative_sign| ZeroRecord {
                derivative_sign,
                ..*z
            })
        })
        .collect::<Result<Vec<_>>>()?;
    check_alternation(&out)?;
    Ok(out)
}

/// How consecutive gaps are scaled to unit mean spacing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GapNormalization {
    /// `(γ* - γ) ln T / 2π` with a single height T.
    LogT,
    /// `(γ* - γ) ln(γ̄/2π) / 2π` at the pair midpoint γ̄ (unfolded spacing).
    Local,
}

impl GapNormalization {
    fn scale(self, t: f64, mid: f64) -> f64 {
        match self {
            GapNormalization::LogT => t.ln() / std::f64::consts::TAU,
            GapNormalization::Local => 1.0 / mean_gap(mid),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapStats {
    pub normalization: GapNormalization,
    pub normalized_gaps: Vec<f64>,
    pub bin_edges: Vec<f64>,
    /// Nearest-neighbor gap counts; gaps at or beyond B land in the last bin.
    pub histogram: Vec<u64>,
    /// Number of gaps at or beyond B (already included in the last bin).
    pub beyond_range: u64,
    /// `n_gaps · ∫_bin [1 - (sin πu/πu)²] du`. For nearest-neighbor gaps this
    /// is only a small-gap approximation.
    pub predicted: Vec<f64>,
    /// All ordered pairs γ < γ' with normalized difference in each bin
    /// (diagonal excluded).
    pub pair_counts: Vec<u64>,
    /// `n_zeros · ∫_bin [1 - (sin πu/πu)²] du`, the pair-correlation
    /// prediction for `pair_counts`.
    pub pair_predicted: Vec<f64>,
}

impl GapStats {
    pub fn mean_gap(&self) -> f64 {
        self.normalized_gaps.iter().sum::<f64>() / self.normalized_gaps.len() as f64
    }
}

pub fn gap_stats(
    zeros: &[ZeroRecord],
    t: f64,
    bins: usize,
    max_gap: f64,
    normalization: GapNormalization,
) -> Result<GapStats> {
    if zeros.len() < 2 {
        return Err(Error::invalid("zeros", "need at least two zeros"));
    }
    if bins == 0 {
        return Err(Error::invalid("bins", "must be at least 1"));
    }
    if !(max_gap > 0.0 && max_gap.is_finite()) {
        return Err(Error::invalid("B", "must be positive"));
    }
    if normalization == GapNormalization::LogT && t <= 1.0 {
        return Err(Error::invalid("T", "must exceed 1"));
    }
    let width = max_gap / bins as f64;
    let bin_of = |g: f64| ((g / width) as usize).min(bins - 1);

    let normalized_gaps: Vec<f64> = zeros
        .windows(2)
        .map(|w| {
            let (a, b) = (w[0].gamma, w[1].gamma);
            (b - a) * normalization.scale(t, 0.5 * (a + b))
        })
        .collect();
    let mut histogram = vec![0u64; bins];
    let mut beyond_range = 0;
    for &g in &normalized_gaps {
        histogram[bin_of(g)] += 1;
        if g >= max_gap {
            beyond_range += 1;
        }
    }

    let mut pair_counts = vec![0u64; bins];
    for i in 0..zeros.len() {
        for j in i + 1..zeros.len() {
            let (a, b) = (zeros[i].gamma, zeros[j].gamma);
            let d = (b - a) * normalization.scale(t, 0.5 * (a + b));
            if d >= max_gap {
                break;
            }
            pair_counts[bin_of(d)] += 1;
        }
    }

    let bin_edges: Vec<f64> = (0..=bins).map(|i| i as f64 * width).collect();
    let cumulative = bin_edges
        .iter()
        .map(|&e| f_alpha(e, 1e-12))
        .collect::<Result<Vec<_>>>()?;
    let mass: Vec<f64> = cumulative.windows(2).map(|w| w[1] - w[0]).collect();
    let n_gaps = normalized_gaps.len() as f64;
    let n_zeros = zeros.len() as f64;
    Ok(GapStats {
        normalization,
        predicted: mass.iter().map(|m| m * n_gaps).collect(),
        pair_predicted: mass.iter().map(|m| m * n_zeros).collect(),
        normalized_gaps,
        bin_edges,
        histogram,
        beyond_range,
        pair_counts,
    })
}

/// `(N₊(α,T), N₋(α,T))`: zeros `γ <= T` of each derivative sign whose gap to
/// the next zero exceeds `2πα / ln T`. A zero with no successor in the list
/// is not counted.
pub fn n_pm_alpha(zeros: &[ZeroRecord], t: f64, alpha: f64) -> Result<(u64, u64)> {
    if !(alpha >= 0.0) {
        return Err(Error::invalid("alpha", "must be non-negative"));
    }
    if t <= 1.0 {
        return Err(Error::invalid("T", "must exceed 1"));
    }
    let threshold = std::f64::consts::TAU * alpha / t.ln();
    let (mut plus, mut minus) = (0, 0);
    for w in zeros.windows(2) {
        if w[0].gamma > t {
            break;
        }
        if w[1].gamma - w[0].gamma > threshold {
            match w[0].derivative_sign {
                DerivativeSign::Plus => plus += 1,
                DerivativeSign::Minus => minus += 1,
            }
        }
    }
    Ok((plus, minus))
}
