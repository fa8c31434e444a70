//! Lebesgue measure of `{T < t <= T+H : Z(t) > 0}` and its complement.

use serde::{Deserialize, Serialize};

use crate::dd::NeumaierSum;
use crate::error::{Error, Result};
use crate::zeros::{scan_zeros, DerivativeSign, ZeroRecord};
use crate::zfunc::{z_eval, ScanConfig};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasureReport {
    #[serde(rename = "T")]
    pub t: f64,
    #[serde(rename = "H")]
    pub h: f64,
    pub mu_plus: f64,
    pub mu_minus: f64,
    /// `mu_plus / (H/2)`.
    pub ratio_plus: f64,
    pub zero_count: usize,
    pub audit_ok: bool,
    #[serde(rename = "refinements")]
    pub grid_refinements: u32,
}

/// Which end segment fixes the sign pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignAnchor {
    First,
    Last,
}

pub fn measure_signs(t: f64, h: f64, cfg: &ScanConfig) -> Result<MeasureReport> {
    measure_signs_anchored(t, h, cfg, SignAnchor::First)
}

/// As [`measure_signs`], with the alternation anchored at a chosen end.
pub fn measure_signs_anchored(
    t: f64,
    h: f64,
    cfg: &ScanConfig,
    anchor: SignAnchor,
) -> Result<MeasureReport> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::invalid("T", "must be positive"));
    }
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::invalid("H", "must be positive"));
    }
    let end = t + h;
    let scan = scan_zeros(t, end, cfg)?;
    let mu_plus = positive_length(t, end, &scan.zeros, cfg, anchor)?;
    Ok(MeasureReport {
        t,
        h,
        mu_plus,
        mu_minus: h - mu_plus,
        ratio_plus: 2.0 * mu_plus / h,
        zero_count: scan.zeros.len(),
        audit_ok: true,
        grid_refinements: scan.refinements,
    })
}

fn positive_length(
    start: f64,
    end: f64,
    zeros: &[ZeroRecord],
    cfg: &ScanConfig,
    anchor: SignAnchor,
) -> Result<f64> {
    let mut cuts = Vec::with_capacity(zeros.len() + 2);
    cuts.push(start);
    cuts.extend(zeros.iter().map(|z| z.gamma));
    cuts.push(end);
    let segments = cuts.len() - 1;

    let (k, a, b) = match anchor {
        SignAnchor::First => (0, cuts[0], cuts[1]),
        SignAnchor::Last => (segments - 1, cuts[segments - 1], cuts[segments]),
    };
    let mid = z_eval(0.5 * (a + b), cfg)?;
    let anchor_positive = if mid != 0.0 {
        mid > 0.0
    } else {
        // midpoint landed on a zero; fall back on the scan's sign record
        match anchor {
            SignAnchor::First => zeros
                .first()
                .map(|z| z.derivative_sign.flipped())
                .map(|s| s == DerivativeSign::Plus)
                .unwrap_or(false),
            SignAnchor::Last => zeros
                .last()
                .map(|z| z.derivative_sign == DerivativeSign::Plus)
                .unwrap_or(false),
        }
    };

    let mut sum = NeumaierSum::new();
    // signs alternate across each zero
    for (i, w) in cuts.windows(2).enumerate() {
        let same_parity = i % 2 == k % 2;
        if same_parity == anchor_positive {
            sum.add(w[1] - w[0]);
        }
    }
    Ok(sum.value())
}

/// One table row: the report, or the error that stopped it.
#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub t: f64,
    pub h: f64,
    pub outcome: std::result::Result<MeasureReport, Error>,
}

/// Dyadic rows `(T, H = T)`.
pub fn table_dyadic(t_list: &[f64], cfg: &ScanConfig) -> Vec<TableRow> {
    t_list
        .iter()
        .map(|&t| TableRow {
            t,
            h: t,
            outcome: measure_signs(t, t, cfg),
        })
        .collect()
}

/// Rows `(T, H)` at a fixed H.
pub fn table_fixed(t_list: &[f64], h: f64, cfg: &ScanConfig) -> Vec<TableRow> {
    t_list
        .iter()
        .map(|&t| TableRow {
            t,
            h,
            outcome: measure_signs(t, h, cfg),
        })
        .collect()
}
