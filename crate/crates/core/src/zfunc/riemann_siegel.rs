use super::lntable::{inv_sqrt, reduced_phase};
use super::tables::{C0, C1, C2, C3, C4};
use super::{theta_dd, PHASE_DD_MIN_T};
use crate::dd::NeumaierSum;

/// Number of tabulated correction terms beyond `C_0`.
pub const MAX_CORRECTION_ORDER: u32 = 4;

const CORRECTIONS: [&[f64]; 5] = [&C0, &C1, &C2, &C3, &C4];

#[inline]
fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// Z(t) by the Riemann–Siegel formula for `t >= 2π`.
///
/// Main sum over `n <= ⌊√(t/2π)⌋` plus `C_0 ..= C_order` in powers of
/// `(t/2π)^{-1/2}`. `order` is clamped to the tabulated range.
pub fn riemann_siegel_z(t: f64, order: u32) -> f64 {
    let a = (t / std::f64::consts::TAU).sqrt();
    let n_main = a.floor() as usize;
    debug_assert!(n_main >= 1);

    let theta = theta_dd(t);
    let use_dd = t >= PHASE_DD_MIN_T;
    let mut sum = NeumaierSum::new();
    for n in 1..=n_main {
        sum.add(inv_sqrt(n) * reduced_phase(theta, t, n, use_dd).cos());
    }

    let x = a - n_main as f64 - 0.5;
    let inv_a = 1.0 / a;
    let mut scale = 1.0;
    let mut corr = 0.0;
    for coeffs in CORRECTIONS
        .iter()
        .take(order.min(MAX_CORRECTION_ORDER) as usize + 1)
    {
        corr += scale * horner(coeffs, x);
        scale *= inv_a;
    }
    let sign = if n_main % 2 == 1 { 1.0 } else { -1.0 };
    2.0 * sum.value() + sign * corr / a.sqrt()
}
