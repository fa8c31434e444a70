use num_complex::Complex64;

use super::lntable::{inv_sqrt, ln_dd, reduced_phase};
use super::tables::BERNOULLI_OVER_FACTORIAL;
use crate::dd::{Dd, NeumaierSum};
use crate::error::{Error, Result};

/// Radius around s = 1 inside which the oracle refuses to evaluate.
pub const POLE_GUARD: f64 = 1e-8;

/// Largest |t| accepted by the Euler–Maclaurin oracle (cost grows like t).
pub const EM_MAX_T: f64 = 1e6;

/// ζ(σ+it) by Euler–Maclaurin summation.
///
/// Returns the value with an explicit bound on the truncated remainder
/// (the first omitted term scaled by `|s+2M+1| / (σ+2M+1)`). The partial sum
/// length is `N ≈ |s|/π + 20`, which makes successive correction terms
/// shrink by at least a factor of four for large |t|. Phases `t ln n` are
/// reduced in double-double and the partial sum is compensated.
pub fn zeta_em_with_bound(sigma: f64, t: f64) -> Result<(Complex64, f64)> {
    let s = Complex64::new(sigma, t);
    if !(sigma.is_finite() && t.is_finite()) {
        return Err(Error::invalid("s", "must be finite"));
    }
    if (s - 1.0).norm() < POLE_GUARD {
        return Err(Error::PoleProximity {
            sigma,
            t,
            radius: POLE_GUARD,
        });
    }
    if t.abs() > EM_MAX_T {
        return Err(Error::invalid(
            "t",
            format!("|t| = {} exceeds the oracle limit {EM_MAX_T:e}", t.abs()),
        ));
    }

    let n_terms = (s.norm() / std::f64::consts::PI).ceil() as usize + 20;
    let mut re = NeumaierSum::new();
    let mut im = NeumaierSum::new();
    for n in 1..n_terms {
        let (mag, ang) = term_polar(sigma, t, n);
        re.add(mag * ang.cos());
        im.add(mag * ang.sin());
    }

    let nf = n_terms as f64;
    let (mag, ang) = term_polar(sigma, t, n_terms);
    let w = Complex64::from_polar(mag, ang); // N^{-s}
    let mut total = Complex64::new(re.value(), im.value()) + w * nf / (s - 1.0) + w * 0.5;

    // Correction terms B_{2k}/(2k)! · s(s+1)…(s+2k-2) · N^{-s-2k+1}.
    let inv_n2 = 1.0 / (nf * nf);
    let mut rising = s / nf;
    let mut bound = f64::INFINITY;
    for (k, &coef) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        let term = rising * w * coef;
        let m = 2.0 * (k as f64 + 1.0);
        if term.norm() <= 1e-18 * total.norm().max(1.0) {
            bound = term.norm() * (s + m - 1.0).norm() / (sigma + m - 1.0).max(1.0);
            break;
        }
        total += term;
        rising *= (s + (m - 1.0)) * (s + m) * inv_n2;
    }
    if !bound.is_finite() {
        // ran out of tabulated terms; the last one computed bounds the rest
        let k = BERNOULLI_OVER_FACTORIAL.len();
        bound = (rising * w * BERNOULLI_OVER_FACTORIAL[k - 1]).norm();
    }
    let rounding = 4.0 * f64::EPSILON * (n_terms as f64).sqrt();
    Ok((total, bound + rounding))
}

/// ζ(σ+it) from the Euler–Maclaurin oracle.
pub fn zeta_em(sigma: f64, t: f64) -> Result<Complex64> {
    zeta_em_with_bound(sigma, t).map(|(z, _)| z)
}

#[inline]
fn term_polar(sigma: f64, t: f64, n: usize) -> (f64, f64) {
    let mag = if sigma == 0.5 {
        inv_sqrt(n)
    } else {
        (-sigma * ln_dd(n).to_f64()).exp()
    };
    (mag, reduced_phase(Dd::ZERO, t, n, true))
}

/// `Σ_{n ≤ cutoff} n^{-1/2-it}`, the truncated Dirichlet sum that
/// approximates ζ(½+it) with error `O(cutoff^{-1/2})` when
/// `cutoff <= t <= 2·cutoff`. Outside that window it is just the partial sum.
pub fn zeta_truncated(t: f64, cutoff: f64) -> Result<Complex64> {
    if !(cutoff >= 1.0 && cutoff.is_finite()) {
        return Err(Error::invalid("cutoff", "must be at least 1"));
    }
    let last = cutoff.floor() as usize;
    let mut re = NeumaierSum::new();
    let mut im = NeumaierSum::new();
    for n in 1..=last {
        let (mag, ang) = term_polar(0.5, t, n);
        re.add(mag * ang.cos());
        im.add(mag * ang.sin());
    }
    Ok(Complex64::new(re.value(), im.value()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn zeta_two() {
        let z = zeta_em(2.0, 0.0).unwrap();
        assert!((z.re - PI * PI / 6.0).abs() < 1e-13);
        assert!(z.im.abs() < 1e-15);
    }

    #[test]
    fn zeta_half_real() {
        // ζ(1/2) = -1.4603545088095868128894991525...
        let z = zeta_em(0.5, 0.0).unwrap();
        assert!((z.re + 1.4603545088095868).abs() < 1e-13, "{z}");
    }

    // ζ(1/2 + 150i) to 50 digits: -0.0635050565486052... - 0.0651927599258052...i
    #[test]
    fn zeta_on_line_reference() {
        let z = zeta_em(0.5, 150.0).unwrap();
        let want = Complex64::new(-0.06350505654860523, -0.06519275992580523);
        assert!((z - want).norm() < 1e-13, "{z}");
    }

    #[test]
    fn zeta_vanishes_at_first_zero() {
        assert!(zeta_em(0.5, 14.134725).unwrap().norm() < 1e-5);
        assert!(zeta_em(0.5, 14.134725141734694).unwrap().norm() < 1e-13);
    }

    #[test]
    fn conjugate_symmetry() {
        let a = zeta_em(0.7, 33.0).unwrap();
        let b = zeta_em(0.7, -33.0).unwrap();
        assert!((a - b.conj()).norm() < 1e-13);
    }

    #[test]
    fn pole_guard() {
        assert!(matches!(
            zeta_em(1.0, 0.0),
            Err(Error::PoleProximity { .. })
        ));
        assert!(matches!(
            zeta_em(1.0 + 5e-9, 0.0),
            Err(Error::PoleProximity { .. })
        ));
        assert!(zeta_em(1.0 + 1e-6, 0.0).is_ok());
    }

    #[test]
    fn remainder_bound_is_small_on_line() {
        for &t in &[10.0, 1000.0, 5e4] {
            let (_, bound) = zeta_em_with_bound(0.5, t).unwrap();
            assert!(bound < 1e-12, "t = {t}: {bound:e}");
        }
    }

    #[test]
    fn truncated_single_term() {
        let z = zeta_truncated(123.4, 1.0).unwrap();
        assert_eq!(z, Complex64::new(1.0, 0.0));
        assert!(zeta_truncated(1.0, 0.5).is_err());
    }

    #[test]
    fn truncated_conjugates_under_negation() {
        let a = zeta_truncated(-77.0, 40.0).unwrap();
        let b = zeta_truncated(77.0, 40.0).unwrap();
        assert!((a.conj() - b).norm() < 1e-13);
    }

    // Over t in [150, 300] with cutoff 150 the truncated sum stays within
    // c·150^{-1/2} of ζ. The worst c on this grid sits at t = cutoff, where
    // the dropped boundary term T^{1/2-it}/(1/2-it) is largest (c ≈ 1.04).
    #[test]
    fn truncated_error_scales_like_inverse_sqrt_cutoff() {
        let cutoff = 150.0;
        let mut worst: f64 = 0.0;
        for i in 0..=60 {
            let t = 150.0 + 2.5 * i as f64;
            let d = (zeta_truncated(t, cutoff).unwrap() - zeta_em(0.5, t).unwrap()).norm();
            worst = worst.max(d * cutoff.sqrt());
        }
        assert!(worst < 1.5, "c = {worst}");
    }
}
