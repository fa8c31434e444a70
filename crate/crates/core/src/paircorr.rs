//! The pair-correlation density `1 - (sin πu / πu)²`, its cumulative integral
//! f(α), and the lower-bound functional `G(A) = ∫₀^A (½ - f(α)) dα` whose
//! maximum is the constant in the conditional measure bound.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::integrate_adaptive;

const MAX_PANELS: usize = 4000;

/// `1 - (sin πu / πu)²`, with the series used near the removable point.
pub fn pair_density(u: f64) -> f64 {
    let x = std::f64::consts::PI * u;
    if x.abs() < 1e-3 {
        let x2 = x * x;
        // 1 - sinc² = x²/3 - 2x⁴/45 + x⁶/315 - …
        x2 * (1.0 / 3.0 - x2 * (2.0 / 45.0 - x2 / 315.0))
    } else {
        let s = x.sin() / x;
        1.0 - s * s
    }
}

/// `f(α) = ∫₀^α [1 - (sin πu/πu)²] du` to absolute accuracy `tol`.
pub fn f_alpha(alpha: f64, tol: f64) -> Result<f64> {
    check_tol(tol)?;
    if !(alpha >= 0.0 && alpha.is_finite()) {
        return Err(Error::invalid("alpha", "must be finite and non-negative"));
    }
    Ok(integrate_adaptive(pair_density, 0.0, alpha, tol, MAX_PANELS).value)
}

/// `G(A) = ∫₀^A (½ - f(α)) dα`, evaluated as the single integral
/// `A/2 - ∫₀^A (A - u) ρ(u) du` obtained by swapping the order of
/// integration.
pub fn objective(a: f64, tol: f64) -> Result<f64> {
    check_tol(tol)?;
    if !(a >= 0.0 && a.is_finite()) {
        return Err(Error::invalid("A", "must be finite and non-negative"));
    }
    let inner = integrate_adaptive(|u| (a - u) * pair_density(u), 0.0, a, tol, MAX_PANELS);
    Ok(0.5 * a - inner.value)
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid("tol", "must be positive"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairCorrResult {
    /// Maximizer of G, the root of `f(A) = ½`.
    pub a_star: f64,
    /// `G(A*)`.
    pub g_star: f64,
    pub f_samples: Vec<(f64, f64)>,
    pub quadrature_tol: f64,
}

/// Maximize G by solving its first-order condition `f(A) = ½`.
///
/// f is strictly increasing on `(0, ∞)`, `f(0) = 0` and `f(2) > ½`, so the
/// root is bracketed in `[0, 2]` and found by Illinois false position.
pub fn maximize(tol: f64) -> Result<PairCorrResult> {
    check_tol(tol)?;
    let quad_tol = (tol * 1e-2).max(1e-15);
    let g = |a: f64| f_alpha(a, quad_tol).map(|f| f - 0.5);

    let (mut lo, mut hi) = (0.0, 2.0);
    let (mut glo, mut ghi) = (g(lo)?, g(hi)?);
    if !(glo < 0.0 && ghi > 0.0) {
        return Err(Error::invalid("tol", "failed to bracket f(A) = 1/2"));
    }
    let mut side = 0i8;
    let mut a_star = 0.5 * (lo + hi);
    for _ in 0..200 {
        a_star = (lo * ghi - hi * glo) / (ghi - glo);
        let v = g(a_star)?;
        if v.abs() <= tol || hi - lo <= tol {
            break;
        }
        if v < 0.0 {
            lo = a_star;
            glo = v;
            if side == -1 {
                ghi *= 0.5;
            }
            side = -1;
        } else {
            hi = a_star;
            ghi = v;
            if side == 1 {
                glo *= 0.5;
            }
            side = 1;
        }
    }
    let g_star = objective(a_star, quad_tol)?;
    let f_samples = (0..=200)
        .map(|i| {
            let a = i as f64 * 0.01;
            f_alpha(a, quad_tol).map(|f| (a, f))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PairCorrResult {
        a_star,
        g_star,
        f_samples,
        quadrature_tol: quad_tol,
    })
}

/// How N(T) enters the lower-bound curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ZeroCountModel {
    /// `(T/2π) ln(T/2π)`.
    Asymptotic,
    /// A count supplied by the caller (for example from a zero scan).
    Exact(u64),
}

/// Main term `(T/2π) ln(T/2π)` of the zero-counting function.
pub fn n_asymptotic(t: f64) -> f64 {
    let x = t / std::f64::consts::TAU;
    x * x.ln()
}

/// `(α, max(0, ½ - f(α)) · N(T))` for each α on the grid.
pub fn lower_bound_curve(
    alpha_grid: &[f64],
    t: f64,
    count: ZeroCountModel,
    tol: f64,
) -> Result<Vec<(f64, f64)>> {
    let n = match count {
        ZeroCountModel::Asymptotic => {
            if t <= std::f64::consts::E * std::f64::consts::TAU {
                return Err(Error::invalid("T", "must exceed 2πe"));
            }
            n_asymptotic(t)
        }
        ZeroCountModel::Exact(n) => n as f64,
    };
    alpha_grid
        .iter()
        .map(|&a| f_alpha(a, tol).map(|f| (a, (0.5 - f).max(0.0) * n)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn density_series_matches_direct_form_at_switch() {
        let u = 1e-3 / std::f64::consts::PI;
        let x = 1e-3f64;
        let direct = 1.0 - (x.sin() / x).powi(2);
        assert!((pair_density(u) - direct).abs() < 1e-15);
        assert_eq!(pair_density(0.0), 0.0);
    }

    #[test]
    fn f_at_zero_is_zero() {
        assert_eq!(f_alpha(0.0, 1e-10).unwrap(), 0.0);
    }

    #[test]
    fn f_is_bounded_by_alpha() {
        for &a in &[0.1, 1.0, 5.0] {
            let f = f_alpha(a, 1e-10).unwrap();
            assert!(f >= 0.0 && f <= a, "alpha {a}: {f}");
        }
    }

    #[test]
    fn f_approaches_alpha_minus_half() {
        let f = f_alpha(20.0, 1e-10).unwrap();
        assert!((f - 19.5).abs() <= 0.01, "{f}");
    }

    #[test]
    fn objective_derivative_is_half_minus_f() {
        let (a, h) = (0.5, 1e-4);
        let d = (objective(a + h, 1e-13).unwrap() - objective(a - h, 1e-13).unwrap()) / (2.0 * h);
        let want = 0.5 - f_alpha(a, 1e-13).unwrap();
        assert!((d - want).abs() < 1e-8, "{d} vs {want}");
        assert_eq!(objective(0.0, 1e-10).unwrap(), 0.0);
    }

    #[test]
    fn maximizer_is_a_strict_local_max() {
        let tol = 1e-9;
        let r = maximize(tol).unwrap();
        assert!((f_alpha(r.a_star, r.quadrature_tol).unwrap() - 0.5).abs() <= 10.0 * tol);
        for a in [r.a_star - 0.01, r.a_star + 0.01] {
            assert!(objective(a, r.quadrature_tol).unwrap() < r.g_star);
        }
        assert!(r.f_samples.iter().all(|&(a, f)| (0.0..=a).contains(&f)));
    }

    #[test]
    fn lower_bound_at_origin_is_half_count() {
        let t = 5000.0;
        let c = lower_bound_curve(&[0.0], t, ZeroCountModel::Asymptotic, 1e-10).unwrap();
        assert!((c[0].1 - 0.5 * n_asymptotic(t)).abs() < 1e-9);
        assert!(lower_bound_curve(&[0.0], 10.0, ZeroCountModel::Asymptotic, 1e-10).is_err());
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(f_alpha(-1.0, 1e-8).is_err());
        assert!(f_alpha(1.0, 0.0).is_err());
        assert!(objective(f64::NAN, 1e-8).is_err());
        assert!(maximize(-1.0).is_err());
    }
}
