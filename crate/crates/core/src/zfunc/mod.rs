//! Hardy's Z-function and the pieces it is built from: the Riemann–Siegel
//! phase θ(t), the unimodular factor χ(½+it), an Euler–Maclaurin ζ oracle and
//! the Riemann–Siegel evaluator.
//!
//! Throughout, `χ(½+it) = e^{-2iθ(t)}` and `Z(t) = e^{iθ(t)} ζ(½+it)`, so
//! `Z` is real, even, and `|Z(t)| = |ζ(½+it)|`.

mod lntable;
mod riemann_siegel;
#[rustfmt::skip]
#[allow(clippy::excessive_precision)]
mod tables;
mod zeta;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dd::{Dd, LN_2PI, PI_OVER_8};
use crate::error::{Error, Result};
use crate::gamma::ln_gamma;

pub use riemann_siegel::{riemann_siegel_z, MAX_CORRECTION_ORDER};
pub use zeta::{zeta_em, zeta_em_with_bound, zeta_truncated, EM_MAX_T, POLE_GUARD};

/// Largest |t| at which the double-double phase path is trusted.
pub const MAX_T: f64 = 2.5e10;

/// Above this |t| the phases `θ(t) - t ln n` are reduced in double-double.
pub const PHASE_DD_MIN_T: f64 = 1.0e4;

/// Below this |t| θ comes from the complex log-gamma, above from the
/// asymptotic series.
const THETA_SERIES_MIN_T: f64 = 10.0;

/// Precision knobs shared by the evaluator, the zero scanner and the
/// quadrature layers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScanConfig {
    /// Highest Riemann–Siegel correction term used: `C_0 ..= C_order`.
    pub rs_correction_order: u32,
    /// Below this t, Z is evaluated through the Euler–Maclaurin oracle.
    pub em_switch_t: f64,
    /// Final bracket width for zero localization.
    pub bisection_tol: f64,
    /// Grid points per mean zero gap `2π / ln(t/2π)`.
    pub samples_per_mean_gap: f64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            rs_correction_order: 2,
            em_switch_t: 500.0,
            bisection_tol: 1e-9,
            samples_per_mean_gap: 4.0,
        }
    }
}

impl ScanConfig {
    /// Settings under which the Riemann–Siegel route agrees with the
    /// Euler–Maclaurin oracle to 1e-8 (all available correction terms).
    pub fn cross_check() -> Self {
        ScanConfig {
            rs_correction_order: MAX_CORRECTION_ORDER,
            ..ScanConfig::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(1..=MAX_CORRECTION_ORDER).contains(&self.rs_correction_order) {
            return Err(Error::invalid(
                "rs_correction_order",
                format!("must be in 1..={MAX_CORRECTION_ORDER}"),
            ));
        }
        if !(self.em_switch_t > 0.0 && self.em_switch_t <= EM_MAX_T) {
            return Err(Error::invalid(
                "em_switch_t",
                format!("must be in (0, {EM_MAX_T:e}]"),
            ));
        }
        if !(self.bisection_tol > 0.0 && self.bisection_tol.is_finite()) {
            return Err(Error::invalid("bisection_tol", "must be positive"));
        }
        if !(self.samples_per_mean_gap >= 2.0 && self.samples_per_mean_gap.is_finite()) {
            return Err(Error::invalid("samples_per_mean_gap", "must be at least 2"));
        }
        Ok(())
    }
}

/// A sample of Z together with the phase used to produce it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalPoint {
    pub t: f64,
    pub z: f64,
    /// θ(t), continuous (not reduced modulo 2π).
    pub phase: f64,
}

impl CriticalPoint {
    pub fn at(t: f64, cfg: &ScanConfig) -> Result<Self> {
        Ok(CriticalPoint {
            t,
            z: z_eval(t, cfg)?,
            phase: theta(t),
        })
    }
}

/// θ(t) in double-double. Odd in t.
pub(crate) fn theta_dd(t: f64) -> Dd {
    let a = t.abs();
    let v = if a < THETA_SERIES_MIN_T {
        Dd::from_f64(theta_log_gamma(a))
    } else {
        let half = 0.5 * a;
        let log_ratio = Dd::ln(a) - LN_2PI;
        let inv = 1.0 / a;
        let inv2 = inv * inv;
        let tail = inv
            * (1.0 / 48.0
                + inv2
                    * (7.0 / 5760.0
                        + inv2
                            * (31.0 / 80640.0
                                + inv2 * (127.0 / 430080.0 + inv2 * (511.0 / 1216512.0)))));
        (log_ratio.mul_f64(half) - Dd::from_f64(half) - PI_OVER_8).add_f64(tail)
    };
    if t < 0.0 {
        -v
    } else {
        v
    }
}

fn theta_log_gamma(t: f64) -> f64 {
    ln_gamma(Complex64::new(0.25, 0.5 * t)).im - 0.5 * t * std::f64::consts::PI.ln()
}

/// The Riemann–Siegel phase θ(t), with `χ(½+it) = e^{-2iθ(t)}`.
pub fn theta(t: f64) -> f64 {
    theta_dd(t).to_f64()
}

/// `e^{iθ(t)}` with the angle reduced in double-double.
pub(crate) fn rotation(t: f64) -> Complex64 {
    let ang = theta_dd(t).rem_two_pi();
    Complex64::new(ang.cos(), ang.sin())
}

/// χ(½+it), unimodular on the critical line.
pub fn chi_half(t: f64) -> Complex64 {
    rotation(t).conj().powu(2)
}

/// Hardy's Z(t).
///
/// Riemann–Siegel for `|t| >= cfg.em_switch_t`, otherwise the
/// Euler–Maclaurin value rotated by `e^{iθ}`. Always evaluated at `|t|`.
pub fn z_eval(t: f64, cfg: &ScanConfig) -> Result<f64> {
    let a = t.abs();
    if !a.is_finite() || a > MAX_T {
        return Err(Error::PrecisionExhausted { t, limit: MAX_T });
    }
    if a >= cfg.em_switch_t && a >= 2.0 * std::f64::consts::PI {
        Ok(riemann_siegel_z(a, cfg.rs_correction_order))
    } else {
        let zeta = zeta_em(0.5, a)?;
        Ok((rotation(a) * zeta).re)
    }
}

/// `-t ln n` reduced mod 2π, in double-double above [`PHASE_DD_MIN_T`].
pub(crate) fn dirichlet_phase(t: f64, n: usize) -> f64 {
    lntable::reduced_phase(Dd::ZERO, t, n, t.abs() >= PHASE_DD_MIN_T)
}

pub(crate) use lntable::inv_sqrt;

/// Local mean spacing of zero ordinates near height t, `2π / ln(t/2π)`,
/// clamped to `2π` below `t = 2πe`.
pub fn mean_gap(t: f64) -> f64 {
    let l = (t.abs() / std::f64::consts::TAU).ln();
    std::f64::consts::TAU / l.max(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_vanishes_at_origin_and_is_odd() {
        assert_eq!(theta(0.0), 0.0);
        assert_eq!(theta(-100.0), -theta(100.0));
        assert_eq!(theta(-3.0), -theta(3.0));
    }

    #[test]
    fn theta_routes_agree_near_switch() {
        for &t in &[10.0, 12.0, 20.0, 35.0] {
            let series = theta_dd(t).to_f64();
            let exact = theta_log_gamma(t);
            assert!(
                (series - exact).abs() < 1e-12,
                "t = {t}: {series} vs {exact}"
            );
        }
    }

    // 50-digit reference values of θ(t) mod 2π.
    #[test]
    fn theta_large_t_reduced() {
        for (t, want) in [
            (1e8, 3.537916097478678),
            (1e7 + 0.5, 4.216337529272171),
            (12345.678, 3.184433799968268),
        ] {
            let mut got = theta_dd(t).rem_two_pi();
            if got < 0.0 {
                got += std::f64::consts::TAU;
            }
            assert!((got - want).abs() < 1e-9, "t = {t}: {got} vs {want}");
        }
    }

    #[test]
    fn chi_half_at_zero_is_one() {
        let c = chi_half(0.0);
        assert!((c - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn chi_half_is_unimodular() {
        for &t in &[10.0, 100.0, 1000.0, 1e8] {
            assert!((chi_half(t).norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn config_validation() {
        assert!(ScanConfig::default().validate().is_ok());
        let bad = ScanConfig {
            rs_correction_order: 0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let bad = ScanConfig {
            samples_per_mean_gap: 1.5,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let bad = ScanConfig {
            bisection_tol: 0.0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn z_is_even() {
        let cfg = ScanConfig::default();
        for &t in &[3.0, 250.0, 777.7, 2e5] {
            assert_eq!(z_eval(-t, &cfg).unwrap(), z_eval(t, &cfg).unwrap());
        }
    }

    #[test]
    fn z_brackets_first_zero() {
        let cfg = ScanConfig::default();
        let a = z_eval(14.0, &cfg).unwrap();
        let b = z_eval(14.2, &cfg).unwrap();
        assert!(a * b < 0.0);
    }

    // Z(1e8) to 50 digits: 3.64540786809367341475...
    #[test]
    fn z_at_hundred_million() {
        let cfg = ScanConfig::cross_check();
        let z = z_eval(1e8, &cfg).unwrap();
        assert!((z - 3.6454078680936734).abs() < 1e-9, "{z}");
    }

    #[test]
    fn rejects_beyond_phase_limit() {
        let cfg = ScanConfig::default();
        assert!(matches!(
            z_eval(1e11, &cfg),
            Err(Error::PrecisionExhausted { .. })
        ));
    }
}
