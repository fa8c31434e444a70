//! Comparisons against values computed independently at high precision
//! (mpmath, 30 digits) or by a second numerical route.

#![allow(clippy::excessive_precision)]

use hardy_core::mollify::{
    alpha_by_convolution_root, alpha_coeffs, dirichlet_convolve, mobius_sieve,
};
use hardy_core::paircorr::{f_alpha, maximize, objective};
use hardy_core::zeros::{count_audit, scan_zeros, DerivativeSign};
use hardy_core::{z_eval, zeta_em, ScanConfig};

// mpmath.siegelz
const Z_VALUES: [(f64, f64); 4] = [
    (1000.0, 0.99779463752158661399),
    (5000.5, 0.58542531924643895021),
    (12345.678, -0.87856159934628687699),
    (99999.25, -2.626036874375786796),
];

// mpmath.zetazero(n).imag
const ZEROS: [(usize, f64); 3] = [
    (1000, 1419.4224809459956865),
    (2000, 2515.28648292471288),
    (4000, 4506.3114967288249724),
];

#[test]
fn z_matches_reference_values() {
    let fine = ScanConfig::cross_check();
    let coarse = ScanConfig::default();
    for &(t, want) in &Z_VALUES {
        let z = z_eval(t, &fine).unwrap();
        assert!((z - want).abs() < 1e-9, "t = {t}: {z} vs {want}");
        let z = z_eval(t, &coarse).unwrap();
        assert!((z - want).abs() < 1e-6, "t = {t}: {z} vs {want}");
    }
}

#[test]
fn euler_maclaurin_modulus_matches_reference() {
    for &(t, want) in &Z_VALUES[..2] {
        let m = zeta_em(0.5, t).unwrap().norm();
        assert!((m - want.abs()).abs() < 1e-10, "t = {t}");
    }
}

#[test]
fn indexed_zeros_match_reference() {
    let cfg = ScanConfig::default();
    let scan = scan_zeros(0.0, 4600.0, &cfg).unwrap();
    for &(n, gamma) in &ZEROS {
        let z = &scan.zeros[n - 1];
        assert!(
            (z.gamma - gamma).abs() < 1e-8,
            "zero {n}: {} vs {gamma}",
            z.gamma
        );
    }
    // Z rises through the first zero, so odd-numbered zeros carry '+'
    for (i, z) in scan.zeros.iter().enumerate() {
        let want = if i % 2 == 0 {
            DerivativeSign::Plus
        } else {
            DerivativeSign::Minus
        };
        assert_eq!(z.derivative_sign, want, "zero {}", i + 1);
    }
}

#[test]
fn zero_counts_match_reference() {
    let cfg = ScanConfig::default();
    // mpmath.nzeros
    assert_eq!(count_audit(0.0, 5000.0, &cfg).unwrap(), 4520);
    assert_eq!(count_audit(0.0, 10000.0, &cfg).unwrap(), 10142);
    assert_eq!(count_audit(10000.0, 20000.0, &cfg).unwrap(), 22491 - 10142);
}

fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    let n = n + n % 2;
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + i as f64 * h);
    }
    s * h / 3.0
}

fn density(u: f64) -> f64 {
    if u == 0.0 {
        0.0
    } else {
        let x = std::f64::consts::PI * u;
        1.0 - (x.sin() / x).powi(2)
    }
}

/// Sine integral by its power series; fine for |x| below about 15.
fn si(x: f64) -> f64 {
    let mut term = x;
    let mut sum = x;
    let mut k = 0;
    while term.abs() > 1e-18 * sum.abs() {
        k += 1;
        let kf = k as f64;
        term *= -x * x / ((2.0 * kf) * (2.0 * kf + 1.0));
        sum += term / (2.0 * kf + 1.0);
    }
    sum
}

/// `f(α) = α - Si(2πα)/π + sin²(πα)/(π²α)`, from integrating by parts.
fn f_closed(a: f64) -> f64 {
    let pi = std::f64::consts::PI;
    a - si(2.0 * pi * a) / pi + (pi * a).sin().powi(2) / (pi * pi * a)
}

#[test]
fn f_matches_simpson_and_closed_form() {
    for &a in &[0.1, 0.5, 0.952, 1.0, 1.7, 2.0] {
        let f = f_alpha(a, 1e-10).unwrap();
        let s = simpson(density, 0.0, a, 200_000);
        let c = f_closed(a);
        assert!((f - s).abs() < 1e-7, "alpha {a}: {f} vs simpson {s}");
        assert!((f - c).abs() < 1e-10, "alpha {a}: {f} vs closed {c}");
    }
}

#[test]
fn maximum_matches_nested_simpson() {
    let r = maximize(1e-10).unwrap();
    let g = simpson(|a| 0.5 - f_closed(a), 1e-12, r.a_star, 20_000);
    assert!((g - r.g_star).abs() < 1e-9, "{g} vs {}", r.g_star);
    let direct = objective(r.a_star, 1e-13).unwrap();
    assert!((direct - r.g_star).abs() < 1e-11);
}

#[test]
fn alpha_squares_to_mobius() {
    let n = 10_000;
    let alpha = alpha_coeffs(n);
    let sq = dirichlet_convolve(&alpha, &alpha, n);
    let mu = mobius_sieve(n);
    for k in 1..=n {
        assert!((sq[k] - mu[k] as f64).abs() <= 1e-12, "n = {k}");
    }
    let root = alpha_by_convolution_root(n);
    for k in 1..=n {
        assert!((root[k] - alpha[k]).abs() <= 1e-12, "n = {k}");
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn alpha_is_multiplicative() {
    let alpha = alpha_coeffs(1_000_000);
    for m in 1..=1000 {
        for n in 1..=1000 {
            if gcd(m, n) == 1 {
                assert_eq!(alpha[m * n], alpha[m] * alpha[n], "{m} {n}");
            }
        }
    }
}

#[test]
fn alpha_exact_rationals() {
    let a = alpha_coeffs(64);
    // (1-x)^{1/2} = 1 - x/2 - x²/8 - x³/16 - 5x⁴/128 - 7x⁵/256
    let pk = [1.0, -0.5, -0.125, -0.0625, -5.0 / 128.0, -7.0 / 256.0];
    for (k, &v) in pk.iter().enumerate() {
        assert_eq!(a[1 << k], v);
    }
    assert_eq!(a[12], 1.0 / 16.0);
    assert_eq!(a[30], -0.125);
    assert_eq!(a[36], 1.0 / 64.0);
}
