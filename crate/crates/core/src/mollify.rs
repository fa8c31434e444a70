//! The mollifier system: Dirichlet coefficients α of `1/√ζ(s)`, the
//! tapered coefficients `β_ν = α_ν (1 - ln ν / ln X)`, their Dirichlet square
//! `b = β⋆β`, and the polynomial `B_X(½+it) = Σ_{ν≤X} β_ν ν^{-½-it}`.
//!
//! Sequences are 1-indexed: slot 0 holds 0.0 and is never read.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::zfunc::{dirichlet_phase, inv_sqrt, MAX_T};

/// Largest mollifier length accepted by [`CoeffTable`]; `b` has `⌊X⌋²`
/// entries.
pub const MAX_LENGTH: f64 = 4096.0;

/// Möbius function μ(0..=n) by a linear sieve.
pub fn mobius_sieve(n: usize) -> Vec<i8> {
    let mut mu = vec![0i8; n + 1];
    if n >= 1 {
        mu[1] = 1;
    }
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i);
            mu[i] = -1;
        }
        for &p in &primes {
            let m = i * p;
            if m > n {
                break;
            }
            composite[m] = true;
            if i % p == 0 {
                mu[m] = 0;
                break;
            }
            mu[m] = -mu[i];
        }
    }
    mu
}

/// Divisor count d(0..=n).
pub fn divisor_count_sieve(n: usize) -> Vec<u32> {
    let mut d = vec![0u32; n + 1];
    for k in 1..=n {
        for m in (k..=n).step_by(k) {
            d[m] += 1;
        }
    }
    d
}

fn smallest_prime_factors(n: usize) -> Vec<usize> {
    let mut spf = vec![0usize; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            for m in (i..=n).step_by(i) {
                if spf[m] == 0 {
                    spf[m] = i;
                }
            }
        }
    }
    spf
}

/// α_1..α_N with `1/√ζ(s) = Σ α_ν ν^{-s}`.
///
/// α is multiplicative and `Σ_k α_{p^k} x^k = (1 - x)^{1/2}`, so
/// `α_{p^k} = (-1)^k C(½, k)` independently of p.
pub fn alpha_coeffs(n: usize) -> Vec<f64> {
    let mut alpha = vec![0.0; n + 1];
    if n == 0 {
        return alpha;
    }
    // prime-power values, indexed by exponent
    let max_k = usize::BITS as usize;
    let mut pk = vec![1.0f64; max_k];
    let mut c = 1.0;
    for k in 1..max_k {
        c *= (0.5 - (k - 1) as f64) / k as f64;
        pk[k] = if k % 2 == 0 { c } else { -c };
    }
    let spf = smallest_prime_factors(n);
    alpha[1] = 1.0;
    for m in 2..=n {
        let p = spf[m];
        let (mut rest, mut k) = (m, 0);
        while rest % p == 0 {
            rest /= p;
            k += 1;
        }
        alpha[m] = pk[k] * alpha[rest];
    }
    alpha
}

/// Solve `α⋆α = μ` term by term: `2α_n = μ(n) - Σ_{de=n, 1<d,e<n} α_d α_e`.
/// Independent of the multiplicative construction; used as its check.
pub fn alpha_by_convolution_root(n: usize) -> Vec<f64> {
    let mu = mobius_sieve(n);
    let mut alpha = vec![0.0; n + 1];
    if n == 0 {
        return alpha;
    }
    alpha[1] = 1.0;
    for m in 2..=n {
        let mut s = 0.0;
        let mut d = 2;
        while d * d <= m {
            if m % d == 0 {
                let e = m / d;
                s += if d == e {
                    alpha[d] * alpha[e]
                } else {
                    2.0 * alpha[d] * alpha[e]
                };
            }
            d += 1;
        }
        alpha[m] = 0.5 * (mu[m] as f64 - s);
    }
    alpha
}

/// Dirichlet convolution `(a⋆b)(n)` for `n ≤ limit`, skipping zero terms of
/// `a`. Inputs are 1-indexed; entries beyond their length count as zero.
pub fn dirichlet_convolve(a: &[f64], b: &[f64], limit: usize) -> Vec<f64> {
    let mut out = vec![0.0; limit + 1];
    for (d, &ad) in a.iter().enumerate().skip(1).take(limit) {
        if ad == 0.0 {
            continue;
        }
        for (e, &be) in b.iter().enumerate().skip(1) {
            let m = d * e;
            if m > limit {
                break;
            }
            out[m] += ad * be;
        }
    }
    out
}

/// `β_ν = α_ν (1 - ln ν / ln X)` for `1 ≤ ν ≤ ⌊X⌋`.
pub fn beta_coeffs(x: f64) -> Result<Vec<f64>> {
    if !(x > 1.0) || !x.is_finite() {
        return Err(Error::DegenerateLength(x));
    }
    let n = x.floor() as usize;
    let ln_x = x.ln();
    let alpha = alpha_coeffs(n);
    let mut beta = vec![0.0; n + 1];
    for nu in 1..=n {
        let taper = (1.0 - (nu as f64).ln() / ln_x).max(0.0);
        beta[nu] = alpha[nu] * taper;
    }
    Ok(beta)
}

/// `b(m) = Σ_{d|m} β_d β_{m/d}` for `1 ≤ m ≤ ⌊X⌋²`.
pub fn b_coeffs(beta: &[f64]) -> Vec<f64> {
    let n = beta.len().saturating_sub(1);
    dirichlet_convolve(beta, beta, n * n)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoeffTable {
    #[serde(rename = "X")]
    pub x: f64,
    /// Exponent with `X = T^θ`, when the table was built for a height.
    pub theta: Option<f64>,
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
    pub b: Vec<f64>,
}

impl CoeffTable {
    pub fn new(x: f64) -> Result<Self> {
        if x > MAX_LENGTH {
            return Err(Error::invalid("X", "at most 4096"));
        }
        let beta = beta_coeffs(x)?;
        let alpha = alpha_coeffs(beta.len() - 1);
        let b = b_coeffs(&beta);
        Ok(CoeffTable {
            x,
            theta: None,
            alpha,
            beta,
            b,
        })
    }

    /// The table for `X = T^θ`.
    pub fn for_height(t: f64, theta: f64) -> Result<Self> {
        if !(t > 1.0 && t.is_finite()) {
            return Err(Error::invalid("T", "must exceed 1"));
        }
        if !(theta > 0.0 && theta.is_finite()) {
            return Err(Error::invalid("theta", "must be positive"));
        }
        let mut table = CoeffTable::new(t.powf(theta))?;
        table.theta = Some(theta);
        Ok(table)
    }

    /// `⌊X⌋`.
    pub fn len(&self) -> usize {
        self.beta.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `Σ_{ν≤X} |β_ν| ν^{-½}`, the trivial bound on `|B_X(½+it)|`.
    pub fn abs_bound(&self) -> f64 {
        (1..=self.len())
            .map(|nu| self.beta[nu].abs() * inv_sqrt(nu))
            .sum()
    }
}

/// `B_X(½+it)`.
pub fn eval_b(t: f64, table: &CoeffTable) -> Result<Complex64> {
    if !t.is_finite() || t.abs() > MAX_T {
        return Err(Error::PrecisionExhausted { t, limit: MAX_T });
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for nu in 1..=table.len() {
        let c = table.beta[nu];
        if c == 0.0 {
            continue;
        }
        let ph = dirichlet_phase(t, nu);
        acc += Complex64::from_polar(c * inv_sqrt(nu), ph);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mobius_small_values() {
        let mu = mobius_sieve(12);
        assert_eq!(&mu[1..], &[1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]);
    }

    #[test]
    fn divisor_counts() {
        let d = divisor_count_sieve(12);
        assert_eq!(&d[1..], &[1, 2, 2, 3, 2, 4, 2, 4, 3, 4, 2, 6]);
    }

    #[test]
    fn alpha_known_values() {
        let a = alpha_coeffs(16);
        assert_eq!(a[1], 1.0);
        assert_eq!(a[2], -0.5);
        assert_eq!(a[4], -0.125);
        assert_eq!(a[6], 0.25);
        assert_eq!(a[8], -0.0625);
        assert_eq!(a[16], -5.0 / 128.0);
    }

    #[test]
    fn both_alpha_routes_agree() {
        let a = alpha_coeffs(2000);
        let b = alpha_by_convolution_root(2000);
        for n in 1..=2000 {
            assert!((a[n] - b[n]).abs() < 1e-14, "n = {n}");
        }
    }

    #[test]
    fn beta_examples() {
        let b = beta_coeffs(4.0).unwrap();
        assert_eq!(b[1], 1.0);
        assert!((b[2] + 0.25).abs() < 1e-15);
        assert_eq!(b[4], 0.0);
        assert!(matches!(beta_coeffs(1.0), Err(Error::DegenerateLength(_))));
        assert!(beta_coeffs(0.5).is_err());
    }

    #[test]
    fn b_small_entries() {
        let t = CoeffTable::new(10.0).unwrap();
        assert_eq!(t.b.len(), 101);
        assert_eq!(t.b[1], 1.0);
        assert!((t.b[2] - 2.0 * t.beta[1] * t.beta[2]).abs() < 1e-15);
        // 97 is prime and exceeds X
        assert_eq!(t.b[97], 0.0);
    }

    #[test]
    fn short_polynomial_is_one() {
        let t = CoeffTable::new(1.5).unwrap();
        for &s in &[0.0, 3.0, -70.0, 1e6] {
            assert_eq!(eval_b(s, &t).unwrap(), Complex64::new(1.0, 0.0));
        }
    }

    #[test]
    fn conjugate_symmetry_and_bound() {
        let t = CoeffTable::new(50.0).unwrap();
        for &s in &[0.0, 17.0, 1e4] {
            let p = eval_b(s, &t).unwrap();
            let m = eval_b(-s, &t).unwrap();
            assert!((p - m.conj()).norm() < 1e-13);
            assert!(p.norm() <= t.abs_bound());
        }
    }

    #[test]
    fn table_limits() {
        assert!(CoeffTable::new(5000.0).is_err());
        assert!(CoeffTable::for_height(1000.0, 0.0).is_err());
        let t = CoeffTable::for_height(1e4, 0.25).unwrap();
        assert_eq!(t.len(), 10);
        assert_eq!(t.theta, Some(0.25));
    }
}
