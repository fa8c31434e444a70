//! Double-double ("double-word") arithmetic for phase reduction.
//!
//! Only what the phase computations need: error-free sums and products,
//! `exp` (for a Newton-corrected `ln`), and reduction modulo 2π. A value is
//! the unevaluated sum `hi + lo` with `|lo| <= ulp(hi) / 2`.

use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

pub const TWO_PI: Dd = Dd::new(std::f64::consts::TAU, 2.4492935982947064e-16);
pub const PI: Dd = Dd::new(std::f64::consts::PI, 1.2246467991473532e-16);
pub const PI_OVER_8: Dd = Dd::new(std::f64::consts::FRAC_PI_8, 1.5308084989341915e-17);
pub const LN_2: Dd = Dd::new(std::f64::consts::LN_2, 2.3190468138462996e-17);
pub const LN_2PI: Dd = Dd::new(1.8378770664093456, -7.756588316134483e-17);

#[inline]
fn quick_two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    Dd::new(s, b - (s - a))
}

#[inline]
pub fn two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    let bb = s - a;
    Dd::new(s, (a - (s - bb)) + (b - bb))
}

#[inline]
pub fn two_prod(a: f64, b: f64) -> Dd {
    let p = a * b;
    Dd::new(p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd::new(0.0, 0.0);
    pub const ONE: Dd = Dd::new(1.0, 0.0);

    pub const fn new(hi: f64, lo: f64) -> Self {
        Dd { hi, lo }
    }

    pub const fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn mul_f64(self, b: f64) -> Dd {
        let p = two_prod(self.hi, b);
        quick_two_sum(p.hi, p.lo + self.lo * b)
    }

    #[inline]
    pub fn add_f64(self, b: f64) -> Dd {
        let s = two_sum(self.hi, b);
        quick_two_sum(s.hi, s.lo + self.lo)
    }

    /// Power-of-two scaling is exact.
    #[inline]
    pub fn ldexp(self, e: i32) -> Dd {
        let f = 2f64.powi(e);
        Dd::new(self.hi * f, self.lo * f)
    }

    pub fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        quick_two_sum(q1, q2).add_f64(q3)
    }

    /// Nearest integer multiple of `2π` removed; result in `[-π, π]`.
    ///
    /// The quotient is rounded from the leading word, so the result is exact
    /// to double-double precision as long as `|self| / 2π < 2^52`.
    #[inline]
    pub fn rem_two_pi(self) -> f64 {
        let k = (self.hi / TWO_PI.hi).round();
        // k * 2π: product of the leading word is exact, the trailing word
        // contributes below 2^-100 relative.
        let kp = two_prod(k, TWO_PI.hi);
        let r = (self - kp) - Dd::from_f64(k * TWO_PI.lo);
        r.to_f64()
    }

    pub fn exp(self) -> Dd {
        if self.hi > 709.0 {
            return Dd::from_f64(f64::INFINITY);
        }
        if self.hi < -745.0 {
            return Dd::ZERO;
        }
        let k = (self.hi / LN_2.hi).round();
        let r = (self - LN_2.mul_f64(k)).ldexp(-10);
        // Taylor series of expm1 on |r| < 3.4e-4: ten terms reach 2^-106.
        let mut term = r;
        let mut sum = r;
        for i in 2..=10 {
            term = (term * r).div(Dd::from_f64(i as f64));
            sum = sum + term;
            if term.hi.abs() < 1e-34 {
                break;
            }
        }
        // (1 + s)^2 - 1 = 2s + s^2, ten squarings undo the 2^-10 scaling.
        for _ in 0..10 {
            sum = sum.ldexp(1) + sum * sum;
        }
        (sum + Dd::ONE).ldexp(k as i32)
    }

    /// Natural logarithm of a positive `f64`, correct to double-double
    /// precision via one Newton step on `exp`.
    pub fn ln(x: f64) -> Dd {
        debug_assert!(x > 0.0);
        if x == 1.0 {
            return Dd::ZERO;
        }
        let y = x.ln();
        let e = Dd::from_f64(y).exp();
        let d = Dd::from_f64(x) - e;
        Dd::from_f64(y).add_f64(d.to_f64() / e.hi)
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, b: Dd) -> Dd {
        let s = two_sum(self.hi, b.hi);
        let t = two_sum(self.lo, b.lo);
        let s = quick_two_sum(s.hi, s.lo + t.hi);
        quick_two_sum(s.hi, s.lo + t.lo)
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd::new(-self.hi, -self.lo)
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, b: Dd) -> Dd {
        let p = two_prod(self.hi, b.hi);
        quick_two_sum(p.hi, p.lo + (self.hi * b.lo + self.lo * b.hi))
    }
}

/// Kahan–Babuška–Neumaier running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for NeumaierSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = NeumaierSum::new();
        for x in iter {
            s.add(x);
        }
        s
    }
}
