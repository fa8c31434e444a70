use std::sync::OnceLock;

use crate::dd::Dd;

const SIZE: usize = 1 << 16;

struct Table {
    ln: Vec<Dd>,
    inv_sqrt: Vec<f64>,
}

fn table() -> &'static Table {
    static TABLE: OnceLock<Table> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut ln = Vec::with_capacity(SIZE);
        let mut inv_sqrt = Vec::with_capacity(SIZE);
        ln.push(Dd::ZERO);
        inv_sqrt.push(f64::INFINITY);
        for n in 1..SIZE {
            ln.push(Dd::ln(n as f64));
            inv_sqrt.push(1.0 / (n as f64).sqrt());
        }
        Table { ln, inv_sqrt }
    })
}

#[inline]
pub(crate) fn ln_dd(n: usize) -> Dd {
    if n < SIZE {
        table().ln[n]
    } else {
        Dd::ln(n as f64)
    }
}

#[inline]
pub(crate) fn inv_sqrt(n: usize) -> f64 {
    if n < SIZE {
        table().inv_sqrt[n]
    } else {
        1.0 / (n as f64).sqrt()
    }
}

/// `(θ - t ln n) mod 2π`, or `-t ln n mod 2π` when `theta` is zero.
#[inline]
pub(crate) fn reduced_phase(theta: Dd, t: f64, n: usize, use_dd: bool) -> f64 {
    if use_dd {
        (theta - ln_dd(n).mul_f64(t)).rem_two_pi()
    } else {
        theta.hi - t * ln_dd(n).hi
    }
}
