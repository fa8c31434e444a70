//! wasm-bindgen entry points for the static page in `www/`.
//!
//! Each export returns a flat `Float64Array`; the layouts are documented on
//! the native functions below, which the exports wrap.

use hardy_core::measure::measure_signs;
use hardy_core::paircorr::{f_alpha, maximize};
use hardy_core::{z_eval, ScanConfig};
use wasm_bindgen::prelude::*;

/// Upper limit on samples per trace, to keep the page responsive.
pub const MAX_POINTS: usize = 20_000;
/// Upper limit on the window of a measure request.
pub const MAX_WINDOW: f64 = 2_000.0;
/// Largest height accepted by the page.
pub const MAX_HEIGHT: f64 = 1e8;

const F_TOL: f64 = 1e-10;

fn check_range(from: f64, to: f64) -> Result<(), String> {
    if !(from.is_finite() && to.is_finite() && to > from) {
        return Err("need finite from < to".into());
    }
    if from.abs().max(to.abs()) > MAX_HEIGHT {
        return Err(format!("|t| must stay below {MAX_HEIGHT:e}"));
    }
    Ok(())
}

/// `[t0, z0, t1, z1, ...]` on `n` equally spaced points of `[from, to]`.
pub fn z_trace_native(from: f64, to: f64, n: usize) -> Result<Vec<f64>, String> {
    check_range(from, to)?;
    if !(2..=MAX_POINTS).contains(&n) {
        return Err(format!("points must be in 2..={MAX_POINTS}"));
    }
    let cfg = ScanConfig::default();
    let step = (to - from) / (n - 1) as f64;
    let mut out = Vec::with_capacity(2 * n);
    for i in 0..n {
        let t = if i == n - 1 {
            to
        } else {
            from + i as f64 * step
        };
        out.push(t);
        out.push(z_eval(t, &cfg).map_err(|e| e.to_string())?);
    }
    Ok(out)
}

/// `[A*, G*, α0, f0, α1, f1, ...]` with α on `n` points of `[0, alpha_max]`.
pub fn pair_curves_native(alpha_max: f64, n: usize) -> Result<Vec<f64>, String> {
    if !(alpha_max > 0.0 && alpha_max <= 10.0) {
        return Err("alpha_max must be in (0, 10]".into());
    }
    if !(2..=2_000).contains(&n) {
        return Err("points must be in 2..=2000".into());
    }
    let best = maximize(1e-10).map_err(|e| e.to_string())?;
    let mut out = vec![best.a_star, best.g_star];
    for i in 0..n {
        let a = alpha_max * i as f64 / (n - 1) as f64;
        out.push(a);
        out.push(f_alpha(a, F_TOL).map_err(|e| e.to_string())?);
    }
    Ok(out)
}

/// `[mu_plus, mu_minus, ratio_plus, zero_count]` on `(t, t + h]`.
pub fn measure_ratio_native(t: f64, h: f64) -> Result<Vec<f64>, String> {
    check_range(t, t + h)?;
    if h > MAX_WINDOW {
        return Err(format!("H must be at most {MAX_WINDOW}"));
    }
    let r = measure_signs(t, h, &ScanConfig::default()).map_err(|e| e.to_string())?;
    Ok(vec![
        r.mu_plus,
        r.mu_minus,
        r.ratio_plus,
        r.zero_count as f64,
    ])
}

#[wasm_bindgen]
pub fn z_trace(from: f64, to: f64, n: usize) -> Result<Vec<f64>, JsError> {
    z_trace_native(from, to, n).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn pair_curves(alpha_max: f64, n: usize) -> Result<Vec<f64>, JsError> {
    pair_curves_native(alpha_max, n).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn measure_ratio(t: f64, h: f64) -> Result<Vec<f64>, JsError> {
    measure_ratio_native(t, h).map_err(|e| JsError::new(&e))
}
