use hardy_web::{measure_ratio_native, pair_curves_native};

#[test]
fn pair_curves_header_and_endpoints() {
    let v = pair_curves_native(2.0, 21).unwrap();
    assert_eq!(v.len(), 2 + 42);
    let (a_star, g_star) = (v[0], v[1]);
    assert!((a_star - 0.952).abs() < 1e-3);
    assert!((0.32909..0.3292).contains(&g_star));
    assert_eq!(v[2], 0.0);
    assert_eq!(v[3], 0.0);
    assert_eq!(v[42], 2.0);
    let f: Vec<f64> = v[2..].chunks(2).map(|p| p[1]).collect();
    assert!(f.windows(2).all(|w| w[1] >= w[0]));
}

#[test]
fn measure_ratio_at_one_hundred() {
    let v = measure_ratio_native(100.0, 100.0).unwrap();
    assert!((v[2] - 0.943850).abs() < 1e-5);
    assert!((v[0] + v[1] - 100.0).abs() < 1e-9);
    assert_eq!(v[3], 50.0);
}
