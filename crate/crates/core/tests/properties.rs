use hardy_core::measure::measure_signs;
use hardy_core::mollify::{eval_b, CoeffTable};
use hardy_core::paircorr::f_alpha;
use hardy_core::zeros::{count_audit, find_zeros};
use hardy_core::{theta, z_eval, zeta_em, ScanConfig};
use num_complex::Complex64;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn z_is_even(t in 0.0f64..1e6) {
        let cfg = ScanConfig::default();
        prop_assert_eq!(z_eval(t, &cfg).unwrap(), z_eval(-t, &cfg).unwrap());
    }

    #[test]
    fn z_modulus_is_zeta_modulus(t in 10.0f64..3000.0) {
        let cfg = ScanConfig::cross_check();
        let z = z_eval(t, &cfg).unwrap();
        let m = zeta_em(0.5, t).unwrap().norm();
        prop_assert!((z.abs() - m).abs() <= 1e-8, "t = {}: {} vs {}", t, z, m);
    }

    #[test]
    fn theta_is_odd(t in 0.0f64..1e7) {
        prop_assert_eq!(theta(-t), -theta(t));
    }

    #[test]
    fn f_is_monotone_and_bounded(a in 0.0f64..6.0, d in 0.0f64..1.0) {
        let f1 = f_alpha(a, 1e-11).unwrap();
        let f2 = f_alpha(a + d, 1e-11).unwrap();
        prop_assert!(f2 >= f1 - 1e-11);
        prop_assert!(f1 >= 0.0 && f1 <= a + 1e-12);
    }

    #[test]
    fn mollifier_blocked_sum_matches(x in 2.0f64..400.0, t in -2000.0f64..2000.0, block in 1usize..40) {
        let table = CoeffTable::new(x).unwrap();
        let direct = eval_b(t, &table).unwrap();
        // reversed blocks, phases taken in plain binary64
        let n = table.len();
        let mut total = Complex64::new(0.0, 0.0);
        let starts: Vec<usize> = (1..=n).step_by(block).collect();
        for &s in starts.iter().rev() {
            let mut part = Complex64::new(0.0, 0.0);
            for nu in (s..(s + block).min(n + 1)).rev() {
                let nf = nu as f64;
                part += Complex64::from_polar(table.beta[nu] / nf.sqrt(), -t * nf.ln());
            }
            total += part;
        }
        prop_assert!((total - direct).norm() <= 1e-12, "{} vs {}", total, direct);
        prop_assert!(direct.norm() <= table.abs_bound() * (1.0 + 1e-14));
    }

    #[test]
    fn mollifier_conjugate_symmetry(x in 2.0f64..200.0, t in 0.0f64..1e5) {
        let table = CoeffTable::new(x).unwrap();
        let p = eval_b(t, &table).unwrap();
        let m = eval_b(-t, &table).unwrap();
        prop_assert!((p - m.conj()).norm() <= 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn measures_partition_the_interval(t in 20.0f64..5000.0, h in 1.0f64..60.0) {
        let r = measure_signs(t, h, &ScanConfig::default()).unwrap();
        prop_assert!((r.mu_plus + r.mu_minus - h).abs() < 1e-9);
        prop_assert!(r.mu_plus >= 0.0 && r.mu_minus >= 0.0);
        prop_assert!((0.0..=2.0).contains(&r.ratio_plus));
    }

    #[test]
    fn audit_is_additive(a in 15.0f64..3000.0, w1 in 1.0f64..80.0, w2 in 1.0f64..80.0) {
        let cfg = ScanConfig::default();
        let (b, c) = (a + w1, a + w1 + w2);
        let whole = count_audit(a, c, &cfg).unwrap();
        prop_assert_eq!(whole, count_audit(a, b, &cfg).unwrap() + count_audit(b, c, &cfg).unwrap());
        prop_assert_eq!(whole as usize, find_zeros(a, c, &cfg).unwrap().len());
    }

    #[test]
    fn derivative_signs_alternate(a in 15.0f64..20000.0, w in 5.0f64..50.0) {
        let z = find_zeros(a, a + w, &ScanConfig::default()).unwrap();
        for p in z.windows(2) {
            prop_assert!(p[0].gamma < p[1].gamma);
            prop_assert_ne!(p[0].derivative_sign, p[1].derivative_sign);
        }
    }
}
