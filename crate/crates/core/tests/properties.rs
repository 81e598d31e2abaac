//! Property-based invariants of the special functions, quadrature, and the
//! Gaussian-state layer.

use proptest::prelude::*;

use gausteer::gaussian::{physicality_min_eigenvalue, steerability_a_to_b, TwoModeCovariance};
use gausteer::quad::{adaptive_quad, cumulative_quadratic, QuadratureConfig};
use gausteer::special::{erf, erfc, fresnel_cf};

/// Channel output of a two-mode squeezed vacuum: decay `e` in (0, 1], added
/// thermal noise `n >= 1`, optionally on both modes. Physical by
/// construction.
fn channel_output(r: f64, e: f64, n: f64, both: bool) -> TwoModeCovariance {
    let cosh2r = (2.0 * r).cosh();
    let sinh2r = (2.0 * r).sinh();
    let damped = e * cosh2r + (1.0 - e) * n;
    if both {
        TwoModeCovariance { a: damped, b: damped, c: e * sinh2r }
    } else {
        TwoModeCovariance { a: damped, b: cosh2r, c: e.sqrt() * sinh2r }
    }
}

proptest! {
    #[test]
    fn steerability_matches_full_matrix_determinants(
        r in 0.0f64..2.5,
        e in 1e-3f64..=1.0,
        n in 1.0f64..4.0,
        both in any::<bool>(),
    ) {
        let cm = channel_output(r, e, n, both);
        let det_sigma = cm.matrix().determinant();
        let det_a = cm.a * cm.a;
        let oracle = (0.5 * (det_a / det_sigma).ln()).max(0.0);
        let s = steerability_a_to_b(&cm).unwrap();
        prop_assert!((s - oracle).abs() <= 1e-10 * (1.0 + oracle), "{s} vs {oracle}");
    }

    #[test]
    fn channel_outputs_stay_physical(
        r in 0.0f64..2.5,
        e in 1e-3f64..=1.0,
        n in 1.0f64..4.0,
        both in any::<bool>(),
    ) {
        let cm = channel_output(r, e, n, both);
        let min_eig = physicality_min_eigenvalue(&cm);
        prop_assert!(min_eig >= -1e-9, "min eigenvalue {min_eig}");
    }

    #[test]
    fn added_thermal_noise_never_helps_steering(
        r in 0.1f64..2.5,
        e in 1e-3f64..0.999,
        n in 1.0f64..4.0,
    ) {
        let less_noise = steerability_a_to_b(&channel_output(r, e, n, true)).unwrap();
        let more_noise = steerability_a_to_b(&channel_output(r, e, n + 0.5, true)).unwrap();
        prop_assert!(more_noise <= less_noise + 1e-12);
    }

    #[test]
    fn erf_is_odd_and_bounded(x in -6.0f64..6.0) {
        prop_assert_eq!(erf(-x), -erf(x));
        prop_assert!(erf(x).abs() <= 1.0);
    }

    #[test]
    fn erf_is_nondecreasing(x in -6.0f64..6.0, h in 1e-6f64..1.0) {
        prop_assert!(erf(x + h) >= erf(x));
    }

    #[test]
    fn erfc_complements_erf(x in -6.0f64..6.0) {
        prop_assert!((erf(x) + erfc(x) - 1.0).abs() <= 1e-14);
    }

    #[test]
    fn fresnel_is_bounded_on_the_half_line(z in 0.0f64..100.0) {
        let v = fresnel_cf(z).unwrap();
        prop_assert!((0.0..=1.0).contains(&v), "Cf({z}) = {v}");
    }

    #[test]
    fn quadrature_is_exact_on_affine_integrands(
        a in -10.0f64..10.0,
        len in 1e-3f64..20.0,
        p in -5.0f64..5.0,
        q in -5.0f64..5.0,
    ) {
        let b = a + len;
        let cfg = QuadratureConfig::default();
        let got = adaptive_quad(|x| p + q * x, a, b, &cfg).unwrap();
        let exact = p * (b - a) + 0.5 * q * (b * b - a * a);
        prop_assert!((got - exact).abs() <= 1e-9 * (1.0 + exact.abs()), "{got} vs {exact}");
    }

    #[test]
    fn cumulative_quadrature_is_exact_on_quadratics(
        steps in proptest::collection::vec(1e-3f64..1.0, 3..40),
        c0 in -2.0f64..2.0,
        c1 in -2.0f64..2.0,
        c2 in -2.0f64..2.0,
    ) {
        let mut x = vec![0.0];
        for s in &steps {
            x.push(x.last().unwrap() + s);
        }
        let y: Vec<f64> = x.iter().map(|&t| c0 + c1 * t + c2 * t * t).collect();
        let cum = cumulative_quadratic(&x, &y);
        for (i, &t) in x.iter().enumerate() {
            let exact = c0 * t + 0.5 * c1 * t * t + c2 * t * t * t / 3.0;
            prop_assert!(
                (cum[i] - exact).abs() <= 1e-11 * (1.0 + exact.abs()),
                "index {i}: {} vs {exact}", cum[i]
            );
        }
    }
}
