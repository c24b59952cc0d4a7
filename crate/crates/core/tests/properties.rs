use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use pwedge::cauchy::{sum_split, Function1D, Route, SplitContours, Tolerance};
use pwedge::complexfn::{kappa, mylog, mysqrt};
use pwedge::kernel::{figure_params, k_minus_circ, k_plus_circ, kernel_k, make_params, SpectralPoint};
use pwedge::portraits::{hue_to_rgb, rgb_to_hue};

fn complex(range: f64) -> impl Strategy<Value = Complex64> {
    (-range..range, -range..range).prop_map(|(a, b)| Complex64::new(a, b))
}

fn strip(eps: f64) -> impl Strategy<Value = Complex64> {
    (-6.0..6.0, -0.95 * eps..0.95 * eps).prop_map(|(a, b)| Complex64::new(a, b))
}

proptest! {
    #[test]
    fn mysqrt_squares_back_and_stays_in_upper_half(z in complex(50.0)) {
        let w = mysqrt(z);
        prop_assert!((w * w - z).norm() <= 1e-13 * (1.0 + z.norm()));
        prop_assert!(w.im >= 0.0);
    }

    #[test]
    fn mylog_inverts_exp_with_its_argument_range(z in complex(50.0)) {
        prop_assume!(z.norm() > 1e-12);
        let l = mylog(z).unwrap();
        prop_assert!((l.exp() - z).norm() <= 1e-13 * z.norm());
        prop_assert!(l.im > -0.75 * PI && l.im <= 1.25 * PI + 1e-15);
    }

    #[test]
    fn kappa_is_even_and_squares_to_k2_minus_z2(
        k in (0.1f64..5.0, 0.01f64..2.0).prop_map(|(a, b)| Complex64::new(a, b)),
        z in complex(10.0),
    ) {
        let v = kappa(k, z);
        prop_assert!((v * v - (k * k - z * z)).norm() <= 1e-12 * (1.0 + (k * k - z * z).norm()));
        prop_assert_eq!(v, kappa(k, -z));
        prop_assert!(v.im >= 0.0);
    }

    #[test]
    fn kappa_at_origin_is_k(k in (0.1f64..5.0, 0.01f64..2.0).prop_map(|(a, b)| Complex64::new(a, b))) {
        prop_assert!((kappa(k, Complex64::new(0.0, 0.0)) - k).norm() < 1e-14 * k.norm());
    }

    #[test]
    fn circ_factors_multiply_to_kernel(a1 in strip(0.35), a2 in strip(0.35)) {
        let params = figure_params();
        let a = SpectralPoint::new(a1, a2);
        let k = kernel_k(&params, a).unwrap();
        let prod = k_plus_circ(&params, a).unwrap() * k_minus_circ(&params, a).unwrap();
        prop_assert!(((prod - k) / k).norm() < 1e-12);
        prop_assert_eq!(k, kernel_k(&params, SpectralPoint::new(a2, a1)).unwrap());
    }

    #[test]
    fn strip_half_width_is_positive_and_bounded(
        k1 in (0.2f64..4.0, 0.05f64..2.0).prop_map(|(a, b)| Complex64::new(a, b)),
        k2 in (0.2f64..4.0, 0.05f64..2.0).prop_map(|(a, b)| Complex64::new(a, b)),
        theta in (1.0001f64..1.4999).prop_map(|t| t * PI),
    ) {
        let p = make_params(k1, k2, theta).unwrap();
        prop_assert!(p.epsilon_strip > 0.0);
        prop_assert!(p.epsilon_strip <= 0.5 * p.delta + 1e-15);
        prop_assert!(p.a1.im < -p.epsilon_strip && p.a2.im < -p.epsilon_strip);
    }

    #[test]
    fn hue_encoding_round_trips(phase in -PI..PI) {
        let hue = (phase + PI) / (2.0 * PI);
        let back = rgb_to_hue(hue_to_rgb(hue, 1.0));
        let d = (back - hue).abs();
        prop_assert!(d.min(1.0 - d) <= 1.0 / 255.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sum_split_matches_partial_fractions(
        p in (-3.0f64..3.0, 0.6f64..3.0).prop_map(|(a, b)| Complex64::new(a, b)),
        q in (-3.0f64..3.0, -3.0f64..-0.6).prop_map(|(a, b)| Complex64::new(a, b)),
        z in (-4.0f64..4.0, -0.15f64..0.15).prop_map(|(a, b)| Complex64::new(a, b)),
    ) {
        // 1/((z-p)(z-q)) = [1/(p-q)] (1/(z-p) - 1/(z-q)); the pole p above the
        // strip belongs to the minus part, q below it to the plus part
        let f = Function1D::new(move |z| Ok(1.0 / ((z - p) * (z - q))), -0.5, 0.5);
        let contours = SplitContours::symmetric(0.25, 60.0);
        let s = sum_split(&f, &contours, z, Route::Direct, Tolerance::default()).unwrap();
        let minus = 1.0 / ((p - q) * (z - p));
        let plus = -1.0 / ((p - q) * (z - q));
        prop_assert!((s.plus.value - plus).norm() < 1e-8, "{} vs {}", s.plus.value, plus);
        prop_assert!((s.minus.value - minus).norm() < 1e-8, "{} vs {}", s.minus.value, minus);
    }
}
