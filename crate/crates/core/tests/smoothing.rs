mod common;

use std::f64::consts::PI;

use proptest::prelude::*;
use satotate::sato_tate::{st_measure, Interval};
use satotate::smoothing::{build_majorants, coefficient_envelope, eval_chebyshev_u_series, SmoothingKernel};

#[test]
fn irwin_hall_oracle_sanity() {
    assert!((common::irwin_hall_cdf(1, 0.3) - 0.3).abs() < 1e-15);
    assert!((common::irwin_hall_cdf(2, 1.5) - 0.875).abs() < 1e-15);
    assert!((common::irwin_hall_cdf(3, 1.5) - 0.5).abs() < 1e-15);
    for r in [4, 13, 20] {
        assert!((common::irwin_hall_cdf(r, r as f64 / 2.0) - 0.5).abs() < 1e-12);
        let mut prev = 0.0;
        for i in 0..=200 {
            let v = common::irwin_hall_cdf(r, r as f64 * i as f64 / 200.0);
            assert!(v >= prev - 1e-15);
            prev = v;
        }
    }
}

#[test]
fn series_matches_physical_kernel() {
    for (a, b, delta, r) in [(0.1, 0.4, 0.05, 4), (0.2, 0.3, 0.02, 13), (-0.1, 0.35, 0.01, 20)] {
        let k = SmoothingKernel::build(a, b, delta, r).unwrap();
        for i in 0..400 {
            let y = i as f64 / 400.0;
            let phys = common::smoothed_indicator(a, b, delta, r, y);
            assert!((k.eval(y) - phys).abs() <= 2.0 * k.tail_bound() + 1e-12, "y={y}");
        }
    }
}

#[test]
fn fourier_coefficients_by_trapezoid() {
    // Trapezoid sums with more nodes than the degree are exact for trig polynomials.
    let k = SmoothingKernel::build(0.15, 0.45, 0.05, 6).unwrap();
    let nodes = 4 * k.len() + 8;
    for m in [1usize, 2, 5, 17] {
        let (mut c, mut s) = (0.0, 0.0);
        for j in 0..nodes {
            let y = j as f64 / nodes as f64;
            let g = k.eval(y);
            c += 2.0 * g * (2.0 * PI * m as f64 * y).cos() / nodes as f64;
            s += 2.0 * g * (2.0 * PI * m as f64 * y).sin() / nodes as f64;
        }
        assert!((c - k.cos_coeff(m)).abs() < 1e-12);
        assert!((s - k.sin_coeff(m)).abs() < 1e-12);
    }
}

#[test]
fn kernel_csv_lists_every_coefficient() {
    let i = Interval::new(1.0472, 2.0944).unwrap();
    let pair = build_majorants(&i, 0.01, 20).unwrap();
    let csv = pair.plus.kernel().to_csv();
    assert_eq!(csv.lines().count(), pair.plus.kernel().len() + 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sandwich_and_envelope(alpha in 0.0f64..1.4, width in 0.3f64..1.7, delta in 0.004f64..0.04, r in 4u32..16) {
        let beta = (alpha + width).min(PI);
        let i = Interval::new(alpha, beta).unwrap();
        prop_assume!(i.width() > 2.0 * PI * delta);
        let pair = build_majorants(&i, delta, r).unwrap();
        prop_assert!(pair.plus.kernel().envelope_violation().is_none());
        prop_assert!(pair.minus.kernel().envelope_violation().is_none());
        let mu = st_measure(&i);
        prop_assert!(pair.cheb_minus[0] <= mu + 1e-12 && mu <= pair.cheb_plus[0] + 1e-12);
        for j in 0..=300 {
            let theta = PI * j as f64 / 300.0;
            let chi = if i.contains(theta) { 1.0 } else { 0.0 };
            let via_u = eval_chebyshev_u_series(&pair.cheb_plus, theta.cos());
            prop_assert!(via_u >= chi - pair.plus.tail_bound() - 1e-9);
            let via_u = eval_chebyshev_u_series(&pair.cheb_minus, theta.cos());
            prop_assert!(via_u <= chi + pair.minus.tail_bound() + 1e-9);
        }
    }

    #[test]
    fn envelope_is_monotone_in_m(w in 0.01f64..0.9, delta in 0.001f64..0.3, r in 1u32..30, m in 1usize..10_000) {
        prop_assert!(coefficient_envelope(w, delta, r, m + 1) <= coefficient_envelope(w, delta, r, m));
    }
}
