mod common;

use std::f64::consts::PI;

use proptest::prelude::*;
use satotate::coefficients::{CoefficientTable, Curve, GenerateOptions, NewformSpec};
use satotate::sato_tate::{
    chebyshev_u, count_in_interval, discrepancy, st_cdf, st_measure, AngleTable, Interval,
};

fn angles(spec: &NewformSpec, x: u64) -> AngleTable {
    let t = CoefficientTable::generate(spec, x, GenerateOptions::default()).unwrap();
    AngleTable::from_coefficients(&t).unwrap()
}

#[test]
fn measure_matches_quadrature() {
    let density = |t: f64| 2.0 / PI * t.sin().powi(2);
    for (a, b) in [(0.0, PI / 2.0), (PI / 4.0, 3.0 * PI / 4.0), (0.3, 2.9), (1.0, 1.001)] {
        let i = Interval::new(a, b).unwrap();
        let quad = common::adaptive_simpson(&density, a, b, 1e-13);
        assert!((st_measure(&i) - quad).abs() < 1e-11);
    }
    assert!((st_measure(&Interval::FULL) - 1.0).abs() < 1e-15);
}

#[test]
fn full_interval_counts_everything() {
    let table = angles(&NewformSpec::elliptic_curve("11a1", Curve::new(0, -1, 1, -10, -20), 11).unwrap(), 2000);
    for x in [10.0, 100.0, 2000.0] {
        assert_eq!(
            count_in_interval(&table, &Interval::FULL, x).unwrap(),
            table.pi_unramified(x).unwrap()
        );
    }
}

#[test]
fn csv_round_trip_reproduces_statistics() {
    let spec = NewformSpec::delta();
    let table = angles(&spec, 5000);
    let back = AngleTable::from_csv(&table.to_csv(), spec, std::path::Path::new("a.csv")).unwrap();
    assert_eq!(back.records(), table.records());
    assert_eq!(discrepancy(&back, 5000.0).unwrap(), discrepancy(&table, 5000.0).unwrap());
}

#[test]
fn discrepancy_shrinks() {
    let table = angles(&NewformSpec::delta(), 200_000);
    let d_small = discrepancy(&table, 1000.0).unwrap();
    let d_large = discrepancy(&table, 200_000.0).unwrap();
    assert!(d_large < d_small);
    assert!(d_large < 0.01);
}

proptest! {
    #[test]
    fn measure_is_additive(a in 0.0f64..1.0, b in 1.0f64..2.0, c in 2.0f64..3.1) {
        let whole = st_measure(&Interval::new(a, c).unwrap());
        let parts = st_measure(&Interval::new(a, b).unwrap()) + st_measure(&Interval::new(b, c).unwrap());
        prop_assert!((whole - parts).abs() < 1e-14);
        prop_assert!(st_cdf(a) <= st_cdf(b) && st_cdf(b) <= st_cdf(c));
    }

    #[test]
    fn chebyshev_u_is_sine_ratio(n in 0usize..60, theta in 0.01f64..3.13) {
        let closed = ((n as f64 + 1.0) * theta).sin() / theta.sin();
        prop_assert!((chebyshev_u(n, theta.cos()) - closed).abs() < 1e-9 * (n as f64 + 1.0));
        prop_assert!(chebyshev_u(n, theta.cos()).abs() <= n as f64 + 1.0 + 1e-9);
    }
}
