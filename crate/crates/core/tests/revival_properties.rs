use std::f64::consts::PI;

use proptest::prelude::*;
use revival_core::evolution::evolve_coefficients;
use revival_core::revival::{
    bo_fundamental_decomposition, bo_rational_profile, ilw_rational_profile, kdv_rational_profile,
    revival_profile, smith_error_bound, smith_rational_profile,
};
use revival_core::{DispersionSpec, FourierInitialData, RationalTime};

fn away_from_nodes(x: f64, q: u64, buffer: f64) -> bool {
    let spacing = PI / q as f64;
    let d = (x / spacing - (x / spacing).round()).abs() * spacing;
    d >= buffer
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn bo_closed_form_matches_series(p in 0u64..12, q in 1u64..7, x in -PI..PI) {
        let time = RationalTime::new(p, q).unwrap();
        prop_assume!(away_from_nodes(x, time.q(), 0.1 * PI / time.q() as f64));
        let closed = bo_rational_profile(time, x).unwrap();
        let state = evolve_coefficients(
            &DispersionSpec::BenjaminOno,
            &FourierInitialData::riemann_step(),
            time.into(),
            20_000,
        );
        prop_assert!((closed - state.evaluate_real(x)).abs() < 2e-3);
    }

    #[test]
    fn integer_symbols_are_periodic_in_time(p in 0u64..10, q in 1u64..9, x in -PI..PI) {
        let a = RationalTime::new(p, q).unwrap();
        prop_assume!(away_from_nodes(x, a.q(), 1e-3));
        let b = RationalTime::new(p + 2 * q, q).unwrap();
        let bo = (bo_rational_profile(a, x).unwrap(), bo_rational_profile(b, x).unwrap());
        let kdv = (kdv_rational_profile(a, x).unwrap(), kdv_rational_profile(b, x).unwrap());
        prop_assert!((bo.0 - bo.1).abs() < 1e-12);
        prop_assert!((kdv.0 - kdv.1).abs() < 1e-12);
    }

    #[test]
    fn bo_fundamental_solution_has_unit_mass(p in 0u64..20, q in 1u64..12) {
        let f = bo_fundamental_decomposition(RationalTime::new(p, q).unwrap()).unwrap();
        prop_assert!((f.total_mass() - 1.0).abs() < 1e-12);
        prop_assert!(f.constant.abs() < 1e-12);
        prop_assert!(f.delta_terms.iter().all(|d| d.location >= -PI && d.location < PI));
    }

    #[test]
    fn smith_bound_decreases_with_depth(p in 1u64..6, q in 1u64..8, delta in 0.5f64..50.0) {
        prop_assert!(smith_error_bound(p, q, 2.0 * delta) < smith_error_bound(p, q, delta));
    }
}

#[test]
fn deep_ilw_profile_tends_to_bo() {
    let time = RationalTime::new(1, 5).unwrap();
    let a = ilw_rational_profile(time, 1e9, 0.4).unwrap();
    let b = bo_rational_profile(time, 0.4).unwrap();
    assert!((a - b).abs() <= 1e-6);
}

#[test]
fn deep_smith_profile_tends_to_bo() {
    let time = RationalTime::new(2, 7).unwrap();
    for x in [-2.0, -0.3, 1.1, 2.9] {
        let (s, bound) = smith_rational_profile(time, 1e6, x).unwrap();
        let b = bo_rational_profile(time, x).unwrap();
        assert!((s - b).abs() < 1e-5, "x={x}");
        assert!(bound < 1e-18);
    }
}

#[test]
fn profiles_at_time_zero_are_the_step() {
    let zero = RationalTime::new(0, 1).unwrap();
    for spec in [
        DispersionSpec::BenjaminOno,
        DispersionSpec::Kdv,
        DispersionSpec::ilw(2.0).unwrap(),
        DispersionSpec::smith(2.0).unwrap(),
    ] {
        let profile = revival_profile(spec, zero).unwrap();
        for x in [-2.5, -0.7, 0.7, 2.5] {
            let expected = if x > 0.0 { 1.0 } else { 0.0 };
            assert!(
                (profile.evaluate(x).unwrap() - expected).abs() < 1e-12,
                "{spec} x={x}"
            );
        }
    }
}
