use std::f64::consts::PI;

use proptest::prelude::*;
use ramanujan_core::analysis::{
    comparison, delta_estimate, f10_eval, f9_eval, h_eval, Comparison, DEFAULT_ROOT_TOL,
};
use ramanujan_core::bounds::all_bounds;
use ramanujan_core::polygamma::b_fn;
use ramanujan_core::ramanujan::{f_value, r_eval};
use ramanujan_core::{constants, Error, EvalMethod};

fn delta() -> f64 {
    delta_estimate(DEFAULT_ROOT_TOL).unwrap().delta
}

#[test]
fn domain_errors() {
    assert!(matches!(
        r_eval(0.0, EvalMethod::Auto),
        Err(Error::Domain { .. })
    ));
    assert!(matches!(
        r_eval(1.0, EvalMethod::Direct),
        Err(Error::Domain { .. })
    ));
    assert!(matches!(f_value(0.6), Err(Error::Domain { .. })));
    assert!(matches!(h_eval(0.5), Err(Error::Domain { .. })));
    assert!(matches!(
        comparison(Comparison::F1, -0.1),
        Err(Error::Domain { .. })
    ));
    assert!(all_bounds(0.25, 2, 1.2).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn comparisons_match_their_definitions(x in 0.01f64..=0.5) {
        let r = r_eval(x, EvalMethod::Direct).unwrap().value;
        let b = b_fn(x).unwrap();
        let q = 1.0 + x * (1.0 - x);
        let tol = 1e-12 * r.abs();
        prop_assert!((comparison(Comparison::F1, x).unwrap() - q * r / b).abs() <= tol);
        prop_assert!((comparison(Comparison::F2, x).unwrap() - (r / b - 1.0 / q)).abs() <= tol);
        prop_assert!((comparison(Comparison::F3, x).unwrap() - (r - b / q)).abs() <= tol);
    }

    #[test]
    fn every_bound_contains_r(x in 1e-6f64..=0.5, n in 1u32..=4) {
        let r = r_eval(x, EvalMethod::Auto).unwrap().value;
        for pair in all_bounds(x, n, delta()).unwrap() {
            prop_assert!(pair.contains(r, 1e-12 * r.abs()), "{} at {}: {:?} vs {}", pair.method, x, pair, r);
        }
    }

    #[test]
    fn f1_never_exceeds_delta(x in 1e-6f64..=0.5) {
        prop_assert!(comparison(Comparison::F1, x).unwrap() <= delta() + 1e-15);
    }

    #[test]
    fn f9_f10_images(x in 1e-6f64..0.5) {
        let rho = constants().rho;
        let f9 = f9_eval(x).unwrap();
        let f10 = f10_eval(x).unwrap();
        prop_assert!(f9 > -2.0 - PI * PI / 6.0 && f9 <= -2.0 * (1.0 - rho) + 1e-15);
        prop_assert!(f10 > 0.0 && f10 < 1.0 - rho);
    }
}
