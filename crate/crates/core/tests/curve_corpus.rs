mod common;

use common::{corpus, fermat, klein, q};
use curveprog_core::curve::{
    prime_schedule, smoothness_exact, smoothness_modular, riemann_hurwitz_genus, CurveError, RHData,
    SingularWitness, SmoothnessCertificate, EXACT_BUDGET,
};
use proptest::prelude::*;

#[test]
fn corpus_expectations_hold_on_both_paths() {
    for (name, c, smooth) in corpus() {
        let modular = smoothness_modular(c.form(), &prime_schedule());
        let exact = smoothness_exact(c.form(), EXACT_BUDGET).unwrap();
        assert_eq!(modular.is_some(), smooth, "modular path on {name}");
        assert_eq!(exact.is_smooth(), smooth, "exact path on {name}");
        assert_eq!(c.is_smooth().unwrap().is_smooth(), smooth, "combined on {name}");
    }
}

#[test]
fn named_certificates() {
    assert!(fermat(4, -1).is_smooth().unwrap().is_smooth());
    assert!(klein().is_smooth().unwrap().is_smooth());
    let cusp = common::curve(&[(1, [0, 2, 1]), (-1, [3, 0, 0])]);
    match cusp.is_smooth().unwrap() {
        SmoothnessCertificate::Singular {
            witness: SingularWitness::RationalPoint { point },
        } => assert_eq!(point, [q(0), q(0), q(1)]),
        other => panic!("unexpected {other:?}"),
    }
    assert_eq!(cusp.genus_smooth(), Err(CurveError::NotSmooth));
}

#[test]
fn singular_points_lie_on_the_curve() {
    for (name, c, _) in corpus() {
        if let SmoothnessCertificate::Singular {
            witness: SingularWitness::RationalPoint { point },
        } = c.is_smooth().unwrap()
        {
            assert!(c.contains(&point), "{name}");
            for v in [curveprog_core::poly::Var::X, curveprog_core::poly::Var::Y, curveprog_core::poly::Var::Z] {
                assert!(c.form().partial(v).evaluate(&point[0], &point[1], &point[2]).is_zero(), "{name}");
            }
        }
    }
}

proptest! {
    /// `2g' - 2 = n(2g - 2) + r` whenever the formula returns a genus.
    #[test]
    fn riemann_hurwitz_round_trip(g in 0u64..20, n in 1u64..8, r in 0u64..40) {
        match riemann_hurwitz_genus(RHData { g, n, r }) {
            Ok(gp) => prop_assert_eq!(2 * gp as i64 - 2, n as i64 * (2 * g as i64 - 2) + r as i64),
            Err(CurveError::InconsistentRamification { .. }) => {
                let lhs = n as i64 * (2 * g as i64 - 2) + r as i64 + 2;
                prop_assert!(lhs % 2 != 0 || lhs < 0);
            }
            Err(e) => prop_assert!(false, "{e}"),
        }
    }
}
