mod common;

use common::q;
use curveprog_core::construct::{
    assemble_bielliptic, elliptic_quotient, finiteness_trace, lift_quadratic, tower_level, BiellipticQuartic,
};
use curveprog_core::exact::Rational;
use curveprog_core::poly::HomogPoly;
use proptest::prelude::*;

fn binary(coeffs: &[i64]) -> HomogPoly {
    let d = coeffs.len() as u32 - 1;
    HomogPoly::from_terms(
        coeffs.iter().enumerate().map(|(i, c)| ([i as u32, d - i as u32, 0], q(*c))),
        Some(d),
    )
    .unwrap()
}

fn quartic_strategy() -> impl Strategy<Value = BiellipticQuartic> {
    (
        (1i64..=5).prop_flat_map(|a| prop_oneof![Just(a), Just(-a)]),
        prop::array::uniform3(-6i64..=6),
        prop::array::uniform5(-6i64..=6),
    )
        .prop_map(|(a, l2, l4)| BiellipticQuartic::new(q(a), binary(&l2), binary(&l4)).unwrap())
}

fn small_q() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=7).prop_map(|(p, d)| Rational::new(p, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    /// `G(x, z²) = F(x, z)`, symbolically and at a random point.
    #[test]
    fn quotient_pushforward(qu in quartic_strategy(), x in small_q(), z in small_q()) {
        let quotient = elliptic_quotient(&qu);
        let curve = assemble_bielliptic(&qu);
        prop_assert_eq!(quotient.model.substitute_z_power(2), curve.form().affine_y1());
        let (px, w) = quotient.pushforward(&x, &z);
        prop_assert_eq!(
            quotient.model.evaluate(&px, &w),
            curve.form().evaluate(&x, &q(1), &z)
        );
    }

    #[test]
    fn tower_identity(qu in quartic_strategy(), t0 in small_q(), s in 1u32..=4) {
        prop_assume!(!t0.is_zero());
        let lower = tower_level(&qu, &t0, s).unwrap();
        let upper = tower_level(&qu, &t0, 2 * s).unwrap();
        prop_assert_eq!(lower.model.substitute_power(2), upper.model.clone());
        prop_assert_eq!(lower.quotient.substitute_power(2), upper.quotient);
    }

    #[test]
    fn trace_genera_increase_and_stay_integral(qu in quartic_strategy(), t0 in small_q()) {
        prop_assume!(!t0.is_zero());
        if let Ok(trace) = finiteness_trace(&qu, &t0, 4) {
            let mut prev = trace.base_genus;
            for level in &trace.levels {
                prop_assert!(level.genus > prev);
                let rh = &level.ramification;
                prop_assert_eq!((rh.degree * (2 * rh.base_genus) + rh.r) % 2, 0);
                prop_assert_eq!(2 * level.genus as i64 - 2, 2 * (2 * prev as i64 - 2) + rh.r as i64);
                prop_assert_eq!(level.cs_flag, level.genus > 3);
                prev = level.genus;
            }
        }
    }
}

#[test]
fn spec_tower_example() {
    // a = 1, L2 = 0, L4 = X^4 - Y^4
    let qu = BiellipticQuartic::new(q(1), HomogPoly::zero(2), binary(&[-1, 0, 0, 0, 1])).unwrap();
    let level = tower_level(&qu, &q(1), 2).unwrap();
    assert_eq!(level.model_string(), "z^4 + x^8 - 1");
    let lifted = lift_quadratic(&qu, &q(0), &q(1)).unwrap();
    assert!(lifted.is_rational());
}
