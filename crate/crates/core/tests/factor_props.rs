mod common;

use common::{oracle_irreducible, q};
use curveprog_core::exact::Rational;
use curveprog_core::factor::{factor_over_q, is_irreducible, rational_roots, squarefree_decomposition};
use curveprog_core::poly::UniPoly;
use proptest::prelude::*;

fn poly(coeffs: &[i64]) -> UniPoly {
    UniPoly::from_ints(coeffs, 'z')
}

fn nonconstant(max_deg: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-20i64..=20, 2..=max_deg + 1).prop_filter("nonconstant", |c| {
        c.iter().skip(1).any(|&x| x != 0) && *c.last().unwrap() != 0
    })
}

/// Products of up to three random pieces, so repeated and shared factors
/// actually occur.
fn structured(max_deg: usize) -> impl Strategy<Value = UniPoly> {
    prop_oneof![
        nonconstant(max_deg).prop_map(|c| poly(&c)),
        (nonconstant(3), nonconstant(3), 1u32..=2).prop_map(|(a, b, e)| &poly(&a).pow(e) * &poly(&b)),
        (nonconstant(2), 1u32..=4).prop_map(|(a, e)| poly(&a).pow(e)),
    ]
    .prop_filter("degree <= 8", move |p| p.degree().unwrap_or(0) <= max_deg)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn factorization_reconstructs_input(f in structured(8)) {
        let fac = factor_over_q(&f).unwrap();
        prop_assert_eq!(fac.expand(), f.clone());
        for entry in &fac.factors {
            prop_assert!(entry.multiplicity >= 1);
            let again = factor_over_q(&entry.poly).unwrap();
            prop_assert_eq!(again.factors.len(), 1);
            prop_assert_eq!(again.factors[0].multiplicity, 1);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn squarefree_parts_are_coprime_and_multiply_back(f in structured(8)) {
        let parts = squarefree_decomposition(&f);
        let mut prod = UniPoly::constant(Rational::one(), 'z');
        for (i, (g, m)) in parts.iter().enumerate() {
            prop_assert!(g.distinct_root_count() == g.degree().unwrap());
            prod = &prod * &g.pow(*m);
            for (h, _) in &parts[i + 1..] {
                prop_assert!(g.gcd(h).is_constant());
            }
        }
        prop_assert!(prod.monic() == f.monic());
    }

    #[test]
    fn rational_roots_are_roots(f in structured(6)) {
        for r in rational_roots(&f) {
            prop_assert!(f.eval(&r).is_zero());
        }
    }
}

fn low_degree() -> impl Strategy<Value = Vec<i64>> {
    prop_oneof![
        nonconstant(4),
        (nonconstant(2), nonconstant(2)).prop_map(|(a, b)| {
            (&poly(&a) * &poly(&b))
                .coeffs()
                .iter()
                .map(|x| x.numer().try_into().unwrap())
                .collect()
        }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn irreducibility_matches_exhaustive_oracle(c in low_degree()) {
        let f = poly(&c);
        prop_assert_eq!(is_irreducible(&f).unwrap(), oracle_irreducible(&c), "{}", f);
    }
}

#[test]
fn swinnerton_dyer_stays_whole() {
    let f = poly(&[1, 0, -10, 0, 1]);
    assert!(is_irreducible(&f).unwrap());
    assert!(oracle_irreducible(&[1, 0, -10, 0, 1]));
    assert_eq!(rational_roots(&poly(&[-4, 0, 1])), vec![q(2), q(-2)]);
}
