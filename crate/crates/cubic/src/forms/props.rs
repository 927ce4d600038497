use num_bigint::BigInt;
use proptest::prelude::*;

use super::*;

const GENS: [[i64; 4]; 4] = [[0, -1, 1, 0], [1, 1, 0, 1], [1, -1, 0, 1], [1, 0, 0, -1]];

/// Words in generators of GL2(Z).
pub(crate) fn transform() -> impl Strategy<Value = Transform> {
    prop::collection::vec(0..GENS.len(), 0..12).prop_map(|w| {
        w.into_iter().fold(Transform::identity(), |acc, i| {
            let [a, b, c, d] = GENS[i];
            acc.compose(&Transform::from_i64(a, b, c, d).unwrap())
        })
    })
}

pub(crate) fn form(bound: i64) -> impl Strategy<Value = Form> {
    prop::array::uniform4(-bound..=bound)
        .prop_map(|[a, b, c, d]| Form::new(a, b, c, d))
        .prop_filter("nondegenerate", |f| !discriminant(f).is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn discriminant_is_invariant(f in form(40), g in transform()) {
        prop_assert_eq!(discriminant(&act(&g, &f)), discriminant(&f));
    }

    #[test]
    fn action_composes(f in form(20), g in transform(), h in transform()) {
        prop_assert_eq!(act(&g.compose(&h), &f), act(&g, &act(&h, &f)));
    }

    #[test]
    fn canonical_form_is_a_class_invariant(f in form(30), g in transform()) {
        let c = canonicalize(&f).unwrap();
        prop_assert_eq!(&canonicalize(&act(&g, &f)).unwrap(), &c);
        prop_assert_eq!(&canonicalize(&c).unwrap(), &c);
        prop_assert!(are_equivalent(&f, &c).unwrap());
        prop_assert!(c.x0 <= BigInt::zero());
    }

    #[test]
    fn hessian_discriminant(f in form(1000)) {
        prop_assert_eq!(hessian(&f).unwrap().discriminant(), BigInt::from(-3) * discriminant(&f));
    }

    #[test]
    fn invariants_survive_the_action(f in form(12), g in transform()) {
        let (a, b) = (ring_invariants(&f).unwrap(), ring_invariants(&act(&g, &f)).unwrap());
        prop_assert_eq!(a, b);
    }

    #[test]
    fn large_coefficients_take_the_wide_path(f in form(6), g in transform(), k in 1i64..4) {
        // the scaled form is past SMALL_COEFF
        let s = BigInt::from(k * 10_000);
        let big = Form::from_coeffs(f.coeffs().map(|c| c * &s));
        let c = canonicalize(&big).unwrap();
        prop_assert_eq!(&canonicalize(&act(&g, &big)).unwrap(), &c);
    }
}
