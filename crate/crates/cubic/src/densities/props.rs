use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use super::*;

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(-9i64..=9, 1..5).prop_map(|c| Poly::from_ints(&c))
}

fn ratfn() -> impl Strategy<Value = RatFn> {
    (poly(), poly().prop_filter("nonzero", |p| !p.is_zero())).prop_map(|(n, d)| RatFn::new(n, d))
}

fn small_real() -> impl Strategy<Value = Real> {
    (-10_000i64..10_000, 1i64..1000)
        .prop_map(|(n, d)| Real::from_ratio(&BigRational::new(BigInt::from(n), BigInt::from(d)), WORK_BITS))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn ratfn_field_laws(a in ratfn(), b in ratfn(), c in ratfn()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !b.is_zero() {
            prop_assert_eq!(&(&a * &b) / &b, a.clone());
        }
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in ratfn(), b in ratfn(), n in 1i64..50, d in 51i64..97) {
        let u = BigRational::new(n.into(), d.into());
        if let (Some(x), Some(y), Some(z)) = ((&a * &b).eval_u(&u), a.eval_u(&u), b.eval_u(&u)) {
            prop_assert_eq!(x, y * z);
        }
    }

    #[test]
    fn real_arithmetic(a in small_real(), b in small_real()) {
        prop_assert!((&(&a + &b) - &b).agrees(&a, 40));
        if b.to_f64() != 0.0 {
            prop_assert!((&(&a * &b) / &b).agrees(&a, 40));
        }
        let sq = a.abs().sqrt();
        prop_assert!((&sq * &sq).agrees(&a.abs(), 40));
        let cb = a.cbrt();
        prop_assert!((&(&cb * &cb) * &cb).agrees(&a, 40));
    }

    #[test]
    fn symbol_densities_are_probabilities(q in prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9, 11, 13, 25])) {
        let t = BigRational::new(1.into(), q.into());
        let mut total = BigRational::from_integer(0.into());
        for s in SplittingSymbol::ALL {
            let a = alpha_symbol(s).eval_t(&t).unwrap();
            prop_assert!(a > BigRational::from_integer(0.into()));
            total += a;
        }
        prop_assert_eq!(total, BigRational::from_integer(1.into()));
    }
}
