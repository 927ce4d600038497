use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

use super::*;
use crate::forms::props::{form, transform};
use crate::forms::{act, is_irreducible};

const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn symbols_are_class_invariants(f in form(25), g in transform(), i in 0..PRIMES.len()) {
        let p = PRIMES[i];
        prop_assert_eq!(splitting_symbol(&f, p).unwrap(), splitting_symbol(&act(&g, &f), p).unwrap());
        prop_assert_eq!(arch_type(&f).unwrap(), arch_type(&act(&g, &f)).unwrap());
    }

    #[test]
    fn fast_and_padic_paths_agree(f in form(200)) {
        prop_assume!(is_irreducible(&f).unwrap());
        let d = discriminant(&f);
        for p in PRIMES {
            if d.is_multiple_of(&BigInt::from(p)) {
                continue;
            }
            let padic = symbol_padic(&f, &PAdicContext::for_form(&f, p).unwrap()).unwrap();
            prop_assert_eq!(symbol_mod_p(&f, p).unwrap(), padic);
            prop_assert!(!padic.is_ramified());
        }
    }

    #[test]
    fn unramified_off_the_discriminant(f in form(30), i in 0..PRIMES.len()) {
        let p = PRIMES[i];
        let s = splitting_symbol(&f, p).unwrap();
        if !discriminant(&f).is_multiple_of(&BigInt::from(p)) {
            prop_assert!(!s.is_ramified());
        }
    }
}
