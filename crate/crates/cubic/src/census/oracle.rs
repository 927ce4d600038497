//! Independent census by exhaustive search, used to check the enumerator.
//!
//! Irreducible classes come from canonicalizing every form in a coefficient
//! box, which is repeated at twice the box and must not change. Reducible
//! classes cannot be caught by a box (the class of `v2 (v1^2 - d v2^2)`
//! has no small representative for large `d`), so they come from the
//! complete list of forms `(0, b, c, d)` with `b > 0`, `0 <= c < 2b`: every
//! reducible form moves its rational root to infinity, and the translation
//! `v1 -> v1 + u v2` then shifts `c` by `2bu`. Reducible classes seen in the
//! box must all be in that list.

use std::collections::BTreeSet;

use rayon::prelude::*;

use super::Sign;
use crate::error::{Error, Result};
use crate::forms::arith::disc;
use crate::forms::roots::rational_root;
use crate::forms::{canonicalize, Form};

/// Largest box accepted; the search visits about `(2B + 1)^4 / 2` forms
/// at both `B` and `2B`.
pub const MAX_BOX: i64 = 64;

fn in_range(d: i128, sign: Sign, x: u64) -> bool {
    match sign {
        Sign::Positive => d > 0 && d < x as i128,
        Sign::Negative => d < 0 && -d < x as i128,
    }
}

/// Canonical classes of the forms in `[-b, b]^4`, split by reducibility.
fn box_classes(sign: Sign, x: u64, b: i64) -> Result<(BTreeSet<Form>, BTreeSet<Form>)> {
    // f and -f are equivalent under -I, so x0 >= 0 suffices
    let found: Vec<(Form, bool)> = (0..=b)
        .into_par_iter()
        .flat_map_iter(|x0| {
            let mut out = Vec::new();
            for x1 in -b..=b {
                for x2 in -b..=b {
                    for x3 in -b..=b {
                        let f = [x0, x1, x2, x3].map(i128::from);
                        if in_range(disc(&f), sign, x) {
                            out.push(([x0, x1, x2, x3], rational_root(&f).is_none()));
                        }
                    }
                }
            }
            out.into_iter()
        })
        .map(|(f, irr)| Ok((canonicalize(&Form::from(f))?, irr)))
        .collect::<Result<_>>()?;
    let mut irr = BTreeSet::new();
    let mut red = BTreeSet::new();
    for (f, i) in found {
        if i { irr.insert(f) } else { red.insert(f) };
    }
    Ok((irr, red))
}

/// Every reducible class, from forms with `x0 = 0`.
fn cusp_classes(sign: Sign, x: u64) -> Result<BTreeSet<Form>> {
    let xw = x as i128;
    let bmax = (x as f64).sqrt() as i128 + 1;
    let forms: Vec<[i64; 4]> = (1..=bmax)
        .into_par_iter()
        .filter(|b| b * b < xw)
        .flat_map_iter(|b| {
            let mut out = Vec::new();
            // disc = b^2 (c^2 - 4bd), so |c^2 - 4bd| <= (X - 1) / b^2
            let m = (xw - 1) / (b * b);
            for c in 0..2 * b {
                let s = c * c;
                let lo = -((-(s - m)).div_euclid(4 * b));
                let hi = (s + m).div_euclid(4 * b);
                for d in lo..=hi {
                    let f = [0, b, c, d];
                    if in_range(disc(&f), sign, x) {
                        out.push([0, b as i64, c as i64, d as i64]);
                    }
                }
            }
            out.into_iter()
        })
        .collect();
    forms.into_par_iter().map(|f| canonicalize(&Form::from(f))).collect()
}

/// Canonical representatives of every class with `0 < sign * disc < x`.
/// Fails with [`Error::IncompleteBox`] when the irreducible classes found
/// in `[-B, B]^4` and `[-2B, 2B]^4` differ.
pub fn brute_force_census(sign: Sign, x: u64, box_bound: i64) -> Result<BTreeSet<Form>> {
    if x == 0 {
        return Err(Error::InvalidRequest("discriminant bound must be at least 1".into()));
    }
    if !(1..=MAX_BOX).contains(&box_bound) {
        return Err(Error::InvalidRequest(format!("box bound must lie in 1..={MAX_BOX}")));
    }
    let (irr, red) = box_classes(sign, x, box_bound)?;
    let (irr2, red2) = box_classes(sign, x, 2 * box_bound)?;
    if irr != irr2 {
        let missing = irr2.difference(&irr).next().map(|f| f.to_string()).unwrap_or_default();
        return Err(Error::IncompleteBox {
            box_bound,
            detail: format!("{} classes at B, {} at 2B; first new class {missing}", irr.len(), irr2.len()),
        });
    }
    let cusp = cusp_classes(sign, x)?;
    if let Some(f) = red.iter().chain(&red2).find(|f| !cusp.contains(*f)) {
        return Err(Error::CrossValidation(format!("reducible class {f} missing from the x0 = 0 list")));
    }
    Ok(irr.into_iter().chain(cusp).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        let pos = brute_force_census(Sign::Positive, 50, 12).unwrap();
        let irr: Vec<_> = pos.iter().filter(|f| crate::forms::is_irreducible(f).unwrap()).collect();
        assert_eq!(irr.len(), 1);
        assert_eq!(crate::forms::discriminant(irr[0]), 49.into());
        let none = brute_force_census(Sign::Positive, 49, 6).unwrap();
        assert!(none.iter().all(|f| !crate::forms::is_irreducible(f).unwrap()));
    }

    #[test]
    fn tiny_box_is_incomplete() {
        assert!(matches!(
            brute_force_census(Sign::Negative, 3000, 1),
            Err(Error::IncompleteBox { box_bound: 1, .. })
        ));
    }

    #[test]
    fn cusp_list_covers_reducible_classes() {
        // v2 (v1^2 - 5 v2^2) has disc 4 * 5 = 20
        let cusp = cusp_classes(Sign::Positive, 21).unwrap();
        assert!(cusp.contains(&canonicalize(&Form::new(0, 1, 0, -5)).unwrap()));
    }
}
