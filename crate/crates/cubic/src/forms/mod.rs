//! Integral binary cubic forms `x0 v1^3 + x1 v1^2 v2 + x2 v1 v2^2 + x3 v2^3`
//! under the determinant-twisted action of GL2(Z).

pub(crate) mod arith;
pub(crate) mod int;
pub(crate) mod realroot;
pub(crate) mod reduce;
pub(crate) mod roots;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use arith::Coeffs;
use int::{is_square, Int};

/// Above this coefficient size the neighbour search switches from `i128`
/// to `BigInt`; below it every intermediate of the sign oracle fits.
pub(crate) const SMALL_COEFF: i128 = 1 << 12;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Form {
    pub x0: BigInt,
    pub x1: BigInt,
    pub x2: BigInt,
    pub x3: BigInt,
}

impl Form {
    pub fn new(x0: i64, x1: i64, x2: i64, x3: i64) -> Self {
        Form { x0: x0.into(), x1: x1.into(), x2: x2.into(), x3: x3.into() }
    }

    pub fn from_coeffs(c: [BigInt; 4]) -> Self {
        let [x0, x1, x2, x3] = c;
        Form { x0, x1, x2, x3 }
    }

    pub fn coeffs(&self) -> [BigInt; 4] {
        [self.x0.clone(), self.x1.clone(), self.x2.clone(), self.x3.clone()]
    }

    /// Coefficients as `i64` when all of them fit.
    pub fn to_i64s(&self) -> Option<[i64; 4]> {
        Some([self.x0.to_i64()?, self.x1.to_i64()?, self.x2.to_i64()?, self.x3.to_i64()?])
    }

    pub(crate) fn from_int<T: Int>(c: &Coeffs<T>) -> Self {
        Form::from_coeffs([c[0].to_big(), c[1].to_big(), c[2].to_big(), c[3].to_big()])
    }
}

impl From<[i64; 4]> for Form {
    fn from(c: [i64; 4]) -> Self {
        Form::new(c[0], c[1], c[2], c[3])
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.x0, self.x1, self.x2, self.x3)
    }
}

impl FromStr for Form {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().trim_matches(|c| c == '(' || c == ')').split(',').collect();
        if parts.len() != 4 {
            return Err(Error::InvalidRequest(format!("expected four coefficients, got {s:?}")));
        }
        let mut c = Vec::with_capacity(4);
        for p in parts {
            c.push(p.trim().parse::<BigInt>().map_err(|_| Error::InvalidRequest(format!("bad coefficient {p:?}")))?);
        }
        Ok(Form::from_coeffs([c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()]))
    }
}

/// Element `(a b; c d)` of GL2(Z).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transform {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl Transform {
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Result<Self> {
        let det = &a * &d - &b * &c;
        if det.abs() != BigInt::one() {
            return Err(Error::NonUnimodular(det.to_string()));
        }
        Ok(Transform { a, b, c, d })
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Transform::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn identity() -> Self {
        Transform { a: BigInt::one(), b: BigInt::zero(), c: BigInt::zero(), d: BigInt::one() }
    }

    pub fn det(&self) -> i32 {
        if (&self.a * &self.d - &self.b * &self.c).is_positive() {
            1
        } else {
            -1
        }
    }

    /// Matrix product `self * other`; acting by it equals acting by
    /// `other` first.
    pub fn compose(&self, other: &Transform) -> Transform {
        let m = arith::mat_mul(&self.mat(), &other.mat());
        let [a, b, c, d] = m;
        Transform { a, b, c, d }
    }

    fn mat(&self) -> [BigInt; 4] {
        [self.a.clone(), self.b.clone(), self.c.clone(), self.d.clone()]
    }
}

/// Integral binary quadratic form `a v1^2 + b v1 v2 + c v2^2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticForm {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl QuadraticForm {
    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }

    pub fn is_definite(&self) -> bool {
        self.discriminant().is_negative()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArchType {
    /// Three real embeddings: positive discriminant.
    Real3,
    /// One real and one complex place: negative discriminant.
    RealComplex,
}

impl fmt::Display for ArchType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ArchType::Real3 => "R3",
            ArchType::RealComplex => "RxC",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingInvariants {
    pub disc: BigInt,
    pub irreducible: bool,
    pub aut_order: u32,
    pub arch_type: ArchType,
}

pub fn discriminant(f: &Form) -> BigInt {
    arith::disc(&f.coeffs())
}

pub fn act(g: &Transform, f: &Form) -> Form {
    Form::from_coeffs(arith::act(&g.mat(), &f.coeffs()))
}

fn nondegenerate(f: &Form) -> Result<BigInt> {
    let d = discriminant(f);
    if d.is_zero() {
        Err(Error::Degenerate)
    } else {
        Ok(d)
    }
}

pub fn hessian(f: &Form) -> Result<QuadraticForm> {
    let d = nondegenerate(f)?;
    let [a, b, c] = arith::hessian(&f.coeffs());
    let h = QuadraticForm { a, b, c };
    assert_eq!(h.discriminant(), BigInt::from(-3) * d, "Hessian discriminant identity");
    Ok(h)
}

pub fn is_irreducible(f: &Form) -> Result<bool> {
    nondegenerate(f)?;
    Ok(match f.to_i64s() {
        Some(c) => roots::rational_root(&c.map(i128::from)).is_none(),
        None => roots::rational_root(&f.coeffs()).is_none(),
    })
}

fn small(c: &[BigInt; 4]) -> Option<Coeffs<i128>> {
    let mut out = [0i128; 4];
    for (o, v) in out.iter_mut().zip(c) {
        let s = v.to_i128()?;
        if s.abs() > SMALL_COEFF {
            return None;
        }
        *o = s;
    }
    Some(out)
}

/// Returns a form in the class of `f` with reduced covariant.
fn reduced(f: &Form) -> Result<([BigInt; 4], bool)> {
    let d = nondegenerate(f)?;
    let positive = d.is_positive();
    let (_, f0) = reduce::reduce(&f.coeffs(), positive);
    Ok((f0, positive))
}

pub fn canonicalize(f: &Form) -> Result<Form> {
    let (f0, positive) = reduced(f)?;
    Ok(match small(&f0) {
        Some(s) => Form::from_int(&reduce::canonical_of_reduced(&s, positive)),
        None => Form::from_coeffs(reduce::canonical_of_reduced(&f0, positive)),
    })
}

pub fn are_equivalent(f1: &Form, f2: &Form) -> Result<bool> {
    let d1 = nondegenerate(f1)?;
    let d2 = nondegenerate(f2)?;
    if d1 != d2 {
        return Ok(false);
    }
    Ok(canonicalize(f1)? == canonicalize(f2)?)
}

pub fn stabilizer_order(f: &Form) -> Result<u32> {
    let d = nondegenerate(f)?;
    if !is_square(&d) && is_irreducible(f)? {
        return Ok(1);
    }
    let (f0, _) = reduced(f)?;
    Ok(reduce::stabilizer_count(&f0))
}

pub fn ring_invariants(f: &Form) -> Result<RingInvariants> {
    let disc = nondegenerate(f)?;
    let arch_type = if disc.is_positive() { ArchType::Real3 } else { ArchType::RealComplex };
    Ok(RingInvariants { irreducible: is_irreducible(f)?, aut_order: stabilizer_order(f)?, arch_type, disc })
}

#[cfg(test)]
pub(crate) mod props;

#[cfg(test)]
mod tests {
    use super::*;

    fn f(c: [i64; 4]) -> Form {
        Form::from(c)
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant(&f([1, 1, 1, 1])), BigInt::from(-16));
        assert_eq!(discriminant(&f([1, 0, 0, 0])), BigInt::zero());
        assert_eq!(discriminant(&f([1, 1, -2, -1])), BigInt::from(49));
        assert_eq!(discriminant(&f([1, 0, -1, -1])), BigInt::from(-23));
    }

    #[test]
    fn act_examples() {
        let swap = Transform::from_i64(0, 1, 1, 0).unwrap();
        assert_eq!(act(&swap, &f([1, 2, 3, 4])), f([-4, -3, -2, -1]));
        let refl = Transform::from_i64(-1, 0, 0, 1).unwrap();
        assert_eq!(act(&refl, &f([1, 0, -1, -1])), f([1, 0, -1, 1]));
        assert_eq!(act(&Transform::identity(), &f([5, -2, 0, 9])), f([5, -2, 0, 9]));
    }

    #[test]
    fn non_unit_determinant_rejected() {
        assert!(matches!(Transform::from_i64(2, 0, 0, 1), Err(Error::NonUnimodular(_))));
    }

    #[test]
    fn hessian_examples() {
        assert_eq!(hessian(&f([1, 0, -1, -1])).unwrap().discriminant(), BigInt::from(69));
        assert_eq!(hessian(&f([1, 1, 1, 1])).unwrap().discriminant(), BigInt::from(48));
        assert!(hessian(&f([1, 1, -2, -1])).unwrap().is_definite());
        assert_eq!(hessian(&f([1, 0, 0, 0])), Err(Error::Degenerate));
    }

    #[test]
    fn irreducibility_examples() {
        assert!(!is_irreducible(&f([1, 0, -1, 0])).unwrap());
        assert!(is_irreducible(&f([1, 0, -1, -1])).unwrap());
        assert!(!is_irreducible(&f([0, 1, 0, -1])).unwrap());
    }

    #[test]
    fn canonical_examples() {
        let a = canonicalize(&f([1, 0, -1, -1])).unwrap();
        let b = canonicalize(&f([1, 0, -1, 1])).unwrap();
        assert_eq!(a, b);
        assert_eq!(canonicalize(&a).unwrap(), a);
        assert!(are_equivalent(&f([1, 0, -1, -1]), &f([1, 0, -1, 1])).unwrap());
        assert!(!are_equivalent(&f([1, 0, -1, -1]), &f([1, 1, 1, 1])).unwrap());
    }

    #[test]
    fn stabilizer_examples() {
        assert_eq!(stabilizer_order(&f([1, 0, -1, -1])).unwrap(), 1);
        assert_eq!(stabilizer_order(&f([1, 1, -2, -1])).unwrap(), 3);
    }

    fn brute_stabilizer(x: &Form) -> u32 {
        let mut n = 0;
        for a in -3i64..=3 {
            for b in -3i64..=3 {
                for c in -3i64..=3 {
                    for d in -3i64..=3 {
                        if let Ok(g) = Transform::from_i64(a, b, c, d) {
                            n += u32::from(act(&g, x) == *x);
                        }
                    }
                }
            }
        }
        n
    }

    #[test]
    fn stabilizer_matches_bounded_search() {
        for c in [
            [1, 0, 1, 0],
            [0, 1, 0, -1],
            [1, 0, -1, 0],
            [0, 1, 1, 0],
            [0, 2, 1, -1],
            [1, 1, -2, -1],
            [2, 3, -7, -1],
            [0, 1, 0, 1],
            [1, 0, 0, 1],
            [0, 3, 0, -12],
        ] {
            let x = f(c);
            assert_eq!(stabilizer_order(&x).unwrap(), brute_stabilizer(&x), "{x}");
        }
    }

    #[test]
    fn ring_invariant_examples() {
        let r = ring_invariants(&f([1, 1, -2, -1])).unwrap();
        assert_eq!(r, RingInvariants { disc: 49.into(), irreducible: true, aut_order: 3, arch_type: ArchType::Real3 });
        let r = ring_invariants(&f([1, 0, -1, -1])).unwrap();
        assert_eq!(r, RingInvariants { disc: (-23).into(), irreducible: true, aut_order: 1, arch_type: ArchType::RealComplex });
        let r = ring_invariants(&f([1, 0, 1, 0])).unwrap();
        assert_eq!((r.disc, r.irreducible, r.arch_type), ((-4).into(), false, ArchType::RealComplex));
    }

    #[test]
    fn parse_and_display() {
        let g: Form = "(3,-1,0,7)".parse().unwrap();
        assert_eq!(g, f([3, -1, 0, 7]));
        assert_eq!(g.to_string(), "3,-1,0,7");
        assert!("1,2,3".parse::<Form>().is_err());
    }
}
