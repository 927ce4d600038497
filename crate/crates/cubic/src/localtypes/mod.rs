//! Splitting type of the cubic algebra of a form over Q_p and over R.

pub(crate) mod modp;
pub(crate) mod padic;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::forms::{discriminant, ArchType, Form};

pub const DEFAULT_PRECISION_CAP: u32 = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SplittingSymbol {
    /// Three unramified linear factors.
    S111,
    /// Linear times unramified quadratic.
    S21,
    /// Unramified cubic extension.
    S3,
    /// Linear times ramified quadratic.
    S121R,
    /// Totally ramified cubic extension.
    S13R,
}

impl SplittingSymbol {
    pub const ALL: [SplittingSymbol; 5] =
        [SplittingSymbol::S111, SplittingSymbol::S21, SplittingSymbol::S3, SplittingSymbol::S121R, SplittingSymbol::S13R];

    pub fn is_ramified(self) -> bool {
        matches!(self, SplittingSymbol::S121R | SplittingSymbol::S13R)
    }

    /// Conventional notation with superscripts, e.g. `(1²1)`.
    pub fn label(self) -> &'static str {
        match self {
            SplittingSymbol::S111 => "(111)",
            SplittingSymbol::S21 => "(21)",
            SplittingSymbol::S3 => "(3)",
            SplittingSymbol::S121R => "(1²1)",
            SplittingSymbol::S13R => "(1³)",
        }
    }
}

impl fmt::Display for SplittingSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SplittingSymbol::S111 => "111",
            SplittingSymbol::S21 => "21",
            SplittingSymbol::S3 => "3",
            SplittingSymbol::S121R => "121r",
            SplittingSymbol::S13R => "13r",
        })
    }
}

impl FromStr for SplittingSymbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        Ok(match t {
            "111" => SplittingSymbol::S111,
            "21" => SplittingSymbol::S21,
            "3" => SplittingSymbol::S3,
            "121r" | "1²1" | "1^21" => SplittingSymbol::S121R,
            "13r" | "1³" | "1^3" => SplittingSymbol::S13R,
            _ => return Err(Error::InvalidRequest(format!("unknown splitting symbol {s:?}"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadraticType {
    Split,
    Unramified,
    Ramified,
}

/// Working precision for the p-adic path, in p-adic digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PAdicContext {
    pub p: u64,
    pub precision: u32,
    pub cap: u32,
}

impl PAdicContext {
    pub fn new(p: u64, precision: u32, cap: u32) -> Result<Self> {
        if !modp::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if precision == 0 || cap < precision {
            return Err(Error::InvalidRequest(format!("precision {precision} with cap {cap}")));
        }
        Ok(PAdicContext { p, precision, cap })
    }

    /// Starts at `2 v_p(disc) + 10` digits with the default cap.
    pub fn for_form(f: &Form, p: u64) -> Result<Self> {
        let d = discriminant(f);
        if d.is_zero() {
            return Err(Error::Degenerate);
        }
        if !modp::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let start = 2 * valuation(&d, p) + 10;
        PAdicContext::new(p, start.min(DEFAULT_PRECISION_CAP), DEFAULT_PRECISION_CAP)
    }
}

pub(crate) fn valuation(n: &BigInt, p: u64) -> u32 {
    let pb = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    while !n.is_zero() && n.is_multiple_of(&pb) {
        n /= &pb;
        v += 1;
    }
    v
}

pub fn arch_type(f: &Form) -> Result<ArchType> {
    let d = discriminant(f);
    if d.is_zero() {
        Err(Error::Degenerate)
    } else if d.is_positive() {
        Ok(ArchType::Real3)
    } else {
        Ok(ArchType::RealComplex)
    }
}

fn residue(c: &BigInt, p: u64) -> u64 {
    c.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits")
}

/// Projective root count of `f` over F_p.
pub(crate) fn projective_roots_mod_p(c: [u64; 4], p: u64) -> usize {
    let at_infinity = usize::from(c[0] == 0);
    let affine = [c[3], c[2], c[1], c[0]];
    if affine.iter().all(|&x| x == 0) {
        return p as usize + 1;
    }
    modp::roots(&affine, p).len() + at_infinity
}

pub fn symbol_mod_p(f: &Form, p: u64) -> Result<SplittingSymbol> {
    let d = discriminant(f);
    if d.is_zero() {
        return Err(Error::Degenerate);
    }
    if !modp::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if d.is_multiple_of(&BigInt::from(p)) {
        return Err(Error::PrimeDividesDisc(p));
    }
    let c = [residue(&f.x0, p), residue(&f.x1, p), residue(&f.x2, p), residue(&f.x3, p)];
    Ok(symbol_from_root_count(projective_roots_mod_p(c, p)))
}

/// Unramified symbol from the number of roots over F_p.
pub(crate) fn symbol_from_root_count(n: usize) -> SplittingSymbol {
    match n {
        3 => SplittingSymbol::S111,
        1 => SplittingSymbol::S21,
        0 => SplittingSymbol::S3,
        _ => unreachable!("a separable cubic has 0, 1 or 3 roots"),
    }
}

pub fn quadratic_ramification(d: &BigRational, p: u64) -> Result<QuadraticType> {
    if d.is_zero() {
        return Err(Error::InvalidRequest("quadratic discriminant is zero".into()));
    }
    if !modp::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    // same square class as numerator * denominator
    let n = d.numer() * d.denom();
    let v = valuation(&n, p);
    if v % 2 == 1 {
        return Ok(QuadraticType::Ramified);
    }
    let pb = BigInt::from(p);
    let unit = &n / num_traits::pow(pb, v as usize);
    if p == 2 {
        return Ok(match residue(&unit, 8) {
            1 => QuadraticType::Split,
            5 => QuadraticType::Unramified,
            _ => QuadraticType::Ramified,
        });
    }
    Ok(if modp::legendre(residue(&unit, p), p) == 1 { QuadraticType::Split } else { QuadraticType::Unramified })
}

fn classify_at(f: &Form, p: u64, prec: u32) -> std::result::Result<Result<SplittingSymbol>, padic::Short> {
    let ring = padic::Ring::new(p);
    let affine = ring.approx(&[f.x3.clone(), f.x2.clone(), f.x1.clone(), f.x0.clone()], prec);
    let near_infinity = ring.approx(&[f.x0.clone(), f.x1.clone(), f.x2.clone(), f.x3.clone()], prec);
    let n = ring.count_roots(&affine, false)? + ring.count_roots(&near_infinity, true)?;
    Ok(match n {
        3 => Ok(SplittingSymbol::S111),
        1 => {
            let d = BigRational::from_integer(discriminant(f));
            match quadratic_ramification(&d, p) {
                Ok(QuadraticType::Unramified) => Ok(SplittingSymbol::S21),
                Ok(QuadraticType::Ramified) => Ok(SplittingSymbol::S121R),
                Ok(QuadraticType::Split) => {
                    Err(Error::CrossValidation(format!("{f} has one root over Q_{p} but a square discriminant")))
                }
                Err(e) => Err(e),
            }
        }
        0 => {
            let unram = ring.unramified_cubic_root(&affine, false)? || ring.unramified_cubic_root(&near_infinity, true)?;
            Ok(if unram { SplittingSymbol::S3 } else { SplittingSymbol::S13R })
        }
        n => Err(Error::CrossValidation(format!("{f} has {n} roots over Q_{p}"))),
    })
}

pub fn symbol_padic(f: &Form, ctx: &PAdicContext) -> Result<SplittingSymbol> {
    if discriminant(f).is_zero() {
        return Err(Error::Degenerate);
    }
    let mut prec = ctx.precision;
    loop {
        match classify_at(f, ctx.p, prec) {
            Ok(r) => return r,
            Err(padic::Short) if prec >= ctx.cap => {
                return Err(Error::PrecisionExhausted { p: ctx.p, cap: ctx.cap });
            }
            Err(padic::Short) => prec = (prec * 2).min(ctx.cap),
        }
    }
}

pub fn splitting_symbol(f: &Form, p: u64) -> Result<SplittingSymbol> {
    match symbol_mod_p(f, p) {
        Err(Error::PrimeDividesDisc(_)) => symbol_padic(f, &PAdicContext::for_form(f, p)?),
        r => r,
    }
}

#[cfg(test)]
mod props;

#[cfg(test)]
mod tests {
    use super::*;

    fn f(c: [i64; 4]) -> Form {
        Form::from(c)
    }

    fn padic(g: &Form, p: u64) -> SplittingSymbol {
        symbol_padic(g, &PAdicContext::for_form(g, p).unwrap()).unwrap()
    }

    #[test]
    fn arch_examples() {
        assert_eq!(arch_type(&f([1, 1, -2, -1])).unwrap(), ArchType::Real3);
        assert_eq!(arch_type(&f([1, 0, -1, -1])).unwrap(), ArchType::RealComplex);
        assert_eq!(arch_type(&f([1, 1, 1, 1])).unwrap(), ArchType::RealComplex);
    }

    #[test]
    fn mod_p_examples() {
        assert_eq!(symbol_mod_p(&f([1, 0, -1, -1]), 2).unwrap(), SplittingSymbol::S3);
        assert_eq!(symbol_mod_p(&f([1, 0, -1, -1]), 5).unwrap(), SplittingSymbol::S21);
        assert_eq!(symbol_mod_p(&f([0, 1, 0, -1]), 5).unwrap(), SplittingSymbol::S111);
        assert_eq!(symbol_mod_p(&f([1, 0, -1, -1]), 23), Err(Error::PrimeDividesDisc(23)));
    }

    #[test]
    fn padic_examples() {
        assert_eq!(padic(&f([1, 0, -1, -1]), 23), SplittingSymbol::S121R);
        assert_eq!(padic(&f([1, 1, -2, -1]), 7), SplittingSymbol::S13R);
        assert_eq!(padic(&f([1, 0, 1, 0]), 2), SplittingSymbol::S121R);
    }

    #[test]
    fn dispatcher_examples() {
        assert_eq!(splitting_symbol(&f([1, 1, -2, -1]), 2).unwrap(), SplittingSymbol::S3);
        assert_eq!(splitting_symbol(&f([1, 0, -1, -1]), 3).unwrap(), padic(&f([1, 0, -1, -1]), 3));
    }

    #[test]
    fn quadratic_examples() {
        let q = |n: i64| BigRational::from_integer(n.into());
        assert_eq!(quadratic_ramification(&q(5), 2).unwrap(), QuadraticType::Unramified);
        assert_eq!(quadratic_ramification(&q(2), 5).unwrap(), QuadraticType::Unramified);
        for p in [3u64, 5, 7] {
            assert_eq!(quadratic_ramification(&q(p as i64), p).unwrap(), QuadraticType::Ramified);
        }
        assert_eq!(quadratic_ramification(&q(17), 2).unwrap(), QuadraticType::Split);
        assert_eq!(quadratic_ramification(&q(-1), 2).unwrap(), QuadraticType::Ramified);
        let r = BigRational::new(BigInt::from(2), BigInt::from(9));
        assert_eq!(quadratic_ramification(&r, 5).unwrap(), QuadraticType::Unramified);
    }

    #[test]
    fn wild_and_index_cases() {
        // T^3 - 3 is totally ramified at 3; T^3 - 2 at 2
        assert_eq!(padic(&f([1, 0, 0, -3]), 3), SplittingSymbol::S13R);
        assert_eq!(padic(&f([1, 0, 0, -2]), 2), SplittingSymbol::S13R);
        // 8 v1^3 + ... from scaling v1 -> 2 v1 in T^3 + T + 1: still unramified at 2
        assert_eq!(padic(&f([8, 0, 2, 1]), 2), SplittingSymbol::S3);
        // content 7 does not change the local algebra
        assert_eq!(padic(&f([7, 0, -7, -7]), 7), symbol_mod_p(&f([1, 0, -1, -1]), 7).unwrap());
        // a root at infinity modulo p
        assert_eq!(padic(&f([5, 1, 0, -1]), 5), SplittingSymbol::S111);
    }

    #[test]
    fn symbols_round_trip() {
        for s in SplittingSymbol::ALL {
            assert_eq!(s.to_string().parse::<SplittingSymbol>().unwrap(), s);
            assert_eq!(s.label().parse::<SplittingSymbol>().unwrap(), s);
        }
    }

    #[test]
    fn precision_cap_is_hard_error() {
        let g = f([1, 0, 0, -2]);
        let ctx = PAdicContext::new(2, 1, 1).unwrap();
        assert_eq!(symbol_padic(&g, &ctx), Err(Error::PrecisionExhausted { p: 2, cap: 1 }));
    }
}
