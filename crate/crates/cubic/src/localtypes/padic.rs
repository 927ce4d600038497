//! Root counting over Z_p and in the unramified cubic extension, with
//! coefficients known modulo a finite power of p.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::modp;

/// Raised when the working precision cannot settle the answer.
#[derive(Debug)]
pub(crate) struct Short;

/// A polynomial (low degree first) known modulo `p^prec`.
#[derive(Clone, Debug)]
pub(crate) struct Approx {
    pub coeffs: Vec<BigInt>,
    pub prec: u32,
}

pub(crate) struct Ring {
    pub p: u64,
    pb: BigInt,
}

impl Ring {
    pub fn new(p: u64) -> Self {
        Ring { p, pb: BigInt::from(p) }
    }

    fn modulus(&self, prec: u32) -> BigInt {
        num_traits::pow(self.pb.clone(), prec as usize)
    }

    pub fn approx(&self, coeffs: &[BigInt], prec: u32) -> Approx {
        let m = self.modulus(prec);
        Approx { coeffs: coeffs.iter().map(|c| c.mod_floor(&m)).collect(), prec }
    }

    fn valuation(&self, c: &BigInt, cap: u32) -> u32 {
        if c.is_zero() {
            return cap;
        }
        let mut v = 0;
        let mut c = c.clone();
        while v < cap && (&c % &self.pb).is_zero() {
            c /= &self.pb;
            v += 1;
        }
        v
    }

    /// Divides out the largest power of p dividing every coefficient.
    fn primitive(&self, f: &Approx) -> Result<Approx, Short> {
        let v = f.coeffs.iter().map(|c| self.valuation(c, f.prec)).min().unwrap_or(f.prec);
        if v >= f.prec {
            return Err(Short);
        }
        let d = self.modulus(v);
        Ok(Approx { coeffs: f.coeffs.iter().map(|c| c / &d).collect(), prec: f.prec - v })
    }

    fn residues(&self, f: &Approx) -> Vec<u64> {
        f.coeffs.iter().map(|c| c.mod_floor(&self.pb).to_u64().expect("residue fits")).collect()
    }

    /// `f(r + p T)`.
    fn shift(&self, f: &Approx, r: u64) -> Approx {
        let r = BigInt::from(r);
        let mut c = f.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let t = &c[j + 1] * &r;
                c[j] += t;
            }
        }
        let mut pk = BigInt::one();
        for ck in c.iter_mut() {
            *ck *= &pk;
            pk *= &self.pb;
        }
        self.approx(&c, f.prec)
    }

    /// Number of roots in Z_p, optionally only those congruent to 0.
    pub fn count_roots(&self, f: &Approx, only_zero: bool) -> Result<u32, Short> {
        let f = self.primitive(f)?;
        let res = self.residues(&f);
        let cands = if only_zero {
            if modp::eval(&res, 0, self.p) == 0 { vec![0] } else { vec![] }
        } else {
            modp::roots(&res, self.p)
        };
        let der = modp::derivative(&res, self.p);
        let mut total = 0;
        for r in cands {
            if modp::eval(&der, r, self.p) != 0 {
                total += 1;
            } else {
                total += self.count_roots(&self.shift(&f, r), false)?;
            }
        }
        Ok(total)
    }

    /// For `f` with no root in Z_p (nor at infinity): whether it has a
    /// root in the unramified cubic extension. Below each multiple residue
    /// root the only way to meet such a root is a reduction that is an
    /// irreducible cubic over F_p.
    pub fn unramified_cubic_root(&self, f: &Approx, only_zero: bool) -> Result<bool, Short> {
        let f = self.primitive(f)?;
        let mut res = self.residues(&f);
        while res.last() == Some(&0) {
            res.pop();
        }
        let roots = if only_zero {
            if modp::eval(&res, 0, self.p) == 0 { vec![0] } else { vec![] }
        } else {
            modp::roots(&res, self.p)
        };
        if res.len() == 4 && roots.is_empty() && !only_zero {
            return Ok(true);
        }
        for r in roots {
            if self.unramified_cubic_root(&self.shift(&f, r), false)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn hensel_counts() {
        let r = Ring::new(7);
        // (T - 1)(T - 2)(T - 3)
        assert_eq!(r.count_roots(&r.approx(&big(&[-6, 11, -6, 1]), 20), false).unwrap(), 3);
        // T^2 - 2 has two 7-adic roots (3^2 = 2 mod 7), times T - 7
        assert_eq!(r.count_roots(&r.approx(&big(&[14, -2, -7, 1]), 20), false).unwrap(), 3);
        // T^3 - 7 has none
        assert_eq!(r.count_roots(&r.approx(&big(&[-7, 0, 0, 1]), 20), false).unwrap(), 0);
    }

    #[test]
    fn multiple_residue_root() {
        let r = Ring::new(5);
        // (T - 1)(T - 6)(T - 26): all congruent to 1 mod 5
        let f = big(&[-156, 188, -33, 1]);
        assert_eq!(r.count_roots(&r.approx(&f, 30), false).unwrap(), 3);
    }

    #[test]
    fn precision_shortfall_reported() {
        let r = Ring::new(5);
        let f = big(&[-156, 188, -33, 1]);
        assert!(r.count_roots(&r.approx(&f, 1), false).is_err());
    }

    #[test]
    fn unramified_versus_ramified() {
        let r = Ring::new(2);
        // T^3 + T + 1 is irreducible mod 2
        assert!(r.unramified_cubic_root(&r.approx(&big(&[1, 1, 0, 1]), 20), false).unwrap());
        // T^3 - 2 is Eisenstein
        assert!(!r.unramified_cubic_root(&r.approx(&big(&[-2, 0, 0, 1]), 20), false).unwrap());
        let r7 = Ring::new(7);
        assert!(!r7.unramified_cubic_root(&r7.approx(&big(&[-7, 0, 0, 1]), 20), false).unwrap());
    }
}
