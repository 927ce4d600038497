//! Exact rational functions over Q in one variable `u`, with `t = u^3`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::real::Real;

/// Dense polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly(Vec<BigRational>);

impl Poly {
    pub fn new(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        Poly(c)
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::new(vec![c])
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Poly::new(c.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    /// `c u^k`.
    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut v = vec![BigRational::zero(); k + 1];
        v[k] = c;
        Poly::new(v)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with the zero polynomial at `None`.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn lead(&self) -> Option<&BigRational> {
        self.0.last()
    }

    fn scale(&self, c: &BigRational) -> Poly {
        Poly::new(self.0.iter().map(|x| x * c).collect())
    }

    fn add_ref(&self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        let z = BigRational::zero();
        Poly::new((0..n).map(|i| self.0.get(i).unwrap_or(&z) + o.0.get(i).unwrap_or(&z)).collect())
    }

    fn mul_ref(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::default();
        }
        let mut v = vec![BigRational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Poly::new(v)
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dl = d.lead().expect("division by the zero polynomial").clone();
        let dn = d.0.len();
        let mut r = self.0.clone();
        if r.len() < dn {
            return (Poly::default(), self.clone());
        }
        let mut q = vec![BigRational::zero(); r.len() - dn + 1];
        for k in (0..q.len()).rev() {
            let c = &r[k + dn - 1] / &dl;
            if !c.is_zero() {
                for (j, dc) in d.0.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dn - 1);
        (Poly::new(q), Poly::new(r))
    }

    fn monic(&self) -> Poly {
        match self.lead() {
            Some(l) => self.scale(&l.recip()),
            None => Poly::default(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.0.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_real(&self, x: &Real) -> Real {
        let bits = x.bits();
        self.0
            .iter()
            .rev()
            .fold(Real::zero(bits), |acc, c| &(&acc * x) + &Real::from_ratio(c, bits))
    }

    /// Whether only powers of `u^3` occur.
    pub fn is_in_t(&self) -> bool {
        self.0.iter().enumerate().all(|(i, c)| i % 3 == 0 || c.is_zero())
    }

    fn fmt_in(&self, f: &mut fmt::Formatter<'_>, var: &str, step: usize) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = i / step;
            let neg = c.is_negative();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let a = c.abs();
            let show_coeff = k == 0 || !a.is_one();
            if show_coeff {
                if a.is_integer() {
                    write!(f, "{}", a.numer())?;
                } else {
                    write!(f, "{}/{}", a.numer(), a.denom())?;
                }
            }
            match k {
                0 => {}
                1 => write!(f, "{}{var}", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}{var}^{k}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

/// `num / den` in lowest terms with `den` monic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFn { num, den: Poly::constant(BigRational::one()) };
        }
        let g = num.gcd(&den);
        let (n, _) = num.div_rem(&g);
        let (d, _) = den.div_rem(&g);
        let l = d.lead().expect("nonzero").recip();
        RatFn { num: n.scale(&l), den: d.scale(&l) }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFn { num: p, den: Poly::constant(BigRational::one()) }
    }

    pub fn constant(c: BigRational) -> Self {
        RatFn::from_poly(Poly::constant(c))
    }

    pub fn int(c: i64) -> Self {
        RatFn::constant(BigRational::from_integer(c.into()))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        RatFn::constant(BigRational::new(n.into(), d.into()))
    }

    pub fn zero() -> Self {
        RatFn::int(0)
    }

    pub fn one() -> Self {
        RatFn::int(1)
    }

    /// `u^k`.
    pub fn u_pow(k: usize) -> Self {
        RatFn::from_poly(Poly::monomial(BigRational::one(), k))
    }

    /// `t^k = u^{3k}`.
    pub fn t_pow(k: usize) -> Self {
        RatFn::u_pow(3 * k)
    }

    /// `1 - u^k`.
    pub fn one_minus_u(k: usize) -> Self {
        RatFn::from_poly(Poly::constant(BigRational::one()).add_ref(&Poly::monomial(-BigRational::one(), k)))
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn recip(&self) -> RatFn {
        RatFn::new(self.den.clone(), self.num.clone())
    }

    pub fn powi(&self, k: i32) -> RatFn {
        let base = if k < 0 { self.recip() } else { self.clone() };
        (0..k.unsigned_abs()).fold(RatFn::one(), |acc, _| &acc * &base)
    }

    /// Value at `u`, or `None` at a pole.
    pub fn eval_u(&self, u: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(u);
        (!d.is_zero()).then(|| self.num.eval(u) / d)
    }

    /// Value at `t` for a function of `t = u^3` alone.
    pub fn eval_t(&self, t: &BigRational) -> Option<BigRational> {
        if !self.is_in_t() {
            return None;
        }
        let sub = |p: &Poly| Poly::new(p.0.iter().step_by(3).cloned().collect()).eval(t);
        let d = sub(&self.den);
        (!d.is_zero()).then(|| sub(&self.num) / d)
    }

    /// Value at `t = 1/q`, that is `u = q^{-1/3}`.
    pub fn eval_at_q(&self, q: u64, bits: u32) -> Real {
        if let Some(v) = self.eval_t(&BigRational::new(BigInt::one(), q.into())) {
            return Real::from_ratio(&v, bits);
        }
        let u = Real::from_int(q.into(), bits).cbrt().recip();
        &self.num.eval_real(&u) / &self.den.eval_real(&u)
    }

    pub fn is_in_t(&self) -> bool {
        self.num.is_in_t() && self.den.is_in_t()
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&RatFn> for &RatFn {
            type Output = RatFn;
            fn $m(self, o: &RatFn) -> RatFn {
                #[allow(clippy::redundant_closure_call)]
                ($body)(self, o)
            }
        }
        impl $tr for RatFn {
            type Output = RatFn;
            fn $m(self, o: RatFn) -> RatFn {
                (&self).$m(&o)
            }
        }
    };
}

binop!(Add, add, |a: &RatFn, b: &RatFn| {
    RatFn::new(a.num.mul_ref(&b.den).add_ref(&b.num.mul_ref(&a.den)), a.den.mul_ref(&b.den))
});
binop!(Sub, sub, |a: &RatFn, b: &RatFn| a + &(-b));
binop!(Mul, mul, |a: &RatFn, b: &RatFn| RatFn::new(a.num.mul_ref(&b.num), a.den.mul_ref(&b.den)));
binop!(Div, div, |a: &RatFn, b: &RatFn| {
    assert!(!b.is_zero(), "division by zero");
    RatFn::new(a.num.mul_ref(&b.den), a.den.mul_ref(&b.num))
});

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn { num: self.num.scale(&-BigRational::one()), den: self.den.clone() }
    }
}

impl Neg for RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        -&self
    }
}

impl std::iter::Sum for RatFn {
    fn sum<I: Iterator<Item = RatFn>>(it: I) -> RatFn {
        it.fold(RatFn::zero(), |a, b| a + b)
    }
}

impl fmt::Display for RatFn {
    /// Written in `t` when possible, otherwise in `u`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (var, step) = if self.is_in_t() { ("t", 3) } else { ("u", 1) };
        let den_one = self.den == Poly::constant(BigRational::one());
        if den_one {
            return self.num.fmt_in(f, var, step);
        }
        f.write_str("(")?;
        self.num.fmt_in(f, var, step)?;
        f.write_str(") / (")?;
        self.den.fmt_in(f, var, step)?;
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn geometric_sum_cancels() {
        // (1 - u^3) / (1 - u) = 1 + u + u^2
        let q = RatFn::one_minus_u(3) / RatFn::one_minus_u(1);
        assert_eq!(q, RatFn::from_poly(Poly::from_ints(&[1, 1, 1])));
    }

    #[test]
    fn field_laws() {
        let a = RatFn::one_minus_u(2) / RatFn::one_minus_u(5);
        let b = RatFn::u_pow(3) + RatFn::ratio(1, 7);
        assert_eq!(&(&a + &b) - &b, a);
        assert_eq!(&(&a * &b) / &b, a);
        assert_eq!(&a * &a.recip(), RatFn::one());
        assert_eq!(a.powi(-2), (&a * &a).recip());
    }

    #[test]
    fn evaluation() {
        let f = RatFn::one_minus_u(3).recip();
        assert_eq!(f.eval_t(&r(1, 2)), Some(r(2, 1)));
        assert_eq!(f.eval_u(&r(1, 2)), Some(r(8, 7)));
        assert_eq!(RatFn::one_minus_u(1).recip().eval_u(&r(1, 1)), None);
        assert!(RatFn::u_pow(1).eval_t(&r(1, 2)).is_none());
        let x = RatFn::u_pow(1).eval_at_q(8, 128);
        assert!((x.to_f64() - 0.5).abs() < 1e-30);
    }

    #[test]
    fn display() {
        assert_eq!(RatFn::one_minus_u(3).to_string(), "1 - t");
        let f = RatFn::ratio(1, 2) / RatFn::one_minus_u(1);
        assert_eq!(f.to_string(), "(-1/2) / (-1 + u)");
    }
}
