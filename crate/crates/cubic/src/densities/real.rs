//! Binary fixed-point reals on top of `BigInt`, and the handful of
//! transcendental constants needed over Q: pi, Gamma(1/3), Gamma(2/3) and
//! zeta(1/3), each with two independent evaluators.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Default working precision, about 57 decimal digits.
pub const WORK_BITS: u32 = 192;

/// The value `m / 2^bits`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Real {
    m: BigInt,
    bits: u32,
}

impl Real {
    pub fn zero(bits: u32) -> Self {
        Real { m: BigInt::zero(), bits }
    }

    pub fn from_int(n: BigInt, bits: u32) -> Self {
        Real { m: n << bits, bits }
    }

    pub fn from_i64(n: i64, bits: u32) -> Self {
        Real::from_int(n.into(), bits)
    }

    /// Rounded to nearest.
    pub fn from_ratio(r: &BigRational, bits: u32) -> Self {
        let n = r.numer() << (bits + 1);
        let q = n.div_floor(r.denom());
        Real { m: (q + 1) >> 1, bits }
    }

    /// Parses plain or scientific decimal notation.
    pub fn parse(s: &str, bits: u32) -> Result<Self> {
        let bad = || Error::InvalidFieldData(format!("not a decimal number: {s:?}"));
        let s = s.trim();
        let (mant, exp) = match s.find(['e', 'E']) {
            Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
            None => (s, 0),
        };
        let (neg, mant) = match mant.strip_prefix('-') {
            Some(r) => (true, r),
            None => (false, mant.strip_prefix('+').unwrap_or(mant)),
        };
        let (ip, fp) = mant.split_once('.').unwrap_or((mant, ""));
        if ip.is_empty() && fp.is_empty() || !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let digits: BigInt = format!("{ip}{fp}0").parse::<BigInt>().map_err(|_| bad())? / 10;
        let e10 = exp - fp.len() as i32;
        let ten = BigInt::from(10);
        let mut r = if e10 >= 0 {
            BigRational::from_integer(digits * num_traits::pow(ten, e10 as usize))
        } else {
            BigRational::new(digits, num_traits::pow(ten, (-e10) as usize))
        };
        if neg {
            r = -r;
        }
        Ok(Real::from_ratio(&r, bits))
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Same value at another precision (truncating when lowering).
    pub fn with_bits(&self, bits: u32) -> Real {
        let m = if bits >= self.bits { &self.m << (bits - self.bits) } else { &self.m >> (self.bits - bits) };
        Real { m, bits }
    }

    pub fn is_negative(&self) -> bool {
        self.m.is_negative()
    }

    pub fn abs(&self) -> Real {
        Real { m: self.m.abs(), bits: self.bits }
    }

    pub fn recip(&self) -> Real {
        &Real::from_i64(1, self.bits) / self
    }

    pub fn sqrt(&self) -> Real {
        assert!(!self.m.is_negative(), "square root of a negative number");
        Real { m: (&self.m << self.bits).sqrt(), bits: self.bits }
    }

    pub fn cbrt(&self) -> Real {
        Real { m: (&self.m << (2 * self.bits)).cbrt(), bits: self.bits }
    }

    pub fn powi(&self, k: i32) -> Real {
        let mut acc = Real::from_i64(1, self.bits);
        for _ in 0..k.unsigned_abs() {
            acc = &acc * self;
        }
        if k < 0 {
            acc.recip()
        } else {
            acc
        }
    }

    pub fn to_f64(&self) -> f64 {
        let shift = self.m.bits().saturating_sub(60);
        let top = (&self.m >> shift).to_f64().unwrap_or(0.0);
        top * 2f64.powi(shift as i32 - self.bits as i32)
    }

    /// Whether the two agree to `digits` significant decimal digits.
    pub fn agrees(&self, o: &Real, digits: u32) -> bool {
        let bits = self.bits.max(o.bits);
        let (a, b) = (self.with_bits(bits), o.with_bits(bits));
        let diff = (&a.m - &b.m).abs() * num_traits::pow(BigInt::from(10), digits as usize);
        let scale = a.m.abs().max(b.m.abs()).max(BigInt::one() << bits);
        diff <= scale
    }

    /// Decimal rendering with `digits` digits after the point, rounded.
    pub fn to_decimal(&self, digits: usize) -> String {
        let half = BigInt::one() << self.bits.saturating_sub(1);
        let scaled = (self.m.abs() * num_traits::pow(BigInt::from(10), digits) + half) >> self.bits;
        let s = format!("{:0>width$}", scaled.to_string(), width = digits + 1);
        let (ip, fp) = s.split_at(s.len() - digits);
        let sign = if self.m.sign() == Sign::Minus { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{ip}")
        } else {
            format!("{sign}{ip}.{fp}")
        }
    }

    /// Rendering with `sig` significant digits in scientific notation.
    pub fn to_sci(&self, sig: usize) -> String {
        if self.m.is_zero() {
            return "0".into();
        }
        let e = self.to_f64().abs().log10().floor() as i32;
        let scaled = self * &Real::from_i64(10, self.bits).powi(-e);
        let body = scaled.to_decimal(sig.saturating_sub(1));
        if e == 0 {
            body
        } else {
            format!("{body}e{e}")
        }
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, o: &Real) -> Option<Ordering> {
        let bits = self.bits.max(o.bits);
        Some(self.with_bits(bits).m.cmp(&o.with_bits(bits).m))
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal(f.precision().unwrap_or(30)))
    }
}

fn same(a: &Real, b: &Real) -> u32 {
    assert_eq!(a.bits, b.bits, "mixed precisions");
    a.bits
}

impl Add for &Real {
    type Output = Real;
    fn add(self, o: &Real) -> Real {
        Real { m: &self.m + &o.m, bits: same(self, o) }
    }
}

impl Sub for &Real {
    type Output = Real;
    fn sub(self, o: &Real) -> Real {
        Real { m: &self.m - &o.m, bits: same(self, o) }
    }
}

impl Mul for &Real {
    type Output = Real;
    fn mul(self, o: &Real) -> Real {
        let bits = same(self, o);
        Real { m: (&self.m * &o.m) >> bits, bits }
    }
}

impl Div for &Real {
    type Output = Real;
    fn div(self, o: &Real) -> Real {
        let bits = same(self, o);
        assert!(!o.m.is_zero(), "division by zero");
        Real { m: (&self.m << bits).div_floor(&o.m), bits }
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real { m: -&self.m, bits: self.bits }
    }
}

macro_rules! owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Real {
            type Output = Real;
            fn $m(self, o: Real) -> Real {
                (&self).$m(&o)
            }
        }
    };
}
owned!(Add, add);
owned!(Sub, sub);
owned!(Mul, mul);
owned!(Div, div);

const GUARD: u32 = 32;

/// `atan(1/n)` by its Taylor series.
fn atan_inv(n: u64, bits: u32) -> BigInt {
    let one = BigInt::one() << bits;
    let n2 = BigInt::from(n * n);
    let mut pow = one / n;
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !pow.is_zero() {
        let term = &pow / (2 * k + 1);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        pow /= &n2;
        k += 1;
    }
    sum
}

/// Machin's formula.
pub fn pi(bits: u32) -> Real {
    let w = bits + GUARD;
    let m = 16 * atan_inv(5, w) - 4 * atan_inv(239, w);
    Real { m, bits: w }.with_bits(bits)
}

fn e_pow(x: u64, bits: u32) -> Real {
    let one = BigInt::one() << bits;
    let mut term = one.clone();
    let mut sum = one;
    let mut k = 1u64;
    while !term.is_zero() {
        term /= k;
        sum += &term;
        k += 1;
    }
    Real { m: sum, bits }.powi(x as i32)
}

/// `Gamma(a/3)` for `a` in {1, 2} from the lower incomplete gamma series
/// `gamma(z, X) = X^z e^{-X} sum_k X^k / (z (z+1) ... (z+k))`; the dropped
/// upper part is below `X^{z-1} e^{-X}`.
pub fn gamma_third_series(a: u32, bits: u32) -> Real {
    assert!(a == 1 || a == 2, "only Gamma(1/3) and Gamma(2/3)");
    let x = (f64::from(bits) * std::f64::consts::LN_2).ceil() as u64 + 16;
    // the partial sums reach e^X, which the fixed-point width absorbs
    let w = bits + GUARD;
    let a = u64::from(a);
    // term_k = X^k / prod_{j<=k} (z + j), with z + j = (a + 3j) / 3
    let mut term = (BigInt::from(3u32) << w) / a;
    let mut sum = term.clone();
    let mut k = 1u64;
    loop {
        term = term * (3 * x) / (a + 3 * k);
        sum += &term;
        if k > x && term.is_zero() {
            break;
        }
        k += 1;
    }
    let s = Real { m: sum, bits: w };
    let xz = Real::from_int(BigInt::from(x).pow(a as u32), w).cbrt();
    (&(&s * &xz) / &e_pow(x, w)).with_bits(bits)
}

fn agm(a: &Real, b: &Real) -> Real {
    let (mut a, mut b) = (a.clone(), b.clone());
    let two = Real::from_i64(2, a.bits);
    while (&a - &b).abs().m > BigInt::one() {
        let an = &(&a + &b) / &two;
        b = (&a * &b).sqrt();
        a = an;
    }
    a
}

/// `Gamma(1/3)` from the complete elliptic integral at the singular value
/// `k = sin 15deg`: `Gamma(1/3)^3 = 2^{4/3} pi^2 / (3^{1/4} AGM(1, cos 15deg))`.
pub fn gamma_third_agm(bits: u32) -> Real {
    let w = bits + GUARD;
    let r = |n: i64| Real::from_i64(n, w);
    let kp = &(&r(6).sqrt() + &r(2).sqrt()) / &r(4);
    let m = agm(&r(1), &kp);
    let p = pi(w);
    let num = &(&r(16).cbrt() * &p) * &p;
    let den = &r(3).sqrt().sqrt() * &m;
    (&num / &den).cbrt().with_bits(bits)
}

/// Eta acceleration (Borwein): `eta(1/3)` from `n` weighted terms, then
/// `zeta = eta / (1 - 2^{2/3})`.
pub fn zeta_third_eta(bits: u32) -> Real {
    let w = bits + GUARD;
    // error about 3 / (3 + sqrt 8)^n
    let n = (f64::from(w) / (3.0 + 8f64.sqrt()).log2()).ceil() as u64 + 4;
    let fact = |k: u64| (1..=k).fold(BigInt::one(), |acc, i| acc * i);
    let mut d = Vec::with_capacity(n as usize + 1);
    let mut acc = BigInt::zero();
    for i in 0..=n {
        let t = fact(n + i - 1) * BigInt::from(4u32).pow(i as u32) / (fact(n - i) * fact(2 * i));
        acc += t;
        d.push(&acc * n);
    }
    let dn = d[n as usize].clone();
    let mut sum = Real::zero(w);
    for k in 0..n {
        let c = Real::from_int(&d[k as usize] - &dn, w);
        let term = &c / &Real::from_i64(k as i64 + 1, w).cbrt();
        sum = if k % 2 == 0 { &sum + &term } else { &sum - &term };
    }
    let eta = -&(&sum / &Real::from_int(dn, w));
    let denom = &Real::from_i64(1, w) - &Real::from_i64(4, w).cbrt();
    (&eta / &denom).with_bits(bits)
}

/// Bernoulli numbers `B_0 .. B_n` with `B_1 = -1/2`.
pub fn bernoulli(n: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(n + 1);
    let mut binom = vec![BigInt::one()];
    for m in 0..=n {
        // row m + 1 of Pascal's triangle
        let mut next = vec![BigInt::one(); m + 2];
        for j in 1..=m {
            next[j] = &binom[j - 1] + &binom[j];
        }
        binom = next;
        if m == 0 {
            b.push(BigRational::one());
            continue;
        }
        let s: BigRational = (0..m).map(|j| BigRational::from_integer(binom[j].clone()) * &b[j]).sum();
        b.push(-s / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b
}

/// Euler-Maclaurin at `N = 64`: with `s = 1/3` every correction term is a
/// rational multiple of `N^{-1/3}`.
pub fn zeta_third_euler_maclaurin(bits: u32) -> Real {
    let w = bits + GUARD;
    let n: i64 = 64;
    let terms = (f64::from(w) / 8.0).ceil() as usize + 4;
    let bern = bernoulli(2 * terms);
    let s = BigRational::new(1.into(), 3.into());
    let nr = BigRational::from_integer(n.into());
    let mut corr = &nr / (&s - BigRational::one()) + BigRational::new(1.into(), 2.into());
    // rising = s (s+1) ... (s+2j-2), fact = (2j)!
    let mut rising = s.clone();
    let mut fact = BigRational::from_integer(2.into());
    let mut npow = nr.clone();
    for j in 1..=terms {
        corr += &bern[2 * j] / &fact * &rising / &npow;
        let k = BigRational::from_integer(BigInt::from(2 * j));
        rising = rising * (&s + &k - BigRational::one()) * (&s + &k);
        fact = fact * (&k + BigRational::one()) * (&k + BigRational::from_integer(2.into()));
        npow = npow * &nr * &nr;
    }
    let mut sum = Real::zero(w);
    for k in 1..n {
        sum = &sum + &Real::from_i64(k, w).cbrt().recip();
    }
    let tail = &Real::from_ratio(&corr, w) / &Real::from_i64(n, w).cbrt();
    (&sum + &tail).with_bits(bits)
}

#[cfg(test)]
mod tests {
    use super::*;

    const PI50: &str = "3.14159265358979323846264338327950288419716939937511";
    const GAMMA_THIRD50: &str = "2.67893853470774763365569294097467764412868937795730";
    const ZETA_THIRD40: &str = "-0.9733602483507827154688868624478965707728";

    #[test]
    fn pi_digits() {
        assert_eq!(pi(WORK_BITS).to_decimal(50), PI50);
    }

    #[test]
    fn gamma_third_two_ways() {
        let a = gamma_third_series(1, WORK_BITS);
        let b = gamma_third_agm(WORK_BITS);
        assert_eq!(a.to_decimal(50), GAMMA_THIRD50);
        assert!(a.agrees(&b, 50));
    }

    #[test]
    fn gamma_reflection() {
        let g1 = gamma_third_series(1, WORK_BITS);
        let g2 = gamma_third_series(2, WORK_BITS);
        let rhs = &(&Real::from_i64(2, WORK_BITS) * &pi(WORK_BITS)) / &Real::from_i64(3, WORK_BITS).sqrt();
        assert!((&g1 * &g2).agrees(&rhs, 50));
    }

    #[test]
    fn zeta_third_two_ways() {
        let a = zeta_third_eta(WORK_BITS);
        let b = zeta_third_euler_maclaurin(WORK_BITS);
        assert_eq!(a.to_decimal(40), ZETA_THIRD40);
        assert!(a.agrees(&b, 50), "{a} vs {b}");
    }

    #[test]
    fn bernoulli_values() {
        let b = bernoulli(12);
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(b[1], r(-1, 2));
        assert_eq!(b[2], r(1, 6));
        assert_eq!(b[3], r(0, 1));
        assert_eq!(b[12], r(-691, 2730));
    }

    #[test]
    fn parse_and_render() {
        let x = Real::parse("-1.25e-2", 64).unwrap();
        assert_eq!(x.to_decimal(5), "-0.01250");
        assert_eq!(Real::parse("3", 64).unwrap().to_sci(3), "3.00");
        assert!(Real::parse("1.2.3", 64).is_err());
        assert!((Real::from_i64(2, 100).cbrt().to_f64() - 2f64.cbrt()).abs() < 1e-15);
    }
}
