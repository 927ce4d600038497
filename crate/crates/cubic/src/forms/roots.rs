//! Rational points of a binary cubic on the projective line.

use super::arith::{Coeffs, Quad};
use super::int::Int;

const CERT_PRIMES: [i64; 15] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];

fn residue<T: Int>(v: &T, l: i64) -> i64 {
    v.mod_floor(&T::int(l)).to_i64().expect("residue fits")
}

/// True when some prime proves that `f` has no rational projective root.
fn no_root_certificate<T: Int>(x: &Coeffs<T>) -> bool {
    CERT_PRIMES.iter().any(|&l| {
        let r = [residue(&x[0], l), residue(&x[1], l), residue(&x[2], l), residue(&x[3], l)];
        if r.iter().all(|&c| c == 0) || r[0] == 0 {
            return false;
        }
        (0..l).all(|t| ((((r[0] * t + r[1]) % l) * t + r[2]) % l * t + r[3]) % l != 0)
    })
}

fn divisors<T: Int>(n: &T) -> Vec<T> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = T::one();
    while i.clone() * i.clone() <= n {
        if n.is_multiple_of(&i) {
            let j = n.clone() / i.clone();
            if j != i {
                large.push(j);
            }
            small.push(i.clone());
        }
        i = i + T::one();
    }
    small.extend(large.into_iter().rev());
    small
}

fn eval_hom<T: Int>(x: &Coeffs<T>, p: &T, q: &T) -> T {
    let [a, b, c, d] = x;
    ((a.clone() * p.clone() + b.clone() * q.clone()) * p.clone() + c.clone() * q.clone() * q.clone()) * p.clone()
        + d.clone() * q.clone() * q.clone() * q.clone()
}

/// A primitive `(p, q)` with `f(p, q) = 0`, if one exists. The point at
/// infinity is `(1, 0)`.
pub(crate) fn rational_root<T: Int>(x: &Coeffs<T>) -> Option<(T, T)> {
    if x[0].is_zero() {
        return Some((T::one(), T::zero()));
    }
    if x[3].is_zero() {
        return Some((T::zero(), T::one()));
    }
    if no_root_certificate(x) {
        return None;
    }
    let dens = divisors(&x[0]);
    let nums = divisors(&x[3]);
    for q in &dens {
        for p in &nums {
            if !p.gcd(q).is_one() {
                continue;
            }
            for p in [p.clone(), -p.clone()] {
                if eval_hom(x, &p, q).is_zero() {
                    return Some((p, q.clone()));
                }
            }
        }
    }
    None
}

/// Quadratic `Q` with `f = (q v1 - p v2) Q` for a root `(p, q)`.
pub(crate) fn cofactor<T: Int>(x: &Coeffs<T>, root: &(T, T)) -> Quad<T> {
    let (p, q) = root;
    if q.is_zero() {
        // root at infinity; the linear factor is taken as -v2 (p = 1)
        let s = if p.is_negative() { T::one() } else { -T::one() };
        return [s.clone() * x[1].clone(), s.clone() * x[2].clone(), s * x[3].clone()];
    }
    let a = x[0].clone() / q.clone();
    let b = (x[1].clone() + p.clone() * a.clone()) / q.clone();
    let c = (x[2].clone() + p.clone() * b.clone()) / q.clone();
    [a, b, c]
}
