//! Exact sign of a quadratic polynomial evaluated at the real root of a
//! cubic with negative discriminant. No square roots are ever taken.

use std::cmp::Ordering;

use super::arith::{Coeffs, Quad};
use super::int::Int;

fn sgn<T: Int>(v: &T) -> i32 {
    match v.cmp(&T::zero()) {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

/// `sign(theta - p/q)` for `q > 0`.
fn cmp_rational<T: Int>(f: &Coeffs<T>, p: &T, q: &T) -> i32 {
    let [a, b, c, d] = f;
    let val = a.clone() * p.clone() * p.clone() * p.clone()
        + b.clone() * p.clone() * p.clone() * q.clone()
        + c.clone() * p.clone() * q.clone() * q.clone()
        + d.clone() * q.clone() * q.clone() * q.clone();
    -sgn(a) * sgn(&val)
}

/// sign of `x + z sqrt(delta)` with `delta > 0`.
fn sign_surd<T: Int>(x: &T, z: &T, delta: &T) -> i32 {
    let (sx, sz) = (sgn(x), sgn(z));
    if sz == 0 {
        return sx;
    }
    if sx == 0 || sx == sz {
        return if sx == 0 { sz } else { sx };
    }
    let diff = x.clone() * x.clone() - z.clone() * z.clone() * delta.clone();
    sx * sgn(&diff)
}

/// `sign(theta - (u + eps sqrt(delta)) / w)`, `w != 0`, `delta > 0`.
fn cmp_surd<T: Int>(f: &Coeffs<T>, u: &T, w: &T, delta: &T, eps: i32) -> i32 {
    let [a, b, c, d] = f;
    let three = T::int(3);
    let x = a.clone() * (u.clone() * u.clone() * u.clone() + three.clone() * u.clone() * delta.clone())
        + b.clone() * w.clone() * (u.clone() * u.clone() + delta.clone())
        + c.clone() * w.clone() * w.clone() * u.clone()
        + d.clone() * w.clone() * w.clone() * w.clone();
    let y = a.clone() * (three * u.clone() * u.clone() + delta.clone())
        + T::int(2) * b.clone() * w.clone() * u.clone()
        + c.clone() * w.clone() * w.clone();
    let z = if eps < 0 { -y } else { y };
    let f_at = sgn(w) * sign_surd(&x, &z, delta);
    -sgn(a) * f_at
}

/// Sign of `e0 + e1 theta + e2 theta^2`, where theta is the unique real
/// root of `a T^3 + b T^2 + c T + d` (`a != 0`, negative discriminant).
pub(crate) fn sign_at_root<T: Int>(f: &Coeffs<T>, e: &Quad<T>) -> i32 {
    let [e0, e1, e2] = e;
    if e2.is_zero() {
        if e1.is_zero() {
            return sgn(e0);
        }
        let (p, q) = if e1.is_negative() { (e0.clone(), -e1.clone()) } else { (-e0.clone(), e1.clone()) };
        return sgn(e1) * cmp_rational(f, &p, &q);
    }
    let delta = e1.clone() * e1.clone() - T::int(4) * e2.clone() * e0.clone();
    if delta.is_negative() {
        return sgn(e2);
    }
    let u = -e1.clone();
    let w = T::int(2) * e2.clone();
    if delta.is_zero() {
        let (p, q) = if w.is_negative() { (-u, -w) } else { (u, w) };
        return if cmp_rational(f, &p, &q) == 0 { 0 } else { sgn(e2) };
    }
    sgn(e2) * cmp_surd(f, &u, &w, &delta, 1) * cmp_surd(f, &u, &w, &delta, -1)
}

/// Floating estimate of the real root, for guidance only.
pub(crate) fn approx_root(f: &[f64; 4]) -> f64 {
    let [a, b, c, d] = *f;
    let (b, c, d) = (b / a, c / a, d / a);
    let p = c - b * b / 3.0;
    let q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    let disc = q * q / 4.0 + p * p * p / 27.0;
    let mut t = if disc >= 0.0 {
        let s = disc.sqrt();
        (-q / 2.0 + s).cbrt() + (-q / 2.0 - s).cbrt()
    } else {
        0.0
    } - b / 3.0;
    for _ in 0..4 {
        let fv = ((t + b) * t + c) * t + d;
        let dv = (3.0 * t + 2.0 * b) * t + c;
        if dv == 0.0 || !fv.is_finite() {
            break;
        }
        let nt = t - fv / dv;
        if !nt.is_finite() {
            break;
        }
        t = nt;
    }
    t
}
