//! Coefficient-level arithmetic shared by the `i128` and `BigInt` paths.
//!
//! A matrix `[a, b, c, d]` stands for the row-vector substitution
//! `(v1, v2) -> (a v1 + c v2, b v1 + d v2)`.

use std::sync::OnceLock;

use super::int::Int;

pub(crate) type Coeffs<T> = [T; 4];
pub(crate) type Quad<T> = [T; 3];
pub(crate) type Mat<T> = [T; 4];

pub(crate) fn disc<T: Int>(x: &Coeffs<T>) -> T {
    let [a, b, c, d] = x;
    let bc = b.clone() * c.clone();
    let ad = a.clone() * d.clone();
    bc.clone() * bc.clone() - T::int(4) * a.clone() * c.clone() * c.clone() * c.clone()
        - T::int(4) * b.clone() * b.clone() * b.clone() * d.clone()
        + T::int(18) * ad.clone() * bc
        - T::int(27) * ad.clone() * ad
}

pub(crate) fn hessian<T: Int>(x: &Coeffs<T>) -> Quad<T> {
    let [a, b, c, d] = x;
    [
        b.clone() * b.clone() - T::int(3) * a.clone() * c.clone(),
        b.clone() * c.clone() - T::int(9) * a.clone() * d.clone(),
        c.clone() * c.clone() - T::int(3) * b.clone() * d.clone(),
    ]
}

pub(crate) fn det<T: Int>(g: &Mat<T>) -> T {
    g[0].clone() * g[3].clone() - g[1].clone() * g[2].clone()
}

/// `g * h` as 2x2 matrices.
pub(crate) fn mat_mul<T: Int>(g: &Mat<T>, h: &Mat<T>) -> Mat<T> {
    let [a1, b1, c1, d1] = g;
    let [a2, b2, c2, d2] = h;
    [
        a1.clone() * a2.clone() + b1.clone() * c2.clone(),
        a1.clone() * b2.clone() + b1.clone() * d2.clone(),
        c1.clone() * a2.clone() + d1.clone() * c2.clone(),
        c1.clone() * b2.clone() + d1.clone() * d2.clone(),
    ]
}

fn lin_mul<T: Int>(p: &[T], l: &[T; 2]) -> Vec<T> {
    let mut out = vec![T::zero(); p.len() + 1];
    for (i, c) in p.iter().enumerate() {
        out[i] = out[i].clone() + c.clone() * l[0].clone();
        out[i + 1] = out[i + 1].clone() + c.clone() * l[1].clone();
    }
    out
}

/// Twisted action `(g f)(v) = det(g)^{-1} f(v g)`; `g` must be unimodular.
pub(crate) fn act<T: Int>(g: &Mat<T>, x: &Coeffs<T>) -> Coeffs<T> {
    let l1 = [g[0].clone(), g[2].clone()];
    let l2 = [g[1].clone(), g[3].clone()];
    let mut out: Coeffs<T> = [T::zero(), T::zero(), T::zero(), T::zero()];
    for (k, xk) in x.iter().enumerate() {
        if xk.is_zero() {
            continue;
        }
        let mut p = vec![T::one()];
        for _ in 0..(3 - k) {
            p = lin_mul(&p, &l1);
        }
        for _ in 0..k {
            p = lin_mul(&p, &l2);
        }
        for (o, c) in out.iter_mut().zip(p) {
            *o = o.clone() + xk.clone() * c;
        }
    }
    let dt = det(g);
    if dt.is_negative() {
        for o in out.iter_mut() {
            *o = -o.clone();
        }
    }
    out
}

/// `(q o g)(v) = q(v g)`.
pub(crate) fn quad_compose<T: Int>(q: &Quad<T>, g: &Mat<T>) -> Quad<T> {
    let [p, qq, r] = q;
    let [a, b, c, d] = g;
    let two = T::int(2);
    [
        p.clone() * a.clone() * a.clone() + qq.clone() * a.clone() * b.clone() + r.clone() * b.clone() * b.clone(),
        two.clone() * p.clone() * a.clone() * c.clone()
            + qq.clone() * (a.clone() * d.clone() + b.clone() * c.clone())
            + two * r.clone() * b.clone() * d.clone(),
        p.clone() * c.clone() * c.clone() + qq.clone() * c.clone() * d.clone() + r.clone() * d.clone() * d.clone(),
    ]
}

/// Closed Gauss domain `|Q| <= P <= R` for a positive definite form.
pub(crate) fn is_reduced_definite<T: Int>(q: &Quad<T>) -> bool {
    q[1].abs() <= q[0] && q[0] <= q[2]
}

/// Unimodular matrices with entries in {-1, 0, 1}. Every automorph of a
/// reduced definite form, and every change of basis between two reduced
/// forms in one class, lies in this set.
pub(crate) fn small_unimodular() -> &'static [[i64; 4]] {
    static SET: OnceLock<Vec<[i64; 4]>> = OnceLock::new();
    SET.get_or_init(|| {
        let mut v = Vec::new();
        for a in -1..=1i64 {
            for b in -1..=1i64 {
                for c in -1..=1i64 {
                    for d in -1..=1i64 {
                        if (a * d - b * c).abs() == 1 {
                            v.push([a, b, c, d]);
                        }
                    }
                }
            }
        }
        v
    })
}

pub(crate) fn lift<T: Int>(g: &[i64; 4]) -> Mat<T> {
    [T::int(g[0]), T::int(g[1]), T::int(g[2]), T::int(g[3])]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: [i64; 4]) -> Coeffs<i128> {
        v.map(i128::from)
    }

    #[test]
    fn discriminant_values() {
        assert_eq!(disc(&c([1, 1, 1, 1])), -16);
        assert_eq!(disc(&c([1, 0, 0, 0])), 0);
        assert_eq!(disc(&c([1, 1, -2, -1])), 49);
        assert_eq!(disc(&c([1, 0, -1, -1])), -23);
    }

    #[test]
    fn swap_and_reflection() {
        assert_eq!(act(&c([0, 1, 1, 0]), &c([1, 2, 3, 4])), c([-4, -3, -2, -1]));
        assert_eq!(act(&c([-1, 0, 0, 1]), &c([1, 0, -1, -1])), c([1, 0, -1, 1]));
        assert_eq!(act(&c([1, 0, 0, 1]), &c([3, -1, 4, 1])), c([3, -1, 4, 1]));
    }

    #[test]
    fn hessian_discriminants() {
        for (f, want) in [([1, 0, -1, -1], 69), ([1, 1, 1, 1], 48)] {
            let h = hessian(&c(f));
            assert_eq!(h[1] * h[1] - 4 * h[0] * h[2], want);
        }
    }

    #[test]
    fn small_set_size() {
        // 20 matrices of determinant 1 and 20 of determinant -1
        assert_eq!(small_unimodular().len(), 40);
    }

    #[test]
    fn action_composes() {
        let f = c([2, -3, 5, 7]);
        let g = c([2, 1, 1, 1]);
        let h = c([0, -1, 1, 3]);
        assert_eq!(act(&g, &act(&h, &f)), act(&mat_mul(&g, &h), &f));
    }

    #[test]
    fn hessian_is_covariant() {
        let f = c([2, -3, 5, 7]);
        let g = c([3, 2, 1, 1]);
        assert_eq!(hessian(&act(&g, &f)), quad_compose(&hessian(&f), &g));
    }
}
