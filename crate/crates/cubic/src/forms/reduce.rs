//! Covariant reduction. For positive discriminant the covariant is the
//! (positive definite) Hessian; for negative discriminant it is the
//! positive definite real quadratic factor `q` in `f = l * q`. Reduced
//! means the covariant lies in the closed Gauss domain `|B| <= A <= C`.

use super::arith::{act, hessian, is_reduced_definite, lift, mat_mul, quad_compose, small_unimodular, Coeffs, Mat, Quad};
use super::int::Int;
use super::realroot::{approx_root, sign_at_root};

/// The real quadratic factor of `f`, as polynomials in the real root
/// theta (coefficient of theta^0, theta^1, theta^2), and the sign making
/// it positive definite. For `x0 = 0` the factor is rational.
fn real_factor<T: Int>(f: &Coeffs<T>) -> ([Quad<T>; 3], i32) {
    let [a, b, c, d] = f;
    let z = T::zero;
    if a.is_zero() {
        let s = if b.is_negative() { -1 } else { 1 };
        ([[b.clone(), z(), z()], [c.clone(), z(), z()], [d.clone(), z(), z()]], s)
    } else {
        let s = if a.is_negative() { -1 } else { 1 };
        ([[a.clone(), z(), z()], [b.clone(), a.clone(), z()], [c.clone(), b.clone(), a.clone()]], s)
    }
}

fn compose_factor<T: Int>(q: &[Quad<T>; 3], g: &Mat<T>) -> [Quad<T>; 3] {
    let cols: Vec<Quad<T>> = (0..3)
        .map(|k| quad_compose(&[q[0][k].clone(), q[1][k].clone(), q[2][k].clone()], g))
        .collect();
    let row = |i: usize| [cols[0][i].clone(), cols[1][i].clone(), cols[2][i].clone()];
    [row(0), row(1), row(2)]
}

fn sub<T: Int>(x: &Quad<T>, y: &Quad<T>) -> Quad<T> {
    [x[0].clone() - y[0].clone(), x[1].clone() - y[1].clone(), x[2].clone() - y[2].clone()]
}

fn add<T: Int>(x: &Quad<T>, y: &Quad<T>) -> Quad<T> {
    [x[0].clone() + y[0].clone(), x[1].clone() + y[1].clone(), x[2].clone() + y[2].clone()]
}

fn factor_sign<T: Int>(f: &Coeffs<T>, e: &Quad<T>, s: i32) -> i32 {
    if f[0].is_zero() {
        s * e[0].sign_cmp()
    } else {
        s * sign_at_root(f, e)
    }
}

trait SignCmp {
    fn sign_cmp(&self) -> i32;
}

impl<T: Int> SignCmp for T {
    fn sign_cmp(&self) -> i32 {
        if self.is_negative() {
            -1
        } else if self.is_zero() {
            0
        } else {
            1
        }
    }
}

/// Signs of `A - B`, `A + B`, `C - A` for the normalized real factor.
fn factor_gaps<T: Int>(f: &Coeffs<T>, q: &[Quad<T>; 3], s: i32) -> [i32; 3] {
    [
        factor_sign(f, &sub(&q[0], &q[1]), s),
        factor_sign(f, &add(&q[0], &q[1]), s),
        factor_sign(f, &sub(&q[2], &q[0]), s),
    ]
}

fn to_f64<T: Int>(v: &T) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

/// Floating `(A, B)` of the normalized real factor.
fn approx_factor<T: Int>(f: &Coeffs<T>) -> (f64, f64) {
    let x = [to_f64(&f[0]), to_f64(&f[1]), to_f64(&f[2]), to_f64(&f[3])];
    if f[0].is_zero() {
        return (x[1], x[2]);
    }
    let t = approx_root(&x);
    (x[0], x[1] + x[0] * t)
}

/// Whether the covariant of `f` is reduced. `positive` is the sign of the
/// discriminant.
pub(crate) fn covariant_reduced<T: Int>(f: &Coeffs<T>, positive: bool) -> bool {
    if positive {
        is_reduced_definite(&hessian(f))
    } else {
        let (q, s) = real_factor(f);
        factor_gaps(f, &q, s).iter().all(|&g| g >= 0)
    }
}

fn translation<T: Int>(n: T) -> Mat<T> {
    [T::one(), T::zero(), n, T::one()]
}

fn swap<T: Int>() -> Mat<T> {
    [T::zero(), T::one(), T::one(), T::zero()]
}

fn identity<T: Int>() -> Mat<T> {
    [T::one(), T::zero(), T::zero(), T::one()]
}

/// Returns `(g, g f)` with the covariant of `g f` reduced.
pub(crate) fn reduce<T: Int>(f: &Coeffs<T>, positive: bool) -> (Mat<T>, Coeffs<T>) {
    if positive {
        reduce_positive(f)
    } else {
        reduce_negative(f)
    }
}

fn reduce_positive<T: Int>(f: &Coeffs<T>) -> (Mat<T>, Coeffs<T>) {
    let mut h = hessian(f);
    debug_assert!(h[0].is_positive() && h[2].is_positive());
    let mut g = identity::<T>();
    let two = T::int(2);
    loop {
        let [p, q, r] = h.clone();
        if q.abs() > p {
            let n = (p.clone() - q.clone()).div_floor(&(two.clone() * p.clone()));
            let step = translation(n);
            h = quad_compose(&h, &step);
            g = mat_mul(&step, &g);
        } else if p > r {
            let step = swap();
            h = quad_compose(&h, &step);
            g = mat_mul(&step, &g);
        } else {
            break;
        }
    }
    let f0 = act(&g, f);
    (g, f0)
}

fn reduce_negative<T: Int>(f: &Coeffs<T>) -> (Mat<T>, Coeffs<T>) {
    let mut g = identity::<T>();
    let mut cur = f.clone();
    let mut iters = 0u32;
    loop {
        let (q, s) = real_factor(&cur);
        let gaps = factor_gaps(&cur, &q, s);
        let step = if gaps[0] < 0 || gaps[1] < 0 {
            let unit = if gaps[0] < 0 { -1 } else { 1 };
            let (a, b) = approx_factor(&cur);
            let est = (-b / (2.0 * a)).round();
            let n = if iters < 64 && est.is_finite() && est.abs() < 1e15 && est != 0.0 {
                est as i64
            } else {
                unit
            };
            translation(T::int(n))
        } else if gaps[2] < 0 {
            swap()
        } else {
            break;
        };
        cur = act(&step, &cur);
        g = mat_mul(&step, &g);
        iters += 1;
    }
    (g, cur)
}

/// Forms `gamma f0` over the small unimodular set whose covariant is
/// still reduced; `f0` itself must have reduced covariant.
pub(crate) fn reduced_neighbours<T: Int>(f0: &Coeffs<T>, positive: bool) -> Vec<Coeffs<T>> {
    let mut out = Vec::new();
    if positive {
        let h = hessian(f0);
        for gam in small_unimodular() {
            let gm = lift::<T>(gam);
            if is_reduced_definite(&quad_compose(&h, &gm)) {
                out.push(act(&gm, f0));
            }
        }
    } else {
        let (q, s) = real_factor(f0);
        for gam in small_unimodular() {
            let gm = lift::<T>(gam);
            let qg = compose_factor(&q, &gm);
            if factor_gaps(f0, &qg, s).iter().all(|&x| x >= 0) {
                out.push(act(&gm, f0));
            }
        }
    }
    out
}

/// Lexicographic minimum over the reduced neighbours of `f0`.
pub(crate) fn canonical_of_reduced<T: Int>(f0: &Coeffs<T>, positive: bool) -> Coeffs<T> {
    reduced_neighbours(f0, positive)
        .into_iter()
        .min()
        .expect("a reduced form is its own neighbour")
}

/// True iff `f` (whose covariant must already be reduced) is the
/// canonical representative of its class.
pub(crate) fn is_canonical<T: Int>(f: &Coeffs<T>, positive: bool) -> bool {
    let (q, s) = if positive { (None, 1) } else { let (q, s) = real_factor(f); (Some(q), s) };
    let h = if positive { Some(hessian(f)) } else { None };
    for gam in small_unimodular() {
        let gm = lift::<T>(gam);
        let img = act(&gm, f);
        if img >= *f {
            continue;
        }
        let still_reduced = match (&h, &q) {
            (Some(h), _) => is_reduced_definite(&quad_compose(h, &gm)),
            (None, Some(q)) => factor_gaps(f, &compose_factor(q, &gm), s).iter().all(|&x| x >= 0),
            _ => unreachable!(),
        };
        if still_reduced {
            return false;
        }
    }
    true
}

/// Number of small unimodular matrices fixing `f0`. When the covariant of
/// `f0` is reduced this is the full stabilizer order.
pub(crate) fn stabilizer_count<T: Int>(f0: &Coeffs<T>) -> u32 {
    small_unimodular().iter().filter(|gam| act(&lift::<T>(gam), f0) == *f0).count() as u32
}
