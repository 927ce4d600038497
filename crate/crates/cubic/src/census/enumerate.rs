//! One canonical form per GL2(Z)-class with `0 < sign * disc < X`.
//!
//! Loop bounds come from the reduced covariant. For positive
//! discriminant (`H = (P, Q, R)` reduced): `P^2 <= D`, and the syzygy
//! `4 P^3 = U^2 + 27 D a^2` gives `a^2 <= 4 sqrt(D) / 27`, while the
//! weighted root mean of `H` sits within 1/2 of the origin, so
//! `|b| <= 3|a|/2 + D^{1/4}`. For negative discriminant, writing
//! `f = (alpha v1 + beta v2) q` with `q = (A, B, C)` reduced, one has
//! `|alpha| A, |beta| A <= (16 |D| / 27)^{1/4}` and
//! `(|alpha| C)^3 <= 16 |D| / (27 |a|)`.

use num_bigint::BigInt;
use rayon::prelude::*;

use super::Sign;
use crate::error::{Error, Result};
use crate::forms::arith::disc;
use crate::forms::reduce::{covariant_reduced, is_canonical};
use crate::forms::SMALL_COEFF;

/// Largest bound accepted by the fixed-width enumerator. Every quantity it
/// forms stays far inside `i128` below this.
pub const MAX_ENUMERATION_BOUND: u64 = 1_000_000_000_000;

type Small = [i64; 4];

fn to128(f: &Small) -> [i128; 4] {
    f.map(i128::from)
}

fn canonical_small(f: &Small, positive: bool) -> bool {
    let w = to128(f);
    if positive || w.iter().all(|c| c.abs() <= SMALL_COEFF) {
        is_canonical(&w, positive)
    } else {
        is_canonical(&w.map(BigInt::from), positive)
    }
}

fn reduced_small(f: &Small, positive: bool) -> bool {
    let w = to128(f);
    if positive || w.iter().all(|c| c.abs() <= SMALL_COEFF) {
        covariant_reduced(&w, positive)
    } else {
        covariant_reduced(&w.map(BigInt::from), positive)
    }
}

fn fourth_root_floor(x: f64) -> i64 {
    x.max(0.0).powf(0.25).floor() as i64
}

#[derive(Clone, Copy, Debug)]
enum Shard {
    /// `a < 0` with a fixed `b`.
    Lead(i64, i64),
    /// `a = 0` with a fixed `b`.
    Cusp(i64),
}

fn shards(sign: Sign, x: u64) -> Vec<Shard> {
    let xf = x as f64;
    let mut out = Vec::new();
    match sign {
        Sign::Positive => {
            let amax = ((4.0 * xf.sqrt() / 27.0).sqrt()).floor() as i64 + 1;
            let k = fourth_root_floor(xf) + 1;
            for a in 1..=amax {
                let bmax = (3 * a) / 2 + 1 + k;
                for b in -bmax..=bmax {
                    out.push(Shard::Lead(-a, b));
                }
            }
            for b in -k..=k {
                if b != 0 {
                    out.push(Shard::Cusp(b));
                }
            }
        }
        Sign::Negative => {
            let k = fourth_root_floor(16.0 * xf / 27.0) + 1;
            for a in 1..=k {
                let bmax = a + k;
                for b in -bmax..=bmax {
                    out.push(Shard::Lead(-a, b));
                }
            }
            let kb = fourth_root_floor(xf / 3.0) + 1;
            for b in -kb..=kb {
                if b != 0 {
                    out.push(Shard::Cusp(b));
                }
            }
        }
    }
    out
}

fn keep(f: Small, sign: Sign, x: u64, out: &mut Vec<(Small, i64)>) {
    let d = disc(&to128(&f));
    let positive = sign == Sign::Positive;
    let inside = if positive { d > 0 && d < x as i128 } else { d < 0 && -d < x as i128 };
    if inside && reduced_small(&f, positive) && canonical_small(&f, positive) {
        out.push((f, d as i64));
    }
}

/// Ceiling of `n / d` for `d > 0`.
fn ceil_div(n: i128, d: i128) -> i128 {
    -((-n).div_euclid(d))
}

fn div_range(lo: i128, hi: i128, d: i128) -> (i128, i128) {
    // integer t with lo <= d t <= hi
    let (lo, hi, d) = if d < 0 { (-hi, -lo, -d) } else { (lo, hi, d) };
    (ceil_div(lo, d), hi.div_euclid(d))
}

fn run_positive(shard: Shard, x: u64, out: &mut Vec<(Small, i64)>) {
    let pmax = (x as f64).sqrt() as i128 + 1;
    match shard {
        Shard::Lead(a, b) => {
            let (a, b) = (a as i128, b as i128);
            // P = b^2 - 3ac in [1, pmax]
            let (c_lo, c_hi) = div_range(b * b - pmax, b * b - 1, 3 * a);
            for c in c_lo..=c_hi {
                let p = b * b - 3 * a * c;
                if p < 1 || p * p >= x as i128 {
                    continue;
                }
                // Q = bc - 9ad in [-P, P]
                let (d_lo, d_hi) = div_range(b * c - p, b * c + p, 9 * a);
                for d in d_lo..=d_hi {
                    let r = c * c - 3 * b * d;
                    if r < p {
                        continue;
                    }
                    keep([a as i64, b as i64, c as i64, d as i64], Sign::Positive, x, out);
                }
            }
        }
        Shard::Cusp(b) => {
            let b = b as i128;
            if b.pow(4) >= x as i128 {
                return;
            }
            for c in -b.abs()..=b.abs() {
                // D = b^2 (c^2 - 4 b d) in (0, X)
                let m = (x as i128 - 1) / (b * b);
                let (d_lo, d_hi) = div_range(c * c - m, c * c - 1, 4 * b);
                for d in d_lo..=d_hi {
                    keep([0, b as i64, c as i64, d as i64], Sign::Positive, x, out);
                }
            }
        }
    }
}

/// Real interval where `alpha d^2 + beta d + gamma >= 0` for `alpha < 0`.
fn concave_window(alpha: f64, beta: f64, gamma: f64) -> Option<(f64, f64)> {
    let delta = beta * beta - 4.0 * alpha * gamma;
    if delta < 0.0 {
        return None;
    }
    let s = delta.sqrt();
    let r1 = (-beta + s) / (2.0 * alpha);
    let r2 = (-beta - s) / (2.0 * alpha);
    Some((r1.min(r2), r1.max(r2)))
}

fn run_negative(shard: Shard, x: u64, out: &mut Vec<(Small, i64)>) {
    let xf = x as f64;
    match shard {
        Shard::Lead(a, b) => {
            let k = (16.0 * xf / 27.0).powf(0.25) + 1.0;
            let kc = (16.0 * xf / (27.0 * (-a) as f64)).cbrt() + 1.0;
            let cmax = (kc + k).floor() as i64 + 1;
            let (af, bf) = (a as f64, b as f64);
            for c in -cmax..=cmax {
                let cf = c as f64;
                // D(d) = -27 a^2 d^2 + (18abc - 4b^3) d + (b^2 c^2 - 4ac^3)
                let qa = -27.0 * af * af;
                let qb = 18.0 * af * bf * cf - 4.0 * bf * bf * bf;
                let qc = bf * bf * cf * cf - 4.0 * af * cf * cf * cf;
                // need D > -X: inside the window of D + X >= 0
                let Some((lo, hi)) = concave_window(qa, qb, qc + xf) else { continue };
                let d_lo = lo.floor() as i64 - 2;
                let d_hi = hi.ceil() as i64 + 2;
                // D < 0 holds outside the window of D >= 0
                let zero = concave_window(qa, qb, qc);
                for d in d_lo..=d_hi {
                    if let Some((z0, z1)) = zero {
                        let df = d as f64;
                        if df > z0 + 1.0 && df < z1 - 1.0 {
                            continue;
                        }
                    }
                    keep([a, b, c, d], Sign::Negative, x, out);
                }
            }
        }
        Shard::Cusp(b) => {
            let b = b as i128;
            if 3 * b.pow(4) >= x as i128 {
                return;
            }
            for c in -b.abs()..=b.abs() {
                // D = b^2 (c^2 - 4 b d) in (-X, 0)
                let m = (x as i128 - 1) / (b * b);
                let (d_lo, d_hi) = div_range(c * c + 1, c * c + m, 4 * b);
                for d in d_lo..=d_hi {
                    keep([0, b as i64, c as i64, d as i64], Sign::Negative, x, out);
                }
            }
        }
    }
}

/// Canonical representatives with `0 < sign * disc < x`, ordered by
/// `|disc|` and then lexicographically. Runs on the current rayon pool;
/// the result does not depend on its size.
pub(crate) fn enumerate_small(sign: Sign, x: u64) -> Result<Vec<(Small, i64)>> {
    if x == 0 {
        return Err(Error::InvalidRequest("discriminant bound must be at least 1".into()));
    }
    if x > MAX_ENUMERATION_BOUND {
        return Err(Error::InvalidRequest(format!("bound {x} exceeds the enumerator limit {MAX_ENUMERATION_BOUND}")));
    }
    let mut all: Vec<(Small, i64)> = shards(sign, x)
        .into_par_iter()
        .map(|s| {
            let mut out = Vec::new();
            match sign {
                Sign::Positive => run_positive(s, x, &mut out),
                Sign::Negative => run_negative(s, x, &mut out),
            }
            out
        })
        .flatten()
        .collect();
    all.par_sort_unstable_by(|l, r| (l.1.unsigned_abs(), l.0).cmp(&(r.1.unsigned_abs(), r.0)));
    all.dedup();
    Ok(all)
}
