//! Orbits of the Borel subgroup on forms `v2 (y1 v1^2 + y2 v1 v2 + y3 v2^2)`.
//!
//! `(t, 0; u, p)` with `t, p = ±1` sends `(y1, y2, y3)` to
//! `(t y1, 2 y1 u + p y2, t (y1 u^2 + p y2 u + y3))`. Every orbit has a
//! unique member with `y1 > 0` and `0 <= y2 <= y1`; its stabilizer has
//! order 2 when `y2` is `0` or `y1`, and 1 otherwise.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::forms::Form;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WOrbit {
    pub y1: i64,
    pub y2: i64,
    pub y3: i64,
    pub stab_order: u32,
}

impl WOrbit {
    /// `y1^2 (y2^2 - 4 y1 y3)`, the discriminant of the associated cubic.
    pub fn disc(&self) -> i64 {
        self.y1 * self.y1 * (self.y2 * self.y2 - 4 * self.y1 * self.y3)
    }

    pub fn form(&self) -> Form {
        Form::new(0, self.y1, self.y2, self.y3)
    }

    /// Normal form of the orbit of `(y1, y2, y3)`.
    pub fn normalize(y1: i64, y2: i64, y3: i64) -> Result<WOrbit> {
        let m = y2 as i128 * y2 as i128 - 4 * y1 as i128 * y3 as i128;
        if y1 == 0 || m == 0 {
            return Err(Error::Degenerate);
        }
        let t = y1.signum();
        let (n1, mut y3n) = (y1 * t, y3 * t);
        let mut y2n = y2;
        // translate y2 into [0, 2 y1) and reflect into [0, y1]
        let u = -y2n.div_euclid(2 * n1);
        let r = y2n + 2 * n1 * u;
        // the image of (n1, y2, y3n) under u has y3 = n1 u^2 + y2 u + y3n
        y3n += n1 * u * u + y2n * u;
        y2n = r;
        if y2n > n1 {
            // p = -1 with u = 1: y2 -> 2 n1 - y2, y3 -> n1 - y2 + y3
            y3n += n1 - y2n;
            y2n = 2 * n1 - y2n;
        }
        let stab_order = if y2n == 0 || y2n == n1 { 2 } else { 1 };
        Ok(WOrbit { y1: n1, y2: y2n, y3: y3n, stab_order })
    }
}

/// All normalized orbits with `0 < |disc| < x`, ordered by `|disc|` then
/// by `(y1, y2, y3)`.
pub fn enumerate_w_orbits(x: u64) -> Result<Vec<WOrbit>> {
    if x == 0 {
        return Err(Error::InvalidRequest("discriminant bound must be at least 1".into()));
    }
    let x = x as i128;
    let y1max = (x as f64).sqrt() as i64 + 1;
    let mut all: Vec<WOrbit> = (1..=y1max)
        .into_par_iter()
        .flat_map_iter(|y1| {
            let mut out = Vec::new();
            let y1w = y1 as i128;
            if y1w * y1w >= x {
                return out.into_iter();
            }
            // |y2^2 - 4 y1 y3| <= mmax
            let mmax = (x - 1) / (y1w * y1w);
            for y2 in 0..=y1 {
                let s = y2 as i128 * y2 as i128;
                let lo = -((-(s - mmax)).div_euclid(4 * y1w));
                let hi = (s + mmax).div_euclid(4 * y1w);
                for y3 in lo..=hi {
                    let m = s - 4 * y1w * y3;
                    if m == 0 || m.abs() > mmax {
                        continue;
                    }
                    let stab_order = if y2 == 0 || y2 == y1 { 2 } else { 1 };
                    out.push(WOrbit { y1, y2, y3: y3 as i64, stab_order });
                }
            }
            out.into_iter()
        })
        .collect();
    all.par_sort_unstable_by_key(|w| (w.disc().unsigned_abs(), w.y1, w.y2, w.y3));
    Ok(all)
}
