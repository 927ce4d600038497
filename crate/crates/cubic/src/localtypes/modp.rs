//! Polynomials over a prime field F_p, low degree first.

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powm(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, a, p);
        }
        a = mulm(a, a, p);
        e >>= 1;
    }
    r
}

fn inv(a: u64, p: u64) -> u64 {
    powm(a, p - 2, p)
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + mulm(x, y, p)) % p;
        }
    }
    poly_rem(&prod, m, p)
}

fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = inv(m[dm], p);
    while r.len() > dm {
        let k = r.len() - 1;
        let c = mulm(r[k], lead_inv, p);
        for (i, &mi) in m.iter().enumerate() {
            let idx = k - dm + i;
            r[idx] = (r[idx] + p - mulm(c, mi, p)) % p;
        }
        trim(&mut r);
    }
    r
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = poly_rem(&x, &y, p);
        x = y;
        y = r;
    }
    if let Some(&l) = x.last() {
        let li = inv(l, p);
        for c in x.iter_mut() {
            *c = mulm(*c, li, p);
        }
    }
    x
}

/// `(T + shift)^e mod m`.
fn pow_linear(shift: u64, mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut base = poly_rem(&[shift % p, 1], m, p);
    let mut acc = poly_rem(&[1], m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &base, m, p);
        }
        base = poly_mulmod(&base, &base, m, p);
        e >>= 1;
    }
    acc
}

fn sub_poly(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut r: Vec<u64> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut r);
    r
}

/// Distinct roots of a monic squarefree product of linear factors.
fn split_roots(g: &[u64], p: u64, out: &mut Vec<u64>) {
    let deg = g.len() - 1;
    if deg == 0 {
        return;
    }
    if deg == 1 {
        out.push((p - mulm(g[0], inv(g[1], p), p)) % p);
        return;
    }
    for shift in 0..p {
        let h = pow_linear(shift, (p - 1) / 2, g, p);
        let d = poly_gcd(g, &sub_poly(&h, &[1], p), p);
        let dd = d.len().saturating_sub(1);
        if dd > 0 && dd < deg {
            let (q, _) = poly_divmod(g, &d, p);
            split_roots(&d, p, out);
            split_roots(&q, p, out);
            return;
        }
    }
    unreachable!("equal-degree splitting always succeeds for some shift");
}

fn poly_divmod(a: &[u64], m: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    if r.len() <= dm {
        return (Vec::new(), r);
    }
    let mut q = vec![0u64; r.len() - dm];
    let lead_inv = inv(m[dm], p);
    while r.len() > dm {
        let k = r.len() - 1;
        let c = mulm(r[k], lead_inv, p);
        q[k - dm] = c;
        for (i, &mi) in m.iter().enumerate() {
            let idx = k - dm + i;
            r[idx] = (r[idx] + p - mulm(c, mi, p)) % p;
        }
        trim(&mut r);
    }
    (q, r)
}

/// Distinct roots in F_p of `f` (coefficients already reduced mod p),
/// sorted ascending. The zero polynomial is not allowed.
pub(crate) fn roots(f: &[u64], p: u64) -> Vec<u64> {
    let mut f = f.iter().map(|c| c % p).collect::<Vec<_>>();
    trim(&mut f);
    assert!(!f.is_empty(), "zero polynomial has no finite root set");
    let mut out = Vec::new();
    if f.len() == 1 {
        return out;
    }
    if p < 64 {
        for t in 0..p {
            if eval(&f, t, p) == 0 {
                out.push(t);
            }
        }
        return out;
    }
    let xp = pow_linear(0, p, &f, p);
    let g = poly_gcd(&f, &sub_poly(&xp, &[0, 1], p), p);
    split_roots(&g, p, &mut out);
    out.sort_unstable();
    out
}

pub(crate) fn eval(f: &[u64], t: u64, p: u64) -> u64 {
    f.iter().rev().fold(0, |acc, &c| (mulm(acc, t, p) + c) % p)
}

pub(crate) fn derivative(f: &[u64], p: u64) -> Vec<u64> {
    f.iter().enumerate().skip(1).map(|(i, &c)| mulm(c, i as u64 % p, p)).collect()
}

pub(crate) fn legendre(a: u64, p: u64) -> i32 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    if p == 2 {
        return 1;
    }
    if powm(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime(2) && is_prime(7) && is_prime(1_000_003));
        assert!(!is_prime(1) && !is_prime(91) && !is_prime(1_000_001));
    }

    #[test]
    fn small_prime_roots() {
        // T^3 - T - 1 over F_5 has the single root 2
        assert_eq!(roots(&[4, 4, 0, 1], 5), vec![2]);
        assert_eq!(roots(&[1, 1, 0, 1], 2), Vec::<u64>::new());
    }

    #[test]
    fn large_prime_matches_brute_force() {
        let p = 1009;
        for f in [[6u64, 1008, 1008, 1], [3, 0, 0, 1], [1000, 17, 5, 1], [2, 0, 1, 0], [5, 7, 0, 0]] {
            let fast = roots(&f, p);
            let slow: Vec<u64> = (0..p).filter(|&t| eval(&f, t, p) == 0).collect();
            assert_eq!(fast, slow, "{f:?}");
        }
    }

    #[test]
    fn legendre_symbol() {
        assert_eq!(legendre(2, 5), -1);
        assert_eq!(legendre(4, 5), 1);
        assert_eq!(legendre(10, 5), 0);
    }
}
