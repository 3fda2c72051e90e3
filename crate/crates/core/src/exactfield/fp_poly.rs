//! Dense polynomials over a prime field, coefficients low to high.
//!
//! Only what extension-field arithmetic and the irreducibility check need.

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> Option<u64> {
    if a.is_multiple_of(p) {
        return None;
    }
    // p is prime
    Some(pow_mod(a, p - 2, p))
}

pub(crate) fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub(crate) fn degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub(crate) fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    trim(out)
}

/// Quotient and remainder; `b` must be nonzero.
pub(crate) fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let db = degree(b).expect("division by zero polynomial");
    let lead_inv = inv_mod(b[db], p).expect("leading coefficient invertible");
    let mut rem = trim(a.to_vec());
    let mut quot = vec![0u64; rem.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&rem) {
        if dr < db {
            break;
        }
        let c = mul_mod(rem[dr], lead_inv, p);
        let shift = dr - db;
        quot[shift] = c;
        for (i, &bc) in b.iter().enumerate().take(db + 1) {
            let t = mul_mod(c, bc, p);
            rem[shift + i] = (rem[shift + i] + p - t) % p;
        }
        rem = trim(rem);
    }
    (trim(quot), rem)
}

pub(crate) fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    divrem(a, b, p).1
}

pub(crate) fn monic(a: &[u64], p: u64) -> Vec<u64> {
    match degree(a) {
        None => Vec::new(),
        Some(d) => {
            let inv = inv_mod(a[d], p).expect("nonzero lead");
            a[..=d].iter().map(|&c| mul_mod(c, inv, p)).collect()
        }
    }
}

pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p)
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub(crate) fn inv_modulo(a: &[u64], m: &[u64], p: u64) -> Option<Vec<u64>> {
    // extended Euclid tracking only the coefficient of `a`
    let mut r0 = trim(m.to_vec());
    let mut r1 = rem(a, m, p);
    let mut s0: Vec<u64> = Vec::new();
    let mut s1: Vec<u64> = vec![1];
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s2 = sub(&s0, &mul(&q, &s1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
    }
    let d = degree(&r0)?;
    if d != 0 {
        return None;
    }
    let c = inv_mod(r0[0], p)?;
    Some(rem(&s0.iter().map(|&x| mul_mod(x, c, p)).collect::<Vec<_>>(), m, p))
}

/// `base^exp mod m` with a big exponent given as repeated p-th powering.
pub(crate) fn pow_modulo(base: &[u64], mut exp: u128, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1 % p];
    acc = trim(acc);
    let mut b = rem(base, m, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = rem(&mul(&acc, &b, p), m, p);
        }
        b = rem(&mul(&b, &b, p), m, p);
        exp >>= 1;
    }
    acc
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's test: a monic `f` of degree `k` is irreducible over F_p iff
/// `x^(p^k) = x mod f` and `gcd(x^(p^(k/q)) - x, f) = 1` for every prime `q | k`.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let k = match degree(f) {
        None | Some(0) => return false,
        Some(k) => k,
    };
    if k == 1 {
        return true;
    }
    let x = vec![0, 1];
    // x^(p^j) mod f by repeated p-th powering
    let frob = |j: usize| {
        let mut t = x.clone();
        for _ in 0..j {
            t = pow_modulo(&t, p as u128, f, p);
        }
        t
    };
    if sub(&frob(k), &x, p) != Vec::<u64>::new() {
        return false;
    }
    for q in prime_divisors(k) {
        let t = sub(&frob(k / q), &x, p);
        if degree(&gcd(&t, f, p)) != Some(0) {
            return false;
        }
    }
    true
}
