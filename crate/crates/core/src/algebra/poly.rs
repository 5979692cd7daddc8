//! Dense univariate polynomials over a `GaloisField`, coefficients stored as
//! raw element values, lowest degree first, no trailing zeros.

use super::gf::GaloisField;

pub(crate) type Poly = Vec<u64>;

pub(crate) fn trim(mut v: Poly) -> Poly {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

pub(crate) fn degree(a: &[u64]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub(crate) fn add(f: &GaloisField, a: &[u64], b: &[u64]) -> Poly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| f.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
        .collect();
    trim(out)
}

pub(crate) fn neg(f: &GaloisField, a: &[u64]) -> Poly {
    a.iter().map(|&c| f.neg(c)).collect()
}

pub(crate) fn sub(f: &GaloisField, a: &[u64], b: &[u64]) -> Poly {
    add(f, a, &neg(f, b))
}

pub(crate) fn scale(f: &GaloisField, a: &[u64], c: u64) -> Poly {
    trim(a.iter().map(|&x| f.mul(x, c)).collect())
}

pub(crate) fn mul(f: &GaloisField, a: &[u64], b: &[u64]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(out)
}

/// Euclidean division; `b` must be nonzero.
pub(crate) fn divrem(f: &GaloisField, a: &[u64], b: &[u64]) -> (Poly, Poly) {
    let db = degree(b).expect("division by zero polynomial");
    let lead_inv = f.inv(b[db]).expect("trimmed polynomial has nonzero lead");
    let mut r: Poly = trim(a.to_vec());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![0u64; r.len() - db];
    while r.len() > db {
        let dr = r.len() - 1;
        let c = f.mul(r[dr], lead_inv);
        q[dr - db] = c;
        for (i, &bc) in b.iter().enumerate() {
            r[dr - db + i] = f.sub(r[dr - db + i], f.mul(c, bc));
        }
        r = trim(r);
    }
    (trim(q), r)
}

pub(crate) fn rem(f: &GaloisField, a: &[u64], b: &[u64]) -> Poly {
    divrem(f, a, b).1
}

pub(crate) fn monic(f: &GaloisField, a: &[u64]) -> Poly {
    match a.last() {
        None => Vec::new(),
        Some(&l) => scale(f, a, f.inv(l).unwrap()),
    }
}

pub(crate) fn gcd(f: &GaloisField, a: &[u64], b: &[u64]) -> Poly {
    let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    monic(f, &x)
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub(crate) fn inv_mod(f: &GaloisField, a: &[u64], m: &[u64]) -> Option<Poly> {
    let (mut r0, mut r1) = (m.to_vec(), rem(f, a, m));
    let (mut s0, mut s1): (Poly, Poly) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = divrem(f, &r0, &r1);
        let s = sub(f, &s0, &mul(f, &q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = f.inv(r0[0]).unwrap();
    Some(rem(f, &scale(f, &s0, c), m))
}

fn mulmod(f: &GaloisField, a: &[u64], b: &[u64], m: &[u64]) -> Poly {
    rem(f, &mul(f, a, b), m)
}

fn powmod(f: &GaloisField, a: &[u64], mut e: u64, m: &[u64]) -> Poly {
    let mut base = rem(f, a, m);
    let mut acc: Poly = rem(f, &[1], m);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(f, &acc, &base, m);
        }
        base = mulmod(f, &base, &base, m);
        e >>= 1;
    }
    acc
}

/// Ben-Or test: `m` of degree `d` is irreducible over `F_q` iff
/// `gcd(x^{q^i} - x, m) = 1` for `1 ≤ i ≤ d/2`.
pub(crate) fn is_irreducible(f: &GaloisField, m: &[u64]) -> bool {
    let d = match degree(m) {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    let x: Poly = vec![0, 1];
    let mut h = rem(f, &x, m);
    for _ in 0..d / 2 {
        h = powmod(f, &h, f.order(), m);
        if gcd(f, &sub(f, &h, &x), m).len() != 1 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::gf_make;

    #[test]
    fn divrem_reconstructs() {
        let f = gf_make(3, 2).unwrap();
        let a = vec![1, 2, 5, 0, 7];
        let b = vec![4, 1, 3];
        let (q, r) = divrem(&f, &a, &b);
        assert!(r.len() < b.len());
        assert_eq!(add(&f, &mul(&f, &q, &b), &r), trim(a));
    }

    #[test]
    fn irreducibility_over_extension() {
        let f = gf_make(2, 2).unwrap();
        let g = f.generator_raw();
        // x^2 + x + g has no root in F_4: x^2+x takes values {0,1} only
        assert!(is_irreducible(&f, &[g, 1, 1]));
        // x^2 + x + 1 splits over F_4
        assert!(!is_irreducible(&f, &[1, 1, 1]));
    }

    #[test]
    fn inverse_mod_irreducible() {
        let f = gf_make(5, 1).unwrap();
        let m = vec![2, 0, 1]; // x^2 + 2 irreducible mod 5
        assert!(is_irreducible(&f, &m));
        for a in [vec![1, 1], vec![3], vec![0, 4]] {
            let i = inv_mod(&f, &a, &m).unwrap();
            assert_eq!(rem(&f, &mul(&f, &a, &i), &m), vec![1]);
        }
        assert!(inv_mod(&f, &m, &m).is_none());
    }
}
