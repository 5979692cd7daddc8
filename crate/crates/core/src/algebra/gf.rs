//! Finite fields `F_{p^k}` with a deterministic modulus.
//!
//! Elements are stored as a single `u64` holding the base-`p` digits of the
//! coefficient vector (constant term least significant). Fields up to
//! `2^16` elements use log/exp tables for multiplication.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Serialize, Serializer};

use super::poly;
use super::{AlgebraError, Field};

pub const MAX_DEGREE: usize = 8;
const TABLE_LIMIT: u64 = 1 << 16;
const MAX_PRIME: u64 = 1 << 31;

#[derive(Debug)]
struct LogTables {
    // exp has 2(q-1) entries so that log a + log b never needs a reduction
    exp: Vec<u64>,
    log: Vec<u32>,
}

/// The field `F_p[x]/(modulus)`.
pub struct GaloisField {
    p: u64,
    k: usize,
    order: u64,
    modulus: Vec<u64>,
    tables: Option<LogTables>,
}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {}", self.p, self.k, poly_string(&self.modulus, "x"))
    }
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}
impl Eq for GaloisField {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
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

/// Builds `F_{p^k}` with the lexicographically smallest monic irreducible
/// modulus of degree `k` (coefficients compared from the top degree down).
pub fn gf_make(p: u64, k: usize) -> Result<Arc<GaloisField>, AlgebraError> {
    if !is_prime(p) || p >= MAX_PRIME {
        return Err(AlgebraError::NotPrime(p));
    }
    if k == 0 || k > MAX_DEGREE {
        return Err(AlgebraError::DegreeOutOfRange(k));
    }
    let order = p
        .checked_pow(k as u32)
        .filter(|q| *q <= 1 << 62)
        .ok_or(AlgebraError::FieldTooLarge { p, k })?;
    let prime = GaloisField::prime(p);
    let modulus = if k == 1 {
        vec![0, 1]
    } else {
        (0..order)
            .map(|low| {
                let mut m = prime.digits_vec(low, k);
                m.push(1);
                m
            })
            .find(|m| m[0] != 0 && poly::is_irreducible(&prime, m))
            .expect("an irreducible polynomial of every degree exists")
    };
    Ok(Arc::new(GaloisField::with_modulus(p, k, order, modulus)))
}

impl GaloisField {
    /// The prime field `F_p`, with modulus `x`. No primality check.
    pub(crate) fn prime(p: u64) -> GaloisField {
        GaloisField::with_modulus(p, 1, p, vec![0, 1])
    }

    fn with_modulus(p: u64, k: usize, order: u64, modulus: Vec<u64>) -> GaloisField {
        let mut field = GaloisField { p, k, order, modulus, tables: None };
        if order <= TABLE_LIMIT && order > 2 {
            field.tables = Some(field.build_tables());
        }
        field
    }

    fn build_tables(&self) -> LogTables {
        let q1 = self.order - 1;
        let factors = prime_factors(q1);
        let gen = (2..self.order)
            .chain(std::iter::once(1))
            .find(|&r| factors.iter().all(|&l| self.pow_slow(r, q1 / l) != 1))
            .expect("multiplicative group is cyclic");
        let mut exp = vec![0u64; 2 * q1 as usize];
        let mut log = vec![0u32; self.order as usize];
        let mut cur = 1u64;
        for i in 0..q1 as usize {
            exp[i] = cur;
            exp[i + q1 as usize] = cur;
            log[cur as usize] = i as u32;
            cur = self.mul_poly(cur, gen);
        }
        LogTables { exp, log }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Monic modulus, lowest degree first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub(crate) fn digits(&self, mut raw: u64) -> [u64; MAX_DEGREE] {
        let mut d = [0u64; MAX_DEGREE];
        for slot in d.iter_mut().take(self.k) {
            *slot = raw % self.p;
            raw /= self.p;
        }
        d
    }

    fn digits_vec(&self, raw: u64, len: usize) -> Vec<u64> {
        let mut out = Vec::with_capacity(len);
        let mut r = raw;
        for _ in 0..len {
            out.push(r % self.p);
            r /= self.p;
        }
        out
    }

    pub(crate) fn from_digits(&self, d: &[u64]) -> u64 {
        d.iter().take(self.k).rev().fold(0u64, |acc, &c| acc * self.p + c % self.p)
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        if self.p == 2 {
            return a ^ b;
        }
        if self.k == 1 {
            return (a + b) % self.p;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let mut out = [0u64; MAX_DEGREE];
        for i in 0..self.k {
            out[i] = (da[i] + db[i]) % self.p;
        }
        self.from_digits(&out)
    }

    pub fn neg(&self, a: u64) -> u64 {
        if self.p == 2 {
            return a;
        }
        if self.k == 1 {
            return (self.p - a) % self.p;
        }
        let mut d = self.digits(a);
        for c in d.iter_mut().take(self.k) {
            *c = (self.p - *c) % self.p;
        }
        self.from_digits(&d)
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    fn mul_poly(&self, a: u64, b: u64) -> u64 {
        if self.k == 1 {
            return a * b % self.p;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..self.k {
            if da[i] == 0 {
                continue;
            }
            for j in 0..self.k {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % self.p;
            }
        }
        for top in (self.k..2 * self.k - 1).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for i in 0..self.k {
                let sub = c * self.modulus[i] % self.p;
                prod[top - self.k + i] = (prod[top - self.k + i] + self.p - sub) % self.p;
            }
        }
        self.from_digits(&prod[..self.k])
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        match &self.tables {
            Some(t) => t.exp[(t.log[a as usize] + t.log[b as usize]) as usize],
            None => self.mul_poly(a, b),
        }
    }

    fn pow_slow(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_poly(acc, base);
            }
            base = self.mul_poly(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        match &self.tables {
            Some(t) => {
                let q1 = self.order - 1;
                let l = (t.log[a as usize] as u128 * (e % q1) as u128 % q1 as u128) as usize;
                t.exp[l]
            }
            None => self.pow_slow(a, e),
        }
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        Some(match &self.tables {
            Some(t) => {
                let q1 = (self.order - 1) as usize;
                t.exp[(q1 - t.log[a as usize] as usize) % q1]
            }
            None => self.pow_slow(a, self.order - 2),
        })
    }

    /// `φ^i(a) = a^{p^i}`; negative `i` applies the inverse automorphism.
    pub fn frob(&self, a: u64, i: i64) -> u64 {
        let j = i.rem_euclid(self.k as i64) as u32;
        (0..j).fold(a, |acc, _| self.pow(acc, self.p))
    }

    /// Absolute trace to `F_p`, returned as an integer in `0..p`.
    pub fn trace(&self, a: u64) -> u64 {
        let mut acc = 0u64;
        let mut cur = a;
        for _ in 0..self.k {
            acc = self.add(acc, cur);
            cur = self.pow(cur, self.p);
        }
        acc
    }

    pub fn from_int(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    /// Raw value of the class of `x` (zero for prime fields).
    pub fn generator_raw(&self) -> u64 {
        if self.k == 1 {
            0
        } else {
            self.p
        }
    }

    pub fn format_raw(&self, raw: u64) -> String {
        if self.k == 1 {
            return raw.to_string();
        }
        poly_string(&self.digits_vec(raw, self.k), "g")
    }
}

fn poly_string(coeffs: &[u64], var: &str) -> String {
    let mut parts = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        parts.push(match (c, i) {
            (_, 0) => c.to_string(),
            (1, _) => mono,
            _ => format!("{c}*{mono}"),
        });
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join("+")
    }
}

/// An element of a [`GaloisField`].
#[derive(Clone)]
pub struct GfElem {
    field: Arc<GaloisField>,
    raw: u64,
}

impl GfElem {
    pub fn new(field: &Arc<GaloisField>, raw: u64) -> GfElem {
        assert!(raw < field.order, "raw value {raw} outside {:?}", field);
        GfElem { field: field.clone(), raw }
    }

    pub fn from_coeffs(field: &Arc<GaloisField>, coeffs: &[u64]) -> GfElem {
        GfElem::new(field, field.from_digits(coeffs))
    }

    pub fn zero(field: &Arc<GaloisField>) -> GfElem {
        GfElem::new(field, 0)
    }

    pub fn one(field: &Arc<GaloisField>) -> GfElem {
        GfElem::new(field, 1)
    }

    pub fn generator(field: &Arc<GaloisField>) -> GfElem {
        GfElem::new(field, field.generator_raw())
    }

    /// All field elements in raw order.
    pub fn all(field: &Arc<GaloisField>) -> impl Iterator<Item = GfElem> + '_ {
        (0..field.order).map(move |r| GfElem::new(field, r))
    }

    pub fn field(&self) -> &Arc<GaloisField> {
        &self.field
    }

    pub fn raw(&self) -> u64 {
        self.raw
    }

    pub fn coeffs(&self) -> Vec<u64> {
        self.field.digits_vec(self.raw, self.field.k)
    }

    pub fn pow(&self, e: u64) -> GfElem {
        self.with_raw(self.field.pow(self.raw, e))
    }

    pub fn trace(&self) -> u64 {
        self.field.trace(self.raw)
    }

    pub fn frob(&self, i: i64) -> GfElem {
        self.with_raw(self.field.frob(self.raw, i))
    }

    fn with_raw(&self, raw: u64) -> GfElem {
        GfElem { field: self.field.clone(), raw }
    }

    fn check_same(&self, other: &GfElem) {
        assert!(
            Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field,
            "mixed fields {:?} and {:?}",
            self.field,
            other.field
        );
    }
}

impl PartialEq for GfElem {
    fn eq(&self, other: &Self) -> bool {
        self.raw == other.raw
            && (Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field)
    }
}
impl Eq for GfElem {}

impl Hash for GfElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.raw.hash(state);
    }
}

impl fmt::Debug for GfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format_raw(self.raw))
    }
}

impl fmt::Display for GfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format_raw(self.raw))
    }
}

impl Serialize for GfElem {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.coeffs().serialize(s)
    }
}

macro_rules! gf_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for GfElem {
            type Output = GfElem;
            fn $method(self, rhs: GfElem) -> GfElem {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a GfElem> for &'a GfElem {
            type Output = GfElem;
            fn $method(self, rhs: &'a GfElem) -> GfElem {
                self.check_same(rhs);
                self.with_raw(self.field.$method(self.raw, rhs.raw))
            }
        }
    };
}

gf_binop!(Add, add);
gf_binop!(Sub, sub);
gf_binop!(Mul, mul);

impl Neg for GfElem {
    type Output = GfElem;
    fn neg(self) -> GfElem {
        -&self
    }
}

impl Neg for &GfElem {
    type Output = GfElem;
    fn neg(self) -> GfElem {
        self.with_raw(self.field.neg(self.raw))
    }
}

impl Field for GfElem {
    fn characteristic(&self) -> u64 {
        self.field.p
    }

    fn zero_like(&self) -> Self {
        self.with_raw(0)
    }

    fn one_like(&self) -> Self {
        self.with_raw(1)
    }

    fn from_int_like(&self, n: i64) -> Self {
        self.with_raw(self.field.from_int(n))
    }

    fn is_zero(&self) -> Result<bool, AlgebraError> {
        Ok(self.raw == 0)
    }

    fn try_inv(&self) -> Result<Self, AlgebraError> {
        self.field
            .inv(self.raw)
            .map(|r| self.with_raw(r))
            .ok_or(AlgebraError::ZeroInversion)
    }

    fn frobenius(&self, i: i64) -> Result<Self, AlgebraError> {
        Ok(self.frob(i))
    }

    fn pth_power(&self) -> Self {
        self.frob(1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Irreducibility by trial division against every monic polynomial of
    /// degree at most half, independent of the gcd-based test.
    fn irreducible_by_trial(p: u64, m: &[u64]) -> bool {
        let prime = GaloisField::prime(p);
        let deg = m.len() - 1;
        for d in 1..=deg / 2 {
            for low in 0..p.pow(d as u32) {
                let mut cand = prime.digits_vec(low, d);
                cand.push(1);
                let (_, r) = poly::divrem(&prime, m, &cand);
                if r.is_empty() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn prime_field_has_modulus_x() {
        let f = gf_make(2, 1).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.order(), 2);
    }

    #[test]
    fn f4_modulus_is_x2_x_1() {
        // x^2, x^2+1 = (x+1)^2, x^2+x = x(x+1) are reducible; x^2+x+1 is the
        // only irreducible monic quadratic over F_2.
        let f = gf_make(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(gf_make(4, 1), Err(AlgebraError::NotPrime(4))));
        assert!(matches!(gf_make(2, 0), Err(AlgebraError::DegreeOutOfRange(0))));
        assert!(matches!(gf_make(2, 9), Err(AlgebraError::DegreeOutOfRange(9))));
    }

    #[test]
    fn chosen_moduli_are_smallest_irreducibles() {
        for (p, k) in [(2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (2, 8), (7, 3)] {
            let f = gf_make(p, k).unwrap();
            assert!(irreducible_by_trial(p, f.modulus()), "{p}^{k}");
            let prime = GaloisField::prime(p);
            let enc = f.modulus()[..k].iter().rev().fold(0u64, |acc, &c| acc * p + c);
            for low in 0..enc {
                let mut cand = prime.digits_vec(low, k);
                cand.push(1);
                assert!(!irreducible_by_trial(p, &cand), "{p}^{k}: {cand:?} is smaller");
            }
        }
    }

    #[test]
    fn frobenius_on_f4() {
        let f = gf_make(2, 2).unwrap();
        let g = GfElem::generator(&f);
        assert_eq!(g.frob(1), g.clone() + GfElem::one(&f));
        assert_eq!(g.wp(), GfElem::one(&f));
    }

    #[test]
    fn frobenius_order_and_inverse() {
        for (p, k) in [(2, 3), (3, 2), (5, 3)] {
            let f = gf_make(p, k).unwrap();
            for x in GfElem::all(&f) {
                assert_eq!(x.frob(k as i64), x);
                assert_eq!(x.frob(-1).frob(1), x);
                assert_eq!(x.frob(-1), x.frob(k as i64 - 1));
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for (p, k) in [(2, 2), (2, 3), (3, 2)] {
            let f = gf_make(p, k).unwrap();
            let all: Vec<_> = GfElem::all(&f).collect();
            let one = GfElem::one(&f);
            for a in &all {
                if a.raw() != 0 {
                    assert_eq!(a * &a.try_inv().unwrap(), one);
                }
                for b in &all {
                    assert_eq!(a + b, b + a);
                    assert_eq!(a * b, b * a);
                    for c in &all {
                        assert_eq!(&(a * b) * c, a * &(b * c));
                        assert_eq!(a * &(b + c), &(a * b) + &(a * c));
                    }
                }
            }
        }
    }

    #[test]
    fn table_and_polynomial_multiplication_agree() {
        let f = gf_make(3, 3).unwrap();
        for a in 0..f.order() {
            for b in 0..f.order() {
                assert_eq!(f.mul(a, b), f.mul_poly(a, b));
            }
        }
    }

    #[test]
    fn large_field_without_tables() {
        let f = gf_make(101, 3).unwrap();
        assert!(f.tables.is_none());
        let x = GfElem::new(&f, 12345);
        assert_eq!(&x * &x.try_inv().unwrap(), GfElem::one(&f));
        assert_eq!(x.frob(3), x);
    }

    #[test]
    fn wp_kernel_is_prime_field() {
        for (p, k) in [(2, 2), (2, 3), (3, 2), (5, 2)] {
            let f = gf_make(p, k).unwrap();
            let kernel: Vec<_> = GfElem::all(&f).filter(|x| x.wp().raw() == 0).collect();
            assert_eq!(kernel.len() as u64, p);
            assert!(kernel.iter().all(|x| x.raw() < p));
        }
    }

    #[test]
    fn wp_is_additive_on_f9() {
        let f = gf_make(3, 2).unwrap();
        for x in GfElem::all(&f) {
            for y in GfElem::all(&f) {
                assert_eq!((&x + &y).wp(), x.wp() + y.wp());
            }
        }
    }
}
