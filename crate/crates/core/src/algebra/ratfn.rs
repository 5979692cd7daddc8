//! The rational function field `F_q(t)` and its degree-one-or-higher places.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::gf::{gf_make, GaloisField, GfElem};
use super::poly::{self, Poly};
use super::{AlgebraError, Field, Valuation};

/// `num / den` with `den` monic and `gcd(num, den) = 1`; zero is `0/1`.
#[derive(Clone)]
pub struct RationalFunction {
    field: Arc<GaloisField>,
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    /// Canonicalizes `num / den` (raw coefficients, lowest degree first).
    pub fn new(field: &Arc<GaloisField>, num: &[u64], den: &[u64]) -> Result<Self, AlgebraError> {
        let (num, den) = (poly::trim(num.to_vec()), poly::trim(den.to_vec()));
        if den.is_empty() {
            return Err(AlgebraError::ZeroInversion);
        }
        Ok(RationalFunction::canonical(field, num, den))
    }

    fn canonical(field: &Arc<GaloisField>, num: Poly, den: Poly) -> Self {
        let f = field.as_ref();
        if num.is_empty() {
            return RationalFunction { field: field.clone(), num, den: vec![1] };
        }
        let g = poly::gcd(f, &num, &den);
        let (mut n, _) = poly::divrem(f, &num, &g);
        let (mut d, _) = poly::divrem(f, &den, &g);
        let lead = f.inv(*d.last().unwrap()).unwrap();
        n = poly::scale(f, &n, lead);
        d = poly::scale(f, &d, lead);
        RationalFunction { field: field.clone(), num: n, den: d }
    }

    pub fn poly(field: &Arc<GaloisField>, coeffs: &[u64]) -> Self {
        RationalFunction::canonical(field, poly::trim(coeffs.to_vec()), vec![1])
    }

    pub fn constant(c: &GfElem) -> Self {
        RationalFunction::poly(c.field(), &[c.raw()])
    }

    /// The variable `t`.
    pub fn t(field: &Arc<GaloisField>) -> Self {
        RationalFunction::poly(field, &[0, 1])
    }

    pub fn field(&self) -> &Arc<GaloisField> {
        &self.field
    }

    pub fn numerator(&self) -> &[u64] {
        &self.num
    }

    pub fn denominator(&self) -> &[u64] {
        &self.den
    }

    fn with(&self, num: Poly, den: Poly) -> Self {
        RationalFunction::canonical(&self.field, num, den)
    }

    fn check_same(&self, o: &Self) {
        assert!(
            Arc::ptr_eq(&self.field, &o.field) || *self.field == *o.field,
            "rational functions over different fields"
        );
    }

    pub fn to_json(&self) -> serde_json::Value {
        let coeffs = |p: &[u64]| -> Vec<Vec<u64>> {
            p.iter().map(|&c| GfElem::new(&self.field, c).coeffs()).collect()
        };
        serde_json::to_value(RatFnJson {
            p: self.field.p(),
            k: self.field.degree(),
            num: coeffs(&self.num),
            den: coeffs(&self.den),
        })
        .expect("ratfn json")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, AlgebraError> {
        let j: RatFnJson =
            serde_json::from_value(v.clone()).map_err(|e| AlgebraError::Json(e.to_string()))?;
        let field = gf_make(j.p, j.k)?;
        let raw = |cs: &[Vec<u64>]| -> Result<Poly, AlgebraError> {
            cs.iter()
                .map(|c| {
                    if c.len() > j.k || c.iter().any(|&x| x >= j.p) {
                        Err(AlgebraError::Json(format!("bad coefficient vector {c:?}")))
                    } else {
                        Ok(field.from_digits(c))
                    }
                })
                .collect()
        };
        RationalFunction::new(&field, &raw(&j.num)?, &raw(&j.den)?)
    }
}

#[derive(Serialize, Deserialize)]
struct RatFnJson {
    p: u64,
    k: usize,
    num: Vec<Vec<u64>>,
    den: Vec<Vec<u64>>,
}

impl PartialEq for RationalFunction {
    fn eq(&self, o: &Self) -> bool {
        *self.field == *o.field && self.num == o.num && self.den == o.den
    }
}
impl Eq for RationalFunction {}

fn poly_fmt(f: &GaloisField, p: &[u64]) -> String {
    let mut parts = Vec::new();
    for (i, &c) in p.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let cs = f.format_raw(c);
        let cs = if cs.contains('+') { format!("({cs})") } else { cs };
        let mono = match i {
            0 => String::new(),
            1 => "t".into(),
            _ => format!("t^{i}"),
        };
        parts.push(match (i, cs.as_str()) {
            (0, _) => cs,
            (_, "1") => mono,
            _ => format!("{cs}*{mono}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = poly_fmt(&self.field, &self.num);
        if self.den == [1] {
            out.write_str(&n)
        } else {
            write!(out, "({n})/({})", poly_fmt(&self.field, &self.den))
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for RationalFunction {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self.check_same(&o);
        let f = self.field.as_ref();
        let num = poly::add(f, &poly::mul(f, &self.num, &o.den), &poly::mul(f, &o.num, &self.den));
        self.with(num, poly::mul(f, &self.den, &o.den))
    }
}

impl Neg for RationalFunction {
    type Output = Self;
    fn neg(self) -> Self {
        let num = poly::neg(&self.field, &self.num);
        RationalFunction { num, ..self }
    }
}

impl Sub for RationalFunction {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Mul for RationalFunction {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.check_same(&o);
        let f = self.field.as_ref();
        self.with(poly::mul(f, &self.num, &o.num), poly::mul(f, &self.den, &o.den))
    }
}

fn frob_poly(f: &GaloisField, p: &[u64], i: i64) -> Option<Poly> {
    let q = f.p() as usize;
    if i >= 0 {
        let m = q.pow(i as u32);
        let mut out = vec![0u64; p.len().saturating_sub(1) * m + 1];
        for (j, &c) in p.iter().enumerate() {
            out[j * m] = f.frob(c, i);
        }
        return Some(poly::trim(out));
    }
    let m = q.pow(i.unsigned_abs() as u32);
    if p.iter().enumerate().any(|(j, &c)| c != 0 && j % m != 0) {
        return None;
    }
    Some(p.iter().step_by(m).map(|&c| f.frob(c, i)).collect())
}

impl Field for RationalFunction {
    fn characteristic(&self) -> u64 {
        self.field.p()
    }

    fn zero_like(&self) -> Self {
        RationalFunction::poly(&self.field, &[])
    }

    fn one_like(&self) -> Self {
        RationalFunction::poly(&self.field, &[1])
    }

    fn from_int_like(&self, n: i64) -> Self {
        RationalFunction::poly(&self.field, &[self.field.from_int(n)])
    }

    fn is_zero(&self) -> Result<bool, AlgebraError> {
        Ok(self.num.is_empty())
    }

    fn try_inv(&self) -> Result<Self, AlgebraError> {
        if self.num.is_empty() {
            return Err(AlgebraError::ZeroInversion);
        }
        Ok(self.with(self.den.clone(), self.num.clone()))
    }

    /// Negative powers exist only for p-th powers: `F_q(t)` is not perfect.
    fn frobenius(&self, i: i64) -> Result<Self, AlgebraError> {
        let f = self.field.as_ref();
        match (frob_poly(f, &self.num, i), frob_poly(f, &self.den, i)) {
            (Some(n), Some(d)) => Ok(self.with(n, d)),
            _ => Err(AlgebraError::NotPthPower(self.to_string())),
        }
    }

    fn pth_power(&self) -> Self {
        self.frobenius(1).expect("positive frobenius is total")
    }
}

/// A place of `F_q(t)`: a monic irreducible `π` or the degree place.
#[derive(Clone, PartialEq, Eq)]
pub enum Place {
    Finite(Poly),
    Infinite,
}

impl Place {
    pub fn finite(field: &GaloisField, pi: &[u64]) -> Result<Place, AlgebraError> {
        let pi = poly::trim(pi.to_vec());
        if pi.last() != Some(&1) || !poly::is_irreducible(field, &pi) {
            return Err(AlgebraError::NotIrreducible(poly_fmt(field, &pi)));
        }
        Ok(Place::Finite(pi))
    }

    /// The place `t - a`.
    pub fn linear(a: &GfElem) -> Place {
        Place::Finite(vec![a.field().neg(a.raw()), 1])
    }

    pub fn describe(&self, field: &GaloisField) -> String {
        match self {
            Place::Finite(pi) => poly_fmt(field, pi),
            Place::Infinite => "inf".into(),
        }
    }
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(pi) => write!(f, "Finite({pi:?})"),
            Place::Infinite => f.write_str("Infinite"),
        }
    }
}

fn order_at(f: &GaloisField, p: &[u64], pi: &[u64]) -> i64 {
    let mut cur = p.to_vec();
    let mut n = 0;
    loop {
        let (q, r) = poly::divrem(f, &cur, pi);
        if !r.is_empty() {
            return n;
        }
        cur = q;
        n += 1;
    }
}

/// Order of vanishing of `x` at `v`; `+∞` for zero.
pub fn rf_valuation(x: &RationalFunction, v: &Place) -> Valuation<i64> {
    if x.num.is_empty() {
        return Valuation::Infinite;
    }
    let f = x.field.as_ref();
    Valuation::Finite(match v {
        Place::Finite(pi) => order_at(f, &x.num, pi) - order_at(f, &x.den, pi),
        Place::Infinite => x.den.len() as i64 - x.num.len() as i64,
    })
}

// Residue of x in O_v / m_v, as a polynomial reduced mod π (finite) or a
// constant (infinite). Requires val_v(x) >= 0.
fn residue(x: &RationalFunction, v: &Place) -> Poly {
    let f = x.field.as_ref();
    match v {
        Place::Finite(pi) => {
            let dinv = poly::inv_mod(f, &x.den, pi).expect("den is a unit at the place");
            poly::rem(f, &poly::mul(f, &x.num, &dinv), pi)
        }
        Place::Infinite => {
            if x.num.len() == x.den.len() {
                vec![f.mul(*x.num.last().unwrap(), f.inv(*x.den.last().unwrap()).unwrap())]
            } else {
                Vec::new()
            }
        }
    }
}

fn nonneg(x: &RationalFunction, v: &Place) -> Result<(), AlgebraError> {
    match rf_valuation(x, v) {
        Valuation::Finite(n) if n < 0 => Err(AlgebraError::OutsideValuationRing(format!(
            "val_{}({x}) = {n}",
            v.describe(&x.field)
        ))),
        _ => Ok(()),
    }
}

fn positive(x: &RationalFunction, v: &Place) -> bool {
    match rf_valuation(x, v) {
        Valuation::Finite(n) => n > 0,
        Valuation::Infinite => true,
    }
}

/// An element of `(a + m_1) ∩ (b + m_2)` for distinct places, built by CRT
/// on the residues.
pub fn coset_intersect(
    a: &RationalFunction,
    v1: &Place,
    b: &RationalFunction,
    v2: &Place,
) -> Result<RationalFunction, AlgebraError> {
    a.check_same(b);
    if v1 == v2 {
        return Err(AlgebraError::EqualPlaces);
    }
    nonneg(a, v1)?;
    nonneg(b, v2)?;
    let field = &a.field;
    let f = field.as_ref();
    let (r1, r2) = (residue(a, v1), residue(b, v2));
    let w = match (v1, v2) {
        (Place::Finite(p1), Place::Finite(p2)) => {
            let inv = poly::inv_mod(f, p1, p2).expect("distinct monic irreducibles are coprime");
            let k = poly::rem(f, &poly::mul(f, &poly::sub(f, &r2, &r1), &inv), p2);
            RationalFunction::poly(field, &poly::add(f, &r1, &poly::mul(f, p1, &k)))
        }
        (Place::Finite(pi), Place::Infinite) => fin_inf(field, pi, &r1, &r2),
        (Place::Infinite, Place::Finite(pi)) => fin_inf(field, pi, &r2, &r1),
        (Place::Infinite, Place::Infinite) => unreachable!(),
    };
    assert!(
        positive(&(w.clone() - a.clone()), v1) && positive(&(w.clone() - b.clone()), v2),
        "coset_intersect produced {w} for a={a}, b={b}"
    );
    Ok(w)
}

// w = c + P/Q with Q = ρ^{deg π} for a linear ρ coprime to π and
// P = (r - c) Q mod π: then w ≡ r mod π and deg P < deg Q gives w → c at ∞.
fn fin_inf(field: &Arc<GaloisField>, pi: &[u64], r: &[u64], c: &[u64]) -> RationalFunction {
    let f = field.as_ref();
    let rho: Poly = if pi == [0, 1] { vec![1, 1] } else { vec![0, 1] };
    let q = (0..pi.len() - 1).fold(vec![1u64], |acc, _| poly::mul(f, &acc, &rho));
    let p = poly::rem(f, &poly::mul(f, &poly::sub(f, r, c), &q), pi);
    let c = RationalFunction::poly(field, c);
    c + RationalFunction::canonical(field, p, q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Arc<GaloisField> {
        gf_make(2, 1).unwrap()
    }

    #[test]
    fn valuations_of_t3_over_t_plus_1() {
        let f = f2();
        let x = RationalFunction::new(&f, &[0, 0, 0, 1], &[1, 1]).unwrap();
        let zero = GfElem::zero(&f);
        assert_eq!(rf_valuation(&x, &Place::linear(&zero)), Valuation::Finite(3));
        assert_eq!(rf_valuation(&x, &Place::Infinite), Valuation::Finite(-2));
        assert_eq!(rf_valuation(&x.zero_like(), &Place::linear(&zero)), Valuation::Infinite);
    }

    #[test]
    fn canonical_form() {
        let f = gf_make(3, 1).unwrap();
        // (2t^2 + 2t) / (2t) = t + 1
        let x = RationalFunction::new(&f, &[0, 2, 2], &[0, 2]).unwrap();
        assert_eq!(x.numerator(), &[1, 1]);
        assert_eq!(x.denominator(), &[1]);
        assert!(RationalFunction::new(&f, &[1], &[]).is_err());
    }

    #[test]
    fn coset_examples() {
        let f = f2();
        let zero = RationalFunction::poly(&f, &[]);
        let one = RationalFunction::poly(&f, &[1]);
        let at_t = Place::linear(&GfElem::zero(&f));
        let at_t1 = Place::linear(&GfElem::one(&f));
        let w = coset_intersect(&zero, &at_t, &one, &at_t1).unwrap();
        assert_eq!(w, RationalFunction::t(&f));
        let c = coset_intersect(&one, &at_t, &one, &Place::Infinite).unwrap();
        assert_eq!(c, one);
        assert_eq!(coset_intersect(&one, &at_t, &one, &at_t), Err(AlgebraError::EqualPlaces));
    }

    #[test]
    fn coset_with_higher_degree_place() {
        let f = gf_make(3, 1).unwrap();
        let pi = Place::finite(&f, &[1, 0, 1]).unwrap(); // t^2 + 1
        let a = RationalFunction::new(&f, &[2, 1], &[1, 1]).unwrap();
        let b = RationalFunction::new(&f, &[1], &[0, 0, 1]).unwrap(); // 1/t^2, val_inf = 2
        let w = coset_intersect(&a, &pi, &b, &Place::Infinite).unwrap();
        assert!(positive(&(w.clone() - a), &pi));
        assert!(positive(&(w - b), &Place::Infinite));
        assert!(Place::finite(&f, &[2, 0, 1]).is_err()); // t^2 - 1 splits
    }

    #[test]
    fn precondition_outside_ring() {
        let f = f2();
        let inv_t = RationalFunction::new(&f, &[1], &[0, 1]).unwrap();
        let one = inv_t.one_like();
        let r = coset_intersect(&inv_t, &Place::linear(&GfElem::zero(&f)), &one, &Place::Infinite);
        assert!(matches!(r, Err(AlgebraError::OutsideValuationRing(_))));
    }

    #[test]
    fn frobenius_roots_only_for_pth_powers() {
        let f = f2();
        let t = RationalFunction::t(&f);
        let t2 = t.pth_power();
        assert_eq!(t2.frobenius(-1).unwrap(), t);
        assert!(matches!(t.frobenius(-1), Err(AlgebraError::NotPthPower(_))));
    }

    #[test]
    fn json_round_trip() {
        let f = gf_make(2, 2).unwrap();
        let g = f.generator_raw();
        let x = RationalFunction::new(&f, &[g, 1], &[1, 0, 1]).unwrap();
        let j = x.to_json();
        assert_eq!(j.to_string(), r#"{"den":[[1,0],[0,0],[1,0]],"k":2,"num":[[0,1],[1,0]],"p":2}"#);
        assert_eq!(RationalFunction::from_json(&j).unwrap(), x);
    }
}
