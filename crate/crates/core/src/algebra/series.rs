//! Truncated series over `F_{p^k}` with exponents in `p^{-N} Z`.
//!
//! Exponents are stored as integers scaled by `p^N`. A series carries a
//! precision bound: coefficients below it are certified, nothing at or above
//! it is stored. Constants produced by `zero_like`/`one_like` are exact.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::gf::{gf_make, GaloisField, GfElem};
use super::pexp::PExponent;
use super::{AlgebraError, Field, Valuation};

/// Largest allowed `p^N`; keeps scaled exponents comfortably inside `i64`.
const MAX_SCALE: i64 = 1 << 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Prec {
    Exact,
    Upto(i64),
}

impl Prec {
    fn min(self, o: Prec) -> Prec {
        match (self, o) {
            (Prec::Exact, x) | (x, Prec::Exact) => x,
            (Prec::Upto(a), Prec::Upto(b)) => Prec::Upto(a.min(b)),
        }
    }

    fn admits(self, e: i64) -> bool {
        match self {
            Prec::Exact => true,
            Prec::Upto(p) => e < p,
        }
    }
}

#[derive(Clone)]
pub struct TruncatedSeries {
    field: Arc<GaloisField>,
    cap: u32,
    scale: i64,
    terms: Vec<(i64, u64)>,
    prec: Prec,
}

fn scale_for(p: u64, cap: u32) -> Result<i64, AlgebraError> {
    (p as i64)
        .checked_pow(cap)
        .filter(|s| *s <= MAX_SCALE)
        .ok_or_else(|| AlgebraError::InvalidSeries(format!("cap {cap} too large for p = {p}")))
}

impl TruncatedSeries {
    fn raw(field: &Arc<GaloisField>, cap: u32, scale: i64, terms: Vec<(i64, u64)>, prec: Prec) -> Self {
        TruncatedSeries { field: field.clone(), cap, scale, terms, prec }
    }

    fn like(&self, terms: Vec<(i64, u64)>, prec: Prec) -> Self {
        TruncatedSeries::raw(&self.field, self.cap, self.scale, terms, prec)
    }

    fn scaled(&self, e: PExponent) -> Result<i64, AlgebraError> {
        e.to_scaled(self.scale).ok_or_else(|| {
            let (_, d) = e.parts(self.field.p());
            AlgebraError::CapOverflow { needed: d, cap: self.cap }
        })
    }

    fn unscaled(&self, e: i64) -> PExponent {
        PExponent::from_scaled(e, self.scale)
    }

    /// Builds a series from `(exponent, coefficient)` pairs. Repeated
    /// exponents are summed. Terms at or above `precision` are rejected.
    pub fn from_terms(
        field: &Arc<GaloisField>,
        cap: u32,
        terms: &[(PExponent, GfElem)],
        precision: PExponent,
    ) -> Result<Self, AlgebraError> {
        let scale = scale_for(field.p(), cap)?;
        let base = TruncatedSeries::raw(field, cap, scale, Vec::new(), Prec::Exact);
        let prec = base.scaled(precision)?;
        let mut scaled = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            assert!(**c.field() == **field, "coefficient from another field");
            let se = base.scaled(*e)?;
            if se >= prec && c.raw() != 0 {
                return Err(AlgebraError::InvalidSeries(format!(
                    "term t^{e} not below precision {precision}"
                )));
            }
            scaled.push((se, c.raw()));
        }
        Ok(base.like(normalize(field, scaled), Prec::Upto(prec)))
    }

    pub fn zero(field: &Arc<GaloisField>, cap: u32, precision: PExponent) -> Result<Self, AlgebraError> {
        TruncatedSeries::from_terms(field, cap, &[], precision)
    }

    pub fn monomial(
        field: &Arc<GaloisField>,
        cap: u32,
        coeff: GfElem,
        exp: PExponent,
        precision: PExponent,
    ) -> Result<Self, AlgebraError> {
        TruncatedSeries::from_terms(field, cap, &[(exp, coeff)], precision)
    }

    /// `t^exp` with coefficient 1.
    pub fn t_pow(field: &Arc<GaloisField>, cap: u32, exp: PExponent, precision: PExponent) -> Result<Self, AlgebraError> {
        TruncatedSeries::monomial(field, cap, GfElem::one(field), exp, precision)
    }

    pub fn field(&self) -> &Arc<GaloisField> {
        &self.field
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn p(&self) -> u64 {
        self.field.p()
    }

    /// `None` for exact values.
    pub fn precision(&self) -> Option<PExponent> {
        match self.prec {
            Prec::Exact => None,
            Prec::Upto(p) => Some(self.unscaled(p)),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.prec == Prec::Exact
    }

    pub fn terms(&self) -> Vec<(PExponent, GfElem)> {
        self.terms
            .iter()
            .map(|&(e, c)| (self.unscaled(e), GfElem::new(&self.field, c)))
            .collect()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// True when every certified coefficient vanishes.
    pub fn is_zero_to_precision(&self) -> bool {
        self.terms.is_empty()
    }

    /// Valuation of the series. Errors when no nonzero coefficient is
    /// certified, unless the value is an exact zero.
    pub fn valuation(&self) -> Result<Valuation<PExponent>, AlgebraError> {
        match (self.terms.first(), self.prec) {
            (Some(&(e, _)), _) => Ok(Valuation::Finite(self.unscaled(e))),
            (None, Prec::Exact) => Ok(Valuation::Infinite),
            (None, Prec::Upto(p)) => Err(AlgebraError::PrecisionExhausted(format!(
                "no certified term below {}",
                self.unscaled(p)
            ))),
        }
    }

    /// Valuation of a value that must be nonzero within precision.
    pub fn val(&self) -> Result<PExponent, AlgebraError> {
        match self.valuation()? {
            Valuation::Finite(v) => Ok(v),
            Valuation::Infinite => Err(AlgebraError::ZeroInversion),
        }
    }

    pub fn leading_coeff(&self) -> Option<GfElem> {
        self.terms.first().map(|&(_, c)| GfElem::new(&self.field, c))
    }

    /// Lowers the precision bound to `precision` (no-op if already lower).
    pub fn truncate(&self, precision: PExponent) -> Result<Self, AlgebraError> {
        let p = self.scaled(precision)?;
        let prec = self.prec.min(Prec::Upto(p));
        let terms = self.terms.iter().copied().filter(|&(e, _)| prec.admits(e)).collect();
        Ok(self.like(terms, prec))
    }

    fn assert_compatible(&self, o: &TruncatedSeries) {
        assert!(
            self.cap == o.cap && (Arc::ptr_eq(&self.field, &o.field) || *self.field == *o.field),
            "series over different substrates: {:?}/N={} vs {:?}/N={}",
            self.field,
            self.cap,
            o.field,
            o.cap
        );
    }

    // Lower bound for the valuation; None means exact zero.
    fn val_bound(&self) -> Option<i64> {
        match (self.terms.first(), self.prec) {
            (Some(&(e, _)), _) => Some(e),
            (None, Prec::Upto(p)) => Some(p),
            (None, Prec::Exact) => None,
        }
    }

    fn add_impl(&self, o: &TruncatedSeries, negate: bool) -> TruncatedSeries {
        self.assert_compatible(o);
        let f = &self.field;
        let prec = self.prec.min(o.prec);
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        let sign = |c: u64| if negate { f.neg(c) } else { c };
        while i < self.terms.len() || j < o.terms.len() {
            let a = self.terms.get(i);
            let b = o.terms.get(j);
            let (e, c) = match (a, b) {
                (Some(&(ea, ca)), Some(&(eb, cb))) => match ea.cmp(&eb) {
                    Ordering::Less => {
                        i += 1;
                        (ea, ca)
                    }
                    Ordering::Greater => {
                        j += 1;
                        (eb, sign(cb))
                    }
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                        (ea, f.add(ca, sign(cb)))
                    }
                },
                (Some(&(ea, ca)), None) => {
                    i += 1;
                    (ea, ca)
                }
                (None, Some(&(eb, cb))) => {
                    j += 1;
                    (eb, sign(cb))
                }
                (None, None) => unreachable!(),
            };
            if c != 0 && prec.admits(e) {
                out.push((e, c));
            }
        }
        self.like(out, prec)
    }

    fn mul_impl(&self, o: &TruncatedSeries) -> TruncatedSeries {
        self.assert_compatible(o);
        let prec = match (self.prec, o.prec) {
            (Prec::Exact, Prec::Exact) => Prec::Exact,
            (Prec::Upto(pa), Prec::Exact) => o.val_bound().map_or(Prec::Exact, |vb| Prec::Upto(pa + vb)),
            (Prec::Exact, Prec::Upto(pb)) => self.val_bound().map_or(Prec::Exact, |va| Prec::Upto(pb + va)),
            (Prec::Upto(pa), Prec::Upto(pb)) => {
                Prec::Upto((pa + o.val_bound().unwrap()).min(pb + self.val_bound().unwrap()))
            }
        };
        self.mul_truncated(o, prec)
    }

    fn mul_truncated(&self, o: &TruncatedSeries, prec: Prec) -> TruncatedSeries {
        let f = &self.field;
        let mut prods = Vec::with_capacity(self.terms.len() * o.terms.len());
        for &(ea, ca) in &self.terms {
            for &(eb, cb) in &o.terms {
                if prec.admits(ea + eb) {
                    prods.push((ea + eb, f.mul(ca, cb)));
                } else {
                    break;
                }
            }
        }
        self.like(normalize(f, prods), prec)
    }

    fn scale_coeff(&self, c: u64) -> TruncatedSeries {
        let f = &self.field;
        let terms = if c == 0 {
            Vec::new()
        } else {
            self.terms.iter().map(|&(e, x)| (e, f.mul(x, c))).collect()
        };
        self.like(terms, self.prec)
    }

    fn shift(&self, d: i64) -> TruncatedSeries {
        let prec = match self.prec {
            Prec::Exact => Prec::Exact,
            Prec::Upto(p) => Prec::Upto(p + d),
        };
        self.like(self.terms.iter().map(|&(e, c)| (e + d, c)).collect(), prec)
    }

    /// Multiplicative inverse via Newton iteration on the normalized unit.
    pub fn inverse(&self) -> Result<TruncatedSeries, AlgebraError> {
        let Some(&(v, c)) = self.terms.first() else {
            return Err(match self.prec {
                Prec::Exact => AlgebraError::ZeroInversion,
                Prec::Upto(p) => AlgebraError::PrecisionExhausted(format!(
                    "inverting a value that is zero below {}",
                    self.unscaled(p)
                )),
            });
        };
        let f = &self.field;
        let cinv = f.inv(c).unwrap();
        let rel = match self.prec {
            Prec::Exact if self.terms.len() == 1 => {
                return Ok(self.like(vec![(-v, cinv)], Prec::Exact));
            }
            Prec::Exact => {
                return Err(AlgebraError::PrecisionExhausted(
                    "exact non-monomial has no finite inverse".into(),
                ))
            }
            Prec::Upto(p) => p - v,
        };
        // z = x / (c t^v) = 1 + (higher terms), known below rel
        let z = self.shift(-v).scale_coeff(cinv);
        let one = self.like(vec![(0, 1)], Prec::Exact);
        let mut y = one.clone();
        let limit = Prec::Upto(rel);
        loop {
            let zy = z.mul_truncated(&y, limit);
            let err = one.add_impl(&zy, true);
            if err.terms.is_empty() {
                break;
            }
            let corr = y.mul_truncated(&err, limit);
            y = y.add_impl(&corr, false);
            y.prec = Prec::Exact;
            y.terms.retain(|&(e, _)| e < rel);
        }
        y.prec = limit;
        Ok(y.scale_coeff(cinv).shift(-v))
    }

    /// `φ^i`. Negative `i` needs every exponent to stay within the cap.
    pub fn frob(&self, i: i64) -> Result<TruncatedSeries, AlgebraError> {
        let f = &self.field;
        let p = f.p() as i64;
        if i >= 0 {
            let m = p.checked_pow(i as u32).expect("frobenius exponent overflow");
            let terms = self
                .terms
                .iter()
                .map(|&(e, c)| (e.checked_mul(m).expect("exponent overflow"), f.frob(c, i)))
                .collect();
            let prec = match self.prec {
                Prec::Exact => Prec::Exact,
                Prec::Upto(pr) => Prec::Upto(pr.checked_mul(m).expect("precision overflow")),
            };
            return Ok(self.like(terms, prec));
        }
        let j = i.unsigned_abs() as u32;
        let d = p.checked_pow(j).filter(|d| *d <= self.scale);
        let needed = self
            .terms
            .iter()
            .map(|&(e, _)| self.unscaled(e).parts(f.p()).1 + j)
            .max()
            .unwrap_or(0);
        let d = match d {
            Some(d) if self.terms.iter().all(|&(e, _)| e % d == 0) => d,
            _ => return Err(AlgebraError::CapOverflow { needed: needed.max(j), cap: self.cap }),
        };
        let terms = self.terms.iter().map(|&(e, c)| (e / d, f.frob(c, i))).collect();
        let prec = match self.prec {
            Prec::Exact => Prec::Exact,
            // certified grid points e' satisfy e' * d < P
            Prec::Upto(pr) => Prec::Upto(-((-pr).div_euclid(d))),
        };
        Ok(self.like(terms, prec))
    }

    pub fn pow(&self, n: i64) -> Result<TruncatedSeries, AlgebraError> {
        if n < 0 {
            return Ok(self.inverse()?.pow_u(n.unsigned_abs()));
        }
        Ok(self.pow_u(n as u64))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let p = self.field.p();
        let terms = self
            .terms
            .iter()
            .map(|&(e, c)| {
                let (n, d) = self.unscaled(e).parts(p);
                (n, d, GfElem::new(&self.field, c).coeffs())
            })
            .collect();
        let precision = self.precision().map(|x| x.parts(p));
        serde_json::to_value(SeriesJson {
            p,
            k: self.field.degree(),
            cap: self.cap,
            terms,
            precision,
        })
        .expect("series json")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<TruncatedSeries, AlgebraError> {
        let j: SeriesJson =
            serde_json::from_value(v.clone()).map_err(|e| AlgebraError::Json(e.to_string()))?;
        let field = gf_make(j.p, j.k)?;
        let scale = scale_for(j.p, j.cap)?;
        let mut out = TruncatedSeries::raw(&field, j.cap, scale, Vec::new(), Prec::Exact);
        let mut terms = Vec::with_capacity(j.terms.len());
        for (n, d, coeffs) in &j.terms {
            if coeffs.len() > field.degree() || coeffs.iter().any(|&c| c >= j.p) {
                return Err(AlgebraError::Json(format!("bad coefficient vector {coeffs:?}")));
            }
            let e = out.scaled(PExponent::new(*n, *d, j.p))?;
            terms.push((e, field.from_digits(coeffs)));
        }
        if let Some((n, d)) = j.precision {
            out.prec = Prec::Upto(out.scaled(PExponent::new(n, d, j.p))?);
        }
        let normalized = normalize(&field, terms.clone());
        if normalized != terms || !terms.iter().all(|&(e, _)| out.prec.admits(e)) {
            return Err(AlgebraError::Json(
                "terms must be sorted, nonzero and below precision".into(),
            ));
        }
        out.terms = normalized;
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    p: u64,
    k: usize,
    cap: u32,
    terms: Vec<(i64, u32, Vec<u64>)>,
    precision: Option<(i64, u32)>,
}

/// Sorts by exponent, merges duplicates, drops zero coefficients.
fn normalize(f: &GaloisField, mut terms: Vec<(i64, u64)>) -> Vec<(i64, u64)> {
    terms.sort_unstable_by_key(|t| t.0);
    let mut out: Vec<(i64, u64)> = Vec::with_capacity(terms.len());
    for (e, c) in terms {
        match out.last_mut() {
            Some(last) if last.0 == e => last.1 = f.add(last.1, c),
            _ => {
                if let Some(last) = out.last() {
                    if last.1 == 0 {
                        out.pop();
                    }
                }
                out.push((e, c));
            }
        }
    }
    if out.last().is_some_and(|l| l.1 == 0) {
        out.pop();
    }
    out
}

impl PartialEq for TruncatedSeries {
    fn eq(&self, o: &Self) -> bool {
        self.cap == o.cap && *self.field == *o.field && self.terms == o.terms && self.prec == o.prec
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn fmt_exp(e: PExponent) -> String {
    let s = e.to_string();
    if s.contains('/') || s.starts_with('-') {
        format!("t^({s})")
    } else if s == "1" {
        "t".into()
    } else {
        format!("t^{s}")
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (e, c) in self.terms() {
            let cs = c.to_string();
            let cs = if cs.contains('+') { format!("({cs})") } else { cs };
            parts.push(match (e == PExponent::zero(), cs.as_str()) {
                (true, _) => cs,
                (false, "1") => fmt_exp(e),
                (false, _) => format!("{cs}*{}", fmt_exp(e)),
            });
        }
        if let Some(p) = self.precision() {
            parts.push(format!("O({})", fmt_exp(p)));
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        f.write_str(&parts.join(" + "))
    }
}

impl Serialize for TruncatedSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl Add for TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, o: Self) -> Self {
        self.add_impl(&o, false)
    }
}

impl Sub for TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, o: Self) -> Self {
        self.add_impl(&o, true)
    }
}

impl Mul for TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, o: Self) -> Self {
        self.mul_impl(&o)
    }
}

impl<'a> Add<&'a TruncatedSeries> for &'a TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, o: &TruncatedSeries) -> TruncatedSeries {
        self.add_impl(o, false)
    }
}

impl<'a> Sub<&'a TruncatedSeries> for &'a TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, o: &TruncatedSeries) -> TruncatedSeries {
        self.add_impl(o, true)
    }
}

impl<'a> Mul<&'a TruncatedSeries> for &'a TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, o: &TruncatedSeries) -> TruncatedSeries {
        self.mul_impl(o)
    }
}

impl Neg for TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> Self {
        let f = &self.field;
        let terms = self.terms.iter().map(|&(e, c)| (e, f.neg(c))).collect();
        self.like(terms, self.prec)
    }
}

impl Field for TruncatedSeries {
    fn characteristic(&self) -> u64 {
        self.field.p()
    }

    fn zero_like(&self) -> Self {
        self.like(Vec::new(), Prec::Exact)
    }

    fn one_like(&self) -> Self {
        self.like(vec![(0, 1)], Prec::Exact)
    }

    fn from_int_like(&self, n: i64) -> Self {
        let c = self.field.from_int(n);
        self.like(if c == 0 { Vec::new() } else { vec![(0, c)] }, Prec::Exact)
    }

    fn is_zero(&self) -> Result<bool, AlgebraError> {
        Ok(self.terms.is_empty())
    }

    fn try_inv(&self) -> Result<Self, AlgebraError> {
        self.inverse()
    }

    fn frobenius(&self, i: i64) -> Result<Self, AlgebraError> {
        self.frob(i)
    }

    fn pth_power(&self) -> Self {
        self.frob(1).expect("positive frobenius is total")
    }

    fn pivot_cost(&self) -> Option<PExponent> {
        self.terms.first().map(|&(e, _)| self.unscaled(e))
    }
}

/// Root of `x^p - x = z` for `val(z) > 0`, as `x = -(z + z^p + z^{p^2} + ...)`
/// summed until the terms pass the precision of `z`.
pub fn ts_as_root(z: &TruncatedSeries) -> Result<TruncatedSeries, AlgebraError> {
    let bound = match (z.terms.first(), z.prec) {
        (_, Prec::Exact) if z.terms.is_empty() => return Ok(z.clone()),
        (_, Prec::Exact) => {
            return Err(AlgebraError::PrecisionExhausted(
                "exact input gives an infinite root series".into(),
            ))
        }
        (Some(&(e, _)), _) => e,
        (None, Prec::Upto(p)) => p,
    };
    if bound <= 0 {
        return Err(AlgebraError::NonPositiveValuation(z.unscaled(bound).to_string()));
    }
    let Prec::Upto(limit) = z.prec else { unreachable!() };
    let mut acc = z.zero_like();
    let mut cur = z.clone();
    while !cur.terms.is_empty() {
        acc = acc.add_impl(&cur, false);
        let next = cur.frob(1)?;
        cur = next.like(next.terms.iter().copied().filter(|&(e, _)| e < limit).collect(), Prec::Exact);
    }
    // precision of the sum is that of z
    let mut x = -acc;
    x.prec = z.prec;
    Ok(x)
}

/// Output of [`as_root_descent`]: the sequence `e_0 = y, e_1, ...` and,
/// per step, the iteration depth used for the pole root and the valuation
/// of the remaining defect `℘(e) - 1/e_i`.
#[derive(Debug, Clone, Serialize)]
pub struct AsDescent {
    pub elements: Vec<TruncatedSeries>,
    pub depths: Vec<u32>,
    pub residual_vals: Vec<Valuation<PExponent>>,
}

/// Builds `e_{i+1} = 1/e` where `℘(e) = 1/e_i`, approximating the pole root
/// `e` by `x_{k+1} = φ^{-1}(1/e_i + x_k)`. Each step takes as many
/// iterations as the cap allows while leaving one level per later step.
pub fn as_root_descent(y: &TruncatedSeries, steps: u32) -> Result<AsDescent, AlgebraError> {
    let p = y.p();
    let v0 = y.val()?;
    if !v0.is_positive() {
        return Err(AlgebraError::NonPositiveValuation(v0.to_string()));
    }
    let den_log = |s: &TruncatedSeries| -> u32 {
        s.terms.iter().map(|&(e, _)| s.unscaled(e).parts(p).1).max().unwrap_or(0)
    };
    let start = den_log(y);
    if start + steps > y.cap {
        return Err(AlgebraError::CapOverflow { needed: start + steps, cap: y.cap });
    }
    let mut out = AsDescent { elements: vec![y.clone()], depths: Vec::new(), residual_vals: Vec::new() };
    for i in 0..steps {
        let ei = out.elements.last().unwrap();
        let z = ei.inverse()?;
        let spare = y.cap.saturating_sub(den_log(&z) + (steps - i - 1));
        let depth = spare.max(1);
        let mut x = z.zero_like();
        for _ in 0..depth {
            x = (&z + &x).frob(-1)?;
        }
        let residual = &x.wp() - &z;
        let residual_val = match residual.valuation() {
            Ok(v) => v,
            Err(_) => Valuation::Infinite,
        };
        let next = x.inverse()?;
        let expected = v0.scale_p(p, -(i as i32 + 1));
        if next.val()? != expected {
            return Err(AlgebraError::PrecisionExhausted(format!(
                "step {}: valuation {} differs from {}",
                i + 1,
                next.val()?,
                expected
            )));
        }
        out.depths.push(depth);
        out.residual_vals.push(residual_val);
        out.elements.push(next);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(p: u64) -> Arc<GaloisField> {
        gf_make(p, 1).unwrap()
    }

    fn t(f: &Arc<GaloisField>, cap: u32, e: i64, prec: i64) -> TruncatedSeries {
        TruncatedSeries::t_pow(f, cap, PExponent::int(e), PExponent::int(prec)).unwrap()
    }

    #[test]
    fn monomial_product() {
        let f = field(2);
        let prod = &t(&f, 2, 1, 10) * &t(&f, 2, 2, 10);
        assert_eq!(prod.val().unwrap(), PExponent::int(3));
        assert_eq!(prod.num_terms(), 1);
        // min(10 + 2, 10 + 1)
        assert_eq!(prod.precision(), Some(PExponent::int(11)));
    }

    #[test]
    fn difference_of_squares_over_f3() {
        let f = field(3);
        let one = t(&f, 1, 0, 10);
        let x = t(&f, 1, 1, 10);
        let prod = &(&one + &x) * &(&one - &x);
        let expected = &one - &(&x * &x);
        assert!((&prod - &expected).is_zero_to_precision());
        assert_eq!(prod.to_string(), "1 + 2*t^2 + O(t^10)");
    }

    #[test]
    fn inverse_frobenius_halves_exponent() {
        let f = field(2);
        let r = t(&f, 2, 1, 10).frob(-1).unwrap();
        assert_eq!(r.val().unwrap(), PExponent::new(1, 1, 2));
        assert_eq!(r.precision(), Some(PExponent::int(5)));
        let r3 = r.frob(-1).unwrap();
        assert_eq!(r3.val().unwrap(), PExponent::new(1, 2, 2));
        assert!(matches!(r3.frob(-1), Err(AlgebraError::CapOverflow { needed: 3, cap: 2 })));
    }

    #[test]
    fn inverse_of_geometric() {
        let f = field(2);
        let x = &t(&f, 0, 0, 12) + &t(&f, 0, 1, 12);
        let inv = x.inverse().unwrap();
        // 1/(1+t) = 1 + t + t^2 + ... over F_2
        assert_eq!(inv.num_terms(), 12);
        assert!((&(&x * &inv) - &x.one_like()).is_zero_to_precision());
    }

    #[test]
    fn inverse_tracks_valuation_shift() {
        let f = field(3);
        let x = &t(&f, 1, 2, 8) + &t(&f, 1, 3, 8);
        let inv = x.inverse().unwrap();
        assert_eq!(inv.val().unwrap(), PExponent::int(-2));
        assert_eq!(inv.precision(), Some(PExponent::int(4)));
        assert!(matches!(x.zero_like().inverse(), Err(AlgebraError::ZeroInversion)));
    }

    #[test]
    fn as_root_of_t4_plus_t() {
        let f = field(2);
        let z = &t(&f, 0, 4, 40) + &t(&f, 0, 1, 40);
        let x = ts_as_root(&z).unwrap();
        assert_eq!(x.val().unwrap(), PExponent::int(1));
        assert!((&x.wp() - &z).is_zero_to_precision());
    }

    #[test]
    fn as_root_edge_cases() {
        let f = field(2);
        let zero = TruncatedSeries::zero(&f, 0, PExponent::int(5)).unwrap();
        assert!(ts_as_root(&zero).unwrap().is_zero_to_precision());
        let one = t(&f, 0, 0, 5);
        assert!(matches!(ts_as_root(&one), Err(AlgebraError::NonPositiveValuation(_))));
    }

    #[test]
    fn descent_halves_valuations() {
        let f = field(2);
        let y = t(&f, 3, 1, 20);
        let d = as_root_descent(&y, 2).unwrap();
        let vals: Vec<String> = d.elements.iter().map(|e| e.val().unwrap().to_string()).collect();
        assert_eq!(vals, ["1", "1/2", "1/4"]);
        assert_eq!(as_root_descent(&y, 0).unwrap().elements.len(), 1);
        let bad = &t(&f, 3, 0, 20) + &y;
        assert!(matches!(as_root_descent(&bad, 1), Err(AlgebraError::NonPositiveValuation(_))));
        assert!(matches!(as_root_descent(&y, 4), Err(AlgebraError::CapOverflow { .. })));
    }

    #[test]
    fn json_round_trip() {
        let f = gf_make(2, 2).unwrap();
        let g = GfElem::generator(&f);
        let s = TruncatedSeries::from_terms(
            &f,
            2,
            &[(PExponent::new(1, 1, 2), g.clone()), (PExponent::int(3), GfElem::one(&f))],
            PExponent::new(15, 2, 2),
        )
        .unwrap();
        let j = s.to_json();
        assert_eq!(
            j.to_string(),
            r#"{"cap":2,"k":2,"p":2,"precision":[15,2],"terms":[[1,1,[0,1]],[3,0,[1,0]]]}"#
        );
        assert_eq!(TruncatedSeries::from_json(&j).unwrap(), s);
        let exact = s.one_like();
        assert_eq!(TruncatedSeries::from_json(&exact.to_json()).unwrap(), exact);
    }

    #[test]
    fn rejects_terms_at_precision() {
        let f = field(2);
        assert!(TruncatedSeries::t_pow(&f, 0, PExponent::int(3), PExponent::int(3)).is_err());
        assert!(matches!(
            TruncatedSeries::t_pow(&f, 1, PExponent::new(1, 2, 2), PExponent::int(3)),
            Err(AlgebraError::CapOverflow { needed: 2, cap: 1 })
        ));
    }
}
