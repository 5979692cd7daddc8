//! Exact arithmetic substrates.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

pub mod fp;
pub mod gf;
pub mod linalg;
pub mod parse;
pub mod pexp;
pub(crate) mod poly;
pub mod ratfn;
pub mod series;

pub use gf::{gf_make, GaloisField, GfElem};
pub use linalg::Matrix;
pub use pexp::PExponent;
pub use ratfn::{coset_intersect, rf_valuation, Place, RationalFunction};
pub use series::{as_root_descent, ts_as_root, TruncatedSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error, serde::Serialize)]
#[serde(tag = "kind", content = "detail", rename_all = "snake_case")]
pub enum AlgebraError {
    #[error("{0} is not a supported prime")]
    NotPrime(u64),
    #[error("extension degree {0} outside 1..=8")]
    DegreeOutOfRange(usize),
    #[error("field {p}^{k} too large")]
    FieldTooLarge { p: u64, k: usize },
    #[error("division by zero")]
    ZeroInversion,
    #[error("exponent denominator p^{needed} exceeds cap p^{cap}")]
    CapOverflow { needed: u32, cap: u32 },
    #[error("not enough precision: {0}")]
    PrecisionExhausted(String),
    #[error("valuation must be positive, got {0}")]
    NonPositiveValuation(String),
    #[error("places must differ")]
    EqualPlaces,
    #[error("negative valuation at place: {0}")]
    OutsideValuationRing(String),
    #[error("polynomial is not monic irreducible: {0}")]
    NotIrreducible(String),
    #[error("not a p-th power: {0}")]
    NotPthPower(String),
    #[error("invalid series: {0}")]
    InvalidSeries(String),
    #[error("parse error at {start}..{end}: {msg}")]
    Parse { msg: String, start: usize, end: usize },
    #[error("json: {0}")]
    Json(String),
}

/// Valuation values, with `+∞` kept apart from every finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation<V> {
    Finite(V),
    Infinite,
}

impl<V: fmt::Display> fmt::Display for Valuation<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => v.fmt(f),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

impl<V: serde::Serialize> serde::Serialize for Valuation<V> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => v.serialize(s),
            Valuation::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<V> Valuation<V> {
    pub fn finite(self) -> Option<V> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

/// A field of characteristic `p` in which elements know their own field.
///
/// Equality through `==` is structural. For series, use
/// `(a - b).is_zero()` to compare up to precision.
pub trait Field:
    Clone
    + fmt::Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn characteristic(&self) -> u64;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_int_like(&self, n: i64) -> Self;
    fn is_zero(&self) -> Result<bool, AlgebraError>;
    fn try_inv(&self) -> Result<Self, AlgebraError>;
    /// `φ^i`, negative `i` allowed where the substrate supports p-th roots.
    fn frobenius(&self, i: i64) -> Result<Self, AlgebraError>;
    fn pth_power(&self) -> Self;

    /// Pivot preference for elimination; smaller is better. Substrates with
    /// a valuation return it so that elimination keeps relative precision.
    fn pivot_cost(&self) -> Option<PExponent> {
        None
    }

    /// Artin–Schreier map `x^p - x`.
    fn wp(&self) -> Self {
        self.pth_power() - self.clone()
    }

    fn try_div(&self, d: &Self) -> Result<Self, AlgebraError> {
        Ok(self.clone() * d.try_inv()?)
    }

    fn pow_u(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }
}
