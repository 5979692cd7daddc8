//! Values in `Z[1/p]`, used for valuations of series.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;
use serde::Serialize;

/// A rational number whose denominator is a power of `p`.
///
/// The prime is not stored; constructors and [`PExponent::parts`] take it
/// explicitly. Ordering is the rational order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PExponent(Ratio<i64>);

impl PExponent {
    /// `num / p^den_log`.
    pub fn new(num: i64, den_log: u32, p: u64) -> PExponent {
        PExponent(Ratio::new(num, (p as i64).pow(den_log)))
    }

    pub fn int(n: i64) -> PExponent {
        PExponent(Ratio::from_integer(n))
    }

    pub fn zero() -> PExponent {
        PExponent::int(0)
    }

    pub fn ratio(&self) -> Ratio<i64> {
        self.0
    }

    pub fn from_ratio(r: Ratio<i64>) -> PExponent {
        PExponent(r)
    }

    /// Normalized `(numerator, denominatorLog)`; panics if the denominator
    /// is not a power of `p`.
    pub fn parts(&self, p: u64) -> (i64, u32) {
        let mut d = *self.0.denom();
        let mut e = 0u32;
        while d > 1 {
            assert!(d % p as i64 == 0, "{self} has a denominator that is not a power of {p}");
            d /= p as i64;
            e += 1;
        }
        (*self.0.numer(), e)
    }

    pub fn is_positive(&self) -> bool {
        *self.0.numer() > 0
    }

    pub fn is_negative(&self) -> bool {
        *self.0.numer() < 0
    }

    /// Multiplies by `p^i` (negative `i` divides).
    pub fn scale_p(&self, p: u64, i: i32) -> PExponent {
        let f = Ratio::from_integer((p as i64).pow(i.unsigned_abs()));
        if i >= 0 {
            PExponent(self.0 * f)
        } else {
            PExponent(self.0 / f)
        }
    }

    pub fn times(&self, n: i64) -> PExponent {
        PExponent(self.0 * n)
    }

    /// Exact value as an integer multiple of `1/scale`, if it is one.
    pub(crate) fn to_scaled(self, scale: i64) -> Option<i64> {
        let v = self.0 * scale;
        v.is_integer().then(|| v.to_integer())
    }

    pub(crate) fn from_scaled(n: i64, scale: i64) -> PExponent {
        PExponent(Ratio::new(n, scale))
    }
}

impl Add for PExponent {
    type Output = PExponent;
    fn add(self, o: PExponent) -> PExponent {
        PExponent(self.0 + o.0)
    }
}

impl Sub for PExponent {
    type Output = PExponent;
    fn sub(self, o: PExponent) -> PExponent {
        PExponent(self.0 - o.0)
    }
}

impl Neg for PExponent {
    type Output = PExponent;
    fn neg(self) -> PExponent {
        PExponent(-self.0)
    }
}

impl Mul<i64> for PExponent {
    type Output = PExponent;
    fn mul(self, n: i64) -> PExponent {
        self.times(n)
    }
}

impl fmt::Display for PExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for PExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for PExponent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_and_parts() {
        let a = PExponent::new(4, 2, 2);
        assert_eq!(a, PExponent::int(1));
        assert_eq!(a.parts(2), (1, 0));
        assert_eq!(PExponent::new(3, 2, 2).parts(2), (3, 2));
        assert_eq!(PExponent::new(-6, 1, 3).parts(3), (-2, 0));
    }

    #[test]
    fn order_is_rational_order() {
        let mut v = vec![
            PExponent::new(1, 1, 2),
            PExponent::int(-1),
            PExponent::new(3, 2, 2),
            PExponent::new(1, 2, 2),
        ];
        v.sort();
        let shown: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        assert_eq!(shown, ["-1", "1/4", "1/2", "3/4"]);
    }

    #[test]
    fn scaling_by_p_powers() {
        let a = PExponent::int(3);
        assert_eq!(a.scale_p(3, -2), PExponent::new(3, 2, 3));
        assert_eq!(a.scale_p(3, -2).scale_p(3, 2), a);
    }
}
