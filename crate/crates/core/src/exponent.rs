//! Extended-rational exponents in [1, inf] with exact Hölder conjugation.
//!
//! All branch tests on exponents (p >= q, q <= 2, ...) are decided in exact
//! rational arithmetic, never through floating point.

use crate::error::{Error, Result};
use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

/// An exponent p in [1, inf]: either an exact rational or exactly infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Exponent {
    Finite(Ratio<i64>),
    Infinity,
}

impl Exponent {
    pub const ONE: Exponent = Exponent::Finite(Ratio::new_raw(1, 1));
    pub const TWO: Exponent = Exponent::Finite(Ratio::new_raw(2, 1));
    pub const INF: Exponent = Exponent::Infinity;

    pub fn from_int(p: i64) -> Result<Self> {
        Self::from_ratio(p, 1)
    }

    pub fn from_ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::ExponentDomain("denominator is zero".into()));
        }
        let r = Ratio::new(num, den);
        if r < Ratio::new(1, 1) {
            return Err(Error::ExponentDomain(format!("{r}")));
        }
        Ok(Exponent::Finite(r))
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Exponent::Infinity)
    }

    pub fn is_one(self) -> bool {
        self == Exponent::ONE
    }

    /// Hölder conjugate p* with 1/p + 1/p* = 1. Exact involution.
    pub fn conjugate(self) -> Exponent {
        match self {
            Exponent::Infinity => Exponent::ONE,
            Exponent::Finite(r) => {
                if r == Ratio::new(1, 1) {
                    Exponent::Infinity
                } else {
                    // p/(p-1), exact
                    Exponent::Finite(r / (r - Ratio::new(1, 1)))
                }
            }
        }
    }

    /// 1/p as an exact rational; 1/inf = 0.
    pub fn recip(self) -> Ratio<i64> {
        match self {
            Exponent::Infinity => Ratio::zero(),
            Exponent::Finite(r) => r.recip(),
        }
    }

    pub fn to_f64(self) -> f64 {
        match self {
            Exponent::Infinity => f64::INFINITY,
            Exponent::Finite(r) => ratio_to_f64(r),
        }
    }
}

pub(crate) fn ratio_to_f64(r: Ratio<i64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// n^e for an exact rational exponent, evaluated in f64.
pub fn rational_pow(base: f64, e: Ratio<i64>) -> f64 {
    if e.is_zero() {
        1.0
    } else if e.denom() == &1 {
        base.powi(*e.numer() as i32)
    } else {
        base.powf(ratio_to_f64(e))
    }
}

/// |e| for rational exponents.
pub fn ratio_abs(e: Ratio<i64>) -> Ratio<i64> {
    e.abs()
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Exponent::Infinity, Exponent::Infinity) => Ordering::Equal,
            (Exponent::Infinity, Exponent::Finite(_)) => Ordering::Greater,
            (Exponent::Finite(_), Exponent::Infinity) => Ordering::Less,
            (Exponent::Finite(a), Exponent::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Infinity => write!(f, "inf"),
            Exponent::Finite(r) => {
                if r.denom() == &1 {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s.eq_ignore_ascii_case("infinity") || s == "∞" {
            return Ok(Exponent::Infinity);
        }
        if let Some((num, den)) = s.split_once('/') {
            let num: i64 = num
                .trim()
                .parse()
                .map_err(|_| Error::ExponentDomain(format!("bad numerator in {s:?}")))?;
            let den: i64 = den
                .trim()
                .parse()
                .map_err(|_| Error::ExponentDomain(format!("bad denominator in {s:?}")))?;
            return Exponent::from_ratio(num, den);
        }
        let n: i64 = s.parse().map_err(|_| {
            Error::ExponentDomain(format!(
                "cannot parse {s:?}; use an integer, a ratio like 3/2, or inf"
            ))
        })?;
        Exponent::from_int(n)
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A triple (p, q, r) of exponents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExponentTriple {
    pub p: Exponent,
    pub q: Exponent,
    pub r: Exponent,
}

impl ExponentTriple {
    pub fn new(p: Exponent, q: Exponent, r: Exponent) -> Self {
        ExponentTriple { p, q, r }
    }

    /// One cyclic rotation (p,q,r) -> (q,r,p); the tensor norm is invariant.
    pub fn cyclic(self) -> Self {
        ExponentTriple::new(self.q, self.r, self.p)
    }

    /// Hölder-conjugate image (p,q,r) -> (r*,q*,p*); the tensor norm is invariant.
    pub fn conjugate(self) -> Self {
        ExponentTriple::new(
            self.r.conjugate(),
            self.q.conjugate(),
            self.p.conjugate(),
        )
    }

    /// All six symmetry images: three rotations of self and of its conjugate.
    pub fn variants(self) -> [ExponentTriple; 6] {
        let c = self.conjugate();
        [
            self,
            self.cyclic(),
            self.cyclic().cyclic(),
            c,
            c.cyclic(),
            c.cyclic().cyclic(),
        ]
    }

    /// Lexicographically smallest variant: rotations first, then conjugation.
    pub fn canonical(self) -> ExponentTriple {
        *self
            .variants()
            .iter()
            .min_by(|a, b| (a.p, a.q, a.r).cmp(&(b.p, b.q, b.r)))
            .unwrap()
    }

    pub fn min(self) -> Exponent {
        self.p.min(self.q).min(self.r)
    }

    pub fn max(self) -> Exponent {
        self.p.max(self.q).max(self.r)
    }
}

impl fmt::Display for ExponentTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.p, self.q, self.r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(s: &str) -> Exponent {
        s.parse().unwrap()
    }

    #[test]
    fn conjugation_is_exact_involution() {
        for s in ["1", "2", "3/2", "3", "7/5", "inf"] {
            let p = e(s);
            assert_eq!(p.conjugate().conjugate(), p);
        }
        assert_eq!(e("1").conjugate(), Exponent::Infinity);
        assert_eq!(e("inf").conjugate(), e("1"));
        assert_eq!(e("2").conjugate(), e("2"));
        assert_eq!(e("3/2").conjugate(), e("3"));
    }

    #[test]
    fn rejects_exponents_below_one() {
        assert!(Exponent::from_ratio(1, 2).is_err());
        assert!("0".parse::<Exponent>().is_err());
        assert!("-3".parse::<Exponent>().is_err());
    }

    #[test]
    fn ordering_treats_infinity_as_largest() {
        assert!(e("inf") > e("1000000"));
        assert!(e("3/2") < e("2"));
        assert!(e("2") == e("4/2"));
    }

    #[test]
    fn triple_cyclic_cubes_to_identity() {
        let t = ExponentTriple::new(e("1"), e("2"), e("inf"));
        assert_eq!(t.cyclic(), ExponentTriple::new(e("2"), e("inf"), e("1")));
        assert_eq!(t.cyclic().cyclic().cyclic(), t);
    }

    #[test]
    fn grothendieck_triple_is_self_conjugate() {
        let t = ExponentTriple::new(e("1"), e("2"), e("inf"));
        assert_eq!(t.conjugate(), t);
        let s = ExponentTriple::new(e("2"), e("2"), e("2"));
        assert_eq!(s.conjugate(), s);
    }

    #[test]
    fn canonical_folds_cyclic_class() {
        let t = ExponentTriple::new(e("2"), e("inf"), e("1"));
        assert_eq!(
            t.canonical(),
            ExponentTriple::new(e("1"), e("2"), e("inf"))
        );
    }

    #[test]
    fn parse_display_round_trip() {
        for s in ["1", "2", "3/2", "inf"] {
            assert_eq!(e(s).to_string(), s);
        }
    }
}
