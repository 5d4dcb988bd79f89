//! Exponent calculators for mixed-sum Hardy–Littlewood inequalities.
//!
//! All exponents are positive extended reals. Formulas work with reciprocals
//! (`1/∞ = 0`), so the infinite exponent is an ordinary value here.
//!
//! Regime boundaries such as `|1/p| ≤ 1/2` are tested with an absolute slack
//! of [`BOUNDARY_TOL`] in reciprocal space, so that inputs like
//! `p = (6, 6, 6)` land on the boundary despite binary rounding. Index sets
//! `M_<^ρ` use the strict comparison `r_j < ρ` with no slack.

mod formulas;
mod report;

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub use formulas::*;
pub use report::{predict, ExponentReport, Prediction, RegimeFlags};

/// Slack for regime-boundary comparisons in reciprocal space.
pub const BOUNDARY_TOL: f64 = 1e-12;

/// A value in (0, +∞].
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Exponent(f64);

impl Exponent {
    pub const INFINITY: Exponent = Exponent(f64::INFINITY);
    pub const ONE: Exponent = Exponent(1.0);
    pub const TWO: Exponent = Exponent(2.0);

    pub fn new(value: f64) -> Result<Self> {
        // NaN fails the comparison as well.
        if value > 0.0 {
            Ok(Exponent(value))
        } else {
            Err(Error::NonPositiveExponent(value))
        }
    }

    /// Exponent with the given reciprocal; `0` maps to +∞.
    pub fn from_recip(recip: f64) -> Result<Self> {
        if recip == 0.0 {
            Ok(Self::INFINITY)
        } else if recip > 0.0 && recip.is_finite() {
            Ok(Exponent(1.0 / recip))
        } else {
            Err(Error::NonPositiveExponent(1.0 / recip))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    #[inline]
    pub fn recip(self) -> f64 {
        if self.0.is_infinite() {
            0.0
        } else {
            1.0 / self.0
        }
    }

    #[inline]
    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }

    /// `p'` with `1/p + 1/p' = 1`.
    pub fn conjugate(self) -> Result<Exponent> {
        conjugate(self)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            f.write_str("inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

fn parse_number(s: &str) -> Option<f64> {
    // Integer ratios are divided once so `4/3` is the correctly rounded value.
    if let Some((num, den)) = s.split_once('/') {
        let (num, den) = (num.trim(), den.trim());
        let as_int = num.parse::<i64>().ok().zip(den.parse::<i64>().ok());
        return match as_int {
            Some((a, b)) if b != 0 => Some(a as f64 / b as f64),
            Some(_) => None,
            None => {
                let (a, b) = (num.parse::<f64>().ok()?, den.parse::<f64>().ok()?);
                (b != 0.0).then(|| a / b)
            }
        };
    }
    s.parse::<f64>().ok()
}

impl FromStr for Exponent {
    type Err = Error;

    /// Accepts a decimal, an integer ratio such as `4/3`, or `inf`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t.to_ascii_lowercase().as_str() {
            "inf" | "+inf" | "infinity" | "+infinity" | "∞" => return Ok(Self::INFINITY),
            _ => {}
        }
        let v = parse_number(t).ok_or_else(|| Error::ParseExponent(s.to_string()))?;
        if v.is_nan() {
            return Err(Error::ParseExponent(s.to_string()));
        }
        Exponent::new(v)
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        if self.is_infinite() {
            serializer.serialize_str("inf")
        } else {
            serializer.serialize_f64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(f64),
            Str(String),
        }
        let parsed = match Repr::deserialize(deserializer)? {
            Repr::Num(v) => Exponent::new(v),
            Repr::Str(s) => s.parse(),
        };
        parsed.map_err(serde::de::Error::custom)
    }
}

/// A non-empty list of exponents, one per slot of an m-linear form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Exponent>", into = "Vec<Exponent>")]
pub struct ExponentVector(Vec<Exponent>);

impl ExponentVector {
    pub fn new(entries: Vec<Exponent>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyExponentVector);
        }
        Ok(ExponentVector(entries))
    }

    pub fn from_values(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| Exponent::new(v)).collect::<Result<_>>()?)
    }

    pub fn from_recips(recips: &[f64]) -> Result<Self> {
        Self::new(recips.iter().map(|&v| Exponent::from_recip(v)).collect::<Result<_>>()?)
    }

    pub fn uniform(m: usize, value: Exponent) -> Result<Self> {
        Self::new(vec![value; m])
    }

    pub fn recips(&self) -> Vec<f64> {
        self.0.iter().map(|e| e.recip()).collect()
    }

    /// `|1/p| = Σ 1/p_j`.
    pub fn harmonic_sum(&self) -> f64 {
        self.0.iter().map(|e| e.recip()).sum()
    }

    pub fn into_inner(self) -> Vec<Exponent> {
        self.0
    }

    /// Error unless the vector has exactly `m` entries.
    pub fn expect_arity(&self, m: usize) -> Result<()> {
        if self.0.len() != m {
            return Err(Error::ArityMismatch { expected: m, found: self.0.len() });
        }
        Ok(())
    }
}

impl Deref for ExponentVector {
    type Target = [Exponent];
    fn deref(&self) -> &[Exponent] {
        &self.0
    }
}

impl TryFrom<Vec<Exponent>> for ExponentVector {
    type Error = Error;
    fn try_from(v: Vec<Exponent>) -> Result<Self> {
        ExponentVector::new(v)
    }
}

impl From<ExponentVector> for Vec<Exponent> {
    fn from(v: ExponentVector) -> Self {
        v.0
    }
}

impl FromStr for ExponentVector {
    type Err = Error;
    /// Comma-separated exponent tokens, e.g. `inf,4/3,2`.
    fn from_str(s: &str) -> Result<Self> {
        let entries = s
            .split(',')
            .map(|tok| tok.parse::<Exponent>())
            .collect::<Result<Vec<_>>>()?;
        ExponentVector::new(entries)
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// Sorted zero-based slot indices, a subset of `{0, …, m-1}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    pub fn from_indices(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        IndexSet(indices)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, j: usize) -> bool {
        self.0.binary_search(&j).is_ok()
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    /// `{0, …, m-1} \ self`.
    pub fn complement(&self, m: usize) -> IndexSet {
        IndexSet((0..m).filter(|&j| !self.contains(j)).collect())
    }

    pub fn is_full(&self, m: usize) -> bool {
        self.0.len() == m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_tokens() {
        assert!("inf".parse::<Exponent>().unwrap().is_infinite());
        assert!(" Infinity ".parse::<Exponent>().unwrap().is_infinite());
        assert_eq!("4/3".parse::<Exponent>().unwrap().value(), 4.0 / 3.0);
        assert_eq!("2.5".parse::<Exponent>().unwrap().value(), 2.5);
        assert!("0".parse::<Exponent>().is_err());
        assert!("-1".parse::<Exponent>().is_err());
        assert!("1/0".parse::<Exponent>().is_err());
        assert!("nan".parse::<Exponent>().is_err());
        assert!("abc".parse::<Exponent>().is_err());
        let v: ExponentVector = "inf, 4/3,2".parse().unwrap();
        assert_eq!(v.len(), 3);
        assert_eq!(v.to_string(), format!("inf,{},2", 4.0 / 3.0));
        assert!("".parse::<ExponentVector>().is_err());
    }

    #[test]
    fn reciprocal_of_infinity_is_zero() {
        assert_eq!(Exponent::INFINITY.recip(), 0.0);
        assert!(Exponent::from_recip(0.0).unwrap().is_infinite());
        assert_eq!(Exponent::from_recip(0.5).unwrap().value(), 2.0);
        assert!(Exponent::from_recip(-0.5).is_err());
    }

    #[test]
    fn json_uses_inf_string() {
        let v = ExponentVector::new(vec![Exponent::INFINITY, Exponent::new(1.5).unwrap()]).unwrap();
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"["inf",1.5]"#);
        let back: ExponentVector = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
        let frac: ExponentVector = serde_json::from_str(r#"["4/3", 2]"#).unwrap();
        assert_eq!(frac[0].value(), 4.0 / 3.0);
        assert!(serde_json::from_str::<ExponentVector>("[]").is_err());
        assert!(serde_json::from_str::<ExponentVector>("[0]").is_err());
    }

    #[test]
    fn index_set_complement_partitions() {
        let s = IndexSet::from_indices(vec![3, 0, 3]);
        assert_eq!(s.indices(), &[0, 3]);
        let c = s.complement(5);
        assert_eq!(c.indices(), &[1, 2, 4]);
        assert!((0..5).all(|j| s.contains(j) != c.contains(j)));
    }
}
