//! Exact rational arithmetic.
//!
//! Scalars are [`num_rational::BigRational`], always kept in lowest terms with
//! a positive denominator. [`ExtRational`] adjoins `+inf`, which only ever
//! appears as an ellipsoid parameter (a cylinder factor).
//!
//! The textual form is `"p/q"`, or `"p"` when the denominator is one, and
//! `"inf"` for the point at infinity.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{domain, Error, Result};

pub type Rational = num_rational::BigRational;

/// `n` as a rational.
pub fn int<T: Into<BigInt>>(n: T) -> Rational {
    Rational::from_integer(n.into())
}

/// `num / den` in lowest terms. Panics if `den == 0`.
pub fn frac<N: Into<BigInt>, D: Into<BigInt>>(num: N, den: D) -> Rational {
    Rational::new(num.into(), den.into())
}

/// Parses `"p"` or `"p/q"` (optional sign, surrounding whitespace ignored).
pub fn parse_rational(input: &str) -> Result<Rational> {
    let err = |reason: &str| Error::Parse {
        input: input.to_string(),
        reason: reason.to_string(),
    };
    let s = input.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| err("bad numerator"))?;
    let den = BigInt::from_str(den).map_err(|_| err("bad denominator"))?;
    if den.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

/// Floating approximation, for display only.
pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or_else(|| {
        // Ratio::to_f64 can fail on huge operands; fall back to scaled division.
        let shift = value
            .numer()
            .bits()
            .max(value.denom().bits())
            .saturating_sub(1000);
        let n = (value.numer() >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (value.denom() >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Rounds to eight decimals so printed values stay stable across platforms.
pub fn display_float(x: f64) -> f64 {
    (x * 1e8).round() / 1e8
}

/// Serde adapter: a [`Rational`] as a `"p/q"` string.
pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(value: &Rational, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&format_rational(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(deserializer)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// A positive-or-not rational, or `+inf`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtRational {
    Finite(Rational),
    Infinity,
}

impl ExtRational {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtRational::Finite(r) => Some(r),
            ExtRational::Infinity => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtRational::Finite(_))
    }
}

impl From<Rational> for ExtRational {
    fn from(r: Rational) -> Self {
        ExtRational::Finite(r)
    }
}

impl Ord for ExtRational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtRational::Finite(a), ExtRational::Finite(b)) => a.cmp(b),
            (ExtRational::Finite(_), ExtRational::Infinity) => Ordering::Less,
            (ExtRational::Infinity, ExtRational::Finite(_)) => Ordering::Greater,
            (ExtRational::Infinity, ExtRational::Infinity) => Ordering::Equal,
        }
    }
}

impl PartialOrd for ExtRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::Finite(r) => write!(f, "{r}"),
            ExtRational::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for ExtRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "+inf" | "∞" => Ok(ExtRational::Infinity),
            other => parse_rational(other).map(ExtRational::Finite),
        }
    }
}

impl Serialize for ExtRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExtRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Smallest positive `t` with `t / v` a positive integer for every `v`.
///
/// With `v_j = n_j / d_j` in lowest terms this is `lcm(n_j) / gcd(d_j)`.
pub fn rational_lcm(values: &[Rational]) -> Result<Rational> {
    if values.is_empty() {
        return Err(domain("rational_lcm of an empty list"));
    }
    let mut num = BigInt::one();
    let mut den = BigInt::zero();
    for v in values {
        if !v.is_positive() {
            return Err(domain(format!(
                "rational_lcm needs positive entries, got {v}"
            )));
        }
        num = num.lcm(v.numer());
        den = den.gcd(v.denom());
    }
    Ok(Rational::new(num, den))
}

/// `(ceil(k/2), ceil((k+1)/2))`.
pub fn ceil_div_two(k: usize) -> Result<(usize, usize)> {
    if k < 1 {
        return Err(domain("ceil_div_two needs k >= 1"));
    }
    Ok((k.div_ceil(2), (k + 1).div_ceil(2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    /// Smallest `s` in `{p / den : p >= 1}` with every `s / v` integral, or None past `limit`.
    fn brute_lcm(values: &[Rational], den: i64, limit: i64) -> Option<Rational> {
        (1..=limit)
            .map(|p| frac(p, den))
            .find(|s| values.iter().all(|v| (s / v).is_integer()))
    }

    #[test]
    fn lcm_examples() {
        assert_eq!(rational_lcm(&[int(1)]).unwrap(), int(1));
        assert_eq!(rational_lcm(&[int(1), int(2)]).unwrap(), int(2));
        assert_eq!(rational_lcm(&[q("2/3"), q("1/2")]).unwrap(), int(2));
        assert_eq!(rational_lcm(&[int(2), int(3)]).unwrap(), int(6));
    }

    #[test]
    fn lcm_examples_match_brute_force() {
        assert_eq!(brute_lcm(&[int(1), int(2)], 1, 10), Some(int(2)));
        assert_eq!(brute_lcm(&[q("2/3"), q("1/2")], 6, 12), Some(int(2)));
    }

    #[test]
    fn lcm_rejects_bad_input() {
        assert!(rational_lcm(&[]).is_err());
        assert!(rational_lcm(&[int(0)]).is_err());
        assert!(rational_lcm(&[int(-1), int(2)]).is_err());
    }

    #[test]
    fn ceil_examples() {
        assert_eq!(ceil_div_two(1).unwrap(), (1, 1));
        assert_eq!(ceil_div_two(4).unwrap(), (2, 3));
        assert_eq!(ceil_div_two(7).unwrap(), (4, 4));
        assert!(ceil_div_two(0).is_err());
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(q("6/4"), frac(3, 2));
        assert_eq!(q(" -2/-4 "), frac(1, 2));
        assert_eq!(format_rational(&q("4/2")), "2");
        assert_eq!(format_rational(&q("-3/9")), "-1/3");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.5").is_err());
        assert_eq!("inf".parse::<ExtRational>().unwrap(), ExtRational::Infinity);
        assert_eq!(ExtRational::Infinity.to_string(), "inf");
    }

    #[test]
    fn infinity_is_top() {
        let big = ExtRational::Finite(int(10).pow(40));
        assert!(big < ExtRational::Infinity);
        assert_eq!(
            ExtRational::Infinity.cmp(&ExtRational::Infinity),
            Ordering::Equal
        );
    }

    #[test]
    fn f64_of_huge_rational() {
        let huge = Rational::new(BigInt::from(10).pow(400) * 3, BigInt::from(10).pow(400) * 2);
        assert!((to_f64(&huge) - 1.5).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn lcm_is_least_common_multiple(values in prop::collection::vec((1i64..=6, 1i64..=6).prop_map(|(n, d)| frac(n, d)), 1..=3)) {
            let t = rational_lcm(&values).unwrap();
            for v in &values {
                let m = &t / v;
                prop_assert!(m.is_integer() && m.is_positive());
            }
            // Every common multiple is an integer multiple of 1/lcm(denominators);
            // scan that lattice up to t.
            let den = values.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            let step = Rational::new(BigInt::one(), den);
            let mut s = step.clone();
            while s < t {
                prop_assert!(!values.iter().all(|v| (&s / v).is_integer()), "smaller multiple {}", s);
                s += &step;
            }
        }

        #[test]
        fn addition_is_exact(a in (-50i64..50, 1i64..50), b in (-50i64..50, 1i64..50)) {
            let a = frac(a.0, a.1);
            let b = frac(b.0, b.1);
            prop_assert_eq!((&a + &b) - &b, a);
        }

        #[test]
        fn text_round_trip(n in -1000i64..1000, d in 1i64..1000) {
            let r = frac(n, d);
            prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
        }
    }
}
