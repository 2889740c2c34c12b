//! Capacity ratios `c_k / vol^(1/n)`.
//!
//! The ratio itself is usually irrational, so it is carried exactly through
//! its n-th power `c_k^n / vol`, which is rational. Comparisons only ever use
//! that power; the floating value is for display.

use std::cmp::Ordering;

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::ellipsoid::Ellipsoid;
use crate::error::{domain, Error, Result};
use crate::exact::{ceil_div_two, display_float, int, parse_rational, to_f64, Rational};
use crate::toric::ToricProfile;

/// A capacity ratio in complex dimension `n`, stored as its exact n-th power.
#[derive(Clone, Debug)]
pub struct RatioValue {
    nth_power: Rational,
    n: usize,
    approx: f64,
}

impl RatioValue {
    pub fn new(nth_power: Rational, n: usize) -> Result<Self> {
        if !nth_power.is_positive() {
            return Err(domain("a capacity ratio must be positive"));
        }
        if n == 0 {
            return Err(domain("dimension must be positive"));
        }
        let approx = to_f64(&nth_power).powf(1.0 / n as f64);
        Ok(RatioValue {
            nth_power,
            n,
            approx,
        })
    }

    pub fn nth_power(&self) -> &Rational {
        &self.nth_power
    }

    pub fn dim_half(&self) -> usize {
        self.n
    }

    pub fn approx(&self) -> f64 {
        self.approx
    }

    /// Exact comparison; refuses to compare across dimensions.
    pub fn compare(&self, other: &RatioValue) -> Result<Ordering> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        Ok(self.nth_power.cmp(&other.nth_power))
    }
}

impl PartialEq for RatioValue {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.nth_power == other.nth_power
    }
}

impl Eq for RatioValue {}

#[derive(Serialize, Deserialize)]
struct RatioJson {
    nth_power: String,
    n: usize,
    approx: f64,
}

impl Serialize for RatioValue {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        RatioJson {
            nth_power: self.nth_power.to_string(),
            n: self.n,
            approx: display_float(self.approx),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RatioValue {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = RatioJson::deserialize(deserializer)?;
        let p = parse_rational(&raw.nth_power).map_err(serde::de::Error::custom)?;
        RatioValue::new(p, raw.n).map_err(serde::de::Error::custom)
    }
}

/// `c_k(E)^n / (a_1 ... a_n)`.
pub fn ratio_ellipsoid(e: &Ellipsoid, k: usize) -> Result<RatioValue> {
    let volume = e.volume()?;
    let c = e.capacity(k)?;
    RatioValue::new(pow(&c, e.dim_half()) / volume, e.dim_half())
}

/// `c_k(X_Omega)^2 / vol(X_Omega)` with the formula matching the profile kind.
pub fn ratio_toric(p: &ToricProfile, k: usize) -> Result<RatioValue> {
    let c = p.capacity(k)?;
    RatioValue::new(&c * &c / p.volume(), 2)
}

/// `k^2 min(a,b)^2 / (2ab)`, the squared ratio of the polydisk `P(a, b)`.
pub fn ratio_polydisk_closed_form(a: &Rational, b: &Rational, k: usize) -> Result<RatioValue> {
    if !a.is_positive() || !b.is_positive() {
        return Err(domain("polydisk parameters must be positive"));
    }
    if k < 1 {
        return Err(domain("capacity index k must be >= 1"));
    }
    let m = a.min(b);
    RatioValue::new(int(k * k) * m * m / (int(2) * a * b), 2)
}

/// Squared ratio of the best 4-dimensional ellipsoid, `ceil(k/2) ceil((k+1)/2)`.
pub fn best_ellipsoid_power_4d(k: usize) -> Result<Rational> {
    let (a, b) = ceil_div_two(k)?;
    Ok(int(a * b))
}

/// Compares `P(1,1)` against the best ellipsoid `E(ceil(k/2), ceil((k+1)/2))`
/// through their squared ratios `k^2/2` and `ceil(k/2) ceil((k+1)/2)`.
pub fn crossover_check(k: usize) -> Result<Ordering> {
    let polydisk = ratio_polydisk_closed_form(&Rational::one(), &Rational::one(), k)?;
    let ellipsoid = best_ellipsoid_power_4d(k)?;
    Ok(polydisk.nth_power.cmp(&ellipsoid))
}

pub(crate) fn pow(x: &Rational, n: usize) -> Rational {
    (0..n).fold(Rational::one(), |acc, _| acc * x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::frac;
    use crate::toric::ProfileKind;
    use proptest::prelude::*;

    #[test]
    fn ellipsoid_examples() {
        let r = ratio_ellipsoid(&Ellipsoid::from_integers(&[1, 2]).unwrap(), 2).unwrap();
        assert_eq!(r.nth_power(), &int(2));
        assert!((r.approx() - std::f64::consts::SQRT_2).abs() < 1e-12);
        let r = ratio_ellipsoid(&Ellipsoid::from_integers(&[2, 2]).unwrap(), 3).unwrap();
        assert_eq!(r.nth_power(), &int(4));
        let r = ratio_ellipsoid(&Ellipsoid::from_integers(&[1, 1]).unwrap(), 1).unwrap();
        assert_eq!(r.nth_power(), &int(1));
        let cyl = Ellipsoid::new(vec![int(1).into(), crate::exact::ExtRational::Infinity]).unwrap();
        assert_eq!(ratio_ellipsoid(&cyl, 1), Err(Error::InfiniteVolume));
    }

    #[test]
    fn toric_examples() {
        let p = ToricProfile::polydisk(int(1), int(1)).unwrap();
        assert_eq!(ratio_toric(&p, 3).unwrap().nth_power(), &frac(9, 2));
        let e = ToricProfile::ellipsoid(int(2), int(3), ProfileKind::Convex).unwrap();
        assert_eq!(ratio_toric(&e, 4).unwrap().nth_power(), &int(6));
        let b = ToricProfile::ellipsoid(int(1), int(1), ProfileKind::Concave).unwrap();
        assert_eq!(ratio_toric(&b, 1).unwrap().nth_power(), &int(1));
    }

    #[test]
    fn polydisk_closed_form_examples() {
        assert_eq!(
            ratio_polydisk_closed_form(&int(1), &int(1), 2)
                .unwrap()
                .nth_power(),
            &int(2)
        );
        assert_eq!(
            ratio_polydisk_closed_form(&int(1), &int(1), 3)
                .unwrap()
                .nth_power(),
            &frac(9, 2)
        );
        let r = ratio_polydisk_closed_form(&int(2), &int(1), 1).unwrap();
        assert_eq!(r.nth_power(), &frac(1, 4));
        let via_profile = ratio_toric(&ToricProfile::polydisk(int(2), int(1)).unwrap(), 1).unwrap();
        assert_eq!(r, via_profile);
        assert!(ratio_polydisk_closed_form(&int(0), &int(1), 1).is_err());
    }

    #[test]
    fn crossover_examples() {
        assert_eq!(crossover_check(1).unwrap(), Ordering::Less);
        assert_eq!(crossover_check(2).unwrap(), Ordering::Equal);
        assert_eq!(crossover_check(3).unwrap(), Ordering::Greater);
        for k in 3..=100 {
            assert_eq!(crossover_check(k).unwrap(), Ordering::Greater, "k = {k}");
        }
    }

    #[test]
    fn dimensions_do_not_mix() {
        let a = RatioValue::new(int(2), 2).unwrap();
        let b = RatioValue::new(int(2), 3).unwrap();
        assert_eq!(a.compare(&b), Err(Error::DimensionMismatch(2, 3)));
        assert_ne!(a, b);
    }

    #[test]
    fn json_shape() {
        let r = ratio_polydisk_closed_form(&int(1), &int(1), 2).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(json, r#"{"nth_power":"2","n":2,"approx":1.41421356}"#);
        let back: RatioValue = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }

    fn small_q() -> impl Strategy<Value = Rational> {
        (1i64..=12, 1i64..=12).prop_map(|(n, d)| frac(n, d))
    }

    proptest! {
        #[test]
        fn ratios_are_scale_invariant(a in small_q(), b in small_q(), c in small_q(), k in 1usize..=20) {
            let e = Ellipsoid::finite(vec![a.clone(), b.clone()]).unwrap();
            prop_assert_eq!(ratio_ellipsoid(&e, k).unwrap(), ratio_ellipsoid(&e.scaled(&c).unwrap(), k).unwrap());
            let p = ToricProfile::polydisk(a, b).unwrap();
            prop_assert_eq!(ratio_toric(&p, k).unwrap(), ratio_toric(&p.scaled(&c).unwrap(), k).unwrap());
        }

        #[test]
        fn polydisk_closed_form_matches_profile(a in small_q(), b in small_q(), k in 1usize..=30) {
            let closed = ratio_polydisk_closed_form(&a, &b, k).unwrap();
            let p = ToricProfile::polydisk(a, b).unwrap();
            prop_assert_eq!(closed, ratio_toric(&p, k).unwrap());
        }

        #[test]
        fn approx_tracks_power(n in 1i64..500, d in 1i64..500, dim in 1usize..5) {
            let r = RatioValue::new(frac(n, d), dim).unwrap();
            let back = r.approx().powi(dim as i32);
            prop_assert!((back - n as f64 / d as f64).abs() <= 1e-9 * (n as f64 / d as f64));
        }
    }
}
