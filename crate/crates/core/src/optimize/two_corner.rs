//! The two-corner family of convex profiles
//! `Omega(alpha, s, t) = {y <= 1+s} ∩ {x <= 1+t} ∩ {y >= 1 - alpha (x - 1)}`
//! with corners `v+ = (1 - s/alpha, 1 + s)` and `v- = (1 + t, 1 - alpha t)`.
//!
//! A maximizer of `c_k / sqrt(vol)` among convex toric domains has this shape
//! up to scaling. The slope is parametrized as `alpha = (i+r) / (k-(i+r))`
//! with `i` in `0..k`, `r` in `[0, 1)`; `(i, r) = (k, 0)` is the rectangle
//! `alpha = inf`.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{domain, Result};
use crate::exact::{int, serde_rational, Rational};
use crate::ratio::{ratio_polydisk_closed_form, ratio_toric};
use crate::toric::{LatticeVector, Point, ProfileKind, ToricProfile};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TwoCornerFamily {
    pub k: usize,
    pub i: usize,
    #[serde(with = "serde_rational")]
    pub r: Rational,
    #[serde(with = "serde_rational")]
    pub s: Rational,
    #[serde(with = "serde_rational")]
    pub t: Rational,
}

impl TwoCornerFamily {
    pub fn new(k: usize, i: usize, r: Rational, s: Rational, t: Rational) -> Result<Self> {
        if k < 1 {
            return Err(domain("k must be >= 1"));
        }
        if s.is_negative() || t.is_negative() {
            return Err(domain("s and t must be nonnegative"));
        }
        if i == k {
            if !r.is_zero() || !t.is_zero() {
                return Err(domain("the rectangle case i = k needs r = 0 and t = 0"));
            }
            return Ok(TwoCornerFamily { k, i, r, s, t });
        }
        if i > k || r.is_negative() || r >= Rational::one() {
            return Err(domain("need 0 <= i < k and 0 <= r < 1"));
        }
        if i == 0 && r.is_zero() {
            return Err(domain("i + r must be positive"));
        }
        let family = TwoCornerFamily { k, i, r, s, t };
        let alpha = family.alpha().expect("finite slope");
        if family.s > alpha || &family.t * &alpha > Rational::one() {
            return Err(domain("need s <= alpha and t <= 1/alpha"));
        }
        Ok(family)
    }

    /// The member with `t` chosen so both corner supports agree:
    /// `t = r s / ((1 - r) alpha)`.
    pub fn balanced(k: usize, i: usize, r: Rational, s: Rational) -> Result<Self> {
        if i >= k {
            return Err(domain("balanced members need 0 < i + r < k"));
        }
        let probe = TwoCornerFamily::new(k, i, r.clone(), Rational::zero(), Rational::zero())?;
        let alpha = probe.alpha().expect("finite slope");
        let t = &r * &s / ((Rational::one() - &r) * alpha);
        TwoCornerFamily::new(k, i, r, s, t)
    }

    /// Largest admissible `s` for a balanced member: `min(alpha, (1-r)/r)`.
    pub fn balanced_s_max(k: usize, i: usize, r: &Rational) -> Result<Rational> {
        let probe = TwoCornerFamily::new(k, i, r.clone(), Rational::zero(), Rational::zero())?;
        let alpha = probe
            .alpha()
            .ok_or_else(|| domain("balanced members need 0 < i + r < k"))?;
        if r.is_zero() {
            Ok(alpha)
        } else {
            Ok(alpha.min((Rational::one() - r) / r))
        }
    }

    fn ir(&self) -> Rational {
        int(self.i) + &self.r
    }

    /// `alpha`, or `None` for the rectangle.
    pub fn alpha(&self) -> Option<Rational> {
        if self.i == self.k {
            None
        } else {
            Some(self.ir() / (int(self.k) - self.ir()))
        }
    }

    /// `(v+, v-)`.
    pub fn corners(&self) -> (Point, Point) {
        let one = Rational::one();
        match self.alpha() {
            Some(alpha) => (
                Point::new(&one - &self.s / &alpha, &one + &self.s),
                Point::new(&one + &self.t, &one - &alpha * &self.t),
            ),
            None => (
                Point::new(one.clone(), &one + &self.s),
                Point::new(one, Rational::zero()),
            ),
        }
    }

    pub fn profile(&self) -> Result<ToricProfile> {
        if self.alpha().is_none() {
            return ToricProfile::polydisk(Rational::one(), Rational::one() + &self.s);
        }
        let (plus, minus) = self.corners();
        let candidates = [
            Point::new(Rational::zero(), Rational::one() + &self.s),
            plus,
            minus,
            Point::new(Rational::one() + &self.t, Rational::zero()),
        ];
        let mut vertices: Vec<Point> = Vec::with_capacity(4);
        for p in candidates {
            if vertices.last() != Some(&p) {
                vertices.push(p);
            }
        }
        ToricProfile::new(ProfileKind::Convex, vertices)
    }

    /// `1 + t + s - s^2/(2 alpha) - t^2 alpha / 2`, or `1 + s` for the rectangle.
    pub fn area_closed_form(&self) -> Rational {
        let base = Rational::one() + &self.s + &self.t;
        match self.alpha() {
            Some(alpha) => {
                base - &self.s * &self.s / (int(2) * &alpha) - &self.t * &self.t * alpha / int(2)
            }
            None => base,
        }
    }

    /// `(||v_i||, ||v_{i+1}||) = (k (1 + s r/(i+r)), k (1 + t (1-r)/(k-(i+r))))`.
    pub fn supports_closed_form(&self) -> Result<(Rational, Rational)> {
        if self.alpha().is_none() {
            return Err(domain("support closed forms need 0 < i + r < k"));
        }
        let k = int(self.k);
        let ir = self.ir();
        let upper = &k * (Rational::one() + &self.s * &self.r / &ir);
        let lower = &k * (Rational::one() + &self.t * (Rational::one() - &self.r) / (&k - &ir));
        Ok((upper, lower))
    }

    fn v(&self, j: usize) -> LatticeVector {
        LatticeVector {
            v1: j as u64,
            v2: (self.k - j) as u64,
        }
    }

    /// `||v_j||` is attained at `v+` for `j <= i` and at `v-` for `j >= i + 1`.
    pub fn corner_dichotomy_holds(&self) -> Result<bool> {
        let profile = self.profile()?;
        let (plus, minus) = self.corners();
        Ok((0..=self.k).all(|j| {
            let v = self.v(j);
            let corner = if j <= self.i { &plus } else { &minus };
            profile.support_max(&v) == corner.pairing(&v)
        }))
    }

    /// Whether `t = r s / ((1 - r) alpha)`.
    pub fn is_balanced(&self) -> bool {
        match self.alpha() {
            Some(alpha) => self.t == &self.r * &self.s / ((Rational::one() - &self.r) * alpha),
            None => true,
        }
    }

    /// `2 c_k^2 / vol = c_k^2 / area`, evaluated through the closed forms
    /// (`k^2 (1 + min{...})^2 / area`) and through the profile.
    pub fn ratio_identity(&self) -> Result<RatioIdentity> {
        let via_profile = ratio_toric(&self.profile()?, self.k)?.nth_power() * int(2);
        let closed_form = match self.alpha() {
            Some(_) => {
                let (upper, lower) = self.supports_closed_form()?;
                let c = upper.min(lower);
                &c * &c / self.area_closed_form()
            }
            None => {
                ratio_polydisk_closed_form(&Rational::one(), &(Rational::one() + &self.s), self.k)?
                    .nth_power()
                    * int(2)
            }
        };
        Ok(RatioIdentity {
            closed_form,
            via_profile,
            balanced: self.is_balanced(),
        })
    }
}

/// Both evaluations of `2 ratio^2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RatioIdentity {
    #[serde(with = "serde_rational")]
    pub closed_form: Rational,
    #[serde(with = "serde_rational")]
    pub via_profile: Rational,
    pub balanced: bool,
}

impl RatioIdentity {
    pub fn agrees(&self) -> bool {
        self.closed_form == self.via_profile
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::frac;
    use proptest::prelude::*;

    fn pt(x: Rational, y: Rational) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn profile_examples() {
        let f = TwoCornerFamily::new(2, 1, frac(1, 3), int(2), frac(1, 2)).unwrap();
        assert_eq!(f.alpha(), Some(int(2)));
        assert_eq!(
            f.profile().unwrap().vertices(),
            &[pt(int(0), int(3)), pt(frac(3, 2), int(0))]
        );
        for k in 1..5 {
            let sq = TwoCornerFamily::new(k, 0, frac(1, 2), int(0), int(0)).unwrap();
            assert_eq!(
                sq.profile().unwrap(),
                ToricProfile::polydisk(int(1), int(1)).unwrap()
            );
        }
        let f = TwoCornerFamily::new(2, 0, frac(2, 3), frac(1, 2), int(2)).unwrap();
        assert_eq!(f.alpha(), Some(frac(1, 2)));
        assert_eq!(
            f.profile().unwrap().vertices(),
            &[pt(int(0), frac(3, 2)), pt(int(3), int(0))]
        );
    }

    #[test]
    fn invariants_are_enforced() {
        assert!(TwoCornerFamily::new(2, 0, int(0), int(0), int(0)).is_err());
        assert!(TwoCornerFamily::new(2, 1, int(1), int(0), int(0)).is_err());
        assert!(TwoCornerFamily::new(2, 1, frac(1, 3), int(3), int(0)).is_err());
        assert!(TwoCornerFamily::new(2, 1, frac(1, 3), int(0), int(1)).is_err());
        assert!(TwoCornerFamily::new(2, 2, frac(1, 3), int(0), int(0)).is_err());
        assert!(TwoCornerFamily::new(2, 3, int(0), int(0), int(0)).is_err());
        assert!(TwoCornerFamily::new(2, 2, int(0), int(5), int(0)).is_ok());
    }

    #[test]
    fn area_examples() {
        let sq = TwoCornerFamily::new(3, 1, frac(1, 4), int(0), int(0)).unwrap();
        assert_eq!(sq.area_closed_form(), int(1));
        let f = TwoCornerFamily::new(2, 1, frac(1, 3), int(2), frac(1, 2)).unwrap();
        assert_eq!(f.area_closed_form(), frac(9, 4));
        assert_eq!(f.profile().unwrap().area(), frac(9, 4));
        let f = TwoCornerFamily::new(2, 0, frac(2, 3), frac(1, 2), int(2)).unwrap();
        assert_eq!(f.area_closed_form(), frac(9, 4));
        assert_eq!(f.profile().unwrap().area(), frac(9, 4));
    }

    #[test]
    fn support_examples() {
        let f = TwoCornerFamily::new(2, 1, frac(1, 3), int(2), frac(1, 2)).unwrap();
        assert_eq!(f.supports_closed_form().unwrap(), (int(3), int(3)));
        let p = f.profile().unwrap();
        assert_eq!(p.support_max(&LatticeVector::new(1, 1).unwrap()), int(3));
        assert_eq!(p.support_max(&LatticeVector::new(2, 0).unwrap()), int(3));
        assert!(f.corner_dichotomy_holds().unwrap());
        let sq = TwoCornerFamily::new(5, 2, frac(1, 2), int(0), int(0)).unwrap();
        assert_eq!(sq.supports_closed_form().unwrap(), (int(5), int(5)));
        let rect = TwoCornerFamily::new(2, 2, int(0), int(1), int(0)).unwrap();
        assert!(rect.supports_closed_form().is_err());
    }

    #[test]
    fn balanced_mixed_example_cross_checks() {
        let f = TwoCornerFamily::balanced(3, 1, frac(1, 2), int(1)).unwrap();
        assert_eq!(f.alpha(), Some(int(1)));
        assert_eq!(f.t, int(1));
        let (upper, lower) = f.supports_closed_form().unwrap();
        let p = f.profile().unwrap();
        assert_eq!(upper, p.support_max(&LatticeVector::new(1, 2).unwrap()));
        assert_eq!(lower, p.support_max(&LatticeVector::new(2, 1).unwrap()));
    }

    #[test]
    fn ratio_identity_examples() {
        for k in 1..6 {
            let sq = TwoCornerFamily::new(k, 0, frac(1, 2), int(0), int(0)).unwrap();
            let id = sq.ratio_identity().unwrap();
            assert!(id.agrees());
            assert_eq!(id.closed_form, int((k * k) as i64));
        }
        let f = TwoCornerFamily::new(2, 1, frac(1, 3), int(2), frac(1, 2)).unwrap();
        let id = f.ratio_identity().unwrap();
        assert!(id.balanced && id.agrees());
        assert_eq!(id.closed_form, int(4));

        let f = TwoCornerFamily::balanced(3, 1, frac(1, 2), frac(1, 10)).unwrap();
        let id = f.ratio_identity().unwrap();
        assert!(id.agrees());
        assert!(id.closed_form < int(9));

        let unbalanced = TwoCornerFamily::new(3, 1, frac(1, 2), frac(1, 10), int(0)).unwrap();
        let id = unbalanced.ratio_identity().unwrap();
        assert!(!id.balanced && id.agrees());
    }

    fn family() -> impl Strategy<Value = TwoCornerFamily> {
        (2usize..=8)
            .prop_flat_map(|k| (Just(k), 0..k, 0i64..24, 0i64..=20, 0i64..=20))
            .prop_filter_map("i + r > 0", |(k, i, rn, sp, tp)| {
                let r = frac(rn, 24);
                let probe = TwoCornerFamily::new(k, i, r.clone(), int(0), int(0)).ok()?;
                let alpha = probe.alpha()?;
                let s = &alpha * frac(sp, 20);
                let t = frac(tp, 20) / &alpha;
                TwoCornerFamily::new(k, i, r, s, t).ok()
            })
    }

    proptest! {
        #[test]
        fn area_closed_form_is_shoelace(f in family()) {
            prop_assert_eq!(f.area_closed_form(), f.profile().unwrap().area());
        }

        #[test]
        fn supports_closed_form_match_and_corners_split(f in family()) {
            let (upper, lower) = f.supports_closed_form().unwrap();
            let p = f.profile().unwrap();
            prop_assert_eq!(upper, p.support_max(&f.v(f.i)));
            prop_assert_eq!(lower, p.support_max(&f.v(f.i + 1)));
            prop_assert!(f.corner_dichotomy_holds().unwrap());
        }

        #[test]
        fn ratio_identity_holds_off_balance(f in family()) {
            prop_assert!(f.ratio_identity().unwrap().agrees());
        }
    }
}
