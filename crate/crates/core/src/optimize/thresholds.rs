//! Threshold algebra for the two-corner family.
//!
//! The strict inequality `2 c^2 / area < k^2` for a balanced member with
//! `s > 0` reduces to one of two inequalities in `(i, r)`; each holds on
//! explicit `r`-intervals. `cond3` and `cond4` are the simplified forms of
//! `cond2` and `cond2b`.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{domain, Result};
use crate::exact::{frac, int, serde_rational, Rational};

/// `u_0, l_0, u_{k-1}, l_{k-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Thresholds {
    #[serde(with = "serde_rational")]
    pub u0: Rational,
    #[serde(with = "serde_rational")]
    pub l0: Rational,
    #[serde(with = "serde_rational")]
    pub u_km1: Rational,
    #[serde(with = "serde_rational")]
    pub l_km1: Rational,
}

impl Thresholds {
    /// `l_{k-1} <= u_{k-1}` and `l_0 <= u_0`.
    pub fn ordered(&self) -> bool {
        self.l_km1 <= self.u_km1 && self.l0 <= self.u0
    }

    /// Both orderings are equalities.
    pub fn tight(&self) -> bool {
        self.l_km1 == self.u_km1 && self.l0 == self.u0
    }
}

pub fn thresholds(k: usize) -> Result<Thresholds> {
    if k < 2 {
        return Err(domain("thresholds need k >= 2"));
    }
    let k = k as i64;
    Ok(Thresholds {
        u0: frac(2 * k * k - 3 * k, 2 * k * k - 2 * k - 1),
        l0: frac(k, 2 * k - 1),
        u_km1: frac(k - 1, 2 * k - 1),
        l_km1: frac(k - 1, 2 * k * k - 2 * k - 1),
    })
}

fn check_ir(k: usize, i: usize, r: &Rational) -> Result<(Rational, Rational)> {
    if k < 1 || i >= k || r.is_negative() || r >= &Rational::one() || (i == 0 && r.is_zero()) {
        return Err(domain("need 0 <= i < k, 0 <= r < 1 and i + r > 0"));
    }
    let ir = int(i) + r;
    let alpha = &ir / (int(k) - &ir);
    Ok((ir, alpha))
}

fn cond2_rhs(r: &Rational, ir: &Rational, alpha: &Rational) -> Rational {
    let one = Rational::one();
    &one + r / ((&one - r) * alpha) - int(2) * r / ir
}

/// `RHS - LHS` of `cond2`; the inequality holds iff this is positive.
pub fn cond2_margin(k: usize, i: usize, r: &Rational) -> Result<Rational> {
    let (ir, alpha) = check_ir(k, i, r)?;
    let one = Rational::one();
    let q = &one - r;
    let lhs = r * r * &alpha / (&ir * &ir) + (&q * &q + r * r) / (int(2) * &q * &q);
    Ok(cond2_rhs(r, &ir, &alpha) - lhs)
}

/// `RHS - LHS` of `cond2b`, or `None` at `r = 0` where it is undefined.
pub fn cond2b_margin(k: usize, i: usize, r: &Rational) -> Result<Option<Rational>> {
    let (ir, alpha) = check_ir(k, i, r)?;
    if r.is_zero() {
        return Ok(None);
    }
    let one = Rational::one();
    let q = &one - r;
    let lhs = &q * r / (&ir * &ir) + (&q * &q + r * r) / (int(2) * &q * r * &alpha);
    Ok(Some(cond2_rhs(r, &ir, &alpha) - lhs))
}

/// `((k-i)(k-i-2) + r) r + (i+r)(k-i-r)(1-2r) / (2(1-r))`; `cond3` is `0 < this`.
pub fn cond3_margin(k: usize, i: usize, r: &Rational) -> Result<Rational> {
    let (ir, _) = check_ir(k, i, r)?;
    let one = Rational::one();
    let ki = int(k as i64 - i as i64);
    let first = (&ki * (&ki - int(2)) + r) * r;
    let second = &ir * (int(k) - &ir) * (&one - int(2) * r) / (int(2) * (&one - r));
    Ok(first + second)
}

/// `i^2 + (i+r)^2 (2r-1) / (2(1-r) r alpha) - r`, or `None` at `r = 0`.
pub fn cond4_margin(k: usize, i: usize, r: &Rational) -> Result<Option<Rational>> {
    let (ir, alpha) = check_ir(k, i, r)?;
    if r.is_zero() {
        return Ok(None);
    }
    let one = Rational::one();
    let value =
        int(i * i) + &ir * &ir * (int(2) * r - &one) / (int(2) * (&one - r) * r * alpha) - r;
    Ok(Some(value))
}

pub fn cond2(k: usize, i: usize, r: &Rational) -> Result<bool> {
    Ok(cond2_margin(k, i, r)?.is_positive())
}

pub fn cond2b(k: usize, i: usize, r: &Rational) -> Result<bool> {
    Ok(cond2b_margin(k, i, r)?.is_some_and(|m| m.is_positive()))
}

pub fn cond3(k: usize, i: usize, r: &Rational) -> Result<bool> {
    Ok(cond3_margin(k, i, r)?.is_positive())
}

pub fn cond4(k: usize, i: usize, r: &Rational) -> Result<bool> {
    Ok(cond4_margin(k, i, r)?.is_some_and(|m| m.is_positive()))
}

/// The six `r`-intervals on which `cond3` (first three) or `cond4` (last
/// three) is known to hold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SufficientCondition {
    /// `i <= k-2`, `r` in `[0, 1/2]`.
    FirstMiddle,
    /// `i = k-1`, `r` in `[0, u_{k-1})`.
    FirstTop,
    /// `i = 0`, `r` in `[0, u_0)`.
    FirstBottom,
    /// `i > 0`, `r` in `[1/2, 1)`.
    SecondMiddle,
    /// `i = 0`, `r` in `(l_0, 1)`.
    SecondBottom,
    /// `i = k-1`, `r` in `(l_{k-1}, 1)`.
    SecondTop,
}

/// Conditions whose interval contains `r`.
pub fn sufficient_conditions(k: usize, i: usize, r: &Rational) -> Result<Vec<SufficientCondition>> {
    check_ir(k, i, r)?;
    let th = thresholds(k.max(2))?;
    let half = frac(1, 2);
    let mut out = Vec::new();
    if i + 2 <= k && r <= &half {
        out.push(SufficientCondition::FirstMiddle);
    }
    if i + 1 == k && r < &th.u_km1 {
        out.push(SufficientCondition::FirstTop);
    }
    if i == 0 && r < &th.u0 {
        out.push(SufficientCondition::FirstBottom);
    }
    if i > 0 && r >= &half {
        out.push(SufficientCondition::SecondMiddle);
    }
    if i == 0 && r > &th.l0 {
        out.push(SufficientCondition::SecondBottom);
    }
    if i + 1 == k && r > &th.l_km1 {
        out.push(SufficientCondition::SecondTop);
    }
    Ok(out)
}

/// A part of `[0, 1)` that no condition covers for one `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverGap {
    pub i: usize,
    /// Uncovered single point, or the open interval between `lo` and `hi`.
    #[serde(with = "serde_rational")]
    pub lo: Rational,
    #[serde(with = "serde_rational")]
    pub hi: Rational,
    /// `cond3` or `cond4` holds with equality at this point.
    pub equality_point: bool,
}

impl CoverGap {
    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverReport {
    pub k: usize,
    pub thresholds: Thresholds,
    pub gaps: Vec<CoverGap>,
    /// Every gap is a single point at which `cond3` or `cond4` is an equality.
    pub holds: bool,
}

fn is_equality_point(k: usize, i: usize, r: &Rational) -> Result<bool> {
    Ok(cond3_margin(k, i, r)?.is_zero() || cond4_margin(k, i, r)?.is_some_and(|m| m.is_zero()))
}

/// Finds the parts of `[0, 1)` (minus `r = 0` when `i = 0`) not covered by
/// any sufficient condition, for every `i` in `0..k`.
///
/// All interval endpoints lie in `{0, 1/2, u_0, l_0, u_{k-1}, l_{k-1}}`, so
/// membership is decided exactly by testing every endpoint and one point
/// inside every gap between consecutive endpoints.
pub fn cover_check(k: usize) -> Result<CoverReport> {
    let th = thresholds(k)?;
    let mut breaks = vec![
        Rational::zero(),
        frac(1, 2),
        th.u0.clone(),
        th.l0.clone(),
        th.u_km1.clone(),
        th.l_km1.clone(),
    ];
    breaks.retain(|b| b < &Rational::one());
    breaks.sort();
    breaks.dedup();

    let mut gaps = Vec::new();
    for i in 0..k {
        for (idx, b) in breaks.iter().enumerate() {
            let next = breaks.get(idx + 1).cloned().unwrap_or_else(Rational::one);
            if !(i == 0 && b.is_zero()) && sufficient_conditions(k, i, b)?.is_empty() {
                gaps.push(CoverGap {
                    i,
                    lo: b.clone(),
                    hi: b.clone(),
                    equality_point: is_equality_point(k, i, b)?,
                });
            }
            let mid = (b + &next) / int(2);
            if sufficient_conditions(k, i, &mid)?.is_empty() {
                gaps.push(CoverGap {
                    i,
                    lo: b.clone(),
                    hi: next,
                    equality_point: false,
                });
            }
        }
    }
    let holds = gaps.iter().all(|g| g.is_point() && g.equality_point);
    Ok(CoverReport {
        k,
        thresholds: th,
        gaps,
        holds,
    })
}
