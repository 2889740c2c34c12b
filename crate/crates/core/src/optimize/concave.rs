//! Concave toric domains: every one is dominated by an ellipsoid.
//!
//! If `v` attains the concave capacity formula and the graph vertex `w`
//! attains `[v]`, the line `<v, x> = <v, w>` supports the graph of the convex
//! function `f` from below. The triangle it cuts from the quadrant is the
//! profile of `E(c/v1, c/v2)` with `c = [v]`; it sits inside `Omega`, has
//! capacity at least `c`, and so a ratio at least that of `X_Omega`.

use num_traits::Zero;
use rand::Rng;
use serde::Serialize;

use crate::ellipsoid::Ellipsoid;
use crate::error::{Error, Result};
use crate::exact::{frac, int, serde_rational, Rational};
use crate::ratio::{best_ellipsoid_power_4d, ratio_ellipsoid, ratio_toric, RatioValue};
use crate::toric::{LatticeVector, Point, ProfileKind, ToricProfile};

/// The supporting-line ellipsoid for one profile.
#[derive(Clone, Debug, Serialize)]
pub struct TangentCheck {
    pub profile: ToricProfile,
    pub ratio: RatioValue,
    pub v: LatticeVector,
    pub w: Point,
    pub tangent: Ellipsoid,
    pub tangent_ratio: RatioValue,
    /// `tangent_ratio >= ratio` and the tangent triangle lies inside the profile.
    pub dominates: bool,
    /// `ratio <= ceil(k/2) ceil((k+1)/2)`.
    pub within_bound: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConcaveReport {
    pub k: usize,
    #[serde(with = "serde_rational")]
    pub bound: Rational,
    pub checks: Vec<TangentCheck>,
    /// Some profile attains the bound exactly.
    pub bound_attained: bool,
    pub holds: bool,
}

pub fn tangent_ellipsoid(profile: &ToricProfile, k: usize) -> Result<TangentCheck> {
    let bound = best_ellipsoid_power_4d(k)?;
    let attained = profile.capacity_concave_attained(k)?;
    let v = attained.attained_at[0];
    let at_w = profile.support_min_on_graph_attained(&v);
    let w = profile.vertices()[at_w.attained_at[0]].clone();
    let c = attained.value;
    debug_assert_eq!(c, at_w.value);

    let a1 = &c / int(v.v1);
    let a2 = &c / int(v.v2);
    let triangle = ToricProfile::ellipsoid(a1.clone(), a2.clone(), ProfileKind::Concave)?;
    let tangent = Ellipsoid::finite(vec![a1, a2])?;
    let ratio = ratio_toric(profile, k)?;
    let tangent_ratio = ratio_ellipsoid(&tangent, k)?;

    // g <= f on [0, x0] because every graph vertex has <v, .> >= c.
    let below = profile.vertices().iter().all(|p| p.pairing(&v) >= c);
    let inside = below && triangle.area() <= profile.area();
    let dominates = inside && tangent_ratio.nth_power() >= ratio.nth_power();
    let within_bound = ratio.nth_power() <= &bound && tangent_ratio.nth_power() <= &bound;
    Ok(TangentCheck {
        profile: profile.clone(),
        ratio,
        v,
        w,
        tangent,
        tangent_ratio,
        dominates,
        within_bound,
    })
}

/// Checks that no concave profile beats the best ellipsoid for `c_k`, and that
/// the supporting-line ellipsoid of each profile dominates it.
pub fn verify_concave_max(k: usize, profiles: &[ToricProfile]) -> Result<ConcaveReport> {
    let bound = best_ellipsoid_power_4d(k)?;
    let mut checks = Vec::with_capacity(profiles.len());
    for p in profiles {
        if p.kind() != ProfileKind::Concave {
            return Err(Error::WrongKind {
                expected: "concave",
                found: p.kind().name(),
            });
        }
        checks.push(tangent_ellipsoid(p, k)?);
    }
    let holds = checks.iter().all(|c| c.dominates && c.within_bound);
    let bound_attained = checks.iter().any(|c| c.ratio.nth_power() == &bound);
    Ok(ConcaveReport {
        k,
        bound,
        checks,
        bound_attained,
        holds,
    })
}

fn random_fraction<R: Rng + ?Sized>(
    rng: &mut R,
    lo_num: i64,
    hi_num: i64,
    max_den: i64,
) -> Rational {
    let d = rng.gen_range(1..=max_den);
    frac(rng.gen_range(lo_num * d..=hi_num * d), d)
}

/// A random concave profile with at most `max_vertices` vertices whose
/// coordinates have denominators at most `max_den`.
///
/// Draws the axis intercepts in `(0, 3]`, scatters points strictly under the
/// chord between them and keeps the lower convex hull.
pub fn random_concave_profile<R: Rng + ?Sized>(
    rng: &mut R,
    max_vertices: usize,
    max_den: i64,
) -> ToricProfile {
    assert!(max_vertices >= 2 && max_den >= 1);
    let positive = |rng: &mut R| loop {
        let q = random_fraction(rng, 0, 3, max_den);
        if !q.is_zero() {
            break q;
        }
    };
    let x0 = positive(rng);
    let y0 = positive(rng);
    let want = rng.gen_range(0..=max_vertices - 2);
    let mut points = vec![
        Point::new(Rational::zero(), y0.clone()),
        Point::new(x0.clone(), Rational::zero()),
    ];
    let mut attempts = 0;
    while points.len() < want + 2 && attempts < 200 {
        attempts += 1;
        let d = rng.gen_range(1..=max_den);
        let x = frac(rng.gen_range(0..=3 * d), d);
        let d = rng.gen_range(1..=max_den);
        let y = frac(rng.gen_range(0..=3 * d), d);
        // strictly inside the triangle: x, y > 0 and x/x0 + y/y0 < 1
        if x.is_zero() || y.is_zero() || &x / &x0 + &y / &y0 >= int(1) {
            continue;
        }
        points.push(Point::new(x, y));
    }
    points.sort_by(|a, b| a.x.cmp(&b.x).then(a.y.cmp(&b.y)));
    let mut hull: Vec<Point> = Vec::new();
    for p in points {
        while hull.len() >= 2 {
            let a = &hull[hull.len() - 2];
            let b = &hull[hull.len() - 1];
            let turn = (&b.x - &a.x) * (&p.y - &a.y) - (&b.y - &a.y) * (&p.x - &a.x);
            if turn <= Rational::zero() {
                hull.pop();
            } else {
                break;
            }
        }
        if hull.last().is_some_and(|h| h.x == p.x) {
            // same abscissa, higher point came later after sorting: keep the lower one
            continue;
        }
        hull.push(p);
    }
    ToricProfile::new(ProfileKind::Concave, hull)
        .expect("lower hull of points under the chord is a concave profile")
}
