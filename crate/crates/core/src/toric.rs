//! Four-dimensional toric domains `X_Omega` with piecewise-linear profiles.
//!
//! A profile is the region under the graph of a monotone nonincreasing
//! piecewise-linear function `f: [0, x_0] -> [0, y_0]` with `f(0) = y_0 > 0`
//! and `f(x_0) = 0`. It is stored as the list of graph vertices from
//! `(0, y_0)` to `(x_0, 0)`; the origin and the two axis segments close the
//! polygon implicitly.
//!
//! * A *concave* toric domain has `f` convex (the complement of `Omega` in the
//!   quadrant is convex). Its capacities are
//!   `c_k = max { [v] : v in {1..k}^2, v_1 + v_2 = k + 1 }` where
//!   `[v] = min_{w in graph f} <v, w>`.
//! * A *convex* toric domain has `f` concave. Its capacities are
//!   `c_k = min_{0 <= j <= k} ||(j, k - j)||` where `||v|| = max_{w in Omega} <v, w>`.
//!
//! Both extrema of a linear functional over the polygon or its upper boundary
//! are attained at vertices, so everything reduces to finite min/max.

use std::fmt;

use std::cmp::Ordering;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::exact::{int, parse_rational, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProfileKind {
    /// Graph of a convex function; concave toric domain.
    Concave,
    /// Graph of a concave function; convex toric domain.
    Convex,
}

impl ProfileKind {
    pub fn name(self) -> &'static str {
        match self {
            ProfileKind::Concave => "concave",
            ProfileKind::Convex => "convex",
        }
    }
}

impl fmt::Display for ProfileKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A point in the first quadrant, serialized as `["p/q", "r/s"]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn pairing(&self, v: &LatticeVector) -> Rational {
        &self.x * int(v.v1) + &self.y * int(v.v2)
    }

    fn sub(&self, other: &Point) -> (Rational, Rational) {
        (&self.x - &other.x, &self.y - &other.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Serialize for Point {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        [self.x.to_string(), self.y.to_string()].serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let [x, y] = <[String; 2]>::deserialize(deserializer)?;
        let x = parse_rational(&x).map_err(serde::de::Error::custom)?;
        let y = parse_rational(&y).map_err(serde::de::Error::custom)?;
        Ok(Point { x, y })
    }
}

/// A nonzero vector with nonnegative integer entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticeVector {
    pub v1: u64,
    pub v2: u64,
}

impl LatticeVector {
    pub fn new(v1: u64, v2: u64) -> Result<Self> {
        if v1 == 0 && v2 == 0 {
            return Err(domain("lattice vector must be nonzero"));
        }
        Ok(LatticeVector { v1, v2 })
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.v1, self.v2)
    }
}

/// An optimal value together with every argument attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extremum<T> {
    pub value: Rational,
    pub attained_at: Vec<T>,
}

impl<T> Extremum<T> {
    fn pick<I>(items: I, prefer_larger: bool) -> Option<Self>
    where
        I: IntoIterator<Item = (T, Value)>,
    {
        let mut best: Option<(Value, Vec<T>)> = None;
        for (arg, value) in items {
            match &mut best {
                None => best = Some((value, vec![arg])),
                Some((b, args)) => {
                    let ord = value.cmp(b);
                    let better = if prefer_larger {
                        ord.is_gt()
                    } else {
                        ord.is_lt()
                    };
                    if better {
                        *b = value;
                        *args = vec![arg];
                    } else if ord.is_eq() {
                        args.push(arg);
                    }
                }
            }
        }
        best.map(|(value, attained_at)| Extremum {
            value: value.into_rational(),
            attained_at,
        })
    }
}

/// An exact rational that stays in machine integers while it fits.
///
/// Support functions evaluate thousands of pairings with small coordinates;
/// `Small` avoids big-integer allocation for them and falls back to
/// [`Rational`] on overflow.
#[derive(Clone, Debug)]
enum Value {
    /// Lowest terms, positive denominator.
    Small(i128, i128),
    Big(Rational),
}

impl Value {
    fn small(num: i128, den: i128) -> Value {
        let g = num.gcd(&den);
        Value::Small(num / g, den / g)
    }

    fn pairing(w: &Point, v: &LatticeVector) -> Value {
        let fast = || -> Option<Value> {
            let (xn, xd) = (w.x.numer().to_i64()? as i128, w.x.denom().to_i64()? as i128);
            let (yn, yd) = (w.y.numer().to_i64()? as i128, w.y.denom().to_i64()? as i128);
            let v1 = i128::from(u32::try_from(v.v1).ok()?);
            let v2 = i128::from(u32::try_from(v.v2).ok()?);
            let a = xn.checked_mul(yd)?.checked_mul(v1)?;
            let b = yn.checked_mul(xd)?.checked_mul(v2)?;
            Some(Value::small(a.checked_add(b)?, xd.checked_mul(yd)?))
        };
        fast().unwrap_or_else(|| Value::Big(w.pairing(v)))
    }

    fn into_rational(self) -> Rational {
        match self {
            Value::Small(n, d) => Rational::new_raw(n.into(), d.into()),
            Value::Big(r) => r,
        }
    }

    fn to_rational(&self) -> Rational {
        self.clone().into_rational()
    }
}

impl PartialEq for Value {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other).is_eq()
    }
}

impl Eq for Value {}

impl PartialOrd for Value {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Value {
    fn cmp(&self, other: &Self) -> Ordering {
        if let (Value::Small(a, b), Value::Small(c, d)) = (self, other) {
            if let (Some(l), Some(r)) = (a.checked_mul(*d), c.checked_mul(*b)) {
                return l.cmp(&r);
            }
        }
        self.to_rational().cmp(&other.to_rational())
    }
}

/// Piecewise-linear profile of a concave or convex toric domain.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ProfileFile", into = "ProfileFile")]
pub struct ToricProfile {
    kind: ProfileKind,
    vertices: Vec<Point>,
}

/// On-disk form: `{"kind": "concave"|"convex", "vertices": [["p/q","r/s"], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProfileFile {
    pub kind: ProfileKind,
    pub vertices: Vec<Point>,
}

impl TryFrom<ProfileFile> for ToricProfile {
    type Error = Error;

    fn try_from(file: ProfileFile) -> Result<Self> {
        ToricProfile::new(file.kind, file.vertices)
    }
}

impl From<ToricProfile> for ProfileFile {
    fn from(p: ToricProfile) -> Self {
        ProfileFile {
            kind: p.kind,
            vertices: p.vertices,
        }
    }
}

fn cross(a: &(Rational, Rational), b: &(Rational, Rational)) -> Rational {
    &a.0 * &b.1 - &a.1 * &b.0
}

impl ToricProfile {
    /// Validates the vertex list and drops collinear interior vertices.
    pub fn new(kind: ProfileKind, vertices: Vec<Point>) -> Result<Self> {
        let invalid = |msg: String| Err(Error::InvalidProfile(msg));
        if vertices.len() < 2 {
            return invalid("need at least the two axis vertices".into());
        }
        let first = &vertices[0];
        let last = &vertices[vertices.len() - 1];
        if !first.x.is_zero() || !first.y.is_positive() {
            return invalid(format!(
                "first vertex must be (0, y0) with y0 > 0, got {first}"
            ));
        }
        if !last.y.is_zero() || !last.x.is_positive() {
            return invalid(format!(
                "last vertex must be (x0, 0) with x0 > 0, got {last}"
            ));
        }
        for w in vertices.windows(2) {
            let (dx, dy) = w[1].sub(&w[0]);
            if dx.is_negative() || dy.is_positive() || (dx.is_zero() && dy.is_zero()) {
                return invalid(format!("vertices {} -> {} are not monotone", w[0], w[1]));
            }
            if kind == ProfileKind::Concave && (dx.is_zero() || dy.is_zero()) {
                return invalid(format!(
                    "concave profile has an axis-parallel edge {} -> {}",
                    w[0], w[1]
                ));
            }
        }

        let mut kept: Vec<Point> = vec![vertices[0].clone()];
        for next in &vertices[1..] {
            if kept.len() >= 2 {
                let a = &kept[kept.len() - 2];
                let b = &kept[kept.len() - 1];
                let turn = cross(&b.sub(a), &next.sub(b));
                if turn.is_zero() {
                    kept.pop();
                } else {
                    let ok = match kind {
                        ProfileKind::Convex => turn.is_negative(),
                        ProfileKind::Concave => turn.is_positive(),
                    };
                    if !ok {
                        return invalid(format!("vertex {b} violates the {kind} slope order"));
                    }
                }
            }
            kept.push(next.clone());
        }
        Ok(ToricProfile {
            kind,
            vertices: kept,
        })
    }

    /// Triangle `(0, a2), (a1, 0)`: the profile of `E(a1, a2)`, which is both
    /// concave and convex.
    pub fn ellipsoid(a1: Rational, a2: Rational, kind: ProfileKind) -> Result<Self> {
        if !a1.is_positive() || !a2.is_positive() {
            return Err(domain("ellipsoid profile needs positive parameters"));
        }
        ToricProfile::new(
            kind,
            vec![
                Point::new(Rational::zero(), a2),
                Point::new(a1, Rational::zero()),
            ],
        )
    }

    /// Rectangle `[0, a] x [0, b]`: the profile of the polydisk `P(a, b)`.
    pub fn polydisk(a: Rational, b: Rational) -> Result<Self> {
        if !a.is_positive() || !b.is_positive() {
            return Err(domain("polydisk profile needs positive parameters"));
        }
        ToricProfile::new(
            ProfileKind::Convex,
            vec![
                Point::new(Rational::zero(), b.clone()),
                Point::new(a.clone(), b),
                Point::new(a, Rational::zero()),
            ],
        )
    }

    pub fn kind(&self) -> ProfileKind {
        self.kind
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn x0(&self) -> &Rational {
        &self.vertices[self.vertices.len() - 1].x
    }

    pub fn y0(&self) -> &Rational {
        &self.vertices[0].y
    }

    /// Same vertices, relabelled; fails if the slopes do not allow `kind`.
    pub fn with_kind(&self, kind: ProfileKind) -> Result<Self> {
        ToricProfile::new(kind, self.vertices.clone())
    }

    /// `||v|| = max_{w in Omega} <v, w>`, with every maximizing vertex index.
    pub fn support_max_attained(&self, v: &LatticeVector) -> Extremum<usize> {
        Extremum::pick(self.pairings(v), true).expect("profiles have vertices")
    }

    pub fn support_max(&self, v: &LatticeVector) -> Rational {
        self.support_max_attained(v).value
    }

    /// `[v] = min_{w in graph f} <v, w>`, with every minimizing vertex index.
    pub fn support_min_on_graph_attained(&self, v: &LatticeVector) -> Extremum<usize> {
        Extremum::pick(self.pairings(v), false).expect("profiles have vertices")
    }

    fn pairings<'a>(&'a self, v: &'a LatticeVector) -> impl Iterator<Item = (usize, Value)> + 'a {
        self.vertices
            .iter()
            .map(|w| Value::pairing(w, v))
            .enumerate()
    }

    fn support_value(&self, v: &LatticeVector, larger: bool) -> Value {
        let values = self.vertices.iter().map(|w| Value::pairing(w, v));
        if larger { values.max() } else { values.min() }.expect("profiles have vertices")
    }

    pub fn support_min_on_graph(&self, v: &LatticeVector) -> Rational {
        self.support_min_on_graph_attained(v).value
    }

    /// Euclidean area of `Omega` by the shoelace formula on
    /// `(0,0), (x0,0), ..., (0,y0)`.
    pub fn area(&self) -> Rational {
        let origin = Point::new(Rational::zero(), Rational::zero());
        let ring: Vec<&Point> = std::iter::once(&origin)
            .chain(self.vertices.iter().rev())
            .collect();
        let mut twice = Rational::zero();
        for i in 0..ring.len() {
            let a = ring[i];
            let b = ring[(i + 1) % ring.len()];
            twice += &a.x * &b.y - &b.x * &a.y;
        }
        twice.abs() / int(2)
    }

    /// `vol(X_Omega)` for the volume form `omega^2`: twice the area.
    pub fn volume(&self) -> Rational {
        self.area() * int(2)
    }

    fn require(&self, kind: ProfileKind) -> Result<()> {
        if self.kind == kind {
            Ok(())
        } else {
            Err(Error::WrongKind {
                expected: kind.name(),
                found: self.kind.name(),
            })
        }
    }

    /// Concave-domain capacity, with every maximizing `v`.
    pub fn capacity_concave_attained(&self, k: usize) -> Result<Extremum<LatticeVector>> {
        self.require(ProfileKind::Concave)?;
        if k < 1 {
            return Err(domain("capacity index k must be >= 1"));
        }
        let k = k as u64;
        let candidates = (1..=k).map(|v1| {
            let v = LatticeVector { v1, v2: k + 1 - v1 };
            (v, self.support_value(&v, false))
        });
        Ok(Extremum::pick(candidates, true).expect("k >= 1"))
    }

    pub fn capacity_concave(&self, k: usize) -> Result<Rational> {
        Ok(self.capacity_concave_attained(k)?.value)
    }

    /// Convex-domain capacity, with every minimizing `v_j = (j, k - j)`.
    pub fn capacity_convex_attained(&self, k: usize) -> Result<Extremum<LatticeVector>> {
        self.require(ProfileKind::Convex)?;
        if k < 1 {
            return Err(domain("capacity index k must be >= 1"));
        }
        let k = k as u64;
        let candidates = (0..=k).map(|j| {
            let v = LatticeVector { v1: j, v2: k - j };
            (v, self.support_value(&v, true))
        });
        Ok(Extremum::pick(candidates, false).expect("k >= 1"))
    }

    pub fn capacity_convex(&self, k: usize) -> Result<Rational> {
        Ok(self.capacity_convex_attained(k)?.value)
    }

    /// `c_k(X_Omega)` by the formula matching the profile's kind.
    pub fn capacity(&self, k: usize) -> Result<Rational> {
        match self.kind {
            ProfileKind::Concave => self.capacity_concave(k),
            ProfileKind::Convex => self.capacity_convex(k),
        }
    }

    /// Multiplies every coordinate by `factor`.
    pub fn scaled(&self, factor: &Rational) -> Result<Self> {
        if !factor.is_positive() {
            return Err(domain("scale factor must be positive"));
        }
        Ok(ToricProfile {
            kind: self.kind,
            vertices: self
                .vertices
                .iter()
                .map(|p| Point::new(&p.x * factor, &p.y * factor))
                .collect(),
        })
    }

    /// Whether `p` lies in the closed region `Omega`.
    pub fn contains(&self, p: &Point) -> bool {
        if p.x.is_negative() || p.y.is_negative() || &p.x > self.x0() {
            return false;
        }
        // Find the edge spanning p.x; vertical edges only occur at x0 or at 0.
        for w in self.vertices.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            if a.x <= p.x && p.x <= b.x {
                if a.x == b.x {
                    return p.y <= a.y;
                }
                // p.y <= a.y + (b.y - a.y) (p.x - a.x) / (b.x - a.x)
                let f = &a.y + (&b.y - &a.y) * (&p.x - &a.x) / (&b.x - &a.x);
                return p.y <= f;
            }
        }
        false
    }

    /// Whether every vertex of `self` lies in `other`. When `other` is a
    /// convex profile this is equivalent to `self` being a subset of `other`.
    pub fn vertices_inside(&self, other: &ToricProfile) -> bool {
        self.vertices.iter().all(|p| other.contains(p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ellipsoid::Ellipsoid;
    use crate::exact::frac;
    use proptest::prelude::*;

    fn pt(x: &str, y: &str) -> Point {
        Point::new(parse_rational(x).unwrap(), parse_rational(y).unwrap())
    }

    fn convex(vs: &[(&str, &str)]) -> ToricProfile {
        ToricProfile::new(
            ProfileKind::Convex,
            vs.iter().map(|(x, y)| pt(x, y)).collect(),
        )
        .unwrap()
    }

    fn concave(vs: &[(&str, &str)]) -> ToricProfile {
        ToricProfile::new(
            ProfileKind::Concave,
            vs.iter().map(|(x, y)| pt(x, y)).collect(),
        )
        .unwrap()
    }

    fn lv(a: u64, b: u64) -> LatticeVector {
        LatticeVector::new(a, b).unwrap()
    }

    /// Area under the graph as a sum of trapezoids.
    fn trapezoid_area(p: &ToricProfile) -> Rational {
        p.vertices()
            .windows(2)
            .map(|w| (&w[1].x - &w[0].x) * (&w[0].y + &w[1].y) / int(2))
            .sum()
    }

    #[test]
    fn support_max_examples() {
        let square = convex(&[("0", "1"), ("1", "1"), ("1", "0")]);
        assert_eq!(square.support_max(&lv(1, 1)), int(2));
        let tri = convex(&[("0", "3"), ("3/2", "0")]);
        assert_eq!(tri.support_max(&lv(1, 1)), int(3));
        let unit = convex(&[("0", "1"), ("1", "0")]);
        assert_eq!(unit.support_max(&lv(0, 5)), int(5));
    }

    #[test]
    fn support_min_examples() {
        let unit = concave(&[("0", "1"), ("1", "0")]);
        assert_eq!(unit.support_min_on_graph(&lv(1, 2)), int(1));
        assert_eq!(unit.support_min_on_graph(&lv(1, 1)), int(1));
        let tri = concave(&[("0", "2"), ("1", "0")]);
        let m = tri.support_min_on_graph_attained(&lv(2, 1));
        assert_eq!(m.value, int(2));
        assert_eq!(m.attained_at, vec![0, 1]);
    }

    #[test]
    fn volume_examples() {
        assert_eq!(
            convex(&[("0", "1"), ("1", "1"), ("1", "0")]).volume(),
            int(2)
        );
        assert_eq!(concave(&[("0", "2"), ("1", "0")]).volume(), int(2));
        assert_eq!(concave(&[("0", "1"), ("1", "0")]).volume(), int(1));
    }

    #[test]
    fn concave_capacity_examples() {
        let unit = concave(&[("0", "1"), ("1", "0")]);
        assert_eq!(unit.capacity_concave(2).unwrap(), int(1));
        assert_eq!(unit.capacity_concave(3).unwrap(), int(2));
        let tri = concave(&[("0", "2"), ("1", "0")]);
        assert_eq!(tri.capacity_concave(2).unwrap(), int(2));
        let att = unit.capacity_concave_attained(3).unwrap();
        assert_eq!(att.attained_at, vec![lv(2, 2)]);
    }

    #[test]
    fn convex_capacity_examples() {
        let square = convex(&[("0", "1"), ("1", "1"), ("1", "0")]);
        assert_eq!(square.capacity_convex(3).unwrap(), int(3));
        let tri = convex(&[("0", "3"), ("3/2", "0")]);
        let att = tri.capacity_convex_attained(2).unwrap();
        assert_eq!(att.value, int(3));
        assert_eq!(att.attained_at, vec![lv(1, 1), lv(2, 0)]);
        assert_eq!(
            convex(&[("0", "1"), ("1", "0")])
                .capacity_convex(1)
                .unwrap(),
            int(1)
        );
    }

    #[test]
    fn wrong_kind_is_rejected() {
        let square = convex(&[("0", "1"), ("1", "1"), ("1", "0")]);
        assert!(matches!(
            square.capacity_concave(2),
            Err(Error::WrongKind { .. })
        ));
        let unit = concave(&[("0", "1"), ("1", "0")]);
        assert!(matches!(
            unit.capacity_convex(2),
            Err(Error::WrongKind { .. })
        ));
        assert!(unit.capacity_concave(0).is_err());
    }

    #[test]
    fn constructors() {
        let e = ToricProfile::ellipsoid(int(1), int(2), ProfileKind::Convex).unwrap();
        assert_eq!(e.vertices(), &[pt("0", "2"), pt("1", "0")]);
        let e = ToricProfile::ellipsoid(frac(3, 2), int(3), ProfileKind::Convex).unwrap();
        assert_eq!(e.vertices(), &[pt("0", "3"), pt("3/2", "0")]);
        assert_eq!(
            ToricProfile::ellipsoid(int(1), int(1), ProfileKind::Concave)
                .unwrap()
                .vertices(),
            &[pt("0", "1"), pt("1", "0")]
        );
        let p = ToricProfile::polydisk(int(2), int(1)).unwrap();
        assert_eq!(p.vertices(), &[pt("0", "1"), pt("2", "1"), pt("2", "0")]);
        assert_eq!(
            ToricProfile::polydisk(int(1), int(3)).unwrap().vertices(),
            &[pt("0", "3"), pt("1", "3"), pt("1", "0")]
        );
        assert!(ToricProfile::polydisk(int(0), int(1)).is_err());
        assert!(ToricProfile::ellipsoid(int(1), int(-1), ProfileKind::Concave).is_err());
    }

    #[test]
    fn invalid_profiles_are_rejected() {
        let mk = |kind, vs: &[(&str, &str)]| {
            ToricProfile::new(kind, vs.iter().map(|(x, y)| pt(x, y)).collect())
        };
        // degenerate axis profiles
        assert!(mk(ProfileKind::Convex, &[("0", "0"), ("1", "0")]).is_err());
        assert!(mk(ProfileKind::Convex, &[("0", "1"), ("0", "0")]).is_err());
        assert!(mk(ProfileKind::Convex, &[("0", "1")]).is_err());
        // increasing
        assert!(mk(ProfileKind::Convex, &[("0", "1"), ("1", "2"), ("2", "0")]).is_err());
        // wrong turn direction
        assert!(mk(
            ProfileKind::Convex,
            &[("0", "2"), ("1/2", "1/2"), ("2", "0")]
        )
        .is_err());
        assert!(mk(
            ProfileKind::Concave,
            &[("0", "2"), ("3/2", "3/2"), ("2", "0")]
        )
        .is_err());
        // a rectangle is not a concave profile
        assert!(mk(ProfileKind::Concave, &[("0", "1"), ("1", "1"), ("1", "0")]).is_err());
    }

    #[test]
    fn collinear_vertices_are_normalized() {
        let p = convex(&[("0", "2"), ("1/2", "3/2"), ("1", "1"), ("2", "0")]);
        assert_eq!(p.vertices(), &[pt("0", "2"), pt("2", "0")]);
        let q = convex(&[
            ("0", "1"),
            ("1/2", "1"),
            ("1", "1"),
            ("1", "1/2"),
            ("1", "0"),
        ]);
        assert_eq!(q, ToricProfile::polydisk(int(1), int(1)).unwrap());
    }

    #[test]
    fn json_format() {
        let p = ToricProfile::polydisk(frac(1, 2), int(1)).unwrap();
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(
            json,
            r#"{"kind":"convex","vertices":[["0","1"],["1/2","1"],["1/2","0"]]}"#
        );
        assert_eq!(serde_json::from_str::<ToricProfile>(&json).unwrap(), p);
        let bad = r#"{"kind":"concave","vertices":[["0","1"],["1","1"],["1","0"]]}"#;
        assert!(serde_json::from_str::<ToricProfile>(bad).is_err());
    }

    #[test]
    fn contains_points() {
        let tri = convex(&[("0", "2"), ("1", "0")]);
        assert!(tri.contains(&pt("1/2", "1")));
        assert!(!tri.contains(&pt("1/2", "11/10")));
        assert!(!tri.contains(&pt("2", "0")));
        let sq = ToricProfile::polydisk(int(1), int(1)).unwrap();
        assert!(sq.contains(&pt("1", "1")));
        assert!(sq.contains(&pt("1", "0")));
    }

    #[test]
    fn huge_coordinates_fall_back_to_big_arithmetic() {
        let big = parse_rational("123456789012345678901234567890/7").unwrap();
        let tri = ToricProfile::ellipsoid(big.clone(), int(1), ProfileKind::Convex).unwrap();
        let e = Ellipsoid::finite(vec![big.clone(), int(1)]).unwrap();
        for k in 1..=5 {
            assert_eq!(tri.capacity_convex(k).unwrap(), e.capacity(k).unwrap());
        }
        let v = LatticeVector::new(3, 1).unwrap();
        assert_eq!(tri.support_max(&v), &big * int(3));
    }

    fn small_q() -> impl Strategy<Value = Rational> {
        (1i64..=12, 1i64..=12).prop_map(|(n, d)| frac(n, d))
    }

    /// Concave function of a random rectangle-with-chamfers; always convex kind.
    fn convex_profile() -> impl Strategy<Value = ToricProfile> {
        (small_q(), small_q(), 0i64..=4, 0i64..=4).prop_map(|(a, b, cx, cy)| {
            // chamfer the corner of [0,a]x[0,b] by fractions cx/5, cy/5
            let px = &a * frac(5 - cx, 5);
            let py = &b * frac(5 - cy, 5);
            let mut vertices = vec![
                Point::new(Rational::zero(), b.clone()),
                Point::new(px, b),
                Point::new(a.clone(), py),
                Point::new(a, Rational::zero()),
            ];
            vertices.dedup();
            ToricProfile::new(ProfileKind::Convex, vertices).unwrap()
        })
    }

    proptest! {
        #[test]
        fn three_capacity_formulas_agree(a1 in small_q(), a2 in small_q(), k in 1usize..=40) {
            let direct = Ellipsoid::finite(vec![a1.clone(), a2.clone()]).unwrap().capacity(k).unwrap();
            let cc = ToricProfile::ellipsoid(a1.clone(), a2.clone(), ProfileKind::Concave).unwrap();
            let cv = ToricProfile::ellipsoid(a1, a2, ProfileKind::Convex).unwrap();
            prop_assert_eq!(&cc.capacity_concave(k).unwrap(), &direct);
            prop_assert_eq!(&cv.capacity_convex(k).unwrap(), &direct);
        }

        #[test]
        fn polydisk_capacity(a in small_q(), b in small_q(), k in 1usize..=30) {
            let p = ToricProfile::polydisk(a.clone(), b.clone()).unwrap();
            prop_assert_eq!(p.capacity_convex(k).unwrap(), int(k as i64) * a.clone().min(b.clone()));
            prop_assert_eq!(p.volume(), int(2) * a * b);
        }

        #[test]
        fn shoelace_matches_trapezoids(p in convex_profile()) {
            prop_assert_eq!(p.area(), trapezoid_area(&p));
        }

        #[test]
        fn min_below_max(p in convex_profile(), v1 in 0u64..6, v2 in 1u64..6) {
            let v = lv(v1, v2);
            prop_assert!(p.support_min_on_graph(&v) <= p.support_max(&v));
        }

        #[test]
        fn homogeneity(p in convex_profile(), c in small_q(), k in 1usize..=12, v1 in 0u64..6, v2 in 1u64..6) {
            let s = p.scaled(&c).unwrap();
            let v = lv(v1, v2);
            prop_assert_eq!(s.support_max(&v), p.support_max(&v) * &c);
            prop_assert_eq!(s.support_min_on_graph(&v), p.support_min_on_graph(&v) * &c);
            prop_assert_eq!(s.capacity_convex(k).unwrap(), p.capacity_convex(k).unwrap() * &c);
            prop_assert_eq!(s.volume(), p.volume() * &c * &c);
            let tri = ToricProfile::ellipsoid(p.x0().clone(), p.y0().clone(), ProfileKind::Concave).unwrap();
            let st = tri.scaled(&c).unwrap();
            prop_assert_eq!(st.capacity_concave(k).unwrap(), tri.capacity_concave(k).unwrap() * &c);
        }

        #[test]
        fn monotone_under_inclusion(p in convex_profile(), grow in small_q(), k in 1usize..=12, v1 in 0u64..6, v2 in 1u64..6) {
            let big = p.scaled(&(int(1) + grow)).unwrap();
            prop_assert!(p.vertices_inside(&big));
            let v = lv(v1, v2);
            prop_assert!(p.support_max(&v) <= big.support_max(&v));
            prop_assert!(p.capacity_convex(k).unwrap() <= big.capacity_convex(k).unwrap());
            // the inscribed triangle sits inside p
            let tri = ToricProfile::ellipsoid(p.x0().clone(), p.y0().clone(), ProfileKind::Convex).unwrap();
            prop_assert!(tri.vertices_inside(&p));
            prop_assert!(tri.capacity_convex(k).unwrap() <= p.capacity_convex(k).unwrap());
        }
    }
}
