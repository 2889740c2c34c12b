//! Exhaustive exact sweep of the two-corner family.

use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, Result};
use crate::exact::{frac, int, serde_rational, Rational};
use crate::optimize::thresholds::{cover_check, sufficient_conditions, thresholds, CoverReport};
use crate::optimize::two_corner::TwoCornerFamily;

/// Sampling lattice for `(i, r, s[, t])`.
///
/// `r` runs over reduced fractions in `[0, 1)` with denominator at most
/// `r_denom`; `s` over `s_max * p / s_steps`; in unbalanced mode `t` over
/// `(1/alpha) * q / t_steps`. The rectangle `i = k` uses `s = 2p / s_steps`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GridSpec {
    pub r_denom: u64,
    pub s_steps: u64,
    pub t_steps: u64,
}

impl GridSpec {
    pub const COARSE: GridSpec = GridSpec {
        r_denom: 6,
        s_steps: 10,
        t_steps: 4,
    };
    pub const DEFAULT: GridSpec = GridSpec {
        r_denom: 12,
        s_steps: 40,
        t_steps: 10,
    };
    pub const DENSE: GridSpec = GridSpec {
        r_denom: 24,
        s_steps: 80,
        t_steps: 20,
    };

    pub fn preset(name: &str) -> Option<GridSpec> {
        match name {
            "coarse" => Some(Self::COARSE),
            "default" => Some(Self::DEFAULT),
            "dense" => Some(Self::DENSE),
            _ => None,
        }
    }

    fn r_values(&self) -> Vec<Rational> {
        let mut out = vec![Rational::zero()];
        for q in 2..=self.r_denom {
            out.extend((1..q).filter(|p| p.gcd(&q) == 1).map(|p| frac(p, q)));
        }
        out.sort();
        out
    }
}

impl Default for GridSpec {
    fn default() -> Self {
        Self::DEFAULT
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepMode {
    /// `t` is determined by `s` so that both corner supports agree.
    Balanced,
    /// `s` and `t` vary independently.
    Unbalanced,
}

/// Where `2 ratio^2 = k^2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EqualityLocus {
    /// The unit square, reached from every `(i, r)` at `s = t = 0`.
    SZero,
    Point {
        i: usize,
        #[serde(with = "serde_rational")]
        r: Rational,
        #[serde(with = "serde_rational")]
        s: Rational,
        #[serde(with = "serde_rational")]
        t: Rational,
    },
}

impl EqualityLocus {
    fn of(f: &TwoCornerFamily) -> Self {
        if f.s.is_zero() && f.t.is_zero() {
            EqualityLocus::SZero
        } else {
            EqualityLocus::Point {
                i: f.i,
                r: f.r.clone(),
                s: f.s.clone(),
                t: f.t.clone(),
            }
        }
    }
}

/// The two non-square configurations attaining `k^2` when `k = 2`; both are
/// the ellipsoid `E(1, 2)` up to scaling.
pub fn k2_extra_loci() -> Vec<EqualityLocus> {
    vec![
        EqualityLocus::Point {
            i: 0,
            r: frac(2, 3),
            s: frac(1, 2),
            t: int(2),
        },
        EqualityLocus::Point {
            i: 1,
            r: frac(1, 3),
            s: int(2),
            t: frac(1, 2),
        },
    ]
}

/// A family member with `2 ratio^2 > k^2`.
#[derive(Clone, Debug, Serialize)]
pub struct Exceedance {
    pub member: TwoCornerFamily,
    #[serde(with = "serde_rational")]
    pub twice_ratio_sq: Rational,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvexSweepReport {
    pub k: usize,
    pub grid: GridSpec,
    pub mode: SweepMode,
    pub points: usize,
    #[serde(with = "serde_rational")]
    pub bound: Rational,
    /// Largest `2 ratio^2` seen.
    #[serde(with = "serde_rational")]
    pub max_twice_ratio_sq: Rational,
    /// Distinct equality loci, `SZero` first, then points in sweep order.
    pub equality_loci: Vec<EqualityLocus>,
    /// First exceedance in sweep order, if any.
    pub witness: Option<Exceedance>,
    /// Members where the closed form and the profile computation disagree.
    pub identity_failures: Vec<TwoCornerFamily>,
    /// Grid values `(i, r)` covered by no sufficient condition and not an
    /// equality point.
    #[serde(serialize_with = "serialize_pairs")]
    pub uncovered: Vec<(usize, Rational)>,
    pub cover: CoverReport,
    pub thresholds_ordered: bool,
    pub holds: bool,
}

fn serialize_pairs<S: serde::Serializer>(
    pairs: &[(usize, Rational)],
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    serializer.collect_seq(pairs.iter().map(|(i, r)| (i, r.to_string())))
}

struct Cell {
    members: Vec<(TwoCornerFamily, Rational, bool)>,
    covered: bool,
}

fn scale_steps(max: &Rational, steps: u64) -> Vec<Rational> {
    (0..=steps).map(|p| max * frac(p, steps)).collect()
}

fn sweep_cell(k: usize, i: usize, r: &Rational, grid: &GridSpec, mode: SweepMode) -> Result<Cell> {
    let s_max = TwoCornerFamily::balanced_s_max(k, i, r)?;
    let mut members = Vec::new();
    match mode {
        SweepMode::Balanced => {
            for s in scale_steps(&s_max, grid.s_steps) {
                members.push(TwoCornerFamily::balanced(k, i, r.clone(), s)?);
            }
        }
        SweepMode::Unbalanced => {
            let probe = TwoCornerFamily::new(k, i, r.clone(), Rational::zero(), Rational::zero())?;
            let alpha = probe.alpha().expect("finite slope");
            let t_max = Rational::one() / &alpha;
            for s in scale_steps(&alpha, grid.s_steps) {
                for t in scale_steps(&t_max, grid.t_steps) {
                    members.push(TwoCornerFamily::new(k, i, r.clone(), s.clone(), t)?);
                }
            }
        }
    }
    let members = members
        .into_iter()
        .map(|f| {
            let id = f.ratio_identity()?;
            let agrees = id.agrees();
            Ok((f, id.via_profile, agrees))
        })
        .collect::<Result<Vec<_>>>()?;
    let covered = !sufficient_conditions(k, i, r)?.is_empty();
    Ok(Cell { members, covered })
}

/// Sweeps the two-corner family for `c_k` and checks `2 ratio^2 <= k^2`,
/// with equality only at the square (and, for `k = 2`, at the two
/// configurations equivalent to `E(1, 2)`).
///
/// Also checks the closed-form ratio identity at every point, that every
/// sampled `(i, r)` is covered by a sufficient condition or is an equality
/// point, the full interval cover, and the threshold ordering.
pub fn verify_convex_toric_max(
    k: usize,
    grid: &GridSpec,
    mode: SweepMode,
) -> Result<ConvexSweepReport> {
    if k < 2 {
        return Err(domain("the convex sweep needs k >= 2"));
    }
    if grid.r_denom < 1 || grid.s_steps < 1 || grid.t_steps < 1 {
        return Err(domain("grid sizes must be positive"));
    }
    let cells: Vec<(usize, Rational)> = (0..k)
        .flat_map(|i| grid.r_values().into_iter().map(move |r| (i, r)))
        .filter(|(i, r)| *i > 0 || !r.is_zero())
        .collect();
    let swept: Vec<Cell> = cells
        .par_iter()
        .map(|(i, r)| sweep_cell(k, *i, r, grid, mode))
        .collect::<Result<_>>()?;

    let bound = int(k * k);
    let mut rect = Vec::new();
    for s in scale_steps(&int(2), grid.s_steps) {
        let f = TwoCornerFamily::new(k, k, Rational::zero(), s, Rational::zero())?;
        let id = f.ratio_identity()?;
        let agrees = id.agrees();
        rect.push((f, id.via_profile, agrees));
    }

    let cover = cover_check(k)?;
    let mut points = 0;
    let mut max = Rational::zero();
    let mut loci: Vec<EqualityLocus> = Vec::new();
    let mut witness = None;
    let mut identity_failures = Vec::new();
    let mut uncovered = Vec::new();
    let all = swept
        .iter()
        .zip(&cells)
        .map(|(cell, ir)| (cell.members.as_slice(), Some((cell.covered, ir))))
        .chain(std::iter::once((rect.as_slice(), None)));
    for (members, cover_info) in all {
        if let Some((false, (i, r))) = cover_info {
            let at_equality = cover
                .gaps
                .iter()
                .any(|g| g.i == *i && g.is_point() && &g.lo == r && g.equality_point);
            if !at_equality {
                uncovered.push((*i, r.clone()));
            }
        }
        for (f, value, agrees) in members {
            points += 1;
            if !agrees {
                identity_failures.push(f.clone());
            }
            if *value > max {
                max = value.clone();
            }
            if *value > bound && witness.is_none() {
                witness = Some(Exceedance {
                    member: f.clone(),
                    twice_ratio_sq: value.clone(),
                });
            }
            if *value == bound {
                let locus = EqualityLocus::of(f);
                if !loci.contains(&locus) {
                    loci.push(locus);
                }
            }
        }
    }
    loci.sort_by_key(|l| !matches!(l, EqualityLocus::SZero));

    let allowed = if k == 2 { k2_extra_loci() } else { Vec::new() };
    let loci_ok = loci
        .iter()
        .all(|l| matches!(l, EqualityLocus::SZero) || allowed.contains(l));
    let th = thresholds(k)?;
    let thresholds_ordered = th.ordered() && (th.tight() == (k == 2));
    let holds = witness.is_none()
        && identity_failures.is_empty()
        && loci_ok
        && uncovered.is_empty()
        && cover.holds
        && thresholds_ordered;
    Ok(ConvexSweepReport {
        k,
        grid: *grid,
        mode,
        points,
        bound,
        max_twice_ratio_sq: max,
        equality_loci: loci,
        witness,
        identity_failures,
        uncovered,
        cover,
        thresholds_ordered,
        holds,
    })
}
