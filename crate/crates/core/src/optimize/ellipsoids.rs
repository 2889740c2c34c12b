//! Local and global maximizers of the capacity ratio over ellipsoids.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::ellipsoid::Ellipsoid;
use crate::error::{domain, Error, Result};
use crate::exact::{ceil_div_two, frac, int, serde_rational, Rational};
use crate::optimize::{Candidate, MaximizerReport, Verdict, Witness};
use crate::ratio::{pow, ratio_ellipsoid, RatioValue};

/// Splits `k = q n + r` with `q >= 0` and `r` in `1..=n`.
fn split(n: usize, k: usize) -> (usize, usize) {
    let q = (k - 1) / n;
    (q, k - q * n)
}

/// `(q+1)^(n-r+1) (q+2)^(r-1)`: the n-th power of the largest ratio
/// `c_k / vol^(1/n)` over 2n-dimensional ellipsoids.
pub fn ellipsoid_max_power(n: usize, k: usize) -> Result<Rational> {
    if n < 1 || k < 1 {
        return Err(domain("need n >= 1 and k >= 1"));
    }
    let (q, r) = split(n, k);
    Ok(pow(&int(q + 1), n - r + 1) * pow(&int(q + 2), r - 1))
}

/// A global maximizer of the k-th capacity ratio among 2n-dimensional
/// ellipsoids, with integer parameters: `q+1` for the first `r-1` entries and
/// `q+2` for the rest, or all `q+1` when `r = 1`.
pub fn global_ellipsoid_max(n: usize, k: usize) -> Result<(Ellipsoid, RatioValue)> {
    if n < 2 {
        return Err(domain("global ellipsoid maximum needs n >= 2"));
    }
    if k < 1 {
        return Err(domain("capacity index k must be >= 1"));
    }
    let (q, r) = split(n, k);
    let params: Vec<Rational> = (1..=n)
        .map(|i| {
            if r > 1 && i >= r {
                int(q + 2)
            } else {
                int(q + 1)
            }
        })
        .collect();
    let e = Ellipsoid::finite(params)?;
    let ratio = ratio_ellipsoid(&e, k)?;
    debug_assert_eq!(ratio.nth_power(), &ellipsoid_max_power(n, k)?);
    Ok((e, ratio))
}

/// Outcome of the exhaustive search over `E(p/q, 1)`.
#[derive(Clone, Debug, Serialize)]
pub struct GlobalSearchReport {
    pub k: usize,
    pub denom_bound: u64,
    pub grid_points: usize,
    #[serde(with = "serde_rational")]
    pub max_power: Rational,
    /// Every grid value of `a1/a2` attaining the maximum, ascending.
    #[serde(serialize_with = "crate::optimize::serialize_rationals")]
    pub argmax: Vec<Rational>,
    #[serde(with = "serde_rational")]
    pub predicted_power: Rational,
    #[serde(with = "serde_rational")]
    pub predicted_argmax: Rational,
    pub holds: bool,
}

/// Reduced fractions in `(0, 1]` with denominator at most `bound`, ascending.
pub fn unit_interval_grid(bound: u64) -> Vec<Rational> {
    let mut out: Vec<Rational> = (1..=bound)
        .flat_map(|q| {
            (1..=q)
                .filter(move |p| p.gcd(&q) == 1)
                .map(move |p| frac(p, q))
        })
        .collect();
    out.sort();
    out
}

/// Grid search for the maximum of `c_k(E(x, 1))^2 / x` over rational
/// `x = a1/a2` in `(0, 1]`, compared against the closed form.
pub fn verify_global_ellipsoid_max(
    n: usize,
    k: usize,
    denom_bound: u64,
) -> Result<GlobalSearchReport> {
    if n != 2 {
        return Err(Error::Unsupported(format!(
            "ellipsoid grid search is only implemented for n = 2, got n = {n}"
        )));
    }
    if denom_bound < 2 {
        return Err(domain("denominator bound must be at least 2"));
    }
    if k < 1 {
        return Err(domain("capacity index k must be >= 1"));
    }
    let grid = unit_interval_grid(denom_bound);
    let powers: Vec<Rational> = grid
        .par_iter()
        .map(|x| {
            let e = Ellipsoid::finite(vec![x.clone(), Rational::one()])?;
            Ok(ratio_ellipsoid(&e, k)?.nth_power().clone())
        })
        .collect::<Result<_>>()?;
    let max_power = powers.iter().max().cloned().unwrap_or_else(Rational::zero);
    let argmax: Vec<Rational> = grid
        .iter()
        .zip(&powers)
        .filter(|(_, p)| **p == max_power)
        .map(|(x, _)| x.clone())
        .collect();
    let (a, b) = ceil_div_two(k)?;
    let predicted_power = ellipsoid_max_power(2, k)?;
    let predicted_argmax = frac(a as u64, b as u64);
    let holds = max_power == predicted_power && argmax == [predicted_argmax.clone()];
    Ok(GlobalSearchReport {
        k,
        denom_bound,
        grid_points: grid.len(),
        max_power,
        argmax,
        predicted_power,
        predicted_argmax,
        holds,
    })
}

pub fn default_eps() -> Vec<Rational> {
    vec![frac(1, 10), frac(1, 100)]
}

/// `+e_j, -e_j` for every `j`, then `+(e_j - e_h), -(e_j - e_h)` for `j < h`.
pub fn default_directions(n: usize) -> Vec<Vec<i64>> {
    let unit = |j: usize| (0..n).map(|i| i64::from(i == j)).collect::<Vec<_>>();
    let mut out = Vec::new();
    for j in 0..n {
        out.push(unit(j));
        out.push(unit(j).iter().map(|x| -x).collect());
    }
    for j in 0..n {
        for h in j + 1..n {
            let d: Vec<i64> = (0..n)
                .map(|i| i64::from(i == j) - i64::from(i == h))
                .collect();
            let neg = d.iter().map(|x| -x).collect();
            out.push(d);
            out.push(neg);
        }
    }
    out
}

/// Samples `E(a + eps d)` around a rational ellipsoid and looks for a strictly
/// larger ratio. `ConfirmedMax` only means no sampled perturbation beat `E`.
///
/// Epsilons are tried from largest to smallest and, for each, directions in
/// the given order; the first improvement is reported. Perturbations that make
/// a parameter nonpositive are skipped.
pub fn verify_local_ellipsoid_max(
    e: &Ellipsoid,
    k: usize,
    eps_list: &[Rational],
    directions: &[Vec<i64>],
) -> Result<MaximizerReport> {
    let params = e.finite_params().ok_or(Error::InfiniteVolume)?;
    if eps_list.iter().any(|x| !x.is_positive()) {
        return Err(domain("perturbation sizes must be positive"));
    }
    for d in directions {
        if d.len() != params.len() || d.iter().all(|&x| x == 0) {
            return Err(domain("directions must be nonzero and match the dimension"));
        }
    }
    let base = ratio_ellipsoid(e, k)?;
    let mut eps_sorted = eps_list.to_vec();
    eps_sorted.sort_by(|a, b| b.cmp(a));

    let mut witness = None;
    'search: for eps in &eps_sorted {
        for d in directions {
            let moved: Vec<Rational> = params
                .iter()
                .zip(d)
                .map(|(a, &dj)| a + eps * int(dj))
                .collect();
            if moved.iter().any(|a| !a.is_positive()) {
                continue;
            }
            let candidate = Ellipsoid::finite(moved)?;
            let ratio = ratio_ellipsoid(&candidate, k)?;
            if ratio.nth_power() > base.nth_power() {
                witness = Some(Witness {
                    candidate: Candidate::Ellipsoid(candidate),
                    ratio,
                    eps: Some(eps.clone()),
                    direction: Some(d.clone()),
                });
                break 'search;
            }
        }
    }
    Ok(MaximizerReport {
        candidate: Candidate::Ellipsoid(e.clone()),
        k,
        ratio: base,
        verdict: if witness.is_some() {
            Verdict::WitnessFound
        } else {
            Verdict::ConfirmedMax
        },
        witness,
    })
}

/// Smallest `kappa >= 2` such that the unit polydisk `P(1, ..., 1)` has a
/// capacity ratio at least that of the best ellipsoid for every `k >= kappa`.
///
/// The polydisk power is `k^n / n!`. The ellipsoid power is at most
/// `((k + 2n) / n)^n`, so once `k^n n^n >= n! (k + 2n)^n` holds it holds for
/// all larger `k` and the scan can stop.
pub fn kappa(n: usize) -> Result<usize> {
    if n < 1 {
        return Err(domain("kappa needs n >= 1"));
    }
    let factorial = (1..=n).fold(Rational::one(), |acc, i| acc * int(i));
    let mut last_failure = 1;
    let mut k = 1;
    loop {
        let polydisk = pow(&int(k), n) / &factorial;
        if polydisk < ellipsoid_max_power(n, k)? {
            last_failure = k;
        }
        let safe = pow(&int(k * n), n) >= &factorial * pow(&int(k + 2 * n), n);
        if safe {
            return Ok((last_failure + 1).max(2));
        }
        k += 1;
    }
}
