//! Ellipsoids `E(a_1, ..., a_n)` and their capacity spectrum.
//!
//! Every symplectic k-capacity takes the same value on an ellipsoid: the k-th
//! term of the nondecreasing sequence of positive multiples `m * a_j`, where a
//! value attained by several pairs `(j, m)` is repeated once per pair.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::exact::{int, rational_lcm, serde_rational, ExtRational, Rational};

/// Parameters `(a_1, ..., a_n)` of a (possibly cylindrical) ellipsoid.
///
/// Entries are positive and at least one is finite. Order is kept as given;
/// capacities do not depend on it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<ExtRational>", into = "Vec<ExtRational>")]
pub struct Ellipsoid {
    params: Vec<ExtRational>,
}

impl TryFrom<Vec<ExtRational>> for Ellipsoid {
    type Error = Error;

    fn try_from(params: Vec<ExtRational>) -> Result<Self> {
        Ellipsoid::new(params)
    }
}

impl From<Ellipsoid> for Vec<ExtRational> {
    fn from(e: Ellipsoid) -> Self {
        e.params
    }
}

/// One term of the capacity spectrum: `value = multiplier * a_{source_index}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    #[serde(with = "serde_rational")]
    pub value: Rational,
    /// 1-based index of the generating parameter.
    pub source_index: usize,
    pub multiplier: u64,
}

impl Ellipsoid {
    pub fn new(params: Vec<ExtRational>) -> Result<Self> {
        if params.is_empty() {
            return Err(domain("an ellipsoid needs at least one parameter"));
        }
        for p in &params {
            if let ExtRational::Finite(r) = p {
                if !r.is_positive() {
                    return Err(domain(format!(
                        "ellipsoid parameters must be positive, got {r}"
                    )));
                }
            }
        }
        if !params.iter().any(ExtRational::is_finite) {
            return Err(domain("at least one ellipsoid parameter must be finite"));
        }
        Ok(Ellipsoid { params })
    }

    /// An ellipsoid with only finite parameters.
    pub fn finite(params: Vec<Rational>) -> Result<Self> {
        Ellipsoid::new(params.into_iter().map(ExtRational::Finite).collect())
    }

    /// Shorthand for integer parameters.
    pub fn from_integers(params: &[i64]) -> Result<Self> {
        Ellipsoid::finite(params.iter().map(|&a| int(a)).collect())
    }

    pub fn params(&self) -> &[ExtRational] {
        &self.params
    }

    /// `n`, for an ellipsoid in complex dimension `n` (real dimension `2n`).
    pub fn dim_half(&self) -> usize {
        self.params.len()
    }

    /// The finite parameters, or `None` if some entry is infinite.
    pub fn finite_params(&self) -> Option<Vec<Rational>> {
        self.params.iter().map(|p| p.finite().cloned()).collect()
    }

    /// Lazy n-way merge over the multiples of the finite parameters.
    pub fn spectrum_iter(&self) -> SpectrumIter {
        let heap = self
            .params
            .iter()
            .enumerate()
            .filter_map(|(j, p)| p.finite().map(|a| Reverse((a.clone(), j + 1, 1u64))))
            .collect();
        let bases = self.params.iter().map(|p| p.finite().cloned()).collect();
        SpectrumIter { heap, bases }
    }

    /// The first `count` spectrum entries.
    pub fn spectrum(&self, count: usize) -> Vec<SpectrumEntry> {
        self.spectrum_iter().take(count).collect()
    }

    /// `c_k(E)`, for any symplectic k-capacity.
    pub fn capacity(&self, k: usize) -> Result<Rational> {
        if k < 1 {
            return Err(domain("capacity index k must be >= 1"));
        }
        Ok(self
            .spectrum_iter()
            .nth(k - 1)
            .expect("spectrum of an ellipsoid with a finite parameter is infinite")
            .value)
    }

    /// True when every parameter is finite; then all ratios are rational.
    pub fn is_rational(&self) -> bool {
        self.params.iter().all(ExtRational::is_finite)
    }

    /// `tau(E)`, the rational least common multiple of the parameters.
    pub fn common_period(&self) -> Result<Rational> {
        let params = self.finite_params().ok_or(Error::NoCommonPeriod)?;
        rational_lcm(&params)
    }

    /// Smallest `k` with `c_k(E) = m * tau(E)`.
    ///
    /// Every parameter divides `m * tau`, so the multiples strictly below it
    /// number `sum_j (m tau / a_j - 1)` and `k_m` is one more.
    pub fn k_m(&self, m: usize) -> Result<usize> {
        if m < 1 {
            return Err(domain("k_m needs m >= 1"));
        }
        let params = self.finite_params().ok_or(Error::NoCommonPeriod)?;
        let target = rational_lcm(&params)? * int(m);
        let mut below = 0usize;
        for a in &params {
            let q = &target / a;
            debug_assert!(q.is_integer());
            let q: usize =
                usize::try_from(q.to_integer()).map_err(|_| domain("k_m index overflows usize"))?;
            below += q - 1;
        }
        Ok(below + 1)
    }

    /// `[k_1(E), ..., k_{max_m}(E)]`.
    pub fn k_set(&self, max_m: usize) -> Result<Vec<usize>> {
        (1..=max_m).map(|m| self.k_m(m)).collect()
    }

    /// Whether `k` belongs to `K(E) = { k_m(E) : m >= 1 }`.
    pub fn in_k_set(&self, k: usize) -> Result<bool> {
        let mut m = 1;
        loop {
            let km = self.k_m(m)?;
            if km >= k {
                return Ok(km == k);
            }
            m += 1;
        }
    }

    /// `vol(E) = a_1 ... a_n`, with the volume form `omega^n`.
    pub fn volume(&self) -> Result<Rational> {
        let params = self.finite_params().ok_or(Error::InfiniteVolume)?;
        Ok(params.iter().fold(Rational::one(), |acc, a| acc * a))
    }

    /// Multiplies every finite parameter by `factor`.
    pub fn scaled(&self, factor: &Rational) -> Result<Self> {
        if !factor.is_positive() {
            return Err(domain("scale factor must be positive"));
        }
        Ok(Ellipsoid {
            params: self
                .params
                .iter()
                .map(|p| match p {
                    ExtRational::Finite(a) => ExtRational::Finite(a * factor),
                    ExtRational::Infinity => ExtRational::Infinity,
                })
                .collect(),
        })
    }
}

/// Infinite iterator over the capacity spectrum. See [`Ellipsoid::spectrum_iter`].
#[derive(Clone, Debug)]
pub struct SpectrumIter {
    heap: BinaryHeap<Reverse<(Rational, usize, u64)>>,
    bases: Vec<Option<Rational>>,
}

impl Iterator for SpectrumIter {
    type Item = SpectrumEntry;

    fn next(&mut self) -> Option<SpectrumEntry> {
        let Reverse((value, j, m)) = self.heap.pop()?;
        let base = self.bases[j - 1]
            .as_ref()
            .expect("only finite parameters are queued");
        self.heap.push(Reverse((base * int(m + 1), j, m + 1)));
        Some(SpectrumEntry {
            value,
            source_index: j,
            multiplier: m,
        })
    }
}
