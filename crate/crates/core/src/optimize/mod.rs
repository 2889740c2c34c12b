//! Maximizers of the capacity ratio and the checks that verify them.
//!
//! Every check here is exact: ratios are compared through their rational
//! n-th powers, and sampling grids consist of rationals only.

pub mod concave;
pub mod ellipsoids;
pub mod sweep;
pub mod thresholds;
pub mod two_corner;

use serde::{Serialize, Serializer};

use crate::ellipsoid::Ellipsoid;
use crate::exact::{format_rational, Rational};
use crate::ratio::RatioValue;
use crate::toric::ToricProfile;

pub use concave::{
    random_concave_profile, tangent_ellipsoid, verify_concave_max, ConcaveReport, TangentCheck,
};
pub use ellipsoids::{
    default_directions, default_eps, ellipsoid_max_power, global_ellipsoid_max, kappa,
    unit_interval_grid, verify_global_ellipsoid_max, verify_local_ellipsoid_max,
    GlobalSearchReport,
};
pub use sweep::{verify_convex_toric_max, ConvexSweepReport, EqualityLocus, GridSpec, SweepMode};
pub use thresholds::{
    cover_check, sufficient_conditions, thresholds, CoverReport, SufficientCondition, Thresholds,
};
pub use two_corner::{RatioIdentity, TwoCornerFamily};

/// A domain whose ratio is being examined.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Candidate {
    Ellipsoid(Ellipsoid),
    Profile(ToricProfile),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    ConfirmedMax,
    WitnessFound,
}

/// A nearby domain with a strictly larger ratio.
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub candidate: Candidate,
    pub ratio: RatioValue,
    #[serde(
        serialize_with = "serialize_opt_rational",
        skip_serializing_if = "Option::is_none"
    )]
    pub eps: Option<Rational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub direction: Option<Vec<i64>>,
}

/// `verdict == WitnessFound` exactly when `witness` is present, and then the
/// witness ratio is strictly larger.
#[derive(Clone, Debug, Serialize)]
pub struct MaximizerReport {
    pub candidate: Candidate,
    pub k: usize,
    pub ratio: RatioValue,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

pub(crate) fn serialize_rationals<S: Serializer>(
    values: &[Rational],
    serializer: S,
) -> Result<S::Ok, S::Error> {
    serializer.collect_seq(values.iter().map(format_rational))
}

fn serialize_opt_rational<S: Serializer>(
    value: &Option<Rational>,
    serializer: S,
) -> Result<S::Ok, S::Error> {
    match value {
        Some(v) => serializer.serialize_str(&format_rational(v)),
        None => serializer.serialize_none(),
    }
}
