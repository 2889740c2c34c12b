use thiserror::Error;

/// Errors raised by the calculators and verifiers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A rational or extended rational could not be parsed.
    #[error("cannot parse {input:?} as a rational: {reason}")]
    Parse { input: String, reason: String },
    /// A vertex list does not describe a valid toric profile.
    #[error("invalid profile: {0}")]
    InvalidProfile(String),
    /// A concave-only operation received a convex profile or vice versa.
    #[error("operation requires a {expected} profile, got {found}")]
    WrongKind {
        expected: &'static str,
        found: &'static str,
    },
    /// Volume of a domain with an infinite parameter.
    #[error("infinite volume: ellipsoid has an infinite parameter")]
    InfiniteVolume,
    /// Common period requested for an ellipsoid with an infinite parameter.
    #[error("no common period: ellipsoid has an infinite parameter")]
    NoCommonPeriod,
    /// Ratios of different dimensions were compared.
    #[error("cannot compare ratios of dimension {0} and {1}")]
    DimensionMismatch(usize, usize),
    /// The requested configuration is valid but not supported by this verifier.
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
