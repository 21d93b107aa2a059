use thiserror::Error;

/// Domain-precondition failures shared across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is numerically singular; determinant cannot be renormalized")]
    SingularMatrix,
    #[error("generator is not parabolic")]
    NonParabolic,
    #[error("generators do not commute (no common fixed point)")]
    NonCommuting,
    #[error("second generator lies in the cyclic group of the first")]
    DependentGenerators,
    #[error("parameter must lie in the upper half-plane")]
    LowerHalfPlane,
    #[error("twist offset lies outside the fundamental domain (-m/2, m/2]")]
    OutOfFundamentalDomain,
    #[error("normalized length squared is below 8(2pi)^2")]
    NormalizedLengthTooShort,
    #[error("reciprocal normalized twist has magnitude below 3")]
    TwistTooLarge,
    #[error("input must be positive")]
    NonPositiveInput,
    #[error("cusp list is empty")]
    EmptyCuspList,
    #[error("radius must be nonnegative")]
    NegativeRadius,
    #[error("radius must be positive")]
    NonPositiveRadius,
    #[error("argument lies outside the domain of the function")]
    OutOfRange,
    #[error("envelope trace needs at least 2 steps")]
    TooFewSteps,
    #[error("kappa must exceed 80(2pi)^2")]
    KappaTooSmall,
    #[error("subgroup generator must be an upper-triangular parabolic fixing infinity")]
    NotUpperTriangular,
    #[error("sample set is empty")]
    EmptySamples,
    #[error("expected one sample list per box translate")]
    SampleCountMismatch,
    #[error("box rectangle must have width < 2")]
    BoxTooWide,
    #[error("malformed region file, line {line}: {reason}")]
    RegionFileParse { line: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
