use thiserror::Error;

/// Structured rejection reasons. Every public operation that can refuse its
/// input reports one of these rather than panicking.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("gram matrix entries must be integers")]
    NonIntegralGram,
    #[error("form is degenerate (rank {found} < {rank})")]
    Degenerate { rank: usize, found: usize },
    #[error("wrong signature: found ({pos}, {neg}), need (1, n)")]
    WrongSignature { pos: usize, neg: usize },
    #[error("reference vector has nonpositive self-pairing")]
    AmpleNotPositive,
    #[error("vector is zero")]
    ZeroVector,
    #[error("vector is not integral")]
    NonIntegral,
    #[error("point is not in the open positive cone")]
    NotInteriorPoint,
    #[error("point is not in the closed positive cone")]
    OutsidePositiveCone,
    #[error("vector is not isotropic")]
    NotIsotropic,
    #[error("vector is not primitive")]
    NotPrimitive,
    #[error("horoball scale must be positive")]
    NonPositiveScale,
    #[error("horoball centers coincide up to sign")]
    EqualCenters,
    #[error("disjointness is only decided at unit scale")]
    WrongScale,
    #[error("bisector endpoints are proportional")]
    ProportionalPoints,
    #[error("matrix does not preserve the bilinear form")]
    FormNotPreserved,
    #[error("matrix swaps the two cone components")]
    WrongConeComponent,
    #[error("vector does not pair to zero as required")]
    NotOrthogonal,
    #[error("basepoint has a nontrivial stabilizer (witness word {word})")]
    StabilizerNontrivial { word: String },
    #[error("cone contains a line; only the halfspace form exists")]
    NotPointed,
    #[error("functional has mixed signs on the cone's rays (index {index})")]
    NotSupporting { index: usize },
    #[error("support gram matrix is not negative definite")]
    NotNegativeDefinite,
    #[error("divisor is not a nonnegative combination of the listed curves")]
    NotEffective,
    #[error("class pairs negatively with listed curve {0:?}")]
    NotNefAgainstList(String),
    #[error("fixture declares no fibration")]
    NoFibration,
    #[error("inconsistent input: {0}")]
    Inconsistent(String),
    #[error("linear system has no integral solution")]
    NoIntegralSolution,
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
