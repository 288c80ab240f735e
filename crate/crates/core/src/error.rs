use thiserror::Error;

/// Errors shared by every layer of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The modulus failed validation as an odd prime.
    #[error("modulus is not an odd prime")]
    CompositeModulus,
    /// The input has no square root modulo p.
    #[error("value is a quadratic non-residue")]
    NonResidue,
    /// A solver was asked to run at a 2-adic valuation it does not support.
    #[error("unsupported two-adic valuation of p - 1 for this solver")]
    WrongValuation,
    /// A probabilistic loop gave up after the configured trial cap.
    #[error("retry limit of {0} trials exceeded")]
    RetryLimitExceeded(u32),
    /// The exhaustive root scan refuses moduli above its bound.
    #[error("modulus too large for exhaustive scan")]
    ModulusTooLarge,
    /// Two ring elements belong to different quotient rings.
    #[error("elements belong to different rings")]
    RingMismatch,
    /// Inversion of zero or of a zero divisor.
    #[error("division by zero or by a zero divisor")]
    DivisionByZero,
    /// A group-law result landed on the singular point.
    #[error("group operation reached the singular point")]
    SingularPointReached,
    /// A curve parameter or operation argument is outside its domain.
    #[error("parameter out of domain")]
    BadParameter,
    /// Root extraction was handed a point that is not 4-torsion over x = a.
    #[error("point is not a 4-torsion point with x-coordinate a")]
    NotFourTorsion,
    /// Discrete-log target is outside the subgroup generated by the base.
    #[error("element lies outside the subgroup")]
    NotInSubgroup,
    /// The coordinate shift x -> x - 2a/3 needs p > 3.
    #[error("characteristic 3 is not supported")]
    BadCharacteristic,
    /// Prime generation exhausted its candidate budget.
    #[error("prime generation failed after {0} candidates")]
    GenerationFailed(u32),
    /// A summary was requested over an empty report list.
    #[error("empty input")]
    EmptyInput,
    /// An experiment plan failed validation.
    #[error("invalid experiment plan: {0}")]
    InvalidPlan(String),
    /// Serialization or deserialization of a report failed.
    #[error("serialization failure: {0}")]
    Serialization(String),
    /// A condition the algorithms guarantee was observed to fail.
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
