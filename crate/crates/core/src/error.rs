use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index {0} out of range 1..=7")]
    IndexOutOfRange(usize),
    #[error("operation requires characteristic different from 2")]
    CharacteristicTwo,
    #[error("coefficient field has no square root of -1")]
    NoSqrtNegOne,
    #[error("argument has a nonzero real part")]
    NonzeroRealPart,
    #[error("argument must be nonzero")]
    ZeroArgument,
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("unsupported degree {0}")]
    UnsupportedDegree(usize),
    #[error("relations share the leading word {0}")]
    RuleConflict(String),
    #[error("leading coefficient of {0} is not invertible")]
    NonInvertibleLead(String),
    #[error("degree cap {cap} exceeded (degree {degree})")]
    DegreeCap { cap: usize, degree: usize },
    #[error("constant term of the denominator is not invertible")]
    NonInvertibleConstant,
    #[error("matrix sizes do not match: {0}")]
    SizeMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("prime {0} is not supported")]
    UnsupportedPrime(u64),
    #[error("non-integral value: {0}")]
    NonIntegral(String),
    #[error("check failed: {0}")]
    CheckFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
