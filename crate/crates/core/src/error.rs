use thiserror::Error;

/// Errors raised by the calculator.
///
/// Variants fall into three groups that the CLI maps onto exit codes:
/// hypothesis failures on user input, internal consistency failures, and
/// plain argument errors.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("field degree {degree} exceeds the supported maximum {max}")]
    FieldTooLarge { degree: u32, max: u32 },

    #[error("no primitive {n}-th root of unity exists in characteristic 3")]
    WildRootOfUnity { n: u32 },

    #[error("element of order {order} is wild; its age is undefined")]
    WildElement { order: u64 },

    #[error("element is not diagonalizable over the splitting field")]
    NotDiagonalizable,

    #[error("generator has determinant different from 1")]
    NotSpecialLinear,

    #[error("generators are defined over different fields")]
    FieldMismatch,

    #[error("group closure exceeded the cap of {cap} elements")]
    ClosureTooLarge { cap: usize },

    #[error("element is not a member of the group")]
    NotInGroup,

    #[error("{0} is not a prime different from 3")]
    BadPrime(u32),

    #[error("q-1 \u{2209} {modulus}\u{2124} (q = {q})")]
    Divisibility { q: u32, modulus: u32 },

    #[error("no e with e\u{b2}+e+1\u{2261}0 mod {l}")]
    NoTwist { l: u32 },

    #[error("group contains a pseudo-reflection")]
    Smallness,

    #[error("group has order {actual}, expected {expected}")]
    UnexpectedOrder { expected: usize, actual: usize },

    #[error("unsupported family: {0}")]
    UnsupportedFamily(String),

    #[error("stratum sum is not a polynomial (residual denominator {denominator})")]
    NonPolynomialResult { denominator: String },

    #[error("progression stratum {label} does not converge (weighted slope {slope})")]
    DivergentSeries { label: String, slope: i64 },

    #[error("v-value {0} is not an integer and cannot be used as an exponent of q")]
    FractionalExponent(String),

    #[error("coefficient {0} is not an integer")]
    NonIntegerCoefficient(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("enumeration of {size} items exceeds the cap {cap}")]
    EnumerationTooLarge { size: u128, cap: u128 },

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// True for failures of user-supplied hypotheses (bad l, wrong q, ...).
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::InvalidArgument(_)
                | Error::FieldTooLarge { .. }
                | Error::WildRootOfUnity { .. }
                | Error::BadPrime(_)
                | Error::Divisibility { .. }
                | Error::NoTwist { .. }
                | Error::UnsupportedFamily(_)
                | Error::EnumerationTooLarge { .. }
                | Error::Domain(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
