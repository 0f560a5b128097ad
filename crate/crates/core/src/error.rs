use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed text input. `position` is a byte offset into `input`.
    #[error("syntax error at position {position} in {input:?}: {message}")]
    Syntax {
        input: String,
        position: usize,
        message: String,
    },

    #[error("non-integer coefficient at position {position} in {input:?}")]
    NonIntegerCoefficient { input: String, position: usize },

    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,

    /// Zero is excluded from every height domain.
    #[error("zero is not an element of the multiplicative group")]
    ZeroElement,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{0} is not prime")]
    NotPrime(String),

    #[error("trial division limit reached while factoring {0}")]
    FactorizationLimit(String),

    #[error("polynomial is not squarefree")]
    NotSquarefree,

    #[error("precision ceiling of {bits} bits reached before certification")]
    PrecisionExceeded { bits: u64 },

    #[error("height axiom violated ({axiom}) at element {element}")]
    HeightAxiom { axiom: &'static str, element: String },

    #[error("group order {order} exceeds the cap of {cap}")]
    GroupTooLarge { order: usize, cap: usize },

    #[error("elements from incompatible ambient groups: {0}")]
    AmbientMismatch(String),

    #[error("no factorization of the target within {max_length} factors")]
    NoFactorization { max_length: usize },

    #[error("every candidate in the search box has height at most 1 + tol")]
    EmptySearch,

    #[error("invariant violation: {0}")]
    InvariantViolation(String),
}

impl Error {
    pub(crate) fn syntax(input: &str, position: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            input: input.to_string(),
            position,
            message: message.into(),
        }
    }

    /// Input errors are the caller's fault: bad text, out-of-domain values,
    /// violated axioms.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Syntax { .. }
                | Error::NonIntegerCoefficient { .. }
                | Error::ZeroPolynomial
                | Error::ZeroElement
                | Error::InvalidArgument(_)
                | Error::NotPrime(_)
                | Error::NotSquarefree
                | Error::HeightAxiom { .. }
                | Error::GroupTooLarge { .. }
                | Error::AmbientMismatch(_)
                | Error::FactorizationLimit(_)
        )
    }
}
