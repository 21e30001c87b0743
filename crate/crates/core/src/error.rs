use thiserror::Error;

/// Errors raised by the operator algebra, the division and refinement
/// routines, the ansatz engine and the session front-end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("context error: {0}")]
    Context(String),

    #[error("context mismatch: {left} vs {right} geometric variables")]
    ContextMismatch { left: usize, right: usize },

    #[error("division by zero")]
    DivisionByZero,

    #[error("domain error: {0}")]
    Domain(String),

    /// The divisor's symbol does not divide the dividend's symbol.
    #[error("division not applicable: {0}")]
    NotApplicable(String),

    /// The outer symbols of the refinement share a nontrivial factor.
    #[error("gcd hypothesis violated: gcd of outer symbols has degree {gcd_degree}")]
    GcdViolation { gcd_degree: u32 },

    /// A remainder is too large for the refinement to apply.
    #[error(
        "order hypothesis violated: ord({remainder}) = {order} is not below ord(S3) = {bound}"
    )]
    OrderHypothesisViolation {
        remainder: &'static str,
        order: i64,
        bound: u32,
    },

    /// The two presented factorizations do not describe the same operator.
    #[error("identity mismatch: {0}")]
    IdentityMismatch(String),

    /// A factor's principal symbol differs from the declared type.
    #[error("symbol mismatch: {0}")]
    SymbolMismatch(String),

    /// A hypothesis-checked computation produced an impossible result.
    #[error("internal contradiction: {0}")]
    InternalContradiction(String),

    #[error("not a normalized hyperbolic operator: {0}")]
    NotNormalizedHyperbolic(String),

    #[error("ansatz error: {0}")]
    Ansatz(String),

    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown name `{0}`")]
    UnknownName(String),

    #[error("command {index}: {source}")]
    Session {
        index: usize,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
