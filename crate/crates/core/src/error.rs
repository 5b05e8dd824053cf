use thiserror::Error;

/// Errors raised by the library. Parse errors carry a 1-based line/column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("malformed integer `{0}`")]
    MalformedInteger(String),
    #[error("coefficient `{0}` is not an integer literal")]
    UnboundCoefficient(String),
    #[error("equation is not homogeneous: constant term {0} remains")]
    NonHomogeneous(String),
    #[error("variable `{0}` is declared both free and bound")]
    VariableClash(String),
    #[error("expected a formula with exactly one free variable, found {0}")]
    Arity(usize),
    #[error("dimension mismatch: expected {expected} coordinates, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("subgroups live in different ambient groups")]
    AmbientMismatch,
    #[error("element {0} is not in the subgroup")]
    Membership(String),
    #[error("inclusion fails: {witness} lies in the smaller set but not the larger")]
    Inclusion { witness: String },
    #[error("homomorphism is not well defined: {0}")]
    IllDefinedHom(String),
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("group {0} is not finite")]
    Infinite(String),
    #[error("group {0} is not torsion")]
    NotTorsion(String),
    #[error("parameter subgroup is not pure in the ambient group: {witness}")]
    NotPure { witness: String },
    #[error("parameter map is not injective")]
    NotInjective,
    #[error("invalid order pattern: {0}")]
    InvalidPattern(String),
    #[error("multiplicity {0} is not a finite integer")]
    InfiniteMultiplicity(String),
    #[error("cardinal {0} is finite; an infinite cardinal is required")]
    FiniteCardinal(String),
    #[error("no limit models at {cardinal}: {reason}")]
    Unstable { cardinal: String, reason: String },
    #[error("number {0} is too large for this operation")]
    TooLarge(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
