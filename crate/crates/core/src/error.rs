use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("no exact quotient: ({dividend}) / ({divisor})")]
    NonDivisible { dividend: String, divisor: String },

    #[error("negative power of a non-unit: ({0})")]
    NonUnit(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("evaluation point q = 0")]
    ZeroPoint,

    #[error("bad q value {0}: must be real and outside {{0, 1, -1}}")]
    BadQ(String),

    #[error("index {index} out of range {lo}..={hi}")]
    IndexRange { index: i64, lo: i64, hi: i64 },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("graded bracket needs operands of definite grade ({0})")]
    GradeUndefined(String),

    #[error("operands live on different Fock spaces")]
    BasisMismatch,

    #[error("free Hamiltonian requires n = m (got n = {n}, m = {m})")]
    RequiresNEqM { n: usize, m: usize },

    #[error("expected {expected} energies, got {got}")]
    EnergyCount { expected: usize, got: usize },

    #[error("malformed root ({0}, {1})")]
    MalformedRoot(i64, i64),

    #[error("solution space for {0} has dimension {1}")]
    Underdetermined(String, usize),

    #[error("no solution for {0}")]
    Inconsistent(String),

    #[error("syntax error at {pos}: expected {expected}")]
    Syntax { pos: usize, expected: String },

    #[error("{name} takes {expected} argument(s), got {got}")]
    Arity {
        name: String,
        expected: String,
        got: usize,
    },

    #[error("atom {0} is not available in this context")]
    UnresolvedAtom(String),

    #[error("negative power of an operator: {0}")]
    NegativePower(i64),

    #[error("catalog: {0}")]
    Catalog(String),
}

impl Error {
    /// Stable machine-readable code, shared with the C interface.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NonDivisible { .. } => "NON_DIVISIBLE",
            Error::NonUnit(_) => "NON_UNIT",
            Error::DivisionByZero => "DIVISION_BY_ZERO",
            Error::ZeroPoint => "ZERO_POINT",
            Error::BadQ(_) => "BAD_Q",
            Error::IndexRange { .. } => "INDEX_RANGE",
            Error::InvalidParams(_) => "INVALID_PARAMS",
            Error::GradeUndefined(_) => "GRADE_UNDEFINED",
            Error::BasisMismatch => "BASIS_MISMATCH",
            Error::RequiresNEqM { .. } => "REQUIRES_N_EQ_M",
            Error::EnergyCount { .. } => "ENERGY_COUNT",
            Error::MalformedRoot(..) => "MALFORMED_ROOT",
            Error::Underdetermined(..) => "UNDERDETERMINED",
            Error::Inconsistent(_) => "INCONSISTENT",
            Error::Syntax { .. } => "SYNTAX",
            Error::Arity { .. } => "ARITY",
            Error::UnresolvedAtom(_) => "UNRESOLVED_ATOM",
            Error::NegativePower(_) => "NEGATIVE_POWER",
            Error::Catalog(_) => "CATALOG",
        }
    }
}
