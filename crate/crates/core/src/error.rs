use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("monomial has {found} exponents, ring has {expected} variables")]
    LengthMismatch { expected: usize, found: usize },

    #[error("a generator of degree 0 makes the ideal the unit ideal")]
    UnitIdeal,

    #[error("m(u) is undefined for the constant monomial")]
    ConstantMonomial,

    #[error("ring must have at least one variable")]
    NoVariables,

    #[error("{0}")]
    InvalidArgument(String),

    #[error("ideal is not strongly stable: {0}")]
    NotStronglyStable(String),

    #[error("{generators} generators exceeds the cap of {cap}")]
    TooLarge { generators: usize, cap: usize },

    #[error("too many variables for exhaustive vertex cover: {0} > 16")]
    TooManyVariables(usize),

    #[error("invalid Betti table: {0}")]
    InvalidTable(String),

    #[error("shift sequence {0:?} is not strictly increasing")]
    NotStrictlyIncreasing(Vec<u32>),

    #[error("Hilbert numerator is inconsistent with codimension {codim}: {reason}")]
    CodimInconsistent { codim: usize, reason: String },

    #[error("projective dimension {projdim} differs from codimension {codim}: non-CM shape")]
    NotCohenMacaulayShape { projdim: usize, codim: usize },

    #[error("inconsistent assumptions: {0}")]
    InconsistentAssumptions(String),

    #[error("hypothesis not satisfied: {0}")]
    HypothesisFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
