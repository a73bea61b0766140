use thiserror::Error;

/// Errors raised by the algebraic operations and the command-line front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("shape mismatch: {0}")]
    ShapeError(String),
    #[error("assignment is missing a value for {0}")]
    IncompleteAssignment(String),
    #[error("the Wronskian of the given elements is zero")]
    NotFundamental,
    #[error("coefficient has a pole at the base point {0}")]
    PoleAtBasePoint(String),
    #[error("not in the group catalog: {0}")]
    NotInCatalog(String),
    #[error("sample {0} is not a member of the group")]
    NonMemberSample(usize),
    #[error("transform matrix is singular")]
    SingularTransform,
    #[error("the Wronskian vanishes at the chosen point")]
    DegeneratePoint,
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("expression mixes `x` with indexed indeterminates")]
    MixedArity,
}

impl Error {
    /// Stable machine-readable tag used in structured CLI output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::NotApplicable(_) => "NotApplicable",
            Error::ShapeError(_) => "ShapeError",
            Error::IncompleteAssignment(_) => "IncompleteAssignment",
            Error::NotFundamental => "NotFundamental",
            Error::PoleAtBasePoint(_) => "PoleAtBasePoint",
            Error::NotInCatalog(_) => "NotInCatalog",
            Error::NonMemberSample(_) => "NonMemberSample",
            Error::SingularTransform => "SingularTransform",
            Error::DegeneratePoint => "DegeneratePoint",
            Error::Syntax { .. } => "SyntaxError",
            Error::MixedArity => "MixedArity",
        }
    }

    pub fn is_syntax(&self) -> bool {
        matches!(self, Error::Syntax { .. } | Error::MixedArity)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
