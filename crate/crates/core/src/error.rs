use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element has negative valuation {0} and does not lie in the valuation ring")]
    NegativeValuation(i64),
    #[error("operation not supported for the {0} backend")]
    UnsupportedBackend(String),
    #[error("curve is singular: discriminant vanishes")]
    SingularCurve,
    #[error("scaling factor u must be nonzero")]
    ZeroScale,
    #[error("coefficient {0} does not lie in the valuation ring")]
    NonIntegral(String),
    #[error("residue root needed outside the represented residue field: {0}")]
    ResidueRootNeeded(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid field spec {0:?}")]
    InvalidFieldSpec(String),
    #[error("unknown component id {0}")]
    UnknownComponent(u32),
    #[error("inconsistent marking: {0}")]
    InconsistentMarking(String),
    #[error("degree {d} is not prime to the residue characteristic {p}")]
    NotCoprime { d: u64, p: u64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error{}: {msg}", line.map(|l| format!(" at line {l}")).unwrap_or_default())]
    Parse { line: Option<usize>, msg: String },
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

impl Error {
    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse { line: None, msg: msg.into() }
    }

    pub(crate) fn at_line(self, line: usize) -> Self {
        match self {
            Error::Parse { msg, .. } => Error::Parse { line: Some(line), msg },
            other => Error::Parse { line: Some(line), msg: other.to_string() },
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
