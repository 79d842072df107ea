use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("type error: {0}")]
    Type(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("`{name}` cannot carry axioms {axioms}: equational constants need type a -> a -> a, found {ty}")]
    AxiomShape {
        name: String,
        axioms: String,
        ty: String,
    },
    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("rule not applicable: {0}")]
    NotApplicable(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
}

impl Error {
    pub(crate) fn ty(msg: impl Into<String>) -> Self {
        Error::Type(msg.into())
    }

    pub(crate) fn not_applicable(msg: impl Into<String>) -> Self {
        Error::NotApplicable(msg.into())
    }
}
