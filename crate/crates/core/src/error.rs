use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("lex error at column {col}: {msg}")]
    Lex { col: usize, msg: String },
    #[error("syntax error at column {col}: {msg}")]
    Syntax { col: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("exponent {0} exceeds 2^31-1")]
    ExponentOverflow(String),
    #[error("empty input")]
    EmptyInput,
    #[error("invalid ring declaration: {0}")]
    BadRing(String),
    #[error("missing `ring` header on line 1")]
    MissingRingHeader,
    #[error("line {line}: {source}")]
    Parse {
        line: usize,
        #[source]
        source: Box<Error>,
    },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("monomial orders differ")]
    OrderMismatch,
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("order is not an elimination order for the first {0} variables")]
    BadOrder(usize),
    #[error("ideal is not monomial")]
    NotMonomial,
    #[error("ideal is the unit ideal")]
    UnitIdeal,
    #[error("ideal is zero")]
    ZeroIdeal,
    #[error("generators are not homogeneous")]
    NotHomogeneous,
    #[error("beta not attained up to degree {0}")]
    NeverAttained(u32),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("no witness known for {config} at m={m}")]
    NoWitnessKnown { config: String, m: u32 },
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("malformed incidence configuration: {0}")]
    MalformedConfig(String),
    #[error("missing alpha value for m={0}")]
    MissingAlpha(u32),
}

impl Error {
    pub(crate) fn at_line(self, line: usize) -> Self {
        Error::Parse {
            line,
            source: Box::new(self),
        }
    }
}
