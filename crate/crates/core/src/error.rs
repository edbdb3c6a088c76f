use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero is not an element of the multiplicative group")]
    ZeroInput,
    #[error("box does not isolate exactly one nonzero root: {0}")]
    NotIsolating(String),
    #[error("the isolated root is zero")]
    ZeroRoot,
    #[error("precision exhausted at {0} bits")]
    PrecisionExhausted(u64),
    #[error("degenerate field generator: {0}")]
    DegenerateField(String),
    #[error("generator {0} is torsion")]
    TorsionGenerator(usize),
    #[error("generators are dependent: relation {0:?}")]
    DependentGenerators(Vec<i64>),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("missing constant: {0}")]
    MissingConstant(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
