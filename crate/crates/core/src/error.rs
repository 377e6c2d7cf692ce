use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("arc {arc} is used {count} times (expected exactly 2)")]
    DuplicateArcUse { arc: u32, count: usize },
    #[error("arc successor relation is not a permutation: {0}")]
    BrokenCycle(String),
    #[error("invalid diagram: {0}")]
    Invalid(String),
    #[error("no crossing with index {0}")]
    NoSuchCrossing(usize),
    #[error("linking number undefined through a singular mixed crossing (crossing {0})")]
    SingularMixedCrossing(usize),
    #[error("component keep set is empty")]
    EmptyKeepSet,
    #[error("singular crossing {0} joins a kept and a deleted component")]
    SingularBoundary(usize),
    #[error("index {index} out of range (len {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("bad move site: {0}")]
    BadSite(String),
    #[error("C_n-move with n = {0} is not supported (1..=4)")]
    UnsupportedN(u32),
    #[error("diagram has singular crossings")]
    SingularInput,
    #[error("internal mismatch: {0}")]
    InternalMismatch(String),
    #[error("closed form needs at least two components")]
    SingleComponent,
    #[error("evaluator failed: {0}")]
    EvaluatorFailure(String),
    #[error("sampler could not produce a diagram: {0}")]
    SamplerExhausted(String),
    #[error("truncation order {order} is below m - 1 = {needed}")]
    TruncationTooSmall { order: usize, needed: usize },
    #[error("expected {expected} components, found {found}")]
    WrongComponentCount { expected: usize, found: usize },
    #[error("bad singularity: {0}")]
    BadSingularity(String),
    #[error("constraint violated: {0}")]
    ConstraintViolated(String),
    #[error("unknown corpus entry `{0}`")]
    UnknownName(String),
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),
    #[error("{found} double points exceed the configured bound {bound}")]
    TooManyDoublePoints { found: usize, bound: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
