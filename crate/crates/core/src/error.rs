use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a supported prime modulus")]
    NotPrime(u32),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("the zero vector has no span")]
    ZeroVector,
    #[error("interval ({0},{0}] is empty; its complement is the whole time axis")]
    EmptyInterval(usize),
    #[error("index {index} outside the time axis of length {n}")]
    TimeIndex { index: usize, n: usize },
    #[error("generator matrix has rank {rank} but {rows} rows")]
    RankDeficient { rank: usize, rows: usize },
    #[error("{span} is not a span of row {row}")]
    InvalidSpan { row: usize, span: String },
    #[error("expected {expected} spans, got {got}")]
    SpanCount { expected: usize, got: usize },
    #[error("code does not have full support: coordinate {0} is identically zero")]
    Support(usize),
    #[error("dual code does not have full support: coordinate {0} is identically zero")]
    DualSupport(usize),
    #[error("enumeration cap exceeded for {what}: needs {needed}, cap {cap}")]
    CapExceeded {
        what: &'static str,
        needed: u64,
        cap: u64,
    },
    #[error("selected rows {0:?} are linearly dependent")]
    DependentRows(Vec<usize>),
    #[error("selection must contain {expected} rows, got {got}")]
    SelectionSize { expected: usize, got: usize },
    #[error("row index {0} out of range")]
    RowIndex(usize),
    #[error("G * H^T is not zero")]
    NotOrthogonal,
    #[error("vertex matrix recursion does not close: N_n != N_0")]
    Closure,
    #[error("coefficient sequence is not a path: mismatch entering time {0}")]
    NotAPath(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("subspace is not contained in the vertex space at time {0}")]
    NotSubspace(usize),
    #[error("not a characteristic pair: {0}")]
    NotCharacteristic(String),
    #[error("parse error: {0}")]
    Parse(String),
}
