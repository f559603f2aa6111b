use thiserror::Error;

/// Errors across the library. Parse errors carry the 1-based input line.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: malformed line: {what}")]
    Malformed { line: usize, what: String },
    #[error("line {line}: vertex id out of range")]
    VertexRange { line: usize },
    #[error("line {line}: self-loop")]
    SelfLoop { line: usize },
    #[error("line {line}: capacity must be at least 1")]
    BadCapacity { line: usize },
    #[error("line {line}: graph must have at least one vertex")]
    EmptyGraph { line: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("contraction target {target} out of range 2..={n}")]
    TargetRange { target: usize, n: usize },
    #[error("edge count {m} exceeds key range [1, {cap}]")]
    KeyRange { m: usize, cap: u64 },
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("conflicting writes to shared key {0}")]
    WriteConflict(String),
    #[error("task used {used} words, budget is {budget}")]
    BudgetExceeded { used: usize, budget: usize },
    #[error("input too large for oracle: {n} > {cap}")]
    OracleScale { n: usize, cap: usize },
    #[error("interval [{a}, {b}] outside sweep range [0, {range}]")]
    IntervalRange { a: u64, b: u64, range: u64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
