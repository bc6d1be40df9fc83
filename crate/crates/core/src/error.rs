use alloc::boxed::Box;
use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("memory slot {0} has not been initialised")]
    UninitializedSlot(usize),
    #[error("memory slot {index} out of range (memory size {size})")]
    SlotOutOfRange { index: usize, size: usize },
    #[error("heuristic {index} out of range ({count} heuristics)")]
    HeuristicOutOfRange { index: usize, count: usize },
    #[error("heuristic {heuristic} takes {expected} source solution(s), called with {found}")]
    WrongArity {
        heuristic: usize,
        expected: u8,
        found: u8,
    },
    #[error("no instance loaded")]
    NoInstanceLoaded,
    #[error("run budget is empty")]
    BudgetEmpty,
    #[error("wall-clock budget requires a clock")]
    MissingClock,
    #[error("{name} must lie in [0, 1], got {value}")]
    ParameterOutOfRange { name: &'static str, value: f64 },
    #[error("domain does not support this algorithm: {0}")]
    UnsupportedDomain(String),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("rank table cell missing for instance {instance}, algorithm {algorithm}")]
    MissingCell { instance: String, algorithm: String },
    #[error("no results for cell")]
    EmptyCell,
    #[error("{algorithm} on {domain}/{instance} failed after {evaluations} evaluations: {source}")]
    RunFailed {
        algorithm: String,
        domain: String,
        instance: String,
        evaluations: u64,
        source: Box<Error>,
    },
}
