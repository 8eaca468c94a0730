use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("non-nilpotent exponent: series has a nonzero constant term")]
    NonNilpotentExponent,
    #[error("series logarithm needs constant term 1")]
    LogOfNonUnit,
    #[error("series constant term is not invertible")]
    NonInvertibleSeries,
    #[error("division by ε^{0} of a series with a nonzero low-order term")]
    EpsDivision(usize),
    #[error("window underflow: Λ^{requested} outside complete window [{lo}, {hi}]")]
    WindowUnderflow { requested: String, lo: String, hi: String },
    #[error("empty operator window after product")]
    EmptyWindow,
    #[error("evenness violated at ε^{0}")]
    EvennessViolated(usize),
    #[error("flow route disagreement at ε^{0}")]
    FlowRouteDisagreement(usize),
    #[error("missing jet value for order {0}")]
    MissingJet(u32),
    #[error("e^{{{0} u}} cannot be evaluated in the target ring")]
    UnsupportedExponential(String),
    #[error("{0} is not in the index set")]
    NotInIndexSet(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("ansatz violated at ε^{order}: {detail}")]
    AnsatzViolated { order: usize, detail: String },
    #[error("insufficient σ-separation: rank {rank} < {unknowns} after {pairs} pairs")]
    InsufficientSeparation { rank: usize, unknowns: usize, pairs: usize },
    #[error("ansatz mismatch: surplus rows are inconsistent")]
    AnsatzMismatch,
    #[error("inconsistent linear system: {0}")]
    Inconsistent(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("formula defined only for g >= 2, got g = {0}")]
    GenusTooSmall(usize),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
