use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FxrError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// 4·arcsin(√λ·sin(a/2)) is a multiple of π: the half-angle never reaches π/k.
    #[error("degenerate fixed angle {fixed_angle} at lambda {lambda}: no iteration count works")]
    DegenerateAngle { fixed_angle: f64, lambda: f64 },

    #[error("iteration count {k} too small, need k > {k_lower}")]
    IterationCountTooSmall { k: u32, k_lower: f64 },

    #[error("no solution for {0}")]
    Infeasible(String),

    #[error("{0} is not implemented")]
    NotImplemented(String),

    #[error("state of dimension {requested} exceeds cap {cap}")]
    ResourceLimit { requested: u64, cap: u64 },

    #[error("solver failure: {0}")]
    SolverFailure(String),
}

pub type Result<T> = std::result::Result<T, FxrError>;
