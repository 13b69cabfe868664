use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported algebra kind `{0}`")]
    UnsupportedKind(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("operands belong to different algebras (`{left}` vs `{right}`)")]
    SpecMismatch { left: String, right: String },

    #[error("element has zero norm and is not invertible")]
    ZeroNorm,

    #[error("element does not lie in the hypercomplex subspace M")]
    NotInSubspace,

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("polynomial depends on x_0; CK-extension needs data on x_0 = 0")]
    DependsOnX0,

    #[error("evaluation at the singular point 0")]
    SingularPoint,

    #[error("radial functions carry different factors of pi ({0} vs {1})")]
    PiPowerMismatch(i32, i32),

    #[error("invalid quadrature rule: {0}")]
    InvalidRule(String),

    #[error("accuracy guard violated: {0}")]
    Guard(String),

    #[error("missing derivative for multi-index {0:?}")]
    MissingDerivative(Vec<u32>),

    #[error("evaluator failed at node {node}: {reason}")]
    Evaluator { node: usize, reason: String },

    #[error("degree cap {cap} exceeds the maximum of {max}")]
    DegreeTooLarge { cap: u32, max: u32 },

    #[error("invalid algebra spec: {0}")]
    InvalidSpec(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
