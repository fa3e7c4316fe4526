//! Library-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("theory axioms violated: {0}")]
    AxiomViolation(String),

    #[error("relation is not a preorder: {0}")]
    NotAPreorder(String),

    #[error("carrier too large: {size} exceeds cap {cap}")]
    CarrierTooLarge { size: usize, cap: usize },

    #[error("D is not downward closed (witness: element {escapee} reachable from {from})")]
    DNotDownwardClosed { from: usize, escapee: usize },

    #[error("window is not downward closed in the tuple theory (witness tuple index {0})")]
    WdcNotDownwardClosed(usize),

    #[error("window set {axis} is not downward closed")]
    SNotDownwardClosed { axis: usize },

    #[error("axis {axis} window must be the full carrier")]
    AxisWindowMismatch { axis: usize },

    #[error("base theory is not deterministic: |{a} x {b}| = {got}, expected 1")]
    BaseNotDeterministic { a: String, b: String, got: usize },

    #[error("map is not certified {0}; pass an explicit certificate or force")]
    UncertifiedInput(String),

    #[error("map is not order preserving (witness: {a} above {b})")]
    NotOrderPreserving { a: String, b: String },

    #[error("window closure mismatch: {0}")]
    WindowClosureMismatch(String),

    #[error("valuation domain closure mismatch: {0}")]
    ClosureMismatch(String),

    #[error("valuation is not a monotone on its domain (witness: {a} above {b})")]
    FNotMonotoneOnDomain { a: String, b: String },

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("domain W is not a chain (witness: {a} and {b} incomparable)")]
    WNotAChain { a: String, b: String },

    #[error("bad parameters: {0}")]
    BadParameters(String),

    #[error("D-image maps for D != free require a theory-backed context")]
    DRequiresTheory,

    #[error("invalid input file: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
