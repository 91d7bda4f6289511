use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degenerate frame input")]
    DegenerateFrameInput,
    #[error("trace over degenerate form")]
    DegenerateTrace,
    #[error("metric is degenerate")]
    DegenerateMetric,
    #[error("Gram matrix is not symmetric")]
    NotSymmetric,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("not a Lie subalgebra")]
    NotSubalgebra,
    #[error("not half lightlike: {0}")]
    NotHalfLightlike(String),
    #[error("screen must be non-degenerate")]
    DegenerateScreen,
    #[error("invalid screen: {0}")]
    InvalidScreen(String),
    #[error("screen transversal direction cannot be normalized over the rationals (g(v,v) = {0})")]
    NonRationalUnit(String),
    #[error("not an ascreen RSTHL submanifold: {0}")]
    NotAscreenRsthl(String),
    #[error("frame does not span the ambient space")]
    FrameNotSpanning,
    #[error("relation requires an F₀ ambient structure")]
    RequiresF0,
    #[error("associated connection differs; out of scope")]
    AssociatedConnectionDiffers,
    #[error("minimality verdicts disagree: {0}")]
    EquivalenceViolated(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid instance: {0}")]
    Instance(String),
}
