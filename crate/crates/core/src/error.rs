use thiserror::Error;

/// Errors raised by the series engine and the normalization pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("weight cap {cap} exceeds the supported maximum {max}")]
    CapTooLarge { cap: u32, max: u32 },

    #[error("dimension {0} is not supported (1..=5)")]
    UnsupportedDimension(usize),

    #[error("substitution slot {slot} has a constant term; composition does not terminate")]
    ConstantSlot { slot: usize },

    #[error("fixed-point iteration is not weight-increasing at weight {weight}")]
    Contraction { weight: u32 },

    #[error("stage `{stage}` degenerate at u-order {order}: {detail}")]
    Degenerate {
        stage: &'static str,
        order: usize,
        detail: String,
    },

    #[error("stage `{stage}` postcondition failed: {detail}")]
    Postcondition { stage: &'static str, detail: String },

    #[error("group element invalid: {0}")]
    NotInGroup(String),

    #[error("point lies on the pole set of the map")]
    Pole,

    #[error("numeric singularity at mu = {mu}: denominator modulus {modulus:e}")]
    Singular { mu: f64, modulus: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
