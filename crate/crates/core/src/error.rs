use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("computation fault: {0}")]
    ComputeFault(String),

    #[error("unknown preset `{name}`; valid presets: {}", valid.join(", "))]
    UnknownPreset { name: String, valid: Vec<String> },

    #[error("unknown parameter `{name}`; valid parameters: {}", valid.join(", "))]
    UnknownParameter { name: String, valid: Vec<String> },

    #[error("elasticity undefined: reference risk is zero")]
    UndefinedElasticity,

    #[error("max_rate {max_rate} is below the peak hazard {peak} on the horizon")]
    MaxRateTooLow { max_rate: f64, peak: f64 },

    #[error("preset configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
