use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// The group (or algebra) is larger than the configured enumeration cap.
    /// `order` is `None` when the order does not even fit in 128 bits.
    #[error("group order {} exceeds the cap of {cap} elements", .order.map(|o| o.to_string()).unwrap_or_else(|| "(overflow)".into()))]
    CapExceeded { order: Option<u128>, cap: u128 },

    #[error("generator {name} index {index} out of range 1..={max}")]
    IndexOutOfRange {
        name: &'static str,
        index: usize,
        max: usize,
    },

    #[error("operands belong to different groups: {left} vs {right}")]
    ParamsMismatch { left: String, right: String },

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    /// The rewriting step budget was exhausted. This is a defect in the rule
    /// set, never an expected outcome.
    #[error("rewriting did not terminate within {steps} steps on word `{word}`")]
    RewriteBudget { steps: usize, word: String },

    #[error("rule {rule} is unsound: sides evaluate to different elements")]
    UnsoundRule { rule: String },

    #[error("independent routes disagree: {0}")]
    RouteMismatch(String),

    #[error("parameters are not generic: {0}")]
    NonGeneric(String),
}
