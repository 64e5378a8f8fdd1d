use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },

    #[error("unknown identifier `{name}` at position {pos}")]
    UnknownIdentifier { name: String, pos: usize },

    #[error("invalid declaration `{0}`")]
    InvalidDeclaration(String),

    #[error("`{0}` is already declared with a different meaning")]
    ConflictingDeclaration(String),

    #[error("`{0}` is reserved and cannot be declared")]
    ReservedName(String),

    #[error("replacement for `{symbol}` depends on `{coordinate}`, which `{symbol}` does not")]
    DependencyViolation { symbol: String, coordinate: String },

    #[error("parameter `{0}` is not bound")]
    UnboundParameter(String),

    #[error("function symbol `{0}` is not instantiated")]
    ResidualFunction(String),

    #[error("eps must be bound to 1 or -1")]
    InvalidEps,
}
