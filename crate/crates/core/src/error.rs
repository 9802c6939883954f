use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown node `{0}`")]
    UnknownNode(String),

    #[error("duplicate node declaration `{0}`")]
    DuplicateNode(String),

    #[error("edge ({src}, {dst}) references an undeclared node")]
    DanglingEdge { src: String, dst: String },

    #[error("graph is empty")]
    EmptyGraph,

    #[error("graph is not connected")]
    Disconnected,

    #[error("invalid quantifier on edge ({src}, {dst}): {reason}")]
    InvalidQuantifier {
        src: String,
        dst: String,
        reason: String,
    },

    #[error("line {line}: unsupported quantifier `{token}` ({semantics} is not supported; only numeric `>=p` is)")]
    UnsupportedQuantifier {
        line: usize,
        token: String,
        semantics: &'static str,
    },

    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("{0} does not support quantified patterns")]
    QuantifiedPattern(&'static str),

    #[error("instance too large for {what}: {detail}")]
    Oversize { what: &'static str, detail: String },

    #[error("cannot expand quantifier on edge ({src}, {dst}): {reason}")]
    UnsupportedTransformation {
        src: String,
        dst: String,
        reason: String,
    },

    #[error("invalid benchmark config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
