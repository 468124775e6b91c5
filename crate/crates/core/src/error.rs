use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ambient variable sets differ")]
    AmbientMismatch,

    #[error("exponent overflow")]
    ExponentOverflow,

    #[error("resource limit `{cap}` exceeded (limit {limit}){}", fmt_context(.context))]
    ResourceLimit {
        cap: &'static str,
        limit: usize,
        context: String,
    },

    #[error("the zero ideal is not allowed here")]
    ZeroIdeal,

    #[error("the unit ideal is not allowed here")]
    UnitIdeal,

    #[error("empty generator set")]
    EmptyIdeal,

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("invalid ordering: {0}")]
    InvalidOrdering(String),

    #[error("certificate is not valid")]
    InvalidCertificate,

    #[error("invalid specification: {0}")]
    InvalidSpec(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("internal consistency error: {0}")]
    Internal(String),
}

fn fmt_context(context: &str) -> String {
    if context.is_empty() {
        String::new()
    } else {
        format!(" at {context}")
    }
}

impl Error {
    pub(crate) fn limit(cap: &'static str, limit: usize) -> Self {
        Error::ResourceLimit {
            cap,
            limit,
            context: String::new(),
        }
    }

    /// Attaches a location (for example `k=4`) to a resource-limit error.
    pub fn with_context(self, ctx: impl Into<String>) -> Self {
        match self {
            Error::ResourceLimit { cap, limit, context } => {
                let ctx = ctx.into();
                let context = if context.is_empty() {
                    ctx
                } else {
                    format!("{ctx}, {context}")
                };
                Error::ResourceLimit { cap, limit, context }
            }
            other => other,
        }
    }

    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
