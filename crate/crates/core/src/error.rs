use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("bad input: {0}")]
    BadInput(String),

    #[error("generator failed: {0}")]
    Internal(String),

    #[error("node budget of {limit} exhausted (incumbent {}, best bound {best_bound})", incumbent.as_deref().unwrap_or("none"))]
    Budget {
        limit: u64,
        incumbent: Option<String>,
        best_bound: String,
    },

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn bad<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::BadInput(msg.into()))
}
