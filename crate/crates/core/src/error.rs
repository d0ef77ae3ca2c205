use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A parameter violates a physical invariant of its container.
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// An operation was called outside its domain of definition.
    #[error("{0}")]
    Domain(String),

    #[error("CFL condition violated: {velocity} m/s * {dt} s > {dx} m")]
    Cfl { velocity: f64, dt: f64, dx: f64 },

    #[error("non-finite field value in `{field}` at cell {cell}, t = {t:e} s")]
    NonFinite {
        field: &'static str,
        cell: usize,
        t: f64,
    },

    #[error("two-photon state is not normalised (norm = {0})")]
    Unnormalized(f64),

    #[error("config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}

pub(crate) fn ensure_finite(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(name, format!("must be finite, got {value}")))
    }
}
