use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] skeinrep_core::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("malformed document: {0}")]
    Format(String),

    #[error("invalid arguments: {0}")]
    Validation(String),

    #[error("thread pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

impl Error {
    /// 2 for bad input, 1 for internal failures.
    pub fn exit_code(&self) -> i32 {
        use skeinrep_core::Error as C;
        match self {
            Error::Core(
                C::InvalidRoot { .. }
                | C::InvalidDenominator(_)
                | C::NonQuarterExponent { .. }
                | C::NotAdmissible(..)
                | C::InvalidArgument(_)
                | C::Unsupported(_)
                | C::CertificateRejected(_),
            )
            | Error::Json(_)
            | Error::Format(_)
            | Error::Validation(_) => 2,
            _ => 1,
        }
    }
}
