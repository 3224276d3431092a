use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid root choice (r={r}, t={t}): {reason}")]
    InvalidRoot { r: u32, t: u32, reason: &'static str },

    #[error("fractional power denominator must be 1, 2 or 4, got {0}")]
    InvalidDenominator(u32),

    #[error("exponent {num}/{den} of q does not reduce to a quarter-integer")]
    NonQuarterExponent { num: i64, den: i64 },

    #[error("zero has no inverse")]
    NotInvertible,

    #[error("element is not fixed by q -> q^-1, so it is not real under the embedding")]
    NotReal,

    #[error("sign undecided at the precision cap of {cap} bits")]
    PrecisionExhausted { cap: u32 },

    #[error("triple ({0}, {1}, {2}) is not admissible")]
    NotAdmissible(u32, u32, u32),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("not implemented: {0}")]
    Unsupported(String),

    #[error("matrix shape mismatch: {0}")]
    Shape(String),

    #[error("certificate rejected: {0}")]
    CertificateRejected(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
