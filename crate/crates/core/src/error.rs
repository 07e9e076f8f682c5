use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid set description `{0}`")]
    InvalidSpec(String),

    #[error("{path}:{line}: {message}")]
    SetFile {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// A finite set ran out of members, or an infinite one left the `u64` range.
    #[error("set exhausted: {set} has no members beyond {last}")]
    SetExhausted { set: String, last: u64 },

    #[error("{value} is not a member of {set}")]
    NotAMember { set: String, value: u64 },

    #[error("{alpha} is not a value of tau for {set} (jump factor is 1 or not a member)")]
    NotInReducedSet { set: String, alpha: u64 },

    #[error("profile holds {available} elements, {requested} needed")]
    ProfileTooShort { requested: usize, available: usize },

    #[error("series appears divergent for {set} (partial sum exceeded {ceiling})")]
    SeriesDiverges { set: String, ceiling: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Short machine-readable tag, used in structured CLI output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidSpec(_) => "invalid_spec",
            Error::SetFile { .. } => "set_file",
            Error::Io { .. } => "io",
            Error::SetExhausted { .. } => "set_exhausted",
            Error::NotAMember { .. } => "not_a_member",
            Error::NotInReducedSet { .. } => "not_in_reduced_set",
            Error::ProfileTooShort { .. } => "profile_too_short",
            Error::SeriesDiverges { .. } => "series_diverges",
            Error::InvalidArgument(_) => "invalid_argument",
        }
    }
}
