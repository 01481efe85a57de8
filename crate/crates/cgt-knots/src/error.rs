use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("game is not impartial")]
    NotImpartial,

    #[error("multiplier form must be strictly positive")]
    NonPositiveMultiplier,

    #[error("malformed game: {0}")]
    Malformed(String),

    #[error("value outside the operation's domain: {0}")]
    Domain(String),

    #[error("tempers differ")]
    TemperMismatch,

    #[error("not an i-game")]
    NotIGame,

    #[error("position is a link, not a knot")]
    Link,
}

impl Error {
    pub fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }

    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
