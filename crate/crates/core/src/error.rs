use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid angle: {0}")]
    InvalidAngle(String),
    #[error("degenerate chord at {0}")]
    DegenerateChord(String),
    #[error("chord {0} is a diameter")]
    Diameter(String),
    #[error("chords {0} and {1} cross")]
    Crossing(String, String),
    #[error("circular order of equal angles is undefined")]
    Tie,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0} is not periodic")]
    NotPeriodic(String),
    #[error("{0} is not a leaf of the parameter lamination")]
    NotInLamination(String),
    #[error("{0} is not in the dynamic lamination of the given leaf")]
    NotInDynamicLamination(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("lamination store reaches period {have}, period {need} required")]
    StoreTooShallow { have: u32, need: u32 },
    #[error("limit exceeded: {0}")]
    LimitExceeded(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
