use thiserror::Error;

/// Library-wide error type.
///
/// Variants are grouped by how the CLI maps them to exit codes: parse errors
/// (2), violated mathematical preconditions (3), and regime refusals where an
/// exact computation path is deliberately unavailable (4).
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("zero input where a nonzero element is required")]
    ZeroInput,

    #[error("precision underflow: fewer than {have} significant digits (need {need})")]
    PrecisionUnderflow { have: u32, need: u32 },

    #[error("element is a square; a non-square generator is required")]
    SquareGenerator,

    #[error("square classes are dependent: {0}")]
    DependentClasses(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("exact path unavailable: {0}")]
    RegimeRefusal(String),
}

impl Error {
    /// CLI exit code for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 2,
            Error::RegimeRefusal(_) => 4,
            _ => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
