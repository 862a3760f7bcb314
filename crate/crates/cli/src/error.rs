use thiserror::Error;

pub const SUITES: [&str; 8] = [
    "algebra-identities",
    "geometry-compatibility",
    "analytic-paths",
    "dirac",
    "maxwell",
    "yangmills",
    "weakfield",
    "all",
];

pub const DEMOS: [&str; 5] = ["path-integral", "residue", "cyclotron", "newton", "maxwell-convergence"];

#[derive(Debug, Error)]
pub enum CliError {
    #[error("unknown suite `{0}`; expected one of {}", SUITES.join(", "))]
    UnknownSuite(String),
    #[error("unknown demo `{0}`; expected one of {}", DEMOS.join(", "))]
    UnknownDemo(String),
    #[error("config error in {file} at {location}: {message}")]
    Config { file: String, location: String, message: String },
    #[error("{0}")]
    Library(#[from] cqmix::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// Usage and configuration problems exit with 2; a library failure while
    /// producing a demo counts as a failed run.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Library(_) => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
