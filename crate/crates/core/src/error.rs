use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("mask has no foreground pixels")]
    EmptyMask,

    #[error("dimension mismatch: expected {expected:?}, got {actual:?}")]
    DimensionMismatch {
        expected: (usize, usize),
        actual: (usize, usize),
    },

    #[error("degenerate mask: {0}")]
    DegenerateMask(&'static str),

    #[error("degenerate slope at skeleton index {0}")]
    DegenerateSlope(usize),

    #[error("no skeleton path between endpoint candidates")]
    NoPath,

    #[error("no valid depth at station {0}")]
    NoStationDepth(usize),

    #[error("invalid depth {0}")]
    BadDepth(f64),

    #[error("undistortion did not converge")]
    NoConvergence,

    #[error("no valid segments to measure")]
    NoValidSegments,

    #[error("too few stations: need {needed}, have {have}")]
    TooFewStations { needed: usize, have: usize },

    #[error("object is not fully inside the view")]
    OutOfView,

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Image(#[from] image::ImageError),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Wraps the error with the name of the pipeline stage that raised it.
    pub fn in_stage(self, stage: &'static str) -> Self {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }

    /// The innermost error, past any stage attribution.
    pub fn root(&self) -> &Error {
        match self {
            Error::Stage { source, .. } => source.root(),
            other => other,
        }
    }
}
