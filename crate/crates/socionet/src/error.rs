use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("distribution has zero total mass")]
    EmptyDistribution,

    #[error("portrait has zero total mass under the k-weighting")]
    ZeroMassPortrait,

    #[error("diffusion time must be nonnegative, got {0}")]
    NegativeTime(f64),

    #[error("lazy-walk transition probability s/k = {delta} is out of (0, 1]")]
    LazinessOutOfRange { delta: f64 },

    #[error("walk step count must be positive")]
    ZeroWalkSteps,

    #[error("graph has no domain with a nonempty interior")]
    NoInterior,

    #[error("interior of size {n} exceeds the dense eigendecomposition cap of {max}")]
    InteriorTooLarge { n: usize, max: usize },

    #[error("curve sample count must be odd and >= 3, got {m}")]
    BadSampleCount { m: usize },

    #[error("{m} curve samples are too few for {n} coefficients (need >= {needed})")]
    QuadratureTooCoarse { m: usize, n: usize, needed: usize },

    #[error("coefficient vectors have mismatched lengths ({a} vs {b})")]
    CoefficientCountMismatch { a: usize, b: usize },

    #[error("coefficient vectors use different bases")]
    BasisMismatch,

    #[error("orthonormal basis construction broke down at degree {degree}")]
    DegenerateBasis { degree: usize },

    #[error("run lengths differ ({a} vs {b} days)")]
    RunLengthMismatch { a: usize, b: usize },

    #[error("need at least two runs, got {0}")]
    TooFewRuns(usize),

    #[error("day {day}: {source}")]
    AtDay {
        day: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("empty payload")]
    EmptyPayload,

    #[error("{path}:{line}: {msg}")]
    Parse {
        path: String,
        line: usize,
        msg: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Attach the day index to a per-day comparison failure.
    pub fn at_day(self, day: usize) -> Error {
        Error::AtDay {
            day,
            source: Box::new(self),
        }
    }
}
