use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("prime {p} divides the conductor {conductor} (bad reduction)")]
    BadReduction { p: u64, conductor: u64 },

    #[error("model is singular modulo {p} although {p} does not divide the conductor; supply a minimal model")]
    SingularModel { p: u64 },

    #[error("characteristic {p} too small for the short Weierstrass model (need p > 3)")]
    SmallCharacteristic { p: u64 },

    #[error("naive point count at p = {p} exceeds the cost guard {limit}")]
    CostGuard { p: u64, limit: u64 },

    #[error("group order search at p = {p} did not isolate a unique order in the Hasse interval")]
    AmbiguousOrder { p: u64 },

    #[error("|a_p| = {ap} exceeds the Deligne bound {bound} at p = {p}")]
    DeligneViolation { p: u64, ap: f64, bound: f64 },

    #[error("coefficient data lacks good prime {p}")]
    MissingPrime { p: u64 },

    #[error("format error: {0}")]
    Format(String),

    #[error("x = {x} exceeds series coverage {x_max}")]
    RangeExceeded { x: u64, x_max: u64 },

    #[error("no prime with angle in the interval below {ceiling}")]
    SearchExceeded { ceiling: u64 },

    #[error("degenerate fit: {valid} usable samples, need at least 3")]
    DegenerateFit { valid: usize },

    #[error("p = {p} is not a good prime of the series")]
    BadPrime { p: u64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    /// True for failures caused by the filesystem rather than the data.
    pub fn is_io(&self) -> bool {
        matches!(self, Error::Io(_))
    }
}
