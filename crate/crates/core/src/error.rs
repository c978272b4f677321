use thiserror::Error;

/// Which admissibility item a scattering data set violates.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Admissibility {
    #[error("gamma exponents must be 0 or 1, got ({0}, {1})")]
    Gamma(u8, u8),
    #[error("zero {0} is not in (-1, 1) \\ {{0}}")]
    ZeroOutOfRange(f64),
    #[error("zeros are not distinct: {0} appears twice")]
    ZerosNotDistinct(f64),
    #[error("{zeros} zeros but {mus} normalizing constants")]
    LengthMismatch { zeros: usize, mus: usize },
    #[error("normalizing constant mu_{index} = {value} is not positive")]
    NonPositiveMu { index: usize, value: f64 },
    #[error("s is not unimodular: max ||s| - 1| = {0:e}")]
    NotUnimodular(f64),
    #[error("s violates s(conj t) = conj s(t): max deviation {0:e}")]
    NotReflectionSymmetric(f64),
    #[error("index mismatch: winding number {found}, expected 2N + gamma1 + gamma2 = {expected}")]
    IndexMismatch { expected: i64, found: i64 },
    #[error("sign of s at t = 1 gives gamma1 = {found}, data declares {declared}")]
    Gamma1Mismatch { declared: u8, found: u8 },
    #[error("phase omega is not admissible: {0}")]
    Phase(String),
}

impl Admissibility {
    /// Stable identifier of the violated item, used in machine-readable reports.
    pub fn item(&self) -> &'static str {
        match self {
            Admissibility::Gamma(..) => "gamma",
            Admissibility::ZeroOutOfRange(_) => "zero_out_of_range",
            Admissibility::ZerosNotDistinct(_) => "zeros_not_distinct",
            Admissibility::LengthMismatch { .. } => "length_mismatch",
            Admissibility::NonPositiveMu { .. } => "non_positive_mu",
            Admissibility::NotUnimodular(_) => "not_unimodular",
            Admissibility::NotReflectionSymmetric(_) => "not_reflection_symmetric",
            Admissibility::IndexMismatch { .. } => "index_mismatch",
            Admissibility::Gamma1Mismatch { .. } => "gamma1_mismatch",
            Admissibility::Phase(_) => "phase",
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("size error: {0}")]
    Size(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("grid resolution too coarse: phase increment {increment:.3} rad at sample {index}; refine the grid")]
    Resolution { index: usize, increment: f64 },
    #[error("no free region within n_max = {n_max}; discarded tail bound {tail_bound:e}")]
    Truncation { n_max: usize, tail_bound: f64 },
    #[error("pole of the Weyl function near z = {z}; residue estimate {residue}")]
    Pole {
        z: num_complex::Complex64,
        residue: num_complex::Complex64,
    },
    #[error("inconsistent scattering data: {0}")]
    Inconsistent(String),
    #[error("function is not in the Besov class B^1/2_2 at this resolution: tail ratio {0:e}")]
    Class(f64),
    #[error("inadmissible scattering data: {0}")]
    Admissibility(#[from] Admissibility),
    #[error("moment problem degenerate: |alpha_{index}| = {value}")]
    Degenerate { index: usize, value: f64 },
    #[error(
        "Jacobi reconstruction for gamma = ({0}, {1}) needs the even/mixed Szego transforms, which are not available; only gamma = (0, 0) is supported"
    )]
    UnsupportedGamma(u8, u8),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
