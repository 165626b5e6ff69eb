use thiserror::Error;

use crate::su2::DegenerateAngle;
use crate::waveplate::PlateKind;

#[derive(Debug, Error)]
pub enum Error {
    #[error("states are orthogonal; Pancharatnam phase undefined")]
    OrthogonalStates,

    #[error("ZYZ angle undefined: {0:?}")]
    DegenerateAngle(DegenerateAngle),

    #[error("expected a {expected:?} plate, found {found:?}")]
    PlateKind { expected: PlateKind, found: PlateKind },

    #[error("plate list line {line}: {message}")]
    ParsePlate { line: usize, message: String },

    #[error("fringe visibility is zero; shift undefined")]
    ZeroVisibility,

    #[error("invalid phase grid: {0}")]
    InvalidGrid(String),

    #[error("1 - I_max + I_min vanishes (beta = pi/2)")]
    DegenerateDenominator,

    #[error("invalid extrema: I_min = {i_min}, I_max = {i_max}")]
    InvalidExtrema { i_min: f64, i_max: f64 },

    #[error("invalid interferogram geometry: {0}")]
    InvalidGeometry(String),

    #[error("carrier frequency {0} rad/px outside (0, pi)")]
    CarrierOutOfRange(f64),

    #[error("invalid region: {0}")]
    InvalidRegion(String),

    #[error("invalid filter parameters: {0}")]
    InvalidFilter(String),

    #[error("profile has too few interior minima")]
    TooFewMinima,

    #[error("profile has too few interior maxima")]
    TooFewMaxima,

    #[error("minima pairing is ambiguous")]
    AmbiguousPairing,

    #[error("no dominant spatial carrier in profile")]
    NoCarrier,

    #[error("every region failed; first error: {}", .0.first().map(|e| e.to_string()).unwrap_or_default())]
    AllRegionsFailed(Vec<Error>),

    #[error("image format: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable identifier for machine-readable error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::OrthogonalStates => "OrthogonalStates",
            Error::DegenerateAngle(_) => "DegenerateAngle",
            Error::PlateKind { .. } => "PlateKind",
            Error::ParsePlate { .. } => "ParsePlate",
            Error::ZeroVisibility => "ZeroVisibility",
            Error::InvalidGrid(_) => "InvalidGrid",
            Error::DegenerateDenominator => "DegenerateDenominator",
            Error::InvalidExtrema { .. } => "InvalidExtrema",
            Error::InvalidGeometry(_) => "InvalidGeometry",
            Error::CarrierOutOfRange(_) => "CarrierOutOfRange",
            Error::InvalidRegion(_) => "InvalidRegion",
            Error::InvalidFilter(_) => "InvalidFilter",
            Error::TooFewMinima => "TooFewMinima",
            Error::TooFewMaxima => "TooFewMaxima",
            Error::AmbiguousPairing => "AmbiguousPairing",
            Error::NoCarrier => "NoCarrier",
            Error::AllRegionsFailed(errs) => errs.first().map(Error::kind).unwrap_or("AllRegionsFailed"),
            Error::Format(_) => "Format",
            Error::Io(_) => "Io",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
