//! Polarization-qubit optics: SU(2) transformations realized with quarter-
//! and half-wave plates, and the two ways of measuring Pancharatnam's phase
//! they produce.
//!
//! - [`su2`]: Euler-angle forms, Jones vectors, Pancharatnam phase.
//! - [`waveplate`]: retarders, plate arrays, QHQ compilation, the five-plate
//!   polarimetric array and its reductions.
//! - [`interferometer`]: two-qubit Mach-Zehnder model and the split-beam
//!   shift.
//! - [`polarimetry`]: rotating-array intensity sweeps and phase extraction.
//! - [`fringe`]: synthetic dual-half interferograms, shift and visibility
//!   estimators; [`pgm`] stores them on disk.
//!
//! Everything numeric is generic over [`Real`] (`f32` or `f64`); the
//! `…F64`/`…F32` aliases below name the concrete types.

pub mod error;
pub mod extrema;
pub mod fringe;
pub mod interferometer;
pub mod pgm;
pub mod polarimetry;
pub mod savgol;
pub mod scalar;
pub mod su2;
pub mod waveplate;

pub use error::{Error, Result};
pub use fringe::{
    column_average, default_regions, estimate_carrier, generate, measure_visibility, retrieve_phase, savitzky_golay,
    shift_by_fourier, shift_by_minima, Envelope, FringeMeta, FringeParams, FringeProfile, Interferogram, Method,
    Region, Retrieval,
};
pub use interferometer::{
    arm_unitary, beam_splitter, mach_zehnder, mirror, output_intensity, phase_grid, phase_shifter, split_beam_shift,
    visibility_plates, visibility_yzy, Arm, InputPolarization, MachZehnder, TwoQubitOperator, TwoQubitState,
};
pub use polarimetry::{
    extract_cos2_phase, intensity_xi_minus_pi, measure_phase, measure_phase_mode, polarimetric_intensity, NoiseModel,
    PolarimetricMode, PolarimetricSweep,
};
pub use savgol::FilterConfig;
pub use scalar::{wrap_pi, Real};
pub use su2::{
    anticommutation_phase, from_yzy, from_zyz, pancharatnam_phase, to_zyz, yzy_to_zyz, JonesVector,
    PolarizationOperator, YzyParams, ZyzParams, ZyzReading,
};
pub use waveplate::{
    compose, decompose_qhq, polarimetric_array, qhq_array, reduced_array_xi_minus_pi, reduced_array_zeta_2pi,
    PlateArray, PlateKind, WavePlate,
};

pub type PolarizationOperatorF64 = PolarizationOperator<f64>;
pub type PolarizationOperatorF32 = PolarizationOperator<f32>;
pub type JonesVectorF64 = JonesVector<f64>;
pub type JonesVectorF32 = JonesVector<f32>;
pub type YzyParamsF64 = YzyParams<f64>;
pub type YzyParamsF32 = YzyParams<f32>;
pub type ZyzParamsF64 = ZyzParams<f64>;
pub type ZyzParamsF32 = ZyzParams<f32>;
pub type WavePlateF64 = WavePlate<f64>;
pub type WavePlateF32 = WavePlate<f32>;
pub type PlateArrayF64 = PlateArray<f64>;
pub type PlateArrayF32 = PlateArray<f32>;
pub type TwoQubitStateF64 = TwoQubitState<f64>;
pub type TwoQubitStateF32 = TwoQubitState<f32>;
pub type TwoQubitOperatorF64 = TwoQubitOperator<f64>;
pub type TwoQubitOperatorF32 = TwoQubitOperator<f32>;
pub type PolarimetricSweepF64 = PolarimetricSweep<f64>;
pub type PolarimetricSweepF32 = PolarimetricSweep<f32>;
pub type InterferogramF64 = Interferogram<f64>;
pub type InterferogramF32 = Interferogram<f32>;
pub type FringeProfileF64 = FringeProfile<f64>;
pub type FringeProfileF32 = FringeProfile<f32>;
