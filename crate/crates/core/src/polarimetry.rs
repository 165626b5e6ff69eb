//! Polarimetric ("virtual interferometry") measurement: a single beam passes a
//! five-plate array on a common rotation mount, and Pancharatnam's phase is
//! read off the extrema of the transmitted intensity via
//! `cos²δ = I_min / (1 − I_max + I_min)`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::extrema::periodic_extrema;
use crate::interferometer::phase_grid;
use crate::savgol::{smooth_periodic, FilterConfig};
use crate::scalar::Real;
use crate::su2::YzyParams;
use crate::waveplate::{
    polarimetric_array, reduced_array_xi_minus_pi, reduced_array_zeta_2pi, zeta_2pi_rotation, PlateArray,
};

/// Slack allowed before an out-of-range ratio counts as invalid.
pub const RATIO_SLACK: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PolarimetricMode {
    /// All five plates.
    #[default]
    Full,
    /// ζ fixed to 2π: three plates `QQH`.
    Zeta2Pi,
    /// ξ fixed to −π: three plates `QHQ`.
    XiMinusPi,
}

impl PolarimetricMode {
    /// Parameters actually realized in this mode.
    pub fn params<T: Real>(self, p: YzyParams<T>) -> YzyParams<T> {
        match self {
            PolarimetricMode::Full => p,
            PolarimetricMode::Zeta2Pi => YzyParams::new(p.xi, p.eta, T::TAU()),
            PolarimetricMode::XiMinusPi => YzyParams::new(-T::PI(), p.eta, p.zeta),
        }
    }

    /// Plate array at physical mount angle `phi`.
    pub fn array<T: Real>(self, p: YzyParams<T>, phi: T) -> PlateArray<T> {
        match self {
            PolarimetricMode::Full => polarimetric_array(p, phi),
            PolarimetricMode::Zeta2Pi => reduced_array_zeta_2pi(p.xi, p.eta, zeta_2pi_rotation(phi)),
            PolarimetricMode::XiMinusPi => reduced_array_xi_minus_pi(p.eta, p.zeta, phi),
        }
    }
}

/// `I = cos²(η/2)cos²((ξ+ζ)/2) + [cos(η/2)sin((ξ+ζ)/2)cosφ + sin(η/2)sin((ξ−ζ)/2)sinφ]²`.
pub fn polarimetric_intensity<T: Real>(p: YzyParams<T>, phi: T) -> T {
    let half = T::lit(0.5);
    let (ce, se) = ((p.eta * half).cos(), (p.eta * half).sin());
    let s = (p.xi + p.zeta) * half;
    let d = (p.xi - p.zeta) * half;
    let bracket = ce * s.sin() * phi.cos() + se * d.sin() * phi.sin();
    (ce * s.cos()).powi(2) + bracket * bracket
}

/// `I = cos²(ζ/2)cos²((η−2φ)/2) + sin²(ζ/2)cos²(η/2)`, the ξ = −π intensity.
pub fn intensity_xi_minus_pi<T: Real>(eta: T, zeta: T, phi: T) -> T {
    let half = T::lit(0.5);
    let two = T::lit(2.0);
    (zeta * half).cos().powi(2) * ((eta - two * phi) * half).cos().powi(2)
        + (zeta * half).sin().powi(2) * (eta * half).cos().powi(2)
}

/// `|⟨+|U|+⟩|²` for the composed array.
pub fn array_intensity<T: Real>(a: &PlateArray<T>) -> T {
    a.compose().m11().norm_sqr()
}

/// `cos²δ = I_min / (1 − I_max + I_min)`.
pub fn extract_cos2_phase<T: Real>(i_min: T, i_max: T) -> Result<T> {
    let slack = T::lit(RATIO_SLACK);
    let invalid = || Error::InvalidExtrema {
        i_min: i_min.to_f64().unwrap_or(f64::NAN),
        i_max: i_max.to_f64().unwrap_or(f64::NAN),
    };
    if !(i_min >= -slack && i_min <= i_max + slack && i_max <= T::one() + slack) {
        return Err(invalid());
    }
    let denom = T::one() - i_max + i_min;
    if denom <= T::DEG_TOL {
        return Err(Error::DegenerateDenominator);
    }
    let ratio = i_min / denom;
    if ratio < -slack || ratio > T::one() + slack {
        return Err(invalid());
    }
    Ok(ratio.max(T::zero()).min(T::one()))
}

/// Additive Gaussian intensity noise, clamped to `[0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoiseModel {
    pub sigma: f64,
    pub seed: u64,
}

/// Intensity recorded while the mount turns through one full period.
#[derive(Clone, Debug, PartialEq)]
pub struct PolarimetricSweep<T = f64> {
    pub phi_grid: Vec<T>,
    pub intensities: Vec<T>,
    /// Parameters of the simulated transformation, if known.
    pub params: Option<YzyParams<T>>,
}

impl<T: Real> PolarimetricSweep<T> {
    /// Closed-form sweep of the full five-plate array.
    pub fn simulate(p: YzyParams<T>, n_grid: usize) -> Self {
        let phi_grid = phase_grid(n_grid);
        let intensities = phi_grid.iter().map(|&phi| polarimetric_intensity(p, phi)).collect();
        Self { phi_grid, intensities, params: Some(p) }
    }

    /// Sweep computed through the plates of the chosen mode.
    pub fn simulate_mode(mode: PolarimetricMode, p: YzyParams<T>, n_grid: usize) -> Self {
        let phi_grid = phase_grid(n_grid);
        let intensities = phi_grid.iter().map(|&phi| array_intensity(&mode.array(p, phi))).collect();
        Self { phi_grid, intensities, params: Some(mode.params(p)) }
    }

    /// Sweep of an arbitrary array given at mount angle 0; every plate turns
    /// by `−φ/2` as the mount angle goes to `φ`.
    pub fn simulate_array(array: &PlateArray<T>, n_grid: usize) -> Self {
        let phi_grid = phase_grid(n_grid);
        let half = T::lit(0.5);
        let intensities = phi_grid.iter().map(|&phi: &T| array_intensity(&array.rotated(-phi * half))).collect();
        Self { phi_grid, intensities, params: None }
    }

    pub fn len(&self) -> usize {
        self.phi_grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phi_grid.is_empty()
    }

    pub fn with_noise(mut self, noise: NoiseModel) -> Self {
        if noise.sigma > 0.0 {
            let mut rng = ChaCha8Rng::seed_from_u64(noise.seed);
            let dist = Normal::new(0.0, noise.sigma).expect("finite sigma");
            for v in &mut self.intensities {
                let n = T::lit(dist.sample(&mut rng));
                *v = (*v + n).max(T::zero()).min(T::one());
            }
        }
        self
    }

    pub fn smoothed(&self, cfg: FilterConfig) -> Result<Self> {
        Ok(Self { intensities: smooth_periodic(&self.intensities, cfg)?, ..self.clone() })
    }

    /// Interpolated `(I_min, I_max)`.
    pub fn extrema(&self) -> (T, T) {
        periodic_extrema(&self.intensities)
    }

    pub fn cos2_phase(&self) -> Result<T> {
        let (lo, hi) = self.extrema();
        extract_cos2_phase(lo, hi)
    }
}

/// Smoothing suited to a sweep of `n` samples: an order-4 window over about
/// a twelfth of the period.
pub fn sweep_filter(n: usize) -> FilterConfig {
    let w = (n / 12) | 1;
    FilterConfig { window: w.max(5), order: 4.min(w.max(5) - 1) }
}

fn check_grid(n_grid: usize) -> Result<()> {
    if n_grid < 64 {
        return Err(Error::InvalidGrid(format!("need at least 64 samples, got {n_grid}")));
    }
    Ok(())
}

/// `cos²Φ_P` from the extrema of a noiseless sweep of the full array.
pub fn measure_phase<T: Real>(p: YzyParams<T>, n_grid: usize) -> Result<T> {
    check_grid(n_grid)?;
    PolarimetricSweep::simulate(p, n_grid).cos2_phase()
}

/// As [`measure_phase`] through the plates of `mode`, with optional noise.
/// Noisy sweeps are smoothed with `filter` (or [`sweep_filter`]) before the
/// extrema are taken.
pub fn measure_phase_mode<T: Real>(
    mode: PolarimetricMode,
    p: YzyParams<T>,
    n_grid: usize,
    noise: Option<NoiseModel>,
    filter: Option<FilterConfig>,
) -> Result<T> {
    check_grid(n_grid)?;
    let sweep = PolarimetricSweep::simulate_mode(mode, p, n_grid);
    match noise {
        Some(nm) if nm.sigma > 0.0 => {
            sweep.with_noise(nm).smoothed(filter.unwrap_or_else(|| sweep_filter(n_grid)))?.cos2_phase()
        }
        _ => sweep.cos2_phase(),
    }
}
