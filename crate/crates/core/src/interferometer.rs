//! Mach-Zehnder interferometer in the polarization ⊗ path two-qubit space.
//!
//! Basis order is `{|VX⟩, |VY⟩, |HX⟩, |HY⟩}`: polarization is the slow index,
//! path the fast one. Beam splitters, mirrors and phase shifters act on the
//! path qubit only; the retarder array acts on the polarization of one arm.

use std::ops::Mul;

use num_complex::Complex;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::scalar::{wrap_pi, Real};
use crate::su2::{to_zyz, PolarizationOperator, YzyParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arm {
    X,
    Y,
}

impl Arm {
    fn index(self) -> usize {
        match self {
            Arm::X => 0,
            Arm::Y => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InputPolarization {
    Vertical,
    Horizontal,
}

impl InputPolarization {
    fn index(self) -> usize {
        match self {
            InputPolarization::Vertical => 0,
            InputPolarization::Horizontal => 1,
        }
    }
}

#[inline]
fn idx(pol: usize, path: usize) -> usize {
    2 * pol + path
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoQubitState<T = f64> {
    pub amplitudes: [Complex<T>; 4],
}

impl<T: Real> TwoQubitState<T> {
    pub fn basis(pol: InputPolarization, path: Arm) -> Self {
        let mut amplitudes = [Complex::new(T::zero(), T::zero()); 4];
        amplitudes[idx(pol.index(), path.index())] = Complex::new(T::one(), T::zero());
        Self { amplitudes }
    }

    pub fn amplitude(&self, pol: InputPolarization, path: Arm) -> Complex<T> {
        self.amplitudes[idx(pol.index(), path.index())]
    }

    pub fn norm_sqr(&self) -> T {
        self.amplitudes.iter().fold(T::zero(), |s, a| s + a.norm_sqr())
    }

    /// Power leaving through `port`, summed over both polarizations.
    pub fn port_power(&self, port: Arm) -> T {
        self.amplitude(InputPolarization::Vertical, port).norm_sqr()
            + self.amplitude(InputPolarization::Horizontal, port).norm_sqr()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoQubitOperator<T = f64> {
    pub m: [[Complex<T>; 4]; 4],
}

impl<T: Real> TwoQubitOperator<T> {
    pub fn identity() -> Self {
        let mut m = [[Complex::new(T::zero(), T::zero()); 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = Complex::new(T::one(), T::zero());
        }
        Self { m }
    }

    /// `pol ⊗ path` for 2×2 factors.
    pub fn kron(pol: &[[Complex<T>; 2]; 2], path: &[[Complex<T>; 2]; 2]) -> Self {
        let mut m = [[Complex::new(T::zero(), T::zero()); 4]; 4];
        for (a, b, c, d) in itertools_product() {
            m[idx(a, c)][idx(b, d)] = pol[a][b] * path[c][d];
        }
        Self { m }
    }

    pub fn dagger(&self) -> Self {
        let mut m = self.m;
        for (i, row) in m.iter_mut().enumerate() {
            for (j, z) in row.iter_mut().enumerate() {
                *z = self.m[j][i].conj();
            }
        }
        Self { m }
    }

    pub fn apply(&self, s: &TwoQubitState<T>) -> TwoQubitState<T> {
        let mut out = [Complex::new(T::zero(), T::zero()); 4];
        for (o, row) in out.iter_mut().zip(&self.m) {
            *o = row.iter().zip(&s.amplitudes).fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| acc + a * b);
        }
        TwoQubitState { amplitudes: out }
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.m.iter().flatten().zip(other.m.iter().flatten()).map(|(a, b)| (*a - *b).norm()).fold(T::zero(), T::max)
    }

    pub fn is_unitary(&self, tol: T) -> bool {
        (self.dagger() * *self).max_abs_diff(&Self::identity()) <= tol
    }
}

fn itertools_product() -> impl Iterator<Item = (usize, usize, usize, usize)> {
    (0..16).map(|k| (k >> 3 & 1, k >> 2 & 1, k >> 1 & 1, k & 1))
}

impl<T: Real> Mul for TwoQubitOperator<T> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let mut m = [[Complex::new(T::zero(), T::zero()); 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, z) in row.iter_mut().enumerate() {
                *z = (0..4).fold(Complex::new(T::zero(), T::zero()), |acc, k| acc + self.m[i][k] * rhs.m[k][j]);
            }
        }
        Self { m }
    }
}

fn c<T: Real>(re: T, im: T) -> Complex<T> {
    Complex::new(re, im)
}

fn eye2<T: Real>() -> [[Complex<T>; 2]; 2] {
    let (o, z) = (T::one(), T::zero());
    [[c(o, z), c(z, z)], [c(z, z), c(o, z)]]
}

fn projector<T: Real>(arm: Arm) -> [[Complex<T>; 2]; 2] {
    let mut p = [[c(T::zero(), T::zero()); 2]; 2];
    p[arm.index()][arm.index()] = c(T::one(), T::zero());
    p
}

/// 50:50 beam splitter `1_P ⊗ (|X⟩⟨X| + |Y⟩⟨Y| + i|X⟩⟨Y| + i|Y⟩⟨X|)/√2`.
pub fn beam_splitter<T: Real>() -> TwoQubitOperator<T> {
    let (r, z) = (T::FRAC_1_SQRT_2(), T::zero());
    TwoQubitOperator::kron(&eye2(), &[[c(r, z), c(z, r)], [c(z, r), c(r, z)]])
}

/// Mirror pair `1_P ⊗ [−i(|X⟩⟨Y| + |Y⟩⟨X|)]`.
pub fn mirror<T: Real>() -> TwoQubitOperator<T> {
    let (z, mi) = (c(T::zero(), T::zero()), c(T::zero(), -T::one()));
    TwoQubitOperator::kron(&eye2(), &[[z, mi], [mi, z]])
}

/// Phase `e^{iφ}` on one arm.
pub fn phase_shifter<T: Real>(arm: Arm, phi: T) -> TwoQubitOperator<T> {
    let mut path = eye2();
    path[arm.index()][arm.index()] = Complex::from_polar(T::one(), phi);
    TwoQubitOperator::kron(&eye2(), &path)
}

/// Polarization transformation on one arm: `U ⊗ |a⟩⟨a| + 1_P ⊗ |b⟩⟨b|`.
pub fn arm_unitary<T: Real>(u: &PolarizationOperator<T>, arm: Arm) -> TwoQubitOperator<T> {
    let other = match arm {
        Arm::X => Arm::Y,
        Arm::Y => Arm::X,
    };
    let a = TwoQubitOperator::kron(&u.elements(), &projector(arm));
    let b = TwoQubitOperator::kron(&eye2(), &projector(other));
    let mut m = a.m;
    for (row, brow) in m.iter_mut().zip(&b.m) {
        for (z, w) in row.iter_mut().zip(brow) {
            *z = *z + *w;
        }
    }
    TwoQubitOperator { m }
}

/// Arm assignment of the interferometer. The default puts the retarders on
/// arm Y and the scanned phase on arm X.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MachZehnder {
    pub retarder_arm: Arm,
    pub phase_arm: Arm,
}

impl Default for MachZehnder {
    fn default() -> Self {
        Self { retarder_arm: Arm::Y, phase_arm: Arm::X }
    }
}

impl MachZehnder {
    /// `U_BS · U_mirr · U_phase(φ) · U_P · U_BS`.
    pub fn operator<T: Real>(&self, u: &PolarizationOperator<T>, phi: T) -> TwoQubitOperator<T> {
        beam_splitter()
            * mirror()
            * phase_shifter(self.phase_arm, phi)
            * arm_unitary(u, self.retarder_arm)
            * beam_splitter()
    }

    /// [`Self::port_intensity`] over a grid of phases. Only the phase shifter
    /// depends on `φ`, so the fixed parts are multiplied once.
    pub fn port_sweep<T: Real>(
        &self,
        input: InputPolarization,
        u: &PolarizationOperator<T>,
        phi_grid: &[T],
        port: Arm,
    ) -> Vec<T> {
        let left = beam_splitter() * mirror();
        let right = (arm_unitary(u, self.retarder_arm) * beam_splitter()).apply(&TwoQubitState::basis(input, Arm::X));
        let arm = self.phase_arm.index();
        phi_grid
            .iter()
            .map(|&phi| {
                let mut mid = right;
                let ph = Complex::from_polar(T::one(), phi);
                for pol in 0..2 {
                    mid.amplitudes[idx(pol, arm)] = mid.amplitudes[idx(pol, arm)] * ph;
                }
                left.apply(&mid).port_power(port)
            })
            .collect()
    }

    /// Power at `port` for a unit beam of the given polarization entering along X.
    pub fn port_intensity<T: Real>(
        &self,
        input: InputPolarization,
        u: &PolarizationOperator<T>,
        phi: T,
        port: Arm,
    ) -> T {
        self.operator(u, phi).apply(&TwoQubitState::basis(input, Arm::X)).port_power(port)
    }
}

/// The full interferometer operator with the default arm layout.
pub fn mach_zehnder<T: Real>(u: &PolarizationOperator<T>, phi: T) -> TwoQubitOperator<T> {
    MachZehnder::default().operator(u, phi)
}

/// Exit port whose intensity is `½[1 − cosβ cos(φ ∓ δ)]` for V/H input. The
/// other port carries the complement.
pub const SIGNAL_PORT: Arm = Arm::Y;

/// `I_V = ½[1 − cosβ cos(φ−δ)]` or `I_H = ½[1 − cosβ cos(φ+δ)]`, simulated
/// through the two-qubit model and read at [`SIGNAL_PORT`].
pub fn output_intensity<T: Real>(input: InputPolarization, u: &PolarizationOperator<T>, phi: T) -> T {
    MachZehnder::default().port_intensity(input, u, phi, SIGNAL_PORT)
}

/// Uniform grid of `n` phases covering one period, `φ_j = 2πj/n`.
pub fn phase_grid<T: Real>(n: usize) -> Vec<T> {
    let step = T::TAU() / T::from_usize(n).unwrap();
    (0..n).map(|j| step * T::from_usize(j).unwrap()).collect()
}

/// `(φ, I_V, I_H)` rows over a phase grid.
pub fn intensity_sweep<T: Real>(u: &PolarizationOperator<T>, phi_grid: &[T]) -> Vec<(T, T, T)> {
    let mz = MachZehnder::default();
    let iv = mz.port_sweep(InputPolarization::Vertical, u, phi_grid, SIGNAL_PORT);
    let ih = mz.port_sweep(InputPolarization::Horizontal, u, phi_grid, SIGNAL_PORT);
    phi_grid.iter().zip(iv).zip(ih).map(|((&phi, v), h)| (phi, v, h)).collect()
}

/// Checks that the grid is uniform and spans a whole number of periods;
/// returns the step.
fn periodic_step<T: Real>(grid: &[T]) -> Result<T> {
    let n = grid.len();
    if n < 16 {
        return Err(Error::InvalidGrid(format!("need at least 16 samples, got {n}")));
    }
    let step = (grid[n - 1] - grid[0]) / T::from_usize(n - 1).unwrap();
    if step <= T::zero() {
        return Err(Error::InvalidGrid("grid must be increasing".into()));
    }
    let tol = T::DEG_TOL * T::TAU();
    if grid.windows(2).any(|w| (w[1] - w[0] - step).abs() > tol) {
        return Err(Error::InvalidGrid("grid must be uniform".into()));
    }
    let periods = step * T::from_usize(n).unwrap() / T::TAU();
    if periods < T::one() - tol || (periods - periods.round()).abs() > T::VIS_TOL {
        return Err(Error::InvalidGrid(format!("grid must span a whole number of 2π periods, spans {periods:.6}")));
    }
    Ok(step)
}

/// Circular cross-correlation lag (in samples, sub-sample by quadratic peak
/// interpolation) that best maps `reference` onto `shifted`:
/// `shifted[j] ≈ reference[j + lag]`.
pub(crate) fn circular_lag<T: Real>(reference: &[T], shifted: &[T]) -> T {
    let n = reference.len();
    let mean = |v: &[T]| v.iter().fold(T::zero(), |s, &x| s + x) / T::from_usize(n).unwrap();
    let (mr, ms) = (mean(reference), mean(shifted));
    let mut a: Vec<Complex<T>> = reference.iter().map(|&x| Complex::new(x - mr, T::zero())).collect();
    let mut b: Vec<Complex<T>> = shifted.iter().map(|&x| Complex::new(x - ms, T::zero())).collect();
    let mut planner = FftPlanner::new();
    let fwd = planner.plan_fft_forward(n);
    fwd.process(&mut a);
    fwd.process(&mut b);
    let mut prod: Vec<Complex<T>> = a.iter().zip(&b).map(|(x, y)| y.conj() * x).collect();
    planner.plan_fft_inverse(n).process(&mut prod);
    let corr: Vec<T> = prod.iter().map(|z| z.re).collect();

    let (peak, _) =
        corr.iter().enumerate().fold((0, T::neg_infinity()), |best, (i, &v)| if v > best.1 { (i, v) } else { best });
    let (l, c0, r) = (corr[(peak + n - 1) % n], corr[peak], corr[(peak + 1) % n]);
    let denom = l - c0 - c0 + r;
    let frac = if denom.abs() > T::zero() { T::lit(0.5) * (l - r) / denom } else { T::zero() };
    T::from_usize(peak).unwrap() + frac
}

/// Relative shift `2δ` (mod 2π, in (−π, π]) between the V- and H-input
/// intensity curves, `I_H(φ) = I_V(φ + 2δ)`, recovered by cross-correlation.
///
/// The grid must be uniform, have at least 16 samples and span a whole
/// number of periods.
pub fn split_beam_shift<T: Real>(u: &PolarizationOperator<T>, phi_grid: &[T]) -> Result<T> {
    let step = periodic_step(phi_grid)?;
    if u.m11().norm() <= T::VIS_TOL {
        return Err(Error::ZeroVisibility);
    }
    let sweep = intensity_sweep(u, phi_grid);
    let iv: Vec<T> = sweep.iter().map(|r| r.1).collect();
    let ih: Vec<T> = sweep.iter().map(|r| r.2).collect();
    Ok(wrap_pi(circular_lag(&iv, &ih) * step))
}

/// `cos²Φ_P` from a simulated split-beam measurement: `Φ_P = δ` (mod π) is
/// half the recovered shift.
pub fn interferometric_cos2_phase<T: Real>(p: YzyParams<T>, n_grid: usize) -> Result<T> {
    let shift = split_beam_shift(&crate::su2::from_yzy(p), &phase_grid(n_grid))?;
    Ok((shift * T::lit(0.5)).cos().powi(2))
}

/// `v = √(½[1 + cosξ cosζ − cosη sinξ sinζ])`, equal to `cosβ`.
pub fn visibility_yzy<T: Real>(p: YzyParams<T>) -> T {
    let v2 = T::lit(0.5) * (T::one() + p.xi.cos() * p.zeta.cos() - p.eta.cos() * p.xi.sin() * p.zeta.sin());
    v2.max(T::zero()).sqrt()
}

/// Visibility of the QHQ array `Q(θ₃)H(θ₂)Q(θ₁)` in terms of its plate angles.
pub fn visibility_plates<T: Real>(theta1: T, theta2: T, theta3: T) -> T {
    let (pi, two, four) = (T::PI(), T::lit(2.0), T::lit(4.0));
    let a = (T::lit(3.0) * pi + four * theta3) / two;
    let b = (pi - four * theta1) / two;
    let g = two * theta1 - four * theta2 + two * theta3;
    let v2 = T::lit(0.5) * (T::one() + a.cos() * b.cos() - g.cos() * a.sin() * b.sin());
    v2.max(T::zero()).sqrt()
}

/// `cosβ` of an operator: the visibility of its interference fringes.
pub fn visibility_of<T: Real>(u: &PolarizationOperator<T>) -> T {
    to_zyz(u).beta().cos()
}

/// `(I_max − I_min)/(I_max + I_min)` over sampled intensities.
pub fn contrast<T: Real>(values: &[T]) -> T {
    let (lo, hi) = values.iter().fold((T::infinity(), T::neg_infinity()), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    (hi - lo) / (hi + lo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::su2::{from_yzy, from_zyz, ZyzParams};
    use crate::waveplate::{compose, qhq_array};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, PI};

    type Op4 = TwoQubitOperator<f64>;
    type Op2 = PolarizationOperator<f64>;
    use InputPolarization::{Horizontal as H, Vertical as V};

    fn angle() -> impl Strategy<Value = f64> {
        -2.0 * PI..2.0 * PI
    }

    fn state(pol: InputPolarization, arm: Arm) -> TwoQubitState<f64> {
        TwoQubitState::basis(pol, arm)
    }

    /// Direct 4×4 oracle, built element by element from the path matrix.
    fn path_oracle(path: [[Complex<f64>; 2]; 2]) -> Op4 {
        let mut m = [[Complex::new(0.0, 0.0); 4]; 4];
        for pol in 0..2 {
            for i in 0..2 {
                for j in 0..2 {
                    m[2 * pol + i][2 * pol + j] = path[i][j];
                }
            }
        }
        TwoQubitOperator { m }
    }

    #[test]
    fn beam_splitter_twice_swaps_paths_with_phase_i() {
        let bs = beam_splitter::<f64>();
        let out = (bs * bs).apply(&state(V, Arm::X));
        // BS² = i·(|X⟩⟨Y| + |Y⟩⟨X|) on the path qubit.
        assert_abs_diff_eq!(out.amplitude(V, Arm::Y).im, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(out.amplitude(V, Arm::Y).re, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(out.amplitude(V, Arm::X).norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn beam_splitter_halves_power_and_keeps_polarization() {
        let out = beam_splitter::<f64>().apply(&state(V, Arm::X));
        assert_abs_diff_eq!(out.port_power(Arm::X), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(out.port_power(Arm::Y), 0.5, epsilon = 1e-15);
        let bs = beam_splitter::<f64>();
        for i in 0..2 {
            for j in 2..4 {
                assert_eq!(bs.m[j][i].norm(), 0.0);
                assert_eq!(bs.m[i][j].norm(), 0.0);
            }
        }
        assert!(bs.is_unitary(1e-15));
    }

    #[test]
    fn mirror_cases() {
        let m = mirror::<f64>();
        let out = m.apply(&state(V, Arm::X));
        assert_eq!(out.amplitude(V, Arm::Y), Complex::new(0.0, -1.0));
        let mm = m * m;
        assert!(
            mm.max_abs_diff(&path_oracle([
                [Complex::new(-1.0, 0.0), Complex::new(0.0, 0.0)],
                [Complex::new(0.0, 0.0), Complex::new(-1.0, 0.0)]
            ])) < 1e-15
        );
        assert!(m.is_unitary(1e-15));
        let out = m.apply(&state(H, Arm::Y));
        assert_eq!(out.amplitude(V, Arm::X).norm() + out.amplitude(V, Arm::Y).norm(), 0.0);
    }

    #[test]
    fn phase_shifter_cases() {
        assert!(phase_shifter(Arm::X, 0.0f64).max_abs_diff(&Op4::identity()) < 1e-15);
        let flip = phase_shifter(Arm::X, PI);
        for (pol, arm, sign) in [(V, Arm::X, -1.0), (V, Arm::Y, 1.0), (H, Arm::X, -1.0), (H, Arm::Y, 1.0)] {
            let a = flip.apply(&state(pol, arm)).amplitude(pol, arm);
            assert_abs_diff_eq!(a.re, sign, epsilon = 1e-15);
        }
        let (a, b) = (0.4, -1.7);
        for arm in [Arm::X, Arm::Y] {
            let lhs = phase_shifter(arm, a) * phase_shifter(arm, b);
            assert!(lhs.max_abs_diff(&phase_shifter(arm, a + b)) < 1e-15);
        }
    }

    #[test]
    fn arm_unitary_cases() {
        assert!(arm_unitary(&Op2::identity(), Arm::Y).max_abs_diff(&Op4::identity()) < 1e-15);
        let u = from_yzy(YzyParams::new(0.3, 1.9, -0.6));
        let op = arm_unitary(&u, Arm::X);
        for pol in [V, H] {
            let out = op.apply(&state(pol, Arm::Y));
            assert_eq!(out, state(pol, Arm::Y));
        }
        let out = op.apply(&state(V, Arm::X));
        assert_eq!(out.amplitude(H, Arm::X), u.m21());
        assert!(op.is_unitary(1e-12));
    }

    #[test]
    fn trivial_interferometer_is_identity() {
        // BS·M·BS computed element by element: ½[[1,i],[i,1]]·(−i)[[0,1],[1,0]]·[[1,i],[i,1]] = 1.
        let bs = [[Complex::new(1.0, 0.0), Complex::new(0.0, 1.0)], [Complex::new(0.0, 1.0), Complex::new(1.0, 0.0)]];
        let mut prod = [[Complex::new(0.0, 0.0); 2]; 2];
        let mi = Complex::new(0.0, -1.0);
        let mir = [[Complex::new(0.0, 0.0), mi], [mi, Complex::new(0.0, 0.0)]];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        prod[i][j] += bs[i][k] * mir[k][l] * bs[l][j] * 0.5;
                    }
                }
            }
        }
        let t = mach_zehnder(&Op2::identity(), 0.0);
        assert!(t.max_abs_diff(&path_oracle(prod)) < 1e-15);
        assert!(t.max_abs_diff(&Op4::identity()) < 1e-15);
    }

    #[test]
    fn identity_gives_half_one_minus_cos() {
        for phi in [0.0, 0.5, 2.0, -1.3] {
            assert_abs_diff_eq!(output_intensity(V, &Op2::identity(), phi), 0.5 * (1.0 - phi.cos()), epsilon = 1e-15);
        }
    }

    #[test]
    fn split_beam_shift_known_delta() {
        let u = from_zyz(ZyzParams::new(FRAC_PI_4, 0.3, 0.9));
        let grid = phase_grid(256);
        let s = split_beam_shift(&u, &grid).unwrap();
        assert!((s - 1.8).abs() <= 2.0 * PI / 256.0, "{s}");
        assert_abs_diff_eq!(split_beam_shift(&Op2::identity(), &grid).unwrap(), 0.0, epsilon = 1e-9);
        let flat = from_zyz(ZyzParams::new(FRAC_PI_2, 0.3, 0.0));
        assert!(matches!(split_beam_shift(&flat, &grid), Err(Error::ZeroVisibility)));
    }

    #[test]
    fn split_beam_shift_grid_validation() {
        let u = from_zyz(ZyzParams::new(0.3, 0.0, 0.5));
        assert!(matches!(split_beam_shift(&u, &phase_grid(8)), Err(Error::InvalidGrid(_))));
        let partial: Vec<f64> = (0..64).map(|j| j as f64 * 0.05).collect();
        assert!(matches!(split_beam_shift(&u, &partial), Err(Error::InvalidGrid(_))));
        // Two full periods work too.
        let two: Vec<f64> = (0..128).map(|j| j as f64 * 4.0 * PI / 128.0).collect();
        assert!((split_beam_shift(&u, &two).unwrap() - 1.0).abs() < 2.0 * PI / 64.0);
    }

    #[test]
    fn visibility_cases() {
        assert_abs_diff_eq!(visibility_yzy(YzyParams::new(0.0, 1.7, 0.0)), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(visibility_yzy(YzyParams::new(PI, 0.4, PI)), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(visibility_plates(FRAC_PI_4, -FRAC_PI_4, FRAC_PI_4), 1.0, epsilon = 1e-15);
        let u = from_zyz(ZyzParams::new(FRAC_PI_3, 0.0, 0.2));
        assert_abs_diff_eq!(visibility_of(&u), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn f32_interferometer() {
        let u = from_yzy(YzyParams::new(0.5f32, 1.0, -0.3));
        let s = split_beam_shift(&u, &phase_grid::<f32>(64)).unwrap();
        let d = to_zyz(&u).params.delta;
        assert!((wrap_pi(s - 2.0 * d)).abs() < 0.1);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn interferometer_is_unitary_and_conserves_power(xi in angle(), eta in angle(), zeta in angle(), phi in angle()) {
            let u = from_yzy(YzyParams::new(xi, eta, zeta));
            let t = mach_zehnder(&u, phi);
            prop_assert!(t.is_unitary(1e-12));
            for pol in [V, H] {
                let out = t.apply(&state(pol, Arm::X));
                prop_assert!((out.port_power(Arm::X) + out.port_power(Arm::Y) - 1.0).abs() <= 1e-12);
            }
            prop_assert!(phase_shifter(Arm::Y, phi).is_unitary(1e-12));
            prop_assert!(arm_unitary(&u, Arm::X).is_unitary(1e-12));
        }

        #[test]
        fn intensity_closed_forms(xi in angle(), eta in angle(), zeta in angle(), phi in angle()) {
            let u = from_yzy(YzyParams::new(xi, eta, zeta));
            let iv = output_intensity(V, &u, phi);
            let yzy_form = 0.5 * (1.0 - (eta / 2.0).cos() * ((xi + zeta) / 2.0).cos() * phi.cos()
                - (eta / 2.0).sin() * ((xi - zeta) / 2.0).cos() * phi.sin());
            prop_assert!((iv - yzy_form).abs() <= 1e-12);
            let r = to_zyz(&u).params;
            prop_assert!((iv - 0.5 * (1.0 - r.beta.cos() * (phi - r.delta).cos())).abs() <= 1e-12);
            let ih = output_intensity(H, &u, phi);
            prop_assert!((ih - 0.5 * (1.0 - r.beta.cos() * (phi + r.delta).cos())).abs() <= 1e-12);
            prop_assert!((ih - output_intensity(V, &u, phi + 2.0 * r.delta)).abs() <= 1e-12);
            // The other exit port is the complement.
            let other = MachZehnder::default().port_intensity(V, &u, phi, Arm::X);
            prop_assert!((iv + other - 1.0).abs() <= 1e-12);
        }

        #[test]
        fn fast_sweep_matches_full_operator(xi in angle(), eta in angle(), zeta in angle(), phi in angle()) {
            let u = from_yzy(YzyParams::new(xi, eta, zeta));
            for mz in [MachZehnder::default(), MachZehnder { retarder_arm: Arm::X, phase_arm: Arm::Y }] {
                for port in [Arm::X, Arm::Y] {
                    let fast = mz.port_sweep(V, &u, &[phi], port)[0];
                    prop_assert!((fast - mz.port_intensity(V, &u, phi, port)).abs() <= 1e-12);
                }
            }
        }

        #[test]
        fn split_beam_recovers_two_delta(xi in angle(), eta in angle(), zeta in angle()) {
            let u = from_yzy(YzyParams::new(xi, eta, zeta));
            let r = to_zyz(&u).params;
            prop_assume!(r.beta <= FRAC_PI_3);
            let s = split_beam_shift(&u, &phase_grid(512)).unwrap();
            prop_assert!(wrap_pi(s - 2.0 * r.delta).abs() <= 2.0 * PI / 512.0);
        }

        #[test]
        fn visibility_formulas(xi in angle(), eta in angle(), zeta in angle()) {
            let p = YzyParams::new(xi, eta, zeta);
            let u = from_yzy(p);
            let v = visibility_yzy(p);
            prop_assert!((v - u.m11().norm()).abs() <= 1e-12);
            prop_assert!((v - visibility_of(&u)).abs() <= 1e-12);
            let sweep: Vec<f64> = phase_grid::<f64>(720).iter().map(|&phi| output_intensity(V, &u, phi)).collect();
            // Extremes of a 720-point grid sit within 2.2e-3 rad of the true extrema.
            let c = contrast(&sweep);
            prop_assume!(v > 1e-3);
            prop_assert!((c - v).abs() <= 1e-5 / (1.0 - v + 1e-3), "{} vs {}", c, v);
        }

        #[test]
        fn plate_visibility_matches_matrix(t1 in angle(), t2 in angle(), t3 in angle()) {
            let u = compose(&qhq_array(t1, t2, t3));
            prop_assert!((visibility_plates(t1, t2, t3) - u.m11().norm()).abs() <= 1e-12);
        }
    }
}
