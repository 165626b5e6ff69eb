use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};
use rustfft::FftNum;

/// Floating-point scalar the optics code is generic over (`f32` or `f64`).
///
/// The tolerance constants are the per-precision thresholds used by the
/// library's checks and degeneracy tests.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + FftNum + Default + Debug + Display + 'static
{
    /// Exact-algebra tolerance: unitarity, determinant, round trips.
    const MAT_TOL: Self;
    /// Moduli at or below this are treated as zero when reading off angles.
    const DEG_TOL: Self;
    /// Visibility at or below this means the fringes are flat.
    const VIS_TOL: Self;

    /// Converts an `f64` literal; infallible for both implementors.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }
}

impl Real for f64 {
    const MAT_TOL: Self = 1e-12;
    const DEG_TOL: Self = 1e-9;
    const VIS_TOL: Self = 1e-6;
}

impl Real for f32 {
    const MAT_TOL: Self = 1e-5;
    const DEG_TOL: Self = 1e-4;
    const VIS_TOL: Self = 1e-3;
}

/// Wraps an angle into (−π, π].
pub fn wrap_pi<T: Real>(x: T) -> T {
    let two_pi = T::TAU();
    let mut y = x - two_pi * ((x + T::PI()) / two_pi).floor();
    // floor maps exact odd multiples of π to −π; move them to +π.
    if y <= -T::PI() {
        y = y + two_pi;
    }
    if y > T::PI() {
        y = y - two_pi;
    }
    y
}

/// `arg z` in (−π, π].
#[inline]
pub fn arg<T: Real>(z: Complex<T>) -> T {
    wrap_pi(z.im.atan2(z.re))
}

/// Circular mean of angles and the resultant length in [0, 1].
pub fn circular_mean<T: Real>(angles: &[T]) -> (T, T) {
    if angles.is_empty() {
        return (T::zero(), T::zero());
    }
    let (s, c) = angles.iter().fold((T::zero(), T::zero()), |(s, c), &a| (s + a.sin(), c + a.cos()));
    let n = T::from_usize(angles.len()).unwrap();
    (wrap_pi(s.atan2(c)), (s * s + c * c).sqrt() / n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn wrap_keeps_representative_in_half_open_interval() {
        assert_eq!(wrap_pi(PI), PI);
        assert_eq!(wrap_pi(-PI), PI);
        assert!((wrap_pi(3.0 * PI) - PI).abs() < 1e-15);
        assert!((wrap_pi(0.5 + 4.0 * PI) - 0.5).abs() < 1e-14);
        assert!((wrap_pi(-0.5 - 2.0 * PI) + 0.5).abs() < 1e-14);
        assert_eq!(wrap_pi(0.0f32), 0.0);
    }

    #[test]
    fn arg_of_negative_real_is_plus_pi() {
        assert_eq!(arg(Complex::new(-1.0, -0.0)), PI);
        assert_eq!(arg(Complex::new(-1.0, 0.0)), PI);
    }

    #[test]
    fn circular_mean_across_the_branch_cut() {
        let (m, r) = circular_mean(&[PI - 0.1, -PI + 0.1]);
        assert!((m.abs() - PI).abs() < 1e-12);
        assert!((r - 0.1f64.cos()).abs() < 1e-12);
    }
}
