//! SU(2) polarization transformations, their YZY and ZYZ Euler forms, and
//! Pancharatnam's phase.
//!
//! Basis convention: the first Jones component is vertical polarization,
//! `|V⟩ ≡ |+⟩_z`, and the second is horizontal, `|H⟩ ≡ |−⟩_z`. Every matrix
//! in this crate is written in that `{|V⟩, |H⟩}` order.

use std::ops::Mul;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{arg, wrap_pi, Real};

/// A 2×2 unit-determinant unitary acting on `{|V⟩, |H⟩}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolarizationOperator<T = f64> {
    m: [[Complex<T>; 2]; 2],
}

impl<T: Real> PolarizationOperator<T> {
    /// Builds an operator from its elements without checking the SU(2)
    /// invariant. Use [`PolarizationOperator::try_new`] for untrusted input.
    pub(crate) fn from_elements(m11: Complex<T>, m12: Complex<T>, m21: Complex<T>, m22: Complex<T>) -> Self {
        Self { m: [[m11, m12], [m21, m22]] }
    }

    /// Checks unitarity and unit determinant within `T::MAT_TOL`.
    pub fn try_new(m11: Complex<T>, m12: Complex<T>, m21: Complex<T>, m22: Complex<T>) -> Option<Self> {
        let op = Self::from_elements(m11, m12, m21, m22);
        op.is_su2(T::MAT_TOL).then_some(op)
    }

    pub fn identity() -> Self {
        let (o, z) = (Complex::new(T::one(), T::zero()), Complex::new(T::zero(), T::zero()));
        Self::from_elements(o, z, z, o)
    }

    /// `−1`, the other square root of the identity's lift.
    pub fn minus_identity() -> Self {
        Self::identity().scale(-T::one())
    }

    /// SU(2) representative `−iσ_x = exp(−iπσ_x/2)` of the Pauli matrix σ_x.
    pub fn sigma_x() -> Self {
        let (z, mi) = (Complex::new(T::zero(), T::zero()), Complex::new(T::zero(), -T::one()));
        Self::from_elements(z, mi, mi, z)
    }

    /// SU(2) representative `−iσ_y`.
    pub fn sigma_y() -> Self {
        let (z, o) = (Complex::new(T::zero(), T::zero()), Complex::new(T::one(), T::zero()));
        Self::from_elements(z, -o, o, z)
    }

    /// SU(2) representative `−iσ_z`.
    pub fn sigma_z() -> Self {
        let (z, i) = (Complex::new(T::zero(), T::zero()), Complex::new(T::zero(), T::one()));
        Self::from_elements(-i, z, z, i)
    }

    /// `exp(−iθσ_x)`.
    pub fn exp_x(theta: T) -> Self {
        let (c, s) = (theta.cos(), theta.sin());
        let (z, cc) = (T::zero(), Complex::new(c, T::zero()));
        Self::from_elements(cc, Complex::new(z, -s), Complex::new(z, -s), cc)
    }

    /// `exp(−iθσ_y)`.
    pub fn exp_y(theta: T) -> Self {
        let (c, s) = (theta.cos(), theta.sin());
        let z = T::zero();
        Self::from_elements(Complex::new(c, z), Complex::new(-s, z), Complex::new(s, z), Complex::new(c, z))
    }

    /// `exp(−iθσ_z)`.
    pub fn exp_z(theta: T) -> Self {
        let z = Complex::new(T::zero(), T::zero());
        Self::from_elements(Complex::from_polar(T::one(), -theta), z, z, Complex::from_polar(T::one(), theta))
    }

    #[inline]
    pub fn m11(&self) -> Complex<T> {
        self.m[0][0]
    }
    #[inline]
    pub fn m12(&self) -> Complex<T> {
        self.m[0][1]
    }
    #[inline]
    pub fn m21(&self) -> Complex<T> {
        self.m[1][0]
    }
    #[inline]
    pub fn m22(&self) -> Complex<T> {
        self.m[1][1]
    }

    pub fn elements(&self) -> [[Complex<T>; 2]; 2] {
        self.m
    }

    pub fn dagger(&self) -> Self {
        Self::from_elements(self.m[0][0].conj(), self.m[1][0].conj(), self.m[0][1].conj(), self.m[1][1].conj())
    }

    pub fn det(&self) -> Complex<T> {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn trace(&self) -> Complex<T> {
        self.m[0][0] + self.m[1][1]
    }

    fn scale(&self, k: T) -> Self {
        let mut m = self.m;
        m.iter_mut().flatten().for_each(|z| *z = *z * k);
        Self { m }
    }

    /// Largest elementwise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.m.iter().flatten().zip(other.m.iter().flatten()).map(|(a, b)| (*a - *b).norm()).fold(T::zero(), T::max)
    }

    pub fn is_unitary(&self, tol: T) -> bool {
        (self.dagger() * *self).max_abs_diff(&Self::identity()) <= tol
    }

    pub fn is_su2(&self, tol: T) -> bool {
        self.is_unitary(tol) && (self.det() - Complex::new(T::one(), T::zero())).norm() <= tol
    }

    pub fn apply(&self, s: &JonesVector<T>) -> JonesVector<T> {
        apply(self, s)
    }
}

impl<T: Real> Mul for PolarizationOperator<T> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let (a, b) = (&self.m, &rhs.m);
        let e = |r: usize, c: usize| a[r][0] * b[0][c] + a[r][1] * b[1][c];
        Self::from_elements(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }
}

/// A two-component polarization amplitude `(a_V, a_H)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JonesVector<T = f64> {
    pub v: Complex<T>,
    pub h: Complex<T>,
}

impl<T: Real> JonesVector<T> {
    pub fn new(v: Complex<T>, h: Complex<T>) -> Self {
        Self { v, h }
    }

    /// `|V⟩ = |+⟩_z`.
    pub fn vertical() -> Self {
        Self::new(Complex::new(T::one(), T::zero()), Complex::new(T::zero(), T::zero()))
    }

    /// `|H⟩ = |−⟩_z`.
    pub fn horizontal() -> Self {
        Self::new(Complex::new(T::zero(), T::zero()), Complex::new(T::one(), T::zero()))
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Complex<T> {
        self.v.conj() * other.v + self.h.conj() * other.h
    }

    pub fn norm(&self) -> T {
        (self.v.norm_sqr() + self.h.norm_sqr()).sqrt()
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        Self::new(self.v / n, self.h / n)
    }
}

/// ZYZ Euler angles: `U = [[e^{iδ}cosβ, −e^{iγ}sinβ], [e^{−iγ}sinβ, e^{−iδ}cosβ]]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZyzParams<T = f64> {
    pub beta: T,
    pub gamma: T,
    pub delta: T,
}

impl<T: Real> ZyzParams<T> {
    pub fn new(beta: T, gamma: T, delta: T) -> Self {
        Self { beta, gamma, delta }
    }
}

/// YZY Euler angles: `U = exp(−iξσ_y/2) exp(iησ_z/2) exp(−iζσ_y/2)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct YzyParams<T = f64> {
    pub xi: T,
    pub eta: T,
    pub zeta: T,
}

impl<T: Real> YzyParams<T> {
    pub fn new(xi: T, eta: T, zeta: T) -> Self {
        Self { xi, eta, zeta }
    }
}

/// Which ZYZ angle could not be read off because its matrix element vanishes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegenerateAngle {
    /// `|m11| ≤ ε_deg`: β = π/2 and δ is arbitrary.
    Delta,
    /// `|m21| ≤ ε_deg`: β = 0 and γ is arbitrary.
    Gamma,
}

/// Result of [`to_zyz`]: the angles plus a flag for the one that is undefined.
///
/// The flagged angle is still filled in from the argument of its (tiny)
/// matrix element, so `from_zyz(reading.params)` reproduces the input.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZyzReading<T = f64> {
    pub params: ZyzParams<T>,
    pub degenerate: Option<DegenerateAngle>,
}

impl<T: Real> ZyzReading<T> {
    pub fn beta(&self) -> T {
        self.params.beta
    }

    pub fn gamma(&self) -> Option<T> {
        (self.degenerate != Some(DegenerateAngle::Gamma)).then_some(self.params.gamma)
    }

    pub fn delta(&self) -> Option<T> {
        (self.degenerate != Some(DegenerateAngle::Delta)).then_some(self.params.delta)
    }

    /// The parameters, or `DegenerateAngle` if one of them is undefined.
    pub fn require(self) -> Result<ZyzParams<T>> {
        match self.degenerate {
            Some(which) => Err(Error::DegenerateAngle(which)),
            None => Ok(self.params),
        }
    }
}

pub fn from_yzy<T: Real>(p: YzyParams<T>) -> PolarizationOperator<T> {
    let half = T::lit(0.5);
    PolarizationOperator::exp_y(p.xi * half)
        * PolarizationOperator::exp_z(-p.eta * half)
        * PolarizationOperator::exp_y(p.zeta * half)
}

pub fn from_zyz<T: Real>(p: ZyzParams<T>) -> PolarizationOperator<T> {
    let (cb, sb) = (p.beta.cos(), p.beta.sin());
    PolarizationOperator::from_elements(
        Complex::from_polar(cb, p.delta),
        -Complex::from_polar(sb, p.gamma),
        Complex::from_polar(sb, -p.gamma),
        Complex::from_polar(cb, -p.delta),
    )
}

/// Reads ZYZ angles off an SU(2) matrix on the canonical branch β ∈ [0, π/2].
pub fn to_zyz<T: Real>(u: &PolarizationOperator<T>) -> ZyzReading<T> {
    let (a, c) = (u.m11(), u.m21());
    let (ra, rc) = (a.norm(), c.norm());
    let params = ZyzParams { beta: rc.atan2(ra), gamma: wrap_pi(-arg(c)), delta: arg(a) };
    let degenerate = if ra <= T::DEG_TOL {
        Some(DegenerateAngle::Delta)
    } else if rc <= T::DEG_TOL {
        Some(DegenerateAngle::Gamma)
    } else {
        None
    };
    ZyzReading { params, degenerate }
}

/// YZY → ZYZ via the matrix, which sidesteps the quadrant bookkeeping of the
/// closed-form `tan δ` relation.
pub fn yzy_to_zyz<T: Real>(p: YzyParams<T>) -> ZyzReading<T> {
    to_zyz(&from_yzy(p))
}

/// `arg⟨i|f⟩` in (−π, π].
pub fn pancharatnam_phase<T: Real>(i: &JonesVector<T>, f: &JonesVector<T>) -> Result<T> {
    let overlap = i.inner(f);
    if overlap.norm() <= T::DEG_TOL * i.norm() * f.norm() {
        return Err(Error::OrthogonalStates);
    }
    Ok(arg(overlap))
}

pub fn apply<T: Real>(u: &PolarizationOperator<T>, s: &JonesVector<T>) -> JonesVector<T> {
    JonesVector::new(u.m11() * s.v + u.m12() * s.h, u.m21() * s.v + u.m22() * s.h)
}

/// Relative phase `arg⟨(ab)s|(ba)s⟩` picked up by swapping the order of two
/// operators acting on `s`.
pub fn product_order_phase<T: Real>(
    a: &PolarizationOperator<T>,
    b: &PolarizationOperator<T>,
    s: &JonesVector<T>,
) -> Result<T> {
    pancharatnam_phase(&(*a * *b).apply(s), &(*b * *a).apply(s))
}

/// Phase between `σ_xσ_y|+⟩_z` and `σ_yσ_x|+⟩_z`: π, since the two Pauli
/// matrices anticommute.
pub fn anticommutation_phase<T: Real>() -> T {
    product_order_phase(&PolarizationOperator::sigma_x(), &PolarizationOperator::sigma_y(), &JonesVector::vertical())
        .expect("σ_xσ_y|+⟩ and σ_yσ_x|+⟩ differ by a sign, never orthogonal")
}
