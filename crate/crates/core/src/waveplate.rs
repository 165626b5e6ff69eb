//! Quarter- and half-wave plates, plate arrays, and the compilation of SU(2)
//! operators into retarder sequences.
//!
//! Plate axes are measured from the vertical. A [`PlateArray`] stores plates
//! in the order light traverses them, so [`compose`] multiplies right to left:
//! `[p1, p2, p3]` composes to `J(p3)·J(p2)·J(p1)`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{wrap_pi, Real};
use crate::su2::{PolarizationOperator, YzyParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PlateKind {
    Quarter,
    Half,
}

impl PlateKind {
    /// Retardance Γ between the fast and slow axes.
    pub fn retardance<T: Real>(self) -> T {
        match self {
            PlateKind::Quarter => T::FRAC_PI_2(),
            PlateKind::Half => T::PI(),
        }
    }

    fn symbol(self) -> char {
        match self {
            PlateKind::Quarter => 'Q',
            PlateKind::Half => 'H',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WavePlate<T = f64> {
    kind: PlateKind,
    axis: T,
}

impl<T: Real> WavePlate<T> {
    /// The axis is stored wrapped to (−π, π]; the Jones matrix has period π
    /// in the axis angle, so this never changes the operator.
    pub fn new(kind: PlateKind, axis: T) -> Self {
        Self { kind, axis: wrap_pi(axis) }
    }

    pub fn quarter(axis: T) -> Self {
        Self::new(PlateKind::Quarter, axis)
    }

    pub fn half(axis: T) -> Self {
        Self::new(PlateKind::Half, axis)
    }

    pub fn kind(&self) -> PlateKind {
        self.kind
    }

    pub fn axis(&self) -> T {
        self.axis
    }

    /// Same plate with its axis turned by `delta`.
    pub fn rotated(&self, delta: T) -> Self {
        Self::new(self.kind, self.axis + delta)
    }

    /// Same plate with the axis reduced modulo π into (−π/2, π/2]; a retarder
    /// turned by π is physically unchanged.
    pub fn canonical(&self) -> Self {
        let half = T::FRAC_PI_2();
        let mut a = wrap_pi(self.axis * T::lit(2.0)) / T::lit(2.0);
        if a <= -half {
            a = a + T::PI();
        }
        Self::new(self.kind, a)
    }

    pub fn jones(&self) -> PolarizationOperator<T> {
        jones(self)
    }
}

/// Unit-determinant Jones matrix `R(θ)·diag(e^{−iΓ/2}, e^{iΓ/2})·R(−θ)`.
///
/// Expanded: `cos(Γ/2)·1 − i sin(Γ/2)(cos2θ σ_z + sin2θ σ_x)`.
pub fn jones<T: Real>(p: &WavePlate<T>) -> PolarizationOperator<T> {
    let half: T = p.kind.retardance::<T>() * T::lit(0.5);
    let (c, s) = (half.cos(), half.sin());
    let (c2, s2) = ((p.axis + p.axis).cos(), (p.axis + p.axis).sin());
    let z = T::zero();
    PolarizationOperator::from_elements(
        Complex::new(c, -s * c2),
        Complex::new(z, -s * s2),
        Complex::new(z, -s * s2),
        Complex::new(c, s * c2),
    )
}

/// Plates in traversal order.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct PlateArray<T = f64> {
    pub plates: Vec<WavePlate<T>>,
}

impl<T: Real> PlateArray<T> {
    pub fn new(plates: Vec<WavePlate<T>>) -> Self {
        Self { plates }
    }

    /// Builds an array from a product written in operator order
    /// (`A·B·C` is given as `[A, B, C]`; light meets `C` first).
    pub fn from_operator_order(mut product: Vec<WavePlate<T>>) -> Self {
        product.reverse();
        Self { plates: product }
    }

    /// Plates in operator (matrix-product) order.
    pub fn operator_order(&self) -> Vec<WavePlate<T>> {
        self.plates.iter().rev().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.plates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.plates.is_empty()
    }

    pub fn compose(&self) -> PolarizationOperator<T> {
        compose(self)
    }

    /// Every plate turned by the same angle.
    pub fn rotated(&self, delta: T) -> Self {
        Self::new(self.plates.iter().map(|p| p.rotated(delta)).collect())
    }

    pub fn canonical(&self) -> Self {
        Self::new(self.plates.iter().map(WavePlate::canonical).collect())
    }

    /// Concatenation: `self` is traversed first, then `next`.
    pub fn then(mut self, next: &PlateArray<T>) -> Self {
        self.plates.extend_from_slice(&next.plates);
        self
    }
}

pub fn compose<T: Real>(a: &PlateArray<T>) -> PolarizationOperator<T> {
    a.plates.iter().fold(PolarizationOperator::identity(), |acc, p| jones(p) * acc)
}

/// Three-plate realization `Q((−3π+2ξ)/4)·H((ξ−η−ζ−π)/4)·Q((π−2ζ)/4)` of
/// `U(ξ, η, ζ)`, returned in traversal order.
pub fn decompose_qhq<T: Real>(p: YzyParams<T>) -> PlateArray<T> {
    let (pi, two, four) = (T::PI(), T::lit(2.0), T::lit(4.0));
    PlateArray::from_operator_order(vec![
        WavePlate::quarter((two * p.xi - T::lit(3.0) * pi) / four),
        WavePlate::half((p.xi - p.eta - p.zeta - pi) / four),
        WavePlate::quarter((pi - two * p.zeta) / four),
    ])
}

/// Plate angles `(θ₁, θ₂, θ₃)` of the QHQ array in traversal order.
pub fn qhq_angles<T: Real>(p: YzyParams<T>) -> (T, T, T) {
    let a = decompose_qhq(p);
    (a.plates[0].axis, a.plates[1].axis, a.plates[2].axis)
}

/// The QHQ array with explicit angles, `Q(θ₃)H(θ₂)Q(θ₁)`.
pub fn qhq_array<T: Real>(theta1: T, theta2: T, theta3: T) -> PlateArray<T> {
    PlateArray::new(vec![WavePlate::quarter(theta1), WavePlate::half(theta2), WavePlate::quarter(theta3)])
}

fn expect_kind<T: Real>(p: &WavePlate<T>, expected: PlateKind) -> Result<()> {
    if p.kind == expected {
        Ok(())
    } else {
        Err(Error::PlateKind { expected, found: p.kind })
    }
}

/// `Q(α)H(β) = H(β)Q(2β−α)`. The arguments name the product `q·h`; the
/// returned array is in traversal order.
pub fn simplify_qh<T: Real>(q: &WavePlate<T>, h: &WavePlate<T>) -> Result<PlateArray<T>> {
    expect_kind(q, PlateKind::Quarter)?;
    expect_kind(h, PlateKind::Half)?;
    let two = T::lit(2.0);
    Ok(PlateArray::from_operator_order(vec![WavePlate::half(h.axis), WavePlate::quarter(two * h.axis - q.axis)]))
}

/// `Q(α)H(β)H(γ) = Q(α+π/2)H(α−β+γ−π/2)`, for the product `q·h1·h2`.
pub fn merge_qhh<T: Real>(q: &WavePlate<T>, h1: &WavePlate<T>, h2: &WavePlate<T>) -> Result<PlateArray<T>> {
    expect_kind(q, PlateKind::Quarter)?;
    expect_kind(h1, PlateKind::Half)?;
    expect_kind(h2, PlateKind::Half)?;
    let hp = T::FRAC_PI_2();
    Ok(PlateArray::from_operator_order(vec![
        WavePlate::quarter(q.axis + hp),
        WavePlate::half(q.axis - h1.axis + h2.axis - hp),
    ]))
}

/// `V = exp(−iφσ_z/2)·exp(−iπσ_x/4)` as the plates `Q(π/4)H((φ−π)/4)H(π/4)`
/// (operator order), using `Q²(π/4) = H(π/4)`.
pub fn phase_preparation<T: Real>(phi: T) -> PlateArray<T> {
    let (pi, four) = (T::PI(), T::lit(4.0));
    PlateArray::from_operator_order(vec![
        WavePlate::quarter(pi / four),
        WavePlate::half((phi - pi) / four),
        WavePlate::half(pi / four),
    ])
}

/// `V†` as `H(−π/4)H((φ+π)/4)Q(−π/4)` (operator order).
pub fn phase_projection<T: Real>(phi: T) -> PlateArray<T> {
    let (pi, four) = (T::PI(), T::lit(4.0));
    PlateArray::from_operator_order(vec![
        WavePlate::half(-pi / four),
        WavePlate::half((phi + pi) / four),
        WavePlate::quarter(-pi / four),
    ])
}

/// The nine-plate polarimetric product `V†·U·V` before reduction, with `U`
/// realized by its QHQ array.
pub fn polarimetric_product<T: Real>(p: YzyParams<T>, phi: T) -> PlateArray<T> {
    phase_preparation(phi).then(&decompose_qhq(p)).then(&phase_projection(phi))
}

/// Five-plate polarimetric array realizing `V†UV`:
/// `Q(−3π/4−φ/2)·Q(−(5π+2ξ)/4−φ/2)·Q(−(9π+2(ξ+η))/4−φ/2)·H(−(7π+ξ+η−ζ)/4−φ/2)·Q(−π/4−φ/2)`.
///
/// Changing `φ` turns every plate by the same `−Δφ/2`, so the whole stack can
/// sit on one rotation mount.
pub fn polarimetric_array<T: Real>(p: YzyParams<T>, phi: T) -> PlateArray<T> {
    let (pi, two, four) = (T::PI(), T::lit(2.0), T::lit(4.0));
    let r = -phi / two;
    PlateArray::from_operator_order(vec![
        WavePlate::quarter(-T::lit(3.0) * pi / four + r),
        WavePlate::quarter(-(T::lit(5.0) * pi + two * p.xi) / four + r),
        WavePlate::quarter(-(T::lit(9.0) * pi + two * (p.xi + p.eta)) / four + r),
        WavePlate::half(-(T::lit(7.0) * pi + p.xi + p.eta - p.zeta) / four + r),
        WavePlate::quarter(-pi / four + r),
    ])
}

/// Rotation angle used by the ζ = 2π reduced array: `(−3π−2φ)/4`.
pub fn zeta_2pi_rotation<T: Real>(phi: T) -> T {
    (-T::lit(3.0) * T::PI() - T::lit(2.0) * phi) / T::lit(4.0)
}

/// Three-plate array `Q(φ')Q(−ξ/2+φ')H((η−ξ)/4+φ')` equal to the five-plate
/// array at ζ = 2π. `phi` is the redefined angle `φ' = (−3π−2φ)/4`, see
/// [`zeta_2pi_rotation`].
pub fn reduced_array_zeta_2pi<T: Real>(xi: T, eta: T, phi: T) -> PlateArray<T> {
    let (two, four) = (T::lit(2.0), T::lit(4.0));
    PlateArray::from_operator_order(vec![
        WavePlate::quarter(phi),
        WavePlate::quarter(-xi / two + phi),
        WavePlate::half((eta - xi) / four + phi),
    ])
}

/// Three-plate array `Q((3π+2η−2φ)/4)H((−4π+ζ+η−2φ)/4)Q((−π−2φ)/4)` equal
/// to the five-plate array at ξ = −π. Here `phi` is the physical angle of the
/// five-plate array; no redefinition is involved.
pub fn reduced_array_xi_minus_pi<T: Real>(eta: T, zeta: T, phi: T) -> PlateArray<T> {
    let (pi, two, four) = (T::PI(), T::lit(2.0), T::lit(4.0));
    PlateArray::from_operator_order(vec![
        WavePlate::quarter((T::lit(3.0) * pi + two * eta - two * phi) / four),
        WavePlate::half((-four * pi + zeta + eta - two * phi) / four),
        WavePlate::quarter((-pi - two * phi) / four),
    ])
}

// Plain-text plate lists: one plate per line, `Q <radians>` or `H <radians>`,
// in traversal order. Blank lines and `#` comments are ignored.

impl<T: Real> fmt::Display for PlateArray<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.plates {
            writeln!(f, "{} {}", p.kind.symbol(), p.axis)?;
        }
        Ok(())
    }
}

impl<T: Real> FromStr for PlateArray<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut plates = Vec::new();
        for (i, raw) in s.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| Error::ParsePlate { line: i + 1, message };
            let mut parts = line.split_whitespace();
            let kind = match parts.next() {
                Some("Q") | Some("q") => PlateKind::Quarter,
                Some("H") | Some("h") => PlateKind::Half,
                Some(other) => return Err(err(format!("unknown plate kind {other:?}"))),
                None => unreachable!(),
            };
            let angle: f64 = parts
                .next()
                .ok_or_else(|| err("missing axis angle".into()))?
                .parse()
                .map_err(|e| err(format!("bad angle: {e}")))?;
            if !angle.is_finite() {
                return Err(err("angle must be finite".into()));
            }
            if parts.next().is_some() {
                return Err(err("trailing tokens".into()));
            }
            plates.push(WavePlate::new(kind, T::lit(angle)));
        }
        Ok(PlateArray::new(plates))
    }
}
