//! Sub-sample extremum location on sampled curves.

use crate::scalar::Real;

/// Vertex of the parabola through `(-1, l)`, `(0, c)`, `(1, r)`: returns the
/// offset in `[-1, 1]` and the value there. Falls back to `(0, c)` when the
/// three points are collinear.
pub fn parabolic_vertex<T: Real>(l: T, c: T, r: T) -> (T, T) {
    let curv = l - c - c + r;
    if curv == T::zero() {
        return (T::zero(), c);
    }
    let half = T::lit(0.5);
    let off = (half * (l - r) / curv).max(-T::one()).min(T::one());
    let value = c + half * (off * (r - l) + curv * off * off);
    (off, value)
}

/// Interpolated `(minimum, maximum)` of one period of a periodic sequence.
pub fn periodic_extrema<T: Real>(values: &[T]) -> (T, T) {
    let n = values.len();
    if n < 3 {
        let lo = values.iter().copied().fold(T::infinity(), T::min);
        let hi = values.iter().copied().fold(T::neg_infinity(), T::max);
        return (lo, hi);
    }
    let (mut imin, mut imax) = (0, 0);
    for (i, &v) in values.iter().enumerate() {
        if v < values[imin] {
            imin = i;
        }
        if v > values[imax] {
            imax = i;
        }
    }
    let at = |i: usize| parabolic_vertex(values[(i + n - 1) % n], values[i], values[(i + 1) % n]).1;
    (at(imin), at(imax))
}
