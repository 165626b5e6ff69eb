//! Savitzky–Golay smoothing: each output sample is the value of a
//! least-squares polynomial fitted over a sliding window.

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FilterConfig {
    /// Odd window length in samples.
    pub window: usize,
    /// Polynomial degree, smaller than the window.
    pub order: usize,
}

impl Default for FilterConfig {
    fn default() -> Self {
        Self { window: 11, order: 3 }
    }
}

impl FilterConfig {
    pub fn new(window: usize, order: usize) -> Result<Self> {
        let cfg = Self { window, order };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.window < 3 || self.window.is_multiple_of(2) {
            return Err(Error::InvalidFilter(format!("window must be odd and >= 3, got {}", self.window)));
        }
        if self.order >= self.window {
            return Err(Error::InvalidFilter(format!(
                "order {} must be smaller than window {}",
                self.order, self.window
            )));
        }
        Ok(())
    }
}

/// Solves `a x = b` in place by Gaussian elimination with partial pivoting.
pub(crate) fn solve<T: Real>(mut a: Vec<Vec<T>>, mut b: Vec<T>) -> Vec<T> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap()).unwrap();
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            let pivot_row = a[col].clone();
            for (x, &p) in a[row][col..].iter_mut().zip(&pivot_row[col..]) {
                *x = *x - f * p;
            }
            b[row] = b[row] - f * b[col];
        }
    }
    let mut x = vec![T::zero(); n];
    for row in (0..n).rev() {
        let s = (row + 1..n).fold(b[row], |s, k| s - a[row][k] * x[k]);
        x[row] = s / a[row][row];
    }
    x
}

/// Weights `w` such that `Σ wᵢ yᵢ` is the degree-`order` least-squares fit
/// through `(offsets[i], yᵢ)` evaluated at offset 0. The degree drops when
/// there are too few points.
pub fn fit_weights<T: Real>(offsets: &[isize], order: usize) -> Vec<T> {
    let order = order.min(offsets.len().saturating_sub(1));
    let scale = offsets.iter().map(|o| o.unsigned_abs()).max().unwrap_or(1).max(1);
    let scale = T::from_usize(scale).unwrap();
    let xs: Vec<T> = offsets.iter().map(|&o| T::from_isize(o).unwrap() / scale).collect();
    let powers: Vec<Vec<T>> = xs
        .iter()
        .map(|&x| {
            (0..=order)
                .scan(T::one(), |p, _| {
                    let v = *p;
                    *p = *p * x;
                    Some(v)
                })
                .collect()
        })
        .collect();
    let mut ata = vec![vec![T::zero(); order + 1]; order + 1];
    for row in &powers {
        for i in 0..=order {
            for j in 0..=order {
                ata[i][j] = ata[i][j] + row[i] * row[j];
            }
        }
    }
    let mut e0 = vec![T::zero(); order + 1];
    e0[0] = T::one();
    let z = solve(ata, e0);
    powers.iter().map(|row| row.iter().zip(&z).fold(T::zero(), |s, (&a, &b)| s + a * b)).collect()
}

/// Smooths `y`. Near the ends the window is truncated to the available
/// samples rather than padded.
pub fn smooth<T: Real>(y: &[T], cfg: FilterConfig) -> Result<Vec<T>> {
    cfg.validate()?;
    let n = y.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let half = cfg.window / 2;
    let full: Vec<isize> = (-(half as isize)..=half as isize).collect();
    let interior = fit_weights::<T>(&full, cfg.order);
    let out = (0..n)
        .map(|i| {
            let lo = i.saturating_sub(half);
            let hi = (i + half).min(n - 1);
            if hi - lo + 1 == cfg.window {
                interior.iter().zip(&y[lo..=hi]).fold(T::zero(), |s, (&w, &v)| s + w * v)
            } else {
                let offs: Vec<isize> = (lo..=hi).map(|j| j as isize - i as isize).collect();
                fit_weights::<T>(&offs, cfg.order).iter().zip(&y[lo..=hi]).fold(T::zero(), |s, (&w, &v)| s + w * v)
            }
        })
        .collect();
    Ok(out)
}

/// Smooths a periodic sequence, wrapping the window around the ends.
pub fn smooth_periodic<T: Real>(y: &[T], cfg: FilterConfig) -> Result<Vec<T>> {
    cfg.validate()?;
    let n = y.len();
    if n < cfg.window {
        return smooth(y, cfg);
    }
    let half = cfg.window / 2;
    let full: Vec<isize> = (-(half as isize)..=half as isize).collect();
    let w = fit_weights::<T>(&full, cfg.order);
    Ok((0..n)
        .map(|i| {
            w.iter()
                .zip(&full)
                .fold(T::zero(), |s, (&wk, &o)| s + wk * y[(i as isize + o).rem_euclid(n as isize) as usize])
        })
        .collect())
}
