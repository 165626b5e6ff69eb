//! Dual-half interferograms: synthesis and recovery of the relative fringe
//! shift `2δ` between the upper (V input) and lower (H input) halves.
//!
//! Two estimators are provided. The minima method locates the fringe minima
//! of both mean profiles and converts their displacement to phase. The
//! Fourier method evaluates both profiles at the dominant spatial carrier
//! `k0` and takes the difference of the arguments.

use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::savgol::{smooth, solve, FilterConfig};
use crate::scalar::{circular_mean, wrap_pi, Real};

/// Smallest accepted image side, in pixels.
pub const MIN_SIDE: usize = 16;

/// Ground truth and acquisition settings carried along with an image.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct FringeMeta {
    /// Spatial carrier in radians per pixel, if known.
    pub k0: Option<f64>,
    /// δ used to synthesize the image.
    pub true_delta: Option<f64>,
    pub beta: Option<f64>,
    pub seed: Option<u64>,
    pub noise_sigma: Option<f64>,
}

/// Row-major intensity image split into an upper and a lower half.
#[derive(Clone, Debug, PartialEq)]
pub struct Interferogram<T = f64> {
    pixels: Vec<T>,
    height: usize,
    width: usize,
    half_split_row: usize,
    pub meta: FringeMeta,
}

impl<T: Real> Interferogram<T> {
    pub fn new(pixels: Vec<T>, height: usize, width: usize, half_split_row: usize, meta: FringeMeta) -> Result<Self> {
        if height < MIN_SIDE || width < MIN_SIDE {
            return Err(Error::InvalidGeometry(format!(
                "image must be at least {MIN_SIDE}x{MIN_SIDE}, got {height}x{width}"
            )));
        }
        if pixels.len() != height * width {
            return Err(Error::InvalidGeometry(format!("{} pixels for a {height}x{width} image", pixels.len())));
        }
        if half_split_row == 0 || half_split_row >= height {
            return Err(Error::InvalidGeometry(format!("split row {half_split_row} outside 1..{height}")));
        }
        if pixels.iter().any(|p| !p.is_finite() || *p < T::zero()) {
            return Err(Error::InvalidGeometry("intensities must be finite and non-negative".into()));
        }
        Ok(Self { pixels, height, width, half_split_row, meta })
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn half_split_row(&self) -> usize {
        self.half_split_row
    }

    pub fn pixels(&self) -> &[T] {
        &self.pixels
    }

    pub fn get(&self, row: usize, col: usize) -> T {
        self.pixels[row * self.width + col]
    }

    pub fn row(&self, row: usize) -> &[T] {
        &self.pixels[row * self.width..(row + 1) * self.width]
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Envelope<T = f64> {
    Uniform,
    /// Gaussian beam profile centred on the image, `width` being the
    /// standard deviation in pixels.
    Gaussian {
        width: T,
    },
}

/// Synthesis parameters. Upper rows follow `½[1 − cosβ cos(k0·x + φ₀ − δ)]`,
/// lower rows `½[1 − cosβ cos(k0·x + φ₀ + δ)]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FringeParams<T = f64> {
    pub delta: T,
    pub beta: T,
    /// Radians per pixel along a row.
    pub k0: T,
    pub height: usize,
    pub width: usize,
    pub noise_sigma: T,
    pub envelope: Envelope<T>,
    pub seed: u64,
    /// Common phase offset φ₀.
    pub phase_offset: T,
}

impl<T: Real> FringeParams<T> {
    /// 480 rows by 640 columns, noiseless, no envelope.
    pub fn new(delta: T, beta: T, k0: T) -> Self {
        Self {
            delta,
            beta,
            k0,
            height: 480,
            width: 640,
            noise_sigma: T::zero(),
            envelope: Envelope::Uniform,
            seed: 0,
            phase_offset: T::zero(),
        }
    }
}

pub fn generate<T: Real>(p: &FringeParams<T>) -> Result<Interferogram<T>> {
    if !(p.k0 > T::zero() && p.k0 < T::PI()) {
        return Err(Error::CarrierOutOfRange(p.k0.to_f64().unwrap_or(f64::NAN)));
    }
    if p.height < MIN_SIDE || p.width < MIN_SIDE {
        return Err(Error::InvalidGeometry(format!(
            "image must be at least {MIN_SIDE}x{MIN_SIDE}, got {}x{}",
            p.height, p.width
        )));
    }
    if !(p.noise_sigma >= T::zero() && p.noise_sigma.is_finite()) {
        return Err(Error::InvalidGeometry(format!("noise sigma must be >= 0, got {}", p.noise_sigma)));
    }
    if let Envelope::Gaussian { width } = p.envelope {
        if !(width > T::zero() && width.is_finite()) {
            return Err(Error::InvalidGeometry(format!("envelope width must be > 0, got {width}")));
        }
    }
    let split = p.height / 2;
    let half = T::lit(0.5);
    let cb = p.beta.cos();
    let (cy, cx) = (T::from_usize(p.height - 1).unwrap() * half, T::from_usize(p.width - 1).unwrap() * half);
    let rows = |sign: T| -> Vec<T> {
        (0..p.width)
            .map(|c| {
                let x = T::from_usize(c).unwrap();
                half * (T::one() - cb * (p.k0 * x + p.phase_offset + sign * p.delta).cos())
            })
            .collect()
    };
    let (up, low) = (rows(-T::one()), rows(T::one()));
    let mut pixels = Vec::with_capacity(p.height * p.width);
    for r in 0..p.height {
        let line = if r < split { &up } else { &low };
        for (c, &v) in line.iter().enumerate() {
            let env = match p.envelope {
                Envelope::Uniform => T::one(),
                Envelope::Gaussian { width } => {
                    let dy = T::from_usize(r).unwrap() - cy;
                    let dx = T::from_usize(c).unwrap() - cx;
                    (-(dx * dx + dy * dy) / (T::lit(2.0) * width * width)).exp()
                }
            };
            pixels.push(v * env);
        }
    }
    let sigma = p.noise_sigma.to_f64().unwrap();
    if sigma > 0.0 {
        let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
        let dist = Normal::new(0.0, sigma).map_err(|e| Error::InvalidGeometry(e.to_string()))?;
        for v in &mut pixels {
            *v = (*v + T::lit(dist.sample(&mut rng))).max(T::zero());
        }
    }
    let meta = FringeMeta {
        k0: p.k0.to_f64(),
        true_delta: p.delta.to_f64(),
        beta: p.beta.to_f64(),
        seed: Some(p.seed),
        noise_sigma: Some(sigma),
    };
    Interferogram::new(pixels, p.height, p.width, split, meta)
}

/// Half-open pixel rectangle `[row_start, row_end) × [col_start, col_end)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Region {
    pub col_start: usize,
    pub col_end: usize,
    pub row_start: usize,
    pub row_end: usize,
}

impl Region {
    pub fn new(col_start: usize, col_end: usize, row_start: usize, row_end: usize) -> Self {
        Self { col_start, col_end, row_start, row_end }
    }

    pub fn width(&self) -> usize {
        self.col_end.saturating_sub(self.col_start)
    }

    pub fn validate<T: Real>(&self, img: &Interferogram<T>) -> Result<()> {
        if self.col_start >= self.col_end || self.row_start >= self.row_end {
            return Err(Error::InvalidRegion(format!("{self:?} is empty")));
        }
        if self.col_end > img.width || self.row_end > img.height {
            return Err(Error::InvalidRegion(format!("{self:?} exceeds the {}x{} image", img.height, img.width)));
        }
        Ok(())
    }
}

/// Four regions over the central 60% of the columns, each straddling the
/// split row and shifted successively downwards by a quarter of the shorter
/// half.
pub fn default_regions<T: Real>(img: &Interferogram<T>) -> Vec<Region> {
    let (w, split) = (img.width, img.half_split_row);
    let (c0, c1) = (w / 5, w - w / 5);
    let q = (split.min(img.height - split) / 4).max(1);
    (0..4)
        .map(|i| Region::new(c0, c1, split.saturating_sub((4 - i) * q), (split + (i + 1) * q).min(img.height)))
        .collect()
}

/// Mean intensity per column.
#[derive(Clone, Debug, PartialEq)]
pub struct FringeProfile<T = f64> {
    pub values: Vec<T>,
}

impl<T: Real> FringeProfile<T> {
    pub fn new(values: Vec<T>) -> Self {
        Self { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Drops `n` samples from each end.
    pub fn trimmed(&self, n: usize) -> Self {
        let end = self.values.len().saturating_sub(n);
        Self { values: self.values.get(n..end).unwrap_or(&[]).to_vec() }
    }
}

fn rows_average<T: Real>(
    img: &Interferogram<T>,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> FringeProfile<T> {
    let n = T::from_usize(rows.len()).unwrap();
    let mut acc = vec![T::zero(); cols.len()];
    for r in rows {
        for (a, &v) in acc.iter_mut().zip(&img.row(r)[cols.clone()]) {
            *a = *a + v;
        }
    }
    FringeProfile::new(acc.into_iter().map(|a| a / n).collect())
}

/// Per-column means of the region's upper-half and lower-half rows.
pub fn column_average<T: Real>(
    img: &Interferogram<T>,
    region: &Region,
) -> Result<(FringeProfile<T>, FringeProfile<T>)> {
    region.validate(img)?;
    let split = img.half_split_row;
    if region.row_start >= split || region.row_end <= split {
        return Err(Error::InvalidRegion(format!("{region:?} does not intersect both halves (split at row {split})")));
    }
    let cols = region.col_start..region.col_end;
    Ok((rows_average(img, region.row_start..split, cols.clone()), rows_average(img, split..region.row_end, cols)))
}

/// Per-column mean of a region lying within one half.
pub fn half_average<T: Real>(img: &Interferogram<T>, region: &Region) -> Result<FringeProfile<T>> {
    region.validate(img)?;
    let split = img.half_split_row;
    if region.row_start < split && region.row_end > split {
        return Err(Error::InvalidRegion(format!("{region:?} straddles the split row {split}")));
    }
    Ok(rows_average(img, region.row_start..region.row_end, region.col_start..region.col_end))
}

pub fn savitzky_golay<T: Real>(profile: &FringeProfile<T>, cfg: FilterConfig) -> Result<FringeProfile<T>> {
    cfg.validate()?;
    if cfg.window > profile.len() {
        return Err(Error::InvalidFilter(format!(
            "window {} longer than the {}-sample profile",
            cfg.window,
            profile.len()
        )));
    }
    Ok(FringeProfile::new(smooth(&profile.values, cfg)?))
}

/// Least-squares fit `a + b cos(k u) + c sin(k u)` with `u = index − center`
/// over `values[range]`. Returns `(a, b, c, residual sum of squares)`.
fn harmonic_fit<T: Real>(values: &[T], range: std::ops::Range<usize>, center: T, k: T) -> (T, T, T, T) {
    let basis = |j: usize| {
        let u = k * (T::from_usize(j).unwrap() - center);
        [T::one(), u.cos(), u.sin()]
    };
    let mut ata = vec![vec![T::zero(); 3]; 3];
    let mut aty = vec![T::zero(); 3];
    for j in range.clone() {
        let f = basis(j);
        for r in 0..3 {
            for c in 0..3 {
                ata[r][c] = ata[r][c] + f[r] * f[c];
            }
            aty[r] = aty[r] + f[r] * values[j];
        }
    }
    let x = solve(ata, aty);
    let rss = range.fold(T::zero(), |s, j| {
        let f = basis(j);
        let e = values[j] - (x[0] * f[0] + x[1] * f[1] + x[2] * f[2]);
        s + e * e
    });
    (x[0], x[1], x[2], rss)
}

/// Dominant spatial carrier of a profile in radians per sample.
///
/// The peak of the Hann-windowed spectrum must exceed every component more
/// than two bins away by a factor of two. The peak is then refined by a
/// least-squares sinusoid fit.
pub fn estimate_carrier<T: Real>(profile: &FringeProfile<T>) -> Result<T> {
    let v = &profile.values;
    let n = v.len();
    if n < 8 {
        return Err(Error::NoCarrier);
    }
    let nt = T::from_usize(n).unwrap();
    let hann: Vec<T> =
        (0..n).map(|j| T::lit(0.5) * (T::one() - (T::TAU() * T::from_usize(j).unwrap() / nt).cos())).collect();
    let wsum = hann.iter().fold(T::zero(), |s, &w| s + w);
    let wmean = hann.iter().zip(v).fold(T::zero(), |s, (&w, &x)| s + w * x) / wsum;
    let mut buf: Vec<Complex<T>> =
        hann.iter().zip(v).map(|(&w, &x)| Complex::new(w * (x - wmean), T::zero())).collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let mags: Vec<T> = buf[..=n / 2].iter().map(|z| z.norm()).collect();
    let m = (1..mags.len()).fold(1, |best, j| if mags[j] > mags[best] { j } else { best });
    let rest = mags.iter().enumerate().filter(|(j, _)| j.abs_diff(m) > 2).fold(T::zero(), |s, (_, &x)| s.max(x));
    if mags[m] <= T::lit(2.0) * rest || mags[m] == T::zero() || mags[m].is_nan() {
        return Err(Error::NoCarrier);
    }
    let bin = T::TAU() / nt;
    let coarse = if m + 1 < mags.len() {
        let (off, _) = crate::extrema::parabolic_vertex(mags[m - 1], mags[m], mags[m + 1]);
        T::from_usize(m).unwrap() + off
    } else {
        T::from_usize(m).unwrap()
    };
    let center = (nt - T::one()) * T::lit(0.5);
    let rss = |k: T| harmonic_fit(v, 0..n, center, k).3;
    let (mut lo, mut hi) =
        (((coarse - T::lit(0.5)) * bin).max(bin * T::lit(0.25)), ((coarse + T::lit(0.5)) * bin).min(T::PI()));
    let g = T::lit(0.618_033_988_749_894_8);
    let (mut a, mut b) = (hi - g * (hi - lo), lo + g * (hi - lo));
    let (mut fa, mut fb) = (rss(a), rss(b));
    for _ in 0..200 {
        if hi - lo <= T::epsilon() * hi {
            break;
        }
        if fa <= fb {
            hi = b;
            b = a;
            fb = fa;
            a = hi - g * (hi - lo);
            fa = rss(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + g * (hi - lo);
            fb = rss(b);
        }
    }
    let k = (lo + hi) * T::lit(0.5);
    let (a0, b0, c0, _) = harmonic_fit(v, 0..n, center, k);
    if (b0 * b0 + c0 * c0).sqrt() <= T::VIS_TOL * a0.abs().max(T::epsilon()) {
        return Err(Error::NoCarrier);
    }
    Ok(k)
}

/// Argument of the profile's carrier component at `k` (about the profile
/// centre), with the negative-frequency image removed by the joint fit.
fn carrier_phase<T: Real>(v: &[T], k: T) -> T {
    let center = (T::from_usize(v.len()).unwrap() - T::one()) * T::lit(0.5);
    let (_, b, c, _) = harmonic_fit(v, 0..v.len(), center, k);
    // b cos + c sin = Re[(b − ic) e^{iku}]
    (-c).atan2(b)
}

fn same_length<T: Real>(up: &FringeProfile<T>, low: &FringeProfile<T>) -> Result<()> {
    if up.len() != low.len() {
        return Err(Error::InvalidRegion(format!("profiles differ in length ({} vs {})", up.len(), low.len())));
    }
    Ok(())
}

/// Shift `2δ` in (−π, π] from the carrier phases of both profiles at the
/// carrier estimated from `up`.
pub fn shift_by_fourier<T: Real>(up: &FringeProfile<T>, low: &FringeProfile<T>) -> Result<T> {
    same_length(up, low)?;
    let k = estimate_carrier(up)?;
    Ok(shift_by_fourier_at(up, low, k))
}

/// As [`shift_by_fourier`] with the carrier given.
pub fn shift_by_fourier_at<T: Real>(up: &FringeProfile<T>, low: &FringeProfile<T>, k0: T) -> T {
    wrap_pi(carrier_phase(&low.values, k0) - carrier_phase(&up.values, k0))
}

/// Fringe extremum located to sub-pixel precision.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Extremum<T = f64> {
    /// Column within the profile.
    pub position: T,
    pub value: T,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtremumKind {
    Minimum,
    Maximum,
}

/// Interior extrema of a profile with fringe period `2π/k0`.
///
/// Candidates are samples that are extreme within a quarter period on each
/// side. Each is refined by fitting a sinusoid of frequency `k0` over one
/// period around it.
pub fn find_extrema<T: Real>(profile: &FringeProfile<T>, k0: T, kind: ExtremumKind) -> Vec<Extremum<T>> {
    let v = &profile.values;
    let n = v.len();
    let period = T::TAU() / k0;
    let quarter = (period * T::lit(0.25)).round().to_usize().unwrap_or(1).max(1);
    let halfp = (period * T::lit(0.5)).round().to_usize().unwrap_or(1).max(2);
    let better = |a: T, b: T| match kind {
        ExtremumKind::Minimum => a < b,
        ExtremumKind::Maximum => a > b,
    };
    let mut out = Vec::new();
    if n < 2 * quarter + 1 {
        return out;
    }
    for j in quarter..n - quarter {
        let left_ok = (j - quarter..j).all(|i| better(v[j], v[i]));
        let right_ok = (j + 1..=j + quarter).all(|i| !better(v[i], v[j]));
        if !(left_ok && right_ok) {
            continue;
        }
        let range = j.saturating_sub(halfp)..(j + halfp + 1).min(n);
        if range.len() < 5 {
            continue;
        }
        let (a, b, c, _) = harmonic_fit(v, range, T::from_usize(j).unwrap(), k0);
        let amp = (b * b + c * c).sqrt();
        if amp <= T::DEG_TOL * (T::one() + a.abs()) {
            continue;
        }
        let theta = c.atan2(b);
        let (u, value) = match kind {
            ExtremumKind::Minimum => (wrap_pi(theta + T::PI()) / k0, a - amp),
            ExtremumKind::Maximum => (wrap_pi(theta) / k0, a + amp),
        };
        if u.abs() > period * T::lit(0.25) {
            continue;
        }
        out.push(Extremum { position: T::from_usize(j).unwrap() + u, value });
    }
    out
}

/// Shift `2δ` in (−π, π] from the displacement of paired fringe minima:
/// `k0·(x_up − x_low)`, averaged on the circle.
///
/// Each minimum of `up` is paired with the nearest minimum of `low`; pairs
/// further apart than half a period are dropped.
pub fn shift_by_minima<T: Real>(up: &FringeProfile<T>, low: &FringeProfile<T>, k0: T) -> Result<T> {
    same_length(up, low)?;
    if !(k0 > T::zero() && k0 < T::PI()) {
        return Err(Error::CarrierOutOfRange(k0.to_f64().unwrap_or(f64::NAN)));
    }
    let mu = find_extrema(up, k0, ExtremumKind::Minimum);
    let ml = find_extrema(low, k0, ExtremumKind::Minimum);
    if mu.len() < 2 || ml.len() < 2 {
        return Err(Error::TooFewMinima);
    }
    let halfp = T::PI() / k0;
    let shifts: Vec<T> = mu
        .iter()
        .filter_map(|u| {
            let d = ml.iter().map(|l| u.position - l.position).fold(T::infinity(), |best, d| {
                if d.abs() < best.abs() {
                    d
                } else {
                    best
                }
            });
            (d.abs() <= halfp).then(|| wrap_pi(k0 * d))
        })
        .collect();
    if shifts.is_empty() {
        return Err(Error::AmbiguousPairing);
    }
    let (mean, resultant) = circular_mean(&shifts);
    if resultant < T::lit(0.5) {
        return Err(Error::AmbiguousPairing);
    }
    Ok(mean)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Method {
    #[default]
    Minima,
    Fourier,
    /// Minima estimate, with the Fourier estimate alongside for comparison.
    Both,
}

/// Successful estimate for one region.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RegionValue<T = f64> {
    pub k0: T,
    pub shift: T,
    pub minima: Option<T>,
    pub fourier: Option<T>,
}

#[derive(Debug)]
pub struct RegionEstimate<T = f64> {
    pub region: Region,
    pub outcome: Result<RegionValue<T>>,
}

#[derive(Debug)]
pub struct Retrieval<T = f64> {
    /// Circular mean of the regional shifts, in (−π, π].
    pub estimate: T,
    /// Sample standard deviation across regions; `None` with a single region.
    pub uncertainty: Option<T>,
    /// Minima minus Fourier estimate (wrapped) when both were computed.
    pub discrepancy: Option<T>,
    pub regions: Vec<RegionEstimate<T>>,
}

impl<T: Real> Retrieval<T> {
    pub fn successes(&self) -> impl Iterator<Item = &RegionValue<T>> {
        self.regions.iter().filter_map(|r| r.outcome.as_ref().ok())
    }
}

fn region_pipeline<T: Real>(
    img: &Interferogram<T>,
    region: &Region,
    cfg: FilterConfig,
    method: Method,
) -> Result<RegionValue<T>> {
    let (up, low) = column_average(img, region)?;
    let margin = cfg.window / 2;
    let up = savitzky_golay(&up, cfg)?.trimmed(margin);
    let low = savitzky_golay(&low, cfg)?.trimmed(margin);
    let k0 = estimate_carrier(&up)?;
    let (minima, fourier) = match method {
        Method::Minima => (Some(shift_by_minima(&up, &low, k0)?), None),
        Method::Fourier => (None, Some(shift_by_fourier_at(&up, &low, k0))),
        Method::Both => (Some(shift_by_minima(&up, &low, k0)?), Some(shift_by_fourier_at(&up, &low, k0))),
    };
    let shift = minima.or(fourier).expect("one estimator always runs");
    Ok(RegionValue { k0, shift, minima, fourier })
}

fn spread<T: Real>(values: &[T], mean: T) -> Option<T> {
    (values.len() >= 2).then(|| {
        let ss = values.iter().fold(T::zero(), |s, &v| s + wrap_pi(v - mean).powi(2));
        (ss / T::from_usize(values.len() - 1).unwrap()).sqrt()
    })
}

/// Runs column averaging, smoothing and shift estimation on each region and
/// combines the regional results. Samples within half a filter window of
/// either end are discarded after smoothing. Fails only when every region
/// fails.
pub fn retrieve_phase<T: Real>(
    img: &Interferogram<T>,
    regions: &[Region],
    cfg: FilterConfig,
    method: Method,
) -> Result<Retrieval<T>> {
    if regions.is_empty() {
        return Err(Error::InvalidRegion("no regions given".into()));
    }
    cfg.validate()?;
    let results: Vec<RegionEstimate<T>> =
        regions.iter().map(|r| RegionEstimate { region: *r, outcome: region_pipeline(img, r, cfg, method) }).collect();
    let shifts: Vec<T> = results.iter().filter_map(|r| r.outcome.as_ref().ok().map(|v| v.shift)).collect();
    if shifts.is_empty() {
        let errors = results.into_iter().filter_map(|r| r.outcome.err()).collect();
        return Err(Error::AllRegionsFailed(errors));
    }
    let (estimate, _) = circular_mean(&shifts);
    let uncertainty = spread(&shifts, estimate);
    let discrepancy = (method == Method::Both).then(|| {
        let fourier: Vec<T> = results.iter().filter_map(|r| r.outcome.as_ref().ok().and_then(|v| v.fourier)).collect();
        wrap_pi(estimate - circular_mean(&fourier).0)
    });
    Ok(Retrieval { estimate, uncertainty, discrepancy, regions: results })
}

/// Fringe visibility `(I_max − I_min)/(I_max + I_min)` in a region lying
/// within one half, from the mean values of the located extrema of the
/// smoothed profile.
pub fn measure_visibility<T: Real>(img: &Interferogram<T>, region: &Region, cfg: FilterConfig) -> Result<T> {
    let profile = half_average(img, region)?;
    let smoothed = savitzky_golay(&profile, cfg)?.trimmed(cfg.window / 2);
    let k0 = estimate_carrier(&smoothed)?;
    let mean = |e: &[Extremum<T>]| e.iter().fold(T::zero(), |s, x| s + x.value) / T::from_usize(e.len()).unwrap();
    let minima = find_extrema(&smoothed, k0, ExtremumKind::Minimum);
    if minima.is_empty() {
        return Err(Error::TooFewMinima);
    }
    let maxima = find_extrema(&smoothed, k0, ExtremumKind::Maximum);
    if maxima.is_empty() {
        return Err(Error::TooFewMaxima);
    }
    let (lo, hi) = (mean(&minima), mean(&maxima));
    Ok((hi - lo) / (hi + lo))
}

/// Region of the upper half used for visibility: the central 60% of the
/// columns and the middle half of the upper rows.
pub fn default_visibility_region<T: Real>(img: &Interferogram<T>) -> Region {
    let (w, split) = (img.width, img.half_split_row);
    Region::new(w / 5, w - w / 5, split / 4, split - split / 4)
}
