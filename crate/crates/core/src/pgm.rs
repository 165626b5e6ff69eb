//! 16-bit binary graymap (`P5`, maxval 65535, big-endian) storage for
//! interferograms, plus a `key=value` sidecar holding the metadata.
//!
//! Intensities are stored as `round(I / full_scale · 65535)`; `full_scale` is
//! written to the sidecar so that noisy images above 1 survive unclipped.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::fringe::{FringeMeta, Interferogram};
use crate::scalar::Real;

const MAXVAL: u16 = u16::MAX;

/// Sidecar path: the image path with `.meta` appended.
pub fn sidecar_path(image: &Path) -> PathBuf {
    let mut s = image.as_os_str().to_owned();
    s.push(".meta");
    PathBuf::from(s)
}

pub fn encode<T: Real>(img: &Interferogram<T>) -> (Vec<u8>, f64) {
    let peak = img.pixels().iter().fold(0.0f64, |m, v| m.max(v.to_f64().unwrap()));
    let full_scale = peak.max(1.0);
    let mut out = format!("P5\n{} {}\n{}\n", img.width(), img.height(), MAXVAL).into_bytes();
    out.reserve(img.pixels().len() * 2);
    for v in img.pixels() {
        let q = (v.to_f64().unwrap() / full_scale * f64::from(MAXVAL)).round().clamp(0.0, f64::from(MAXVAL)) as u16;
        out.extend_from_slice(&q.to_be_bytes());
    }
    (out, full_scale)
}

fn sidecar_text<T: Real>(img: &Interferogram<T>, full_scale: f64) -> String {
    let mut s = String::new();
    let m = &img.meta;
    let _ = writeln!(s, "half_split_row={}", img.half_split_row());
    let _ = writeln!(s, "full_scale={full_scale}");
    let opt = |s: &mut String, k: &str, v: Option<String>| {
        if let Some(v) = v {
            let _ = writeln!(s, "{k}={v}");
        }
    };
    opt(&mut s, "true_delta", m.true_delta.map(|v| v.to_string()));
    opt(&mut s, "k0", m.k0.map(|v| v.to_string()));
    opt(&mut s, "beta", m.beta.map(|v| v.to_string()));
    opt(&mut s, "seed", m.seed.map(|v| v.to_string()));
    opt(&mut s, "noise_sigma", m.noise_sigma.map(|v| v.to_string()));
    s
}

/// Writes the image and its sidecar.
pub fn write<T: Real>(path: &Path, img: &Interferogram<T>) -> Result<()> {
    let (bytes, full_scale) = encode(img);
    fs::write(path, bytes)?;
    fs::write(sidecar_path(path), sidecar_text(img, full_scale))?;
    Ok(())
}

struct Header {
    width: usize,
    height: usize,
    maxval: u32,
    offset: usize,
}

fn parse_header(bytes: &[u8]) -> Result<Header> {
    let mut fields = Vec::with_capacity(4);
    let mut i = 0;
    while fields.len() < 4 {
        while i < bytes.len() && (bytes[i].is_ascii_whitespace() || bytes[i] == b'#') {
            if bytes[i] == b'#' {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
            } else {
                i += 1;
            }
        }
        let start = i;
        while i < bytes.len() && !bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        if start == i {
            return Err(Error::Format("truncated header".into()));
        }
        fields.push(std::str::from_utf8(&bytes[start..i]).map_err(|e| Error::Format(e.to_string()))?);
    }
    if fields[0] != "P5" {
        return Err(Error::Format(format!("expected magic P5, found {}", fields[0])));
    }
    let num = |s: &str| s.parse::<u32>().map_err(|_| Error::Format(format!("bad header field {s:?}")));
    let (width, height, maxval) = (num(fields[1])? as usize, num(fields[2])? as usize, num(fields[3])?);
    if maxval == 0 || maxval > 65535 {
        return Err(Error::Format(format!("maxval {maxval} out of range")));
    }
    // Exactly one whitespace byte separates the header from the raster.
    Ok(Header { width, height, maxval, offset: i + 1 })
}

/// Parses a `P5` raster into intensities in `[0, full_scale]`.
pub fn decode(bytes: &[u8], full_scale: f64) -> Result<(Vec<f64>, usize, usize)> {
    let h = parse_header(bytes)?;
    let bpp = if h.maxval > 255 { 2 } else { 1 };
    let need = h.width * h.height * bpp;
    let raster = bytes
        .get(h.offset..h.offset + need)
        .ok_or_else(|| Error::Format(format!("raster has fewer than {need} bytes")))?;
    let scale = full_scale / f64::from(h.maxval);
    let pixels = if bpp == 2 {
        raster.chunks_exact(2).map(|c| f64::from(u16::from_be_bytes([c[0], c[1]])) * scale).collect()
    } else {
        raster.iter().map(|&b| f64::from(b) * scale).collect()
    };
    Ok((pixels, h.height, h.width))
}

/// Metadata recovered from a sidecar.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Sidecar {
    pub half_split_row: Option<usize>,
    pub full_scale: Option<f64>,
    pub meta: FringeMeta,
}

pub fn parse_sidecar(text: &str) -> Result<Sidecar> {
    let mut sc = Sidecar::default();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) =
            line.split_once('=').ok_or_else(|| Error::Format(format!("sidecar line {}: expected key=value", n + 1)))?;
        let (k, v) = (k.trim(), v.trim());
        let bad = || Error::Format(format!("sidecar line {}: bad value for {k}", n + 1));
        let f = || v.parse::<f64>().map_err(|_| bad());
        match k {
            "half_split_row" => sc.half_split_row = Some(v.parse().map_err(|_| bad())?),
            "full_scale" => sc.full_scale = Some(f()?),
            "true_delta" => sc.meta.true_delta = Some(f()?),
            "k0" => sc.meta.k0 = Some(f()?),
            "beta" => sc.meta.beta = Some(f()?),
            "seed" => sc.meta.seed = Some(v.parse().map_err(|_| bad())?),
            "noise_sigma" => sc.meta.noise_sigma = Some(f()?),
            _ => {}
        }
    }
    Ok(sc)
}

/// Reads an image and, if present, its sidecar. Without a sidecar the split
/// row defaults to the middle row and the full scale to 1.
pub fn read(path: &Path) -> Result<(Interferogram<f64>, bool)> {
    let side = sidecar_path(path);
    let sc = if side.exists() { Some(parse_sidecar(&fs::read_to_string(&side)?)?) } else { None };
    let bytes = fs::read(path)?;
    let full_scale = sc.as_ref().and_then(|s| s.full_scale).unwrap_or(1.0);
    let (pixels, height, width) = decode(&bytes, full_scale)?;
    let split = sc.as_ref().and_then(|s| s.half_split_row).unwrap_or(height / 2);
    let meta = sc.as_ref().map(|s| s.meta.clone()).unwrap_or_default();
    Ok((Interferogram::new(pixels, height, width, split, meta)?, sc.is_some()))
}
