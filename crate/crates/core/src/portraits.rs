//! Domain-coloring phase portraits.
//!
//! A [`PhaseRaster`] samples a complex function at pixel centres. Images encode
//! the phase as hue, `(phase + π)/2π`, at full saturation and value; pixels where
//! evaluation failed are black. Row 0 is the top of the window.

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complexfn::{kappa, mylog};
use crate::error::{Error, Result};
use crate::kernel::{k_minus_circ, k_plus_circ, SpectralPoint, WaveParams};

/// `(re_min, re_max, im_min, im_max)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl Window {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Self {
        Window { re_min, re_max, im_min, im_max }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = [self.re_min, self.re_max, self.im_min, self.im_max]
            .iter()
            .all(|v| v.is_finite())
            && self.re_max > self.re_min
            && self.im_max > self.im_min;
        if ok {
            Ok(())
        } else {
            Err(Error::Usage(format!("degenerate window {self:?}")))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseRaster {
    pub window: Window,
    pub width: usize,
    pub height: usize,
    /// Row-major, in `(-π, π]`.
    pub phase: Vec<f64>,
    pub modulus: Vec<f64>,
    /// Linear pixel indices, ascending.
    pub failures: Vec<usize>,
}

impl PhaseRaster {
    pub fn index(&self, col: usize, row: usize) -> usize {
        row * self.width + col
    }

    /// Point sampled by pixel `(col, row)`.
    pub fn pixel_center(&self, col: usize, row: usize) -> Complex64 {
        pixel_center(&self.window, self.width, self.height, col, row)
    }

    /// Width of a pixel in the complex plane (the larger of the two sides).
    pub fn pixel_size(&self) -> f64 {
        let dx = (self.window.re_max - self.window.re_min) / self.width as f64;
        let dy = (self.window.im_max - self.window.im_min) / self.height as f64;
        dx.max(dy)
    }

    pub fn failed(&self, i: usize) -> bool {
        self.failures.binary_search(&i).is_ok()
    }
}

fn pixel_center(w: &Window, width: usize, height: usize, col: usize, row: usize) -> Complex64 {
    let dx = (w.re_max - w.re_min) / width as f64;
    let dy = (w.im_max - w.im_min) / height as f64;
    Complex64::new(w.re_min + (col as f64 + 0.5) * dx, w.im_max - (row as f64 + 0.5) * dy)
}

fn principal_phase(z: Complex64) -> f64 {
    let a = z.arg();
    if a <= -PI {
        PI
    } else {
        a
    }
}

/// Samples `f` at every pixel centre. Errors and non-finite values mark the pixel
/// as failed and are otherwise ignored.
pub fn render<F>(f: F, window: Window, width: usize, height: usize) -> Result<PhaseRaster>
where
    F: Fn(Complex64) -> Result<Complex64> + Sync,
{
    window.validate()?;
    if width < 16 || height < 16 {
        return Err(Error::Usage(format!(
            "raster must be at least 16x16, got {width}x{height}"
        )));
    }
    let rows: Vec<Vec<Option<Complex64>>> = (0..height)
        .into_par_iter()
        .map(|row| {
            (0..width)
                .map(|col| {
                    let z = pixel_center(&window, width, height, col, row);
                    f(z).ok().filter(|v| v.is_finite())
                })
                .collect()
        })
        .collect();
    let mut phase = Vec::with_capacity(width * height);
    let mut modulus = Vec::with_capacity(width * height);
    let mut failures = Vec::new();
    for (i, v) in rows.into_iter().flatten().enumerate() {
        match v {
            Some(v) => {
                phase.push(principal_phase(v));
                modulus.push(v.norm());
            }
            None => {
                phase.push(0.0);
                modulus.push(0.0);
                failures.push(i);
            }
        }
    }
    Ok(PhaseRaster {
        window,
        width,
        height,
        phase,
        modulus,
        failures,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Format {
    Ppm,
    Png,
}

/// Hue-only by default; `Modulus` darkens bands of `log₂|f|` to show its contours.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Shading {
    #[default]
    None,
    Modulus,
}

/// HSV to RGB at full saturation, `hue ∈ [0, 1]`.
pub fn hue_to_rgb(hue: f64, value: f64) -> [u8; 3] {
    let h = (hue.rem_euclid(1.0)) * 6.0;
    let sector = (h.floor() as usize).min(5);
    let f = h - sector as f64;
    let (r, g, b) = match sector {
        0 => (1.0, f, 0.0),
        1 => (1.0 - f, 1.0, 0.0),
        2 => (0.0, 1.0, f),
        3 => (0.0, 1.0 - f, 1.0),
        4 => (f, 0.0, 1.0),
        _ => (1.0, 0.0, 1.0 - f),
    };
    let q = |c: f64| (c * value * 255.0).round().clamp(0.0, 255.0) as u8;
    [q(r), q(g), q(b)]
}

/// Inverse of [`hue_to_rgb`] on fully saturated colours.
pub fn rgb_to_hue(rgb: [u8; 3]) -> f64 {
    let [r, g, b] = rgb.map(|c| c as f64 / 255.0);
    let max = r.max(g).max(b);
    let min = r.min(g).min(b);
    let d = max - min;
    if d == 0.0 {
        return 0.0;
    }
    let h = if max == r {
        ((g - b) / d).rem_euclid(6.0)
    } else if max == g {
        (b - r) / d + 2.0
    } else {
        (r - g) / d + 4.0
    };
    h / 6.0
}

/// RGB bytes of the raster, row by row.
pub fn encode_rgb(raster: &PhaseRaster, shading: Shading) -> Vec<u8> {
    let mut out = Vec::with_capacity(3 * raster.width * raster.height);
    let mut failures = raster.failures.iter().peekable();
    for (i, (&p, &m)) in raster.phase.iter().zip(&raster.modulus).enumerate() {
        if failures.peek() == Some(&&i) {
            failures.next();
            out.extend_from_slice(&[0, 0, 0]);
            continue;
        }
        let value = match shading {
            Shading::None => 1.0,
            Shading::Modulus if m > 0.0 => 0.75 + 0.25 * m.log2().rem_euclid(1.0),
            Shading::Modulus => 0.75,
        };
        out.extend_from_slice(&hue_to_rgb((p + PI) / (2.0 * PI), value));
    }
    out
}

fn io_error(path: &Path, e: impl std::fmt::Display) -> Error {
    Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    }
}

/// Binary P6 bytes, header `P6\n{w} {h}\n255\n`.
pub fn ppm_bytes(raster: &PhaseRaster, shading: Shading) -> Vec<u8> {
    let mut out = format!("P6\n{} {}\n255\n", raster.width, raster.height).into_bytes();
    out.extend(encode_rgb(raster, shading));
    out
}

pub fn write_image(raster: &PhaseRaster, path: &Path, format: Format) -> Result<()> {
    write_image_with(raster, path, format, Shading::None)
}

pub fn write_image_with(
    raster: &PhaseRaster,
    path: &Path,
    format: Format,
    shading: Shading,
) -> Result<()> {
    let file = File::create(path).map_err(|e| io_error(path, e))?;
    let mut w = BufWriter::new(file);
    match format {
        Format::Ppm => w
            .write_all(&ppm_bytes(raster, shading))
            .map_err(|e| io_error(path, e))?,
        Format::Png => {
            let mut enc = png::Encoder::new(&mut w, raster.width as u32, raster.height as u32);
            enc.set_color(png::ColorType::Rgb);
            enc.set_depth(png::BitDepth::Eight);
            let mut writer = enc.write_header().map_err(|e| io_error(path, e))?;
            writer
                .write_image_data(&encode_rgb(raster, shading))
                .map_err(|e| io_error(path, e))?;
            writer.finish().map_err(|e| io_error(path, e))?;
        }
    }
    w.flush().map_err(|e| io_error(path, e))
}

/// Width, height and RGB payload of a binary P6 file with maxval 255.
pub fn read_ppm(path: &Path) -> Result<(usize, usize, Vec<u8>)> {
    let mut bytes = Vec::new();
    File::open(path)
        .and_then(|mut f| f.read_to_end(&mut bytes))
        .map_err(|e| io_error(path, e))?;
    let bad = |m: &str| io_error(path, format!("not a P6 image: {m}"));
    let mut fields = Vec::new();
    let mut pos = 0;
    while fields.len() < 4 {
        while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if pos < bytes.len() && bytes[pos] == b'#' {
            while pos < bytes.len() && bytes[pos] != b'\n' {
                pos += 1;
            }
            continue;
        }
        let start = pos;
        while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if start == pos {
            return Err(bad("truncated header"));
        }
        fields.push(String::from_utf8_lossy(&bytes[start..pos]).into_owned());
    }
    pos += 1;
    if fields[0] != "P6" || fields[3] != "255" {
        return Err(bad("unsupported magic or maxval"));
    }
    let width: usize = fields[1].parse().map_err(|_| bad("width"))?;
    let height: usize = fields[2].parse().map_err(|_| bad("height"))?;
    let payload = bytes.get(pos..).unwrap_or_default();
    if payload.len() != 3 * width * height {
        return Err(bad("payload size"));
    }
    Ok((width, height, payload.to_vec()))
}

/// Two horizontally or vertically adjacent pixels, `(col, row)`, with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PixelEdge {
    pub a: (usize, usize),
    pub b: (usize, usize),
}

fn fold(d: f64) -> f64 {
    let r = (d + PI).rem_euclid(2.0 * PI) - PI;
    if r <= -PI {
        PI
    } else {
        r
    }
}

fn scan_edges(raster: &PhaseRaster, jump: impl Fn(f64, f64) -> bool) -> BTreeSet<PixelEdge> {
    let mut edges = BTreeSet::new();
    for row in 0..raster.height {
        for col in 0..raster.width {
            let i = raster.index(col, row);
            if raster.failed(i) {
                continue;
            }
            for (c2, r2) in [(col + 1, row), (col, row + 1)] {
                if c2 >= raster.width || r2 >= raster.height {
                    continue;
                }
                let j = raster.index(c2, r2);
                if raster.failed(j) {
                    continue;
                }
                if jump(raster.phase[i], raster.phase[j]) {
                    edges.insert(PixelEdge { a: (col, row), b: (c2, r2) });
                }
            }
        }
    }
    edges
}

/// Adjacent pixel pairs whose phase difference, folded to `(-π, π]`, exceeds
/// `threshold` in magnitude. The folded phase is continuous wherever the function
/// is, so the edges trace cuts, poles and zeros but not the principal-argument
/// seam.
pub fn discontinuity_detect(raster: &PhaseRaster, threshold: f64) -> BTreeSet<PixelEdge> {
    scan_edges(raster, |p, q| fold(q - p).abs() > threshold)
}

/// Like [`discontinuity_detect`] but on the raw principal argument, so the seam
/// `arg = π` of the sampled values is reported as well.
pub fn argument_jumps(raster: &PhaseRaster, threshold: f64) -> BTreeSet<PixelEdge> {
    scan_edges(raster, |p, q| (q - p).abs() > threshold)
}

/// Midpoint of an edge in the complex plane.
pub fn edge_midpoint(raster: &PhaseRaster, e: &PixelEdge) -> Complex64 {
    0.5 * (raster.pixel_center(e.a.0, e.a.1) + raster.pixel_center(e.b.0, e.b.1))
}

/// Winding number of `f` around a circle, from `samples` phase increments.
pub fn winding_number<F>(f: F, center: Complex64, radius: f64, samples: usize) -> Result<i64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let n = samples.max(8);
    let at = |k: usize| center + radius * Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64);
    let mut total = 0.0;
    let mut prev = f(at(0))?;
    for k in 1..=n {
        let v = f(at(k % n))?;
        total += (v / prev).arg();
        prev = v;
    }
    Ok((total / (2.0 * PI)).round() as i64)
}

/// Expected singular structure of a portrait built from `κ`-type square roots:
/// cuts where `c - z² ∈ [0, ∞)` for each `c` in `cuts`, plus isolated poles and
/// zeros.
#[derive(Debug, Clone, Default)]
pub struct CutStructure {
    pub cuts: Vec<Complex64>,
    pub points: Vec<Complex64>,
}

impl CutStructure {
    /// Branch points `±√c`.
    pub fn branch_points(&self) -> Vec<Complex64> {
        self.cuts.iter().flat_map(|c| [c.sqrt(), -c.sqrt()]).collect()
    }

    fn crosses_cut(&self, za: Complex64, zb: Complex64, slack: f64) -> bool {
        self.cuts.iter().any(|&c| {
            let wa = c - za * za;
            let wb = c - zb * zb;
            if wa.im * wb.im > 0.0 {
                return false;
            }
            let t = if wa.im == wb.im { 0.5 } else { wa.im / (wa.im - wb.im) };
            let z = za + t * (zb - za);
            let w = c - z * z;
            w.re >= -slack * (2.0 * z.norm()).max(1.0)
        })
    }

    /// Edges that are neither a cut crossing nor within `radius` pixels of a
    /// branch point, pole or zero.
    pub fn unexplained(
        &self,
        raster: &PhaseRaster,
        edges: &BTreeSet<PixelEdge>,
        radius: f64,
    ) -> Vec<PixelEdge> {
        let h = raster.pixel_size();
        let mut special = self.points.clone();
        special.extend(self.branch_points());
        edges
            .iter()
            .filter(|e| {
                let za = raster.pixel_center(e.a.0, e.a.1);
                let zb = raster.pixel_center(e.b.0, e.b.1);
                let mid = 0.5 * (za + zb);
                !(self.crosses_cut(za, zb, h)
                    || special.iter().any(|p| (mid - p).norm() <= radius * h))
            })
            .copied()
            .collect()
    }

    /// Branch points inside the window with no detected edge within `radius`
    /// pixels.
    pub fn unanchored(
        &self,
        raster: &PhaseRaster,
        edges: &BTreeSet<PixelEdge>,
        radius: f64,
    ) -> Vec<Complex64> {
        let h = raster.pixel_size();
        let w = raster.window;
        self.branch_points()
            .into_iter()
            .filter(|p| p.re > w.re_min && p.re < w.re_max && p.im > w.im_min && p.im < w.im_max)
            .filter(|p| {
                !edges
                    .iter()
                    .any(|e| (edge_midpoint(raster, e) - p).norm() <= radius * h)
            })
            .collect()
    }
}

/// The reference portraits and their expected singular structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Figure {
    /// `κ(3+i, z)`.
    Kappa,
    /// `K₋∘(·, 2 + i/5)` in the α₁ plane.
    KMinusCircAlpha1,
    /// `K₋∘(2 + i/5, ·)` in the α₂ plane.
    KMinusCircAlpha2,
    /// `K₊∘(·, 2 - i/5)` in the α₁ plane.
    KPlusCircAlpha1,
    /// `K₊∘(2 - i/5, ·)` in the α₂ plane.
    KPlusCircAlpha2,
    /// `mylog K₋∘(2 + i/5, ·)` around the strip.
    MylogKMinusCirc,
    /// `mylog K₊∘(2 - i/5, ·)` around the strip.
    MylogKPlusCirc,
}

/// Outcome of rendering one reference portrait and comparing its detected
/// discontinuities with the expected structure.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FigureReport {
    pub figure: Figure,
    pub window: Window,
    pub threshold: f64,
    pub edges: usize,
    pub failures: usize,
    /// Edges not explained by a cut, branch point, pole or zero.
    pub unexplained: usize,
    /// Branch points with no nearby edge.
    pub unanchored: usize,
    /// Edges with both pixels strictly inside the strip, for the `mylog` figures.
    pub strip_edges: Option<usize>,
    pub pass: bool,
}

impl Figure {
    pub const ALL: [Figure; 7] = [
        Figure::Kappa,
        Figure::KMinusCircAlpha1,
        Figure::KMinusCircAlpha2,
        Figure::KPlusCircAlpha1,
        Figure::KPlusCircAlpha2,
        Figure::MylogKMinusCirc,
        Figure::MylogKPlusCirc,
    ];

    fn fixed(self) -> Complex64 {
        match self {
            Figure::KPlusCircAlpha1 | Figure::KPlusCircAlpha2 | Figure::MylogKPlusCirc => {
                Complex64::new(2.0, -0.2)
            }
            _ => Complex64::new(2.0, 0.2),
        }
    }

    pub fn window(self, params: &WaveParams) -> Window {
        match self {
            Figure::Kappa => Window::new(-5.0, 5.0, -5.0, 5.0),
            Figure::MylogKMinusCirc | Figure::MylogKPlusCirc => {
                let h = 4.0 * params.epsilon_strip;
                Window::new(-6.0, 6.0, -h, h)
            }
            _ => Window::new(-4.0, 4.0, -4.0, 4.0),
        }
    }

    /// The portrayed function of one complex variable.
    pub fn function(self, params: &WaveParams) -> impl Fn(Complex64) -> Result<Complex64> + Sync {
        let params = *params;
        let fixed = self.fixed();
        move |z| match self {
            Figure::Kappa => Ok(kappa(Complex64::new(3.0, 1.0), z)),
            Figure::KMinusCircAlpha1 => k_minus_circ(&params, SpectralPoint::new(z, fixed)),
            Figure::KMinusCircAlpha2 => k_minus_circ(&params, SpectralPoint::new(fixed, z)),
            Figure::KPlusCircAlpha1 => k_plus_circ(&params, SpectralPoint::new(z, fixed)),
            Figure::KPlusCircAlpha2 => k_plus_circ(&params, SpectralPoint::new(fixed, z)),
            Figure::MylogKMinusCirc => mylog(k_minus_circ(&params, SpectralPoint::new(fixed, z))?),
            Figure::MylogKPlusCirc => mylog(k_plus_circ(&params, SpectralPoint::new(fixed, z))?),
        }
    }

    pub fn structure(self, params: &WaveParams) -> CutStructure {
        let fixed = self.fixed();
        let (k1, k2) = (params.k1, params.k2);
        match self {
            Figure::Kappa => {
                let k = Complex64::new(3.0, 1.0);
                CutStructure { cuts: vec![k * k], points: vec![] }
            }
            Figure::KMinusCircAlpha1 | Figure::KPlusCircAlpha1 => CutStructure {
                cuts: vec![],
                points: [kappa(k1, fixed), kappa(k2, fixed)]
                    .into_iter()
                    .flat_map(|p| [p, -p])
                    .collect(),
            },
            _ => CutStructure {
                cuts: vec![k1 * k1, k2 * k2],
                points: [kappa(k1, fixed), kappa(k2, fixed)]
                    .into_iter()
                    .flat_map(|p| [p, -p])
                    .collect(),
            },
        }
    }

    fn is_mylog(self) -> bool {
        matches!(self, Figure::MylogKMinusCirc | Figure::MylogKPlusCirc)
    }

    /// Renders the portrait and compares it with [`Figure::structure`]. For the
    /// `mylog` figures the requirement is no discontinuity inside the strip.
    pub fn check(self, params: &WaveParams, width: usize, height: usize) -> Result<(PhaseRaster, FigureReport)> {
        let window = self.window(params);
        let raster = render(self.function(params), window, width, height)?;
        let threshold = PI / 2.0;
        let edges = discontinuity_detect(&raster, threshold);
        let structure = self.structure(params);
        let unexplained = structure.unexplained(&raster, &edges, 2.0).len();
        let unanchored = if self == Figure::Kappa {
            structure.unanchored(&raster, &edges, 3.0).len()
        } else {
            0
        };
        let strip_edges = self.is_mylog().then(|| {
            let eps = params.epsilon_strip;
            edges
                .iter()
                .filter(|e| {
                    [e.a, e.b]
                        .iter()
                        .all(|&(c, r)| raster.pixel_center(c, r).im.abs() < eps)
                })
                .count()
        });
        let pass = match strip_edges {
            Some(n) => n == 0 && raster.failures.is_empty(),
            None => !edges.is_empty() && unexplained == 0 && unanchored == 0,
        };
        let report = FigureReport {
            figure: self,
            window,
            threshold,
            edges: edges.len(),
            failures: raster.failures.len(),
            unexplained,
            unanchored,
            strip_edges,
            pass,
        };
        Ok((raster, report))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::figure_params;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn square() -> Window {
        Window::new(-1.0, 1.0, -1.0, 1.0)
    }

    #[test]
    fn identity_phase_at_pixel_centres() {
        let r = render(Ok, square(), 16, 16).unwrap();
        // column 12 of 16 on [-1, 1] is centred at 0.5625; rows 7 and 8 straddle 0
        let p = r.phase[r.index(12, 7)];
        assert!(p > 0.0 && p < 0.2);
        assert!((r.phase[r.index(12, 7)] + r.phase[r.index(12, 8)]).abs() < 1e-15);
        let odd = render(Ok, square(), 17, 17).unwrap();
        let mid = odd.pixel_center(12, 8);
        assert_eq!(mid.im, 0.0);
        assert_eq!(odd.phase[odd.index(12, 8)], 0.0);
    }

    #[test]
    fn constant_has_zero_phase() {
        let r = render(|_| Ok(c(1.0, 0.0)), square(), 20, 16).unwrap();
        assert!(r.phase.iter().all(|&p| p == 0.0));
        assert!(r.failures.is_empty());
    }

    #[test]
    fn negative_reals_map_to_pi() {
        let r = render(|_| Ok(c(-1.0, -0.0)), square(), 16, 16).unwrap();
        assert!(r.phase.iter().all(|&p| p == PI));
    }

    #[test]
    fn small_rasters_and_bad_windows_are_rejected() {
        assert!(render(Ok, square(), 15, 16).is_err());
        assert!(render(Ok, square(), 0, 0).is_err());
        assert!(render(Ok, Window::new(1.0, 1.0, 0.0, 1.0), 16, 16).is_err());
    }

    #[test]
    fn failures_are_recorded_and_black() {
        let r = render(
            |z| {
                if z.re < 0.0 {
                    Err(Error::Domain("left".into()))
                } else {
                    Ok(z)
                }
            },
            square(),
            16,
            16,
        )
        .unwrap();
        assert_eq!(r.failures.len(), 128);
        let bytes = encode_rgb(&r, Shading::None);
        assert_eq!(&bytes[..3], &[0, 0, 0]);
        assert_ne!(&bytes[3 * 15..3 * 16], &[0, 0, 0]);
    }

    #[test]
    fn hue_round_trip() {
        for k in 0..=600 {
            let h = k as f64 / 600.0;
            let back = rgb_to_hue(hue_to_rgb(h, 1.0));
            let d = (back - h).abs().min(1.0 - (back - h).abs());
            assert!(d <= 1.0 / 255.0, "{h} -> {back}");
        }
    }

    #[test]
    fn hue_primaries() {
        assert_eq!(hue_to_rgb(0.0, 1.0), [255, 0, 0]);
        assert_eq!(hue_to_rgb(1.0 / 3.0, 1.0), [0, 255, 0]);
        assert_eq!(hue_to_rgb(2.0 / 3.0, 1.0), [0, 0, 255]);
    }

    #[test]
    fn fold_range() {
        assert!((fold(2.0 * PI - 0.1) + 0.1).abs() < 1e-15);
        assert!((fold(-2.0 * PI + 0.1) - 0.1).abs() < 1e-15);
        assert_eq!(fold(PI), PI);
        assert_eq!(fold(-PI), PI);
    }

    #[test]
    fn identity_has_a_seam_but_no_discontinuity() {
        let r = render(Ok, square(), 32, 32).unwrap();
        assert!(discontinuity_detect(&r, 3.0).is_empty());
        let seam = argument_jumps(&r, 3.0);
        assert!(!seam.is_empty());
        for e in &seam {
            let m = edge_midpoint(&r, e);
            assert!(m.re < 0.0 && m.im.abs() < r.pixel_size());
        }
    }

    #[test]
    fn exp_is_clean() {
        let r = render(|z| Ok(z.exp()), Window::new(-3.0, 3.0, -3.0, 3.0), 64, 64).unwrap();
        assert!(discontinuity_detect(&r, PI / 2.0).is_empty());
    }

    #[test]
    fn mylog_cut_is_the_diagonal() {
        let r = render(mylog, Window::new(-2.0, 2.0, -2.0, 2.0), 80, 80).unwrap();
        let edges = discontinuity_detect(&r, PI / 2.0);
        assert!(!edges.is_empty());
        let h = r.pixel_size();
        for e in &edges {
            let m = edge_midpoint(&r, e);
            let near_zero = (m - 1.0).norm() < 2.0 * h;
            let on_ray = m.re < 0.0 && m.im < 0.0 && (m.re - m.im).abs() < 2.0 * h;
            assert!(near_zero || on_ray, "{m}");
        }
    }

    #[test]
    fn kappa_cuts_start_at_plus_minus_k() {
        let k = c(3.0, 1.0);
        let r = render(|z| Ok(kappa(k, z)), Window::new(-5.0, 5.0, -5.0, 5.0), 120, 120).unwrap();
        let edges = discontinuity_detect(&r, PI / 2.0);
        let s = CutStructure { cuts: vec![k * k], points: vec![] };
        assert!(s.unexplained(&r, &edges, 2.0).is_empty());
        assert!(s.unanchored(&r, &edges, 3.0).is_empty());
    }

    #[test]
    fn winding_counts_zeros_and_poles() {
        assert_eq!(winding_number(|z| Ok(z * z), c(0.0, 0.0), 1.0, 64).unwrap(), 2);
        assert_eq!(winding_number(|z| Ok(1.0 / (z - 0.5)), c(0.5, 0.0), 0.1, 64).unwrap(), -1);
        assert_eq!(winding_number(|z| Ok(z.exp()), c(0.0, 0.0), 1.0, 64).unwrap(), 0);
    }

    #[test]
    fn ppm_header_and_size() {
        let r = render(|_| Ok(c(1.0, 0.0)), square(), 16, 16).unwrap();
        let bytes = ppm_bytes(&r, Shading::None);
        assert!(bytes.starts_with(b"P6\n16 16\n255\n"));
        assert_eq!(bytes.len(), 13 + 3 * 256);
    }

    #[test]
    fn reference_figures() {
        let params = figure_params();
        for fig in Figure::ALL {
            let (_, report) = fig.check(&params, 160, 160).unwrap();
            assert!(report.pass, "{report:?}");
        }
    }
}
