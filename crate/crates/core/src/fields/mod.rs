//! Physical-space side: incident wave, reconstruction of fields from spectra and
//! finite-difference checks of the reconstructed fields.
//!
//! The wedge occupies the first quadrant `Q1`. Its faces are the positive
//! `x₁` half-axis (normal `x₂`) and the positive `x₂` half-axis (normal `x₁`).

mod expint;
mod transform;

use std::collections::BTreeSet;
use std::fmt::Write as _;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cauchy::{ContourSpec, Indentation, Side, TailModel};
use crate::complexfn::I;
use crate::error::{Error, Result};
use crate::kernel::WaveParams;
use crate::spectra::Evaluable;

pub use transform::{inverse_transform, TransformPlan};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalPoint {
    pub x1: f64,
    pub x2: f64,
}

impl PhysicalPoint {
    pub fn new(x1: f64, x2: f64) -> Self {
        PhysicalPoint { x1, x2 }
    }
}

/// `φ_in = exp(-i(a₁x₁ + a₂x₂))`.
pub fn incident_field(params: &WaveParams, x: PhysicalPoint) -> Complex64 {
    (-I * (params.a1 * x.x1 + params.a2 * x.x2)).exp()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GammaMode {
    #[serde(rename = "ABSORBING")]
    Absorbing,
    #[serde(rename = "INDENTED")]
    Indented,
}

/// A transform contour with the caveats attached to it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GammaContour {
    pub contour: ContourSpec,
    /// Set for INDENTED mode, whose geometry is a reading of a figure.
    pub experimental: bool,
    pub warnings: Vec<String>,
}

/// Default transform truncation, `20·max(1, |k₁|, |k₂|)`, at one panel of
/// 16 nodes per unit length.
pub fn transform_contour(params: &WaveParams) -> ContourSpec {
    let l = 20.0 * params.wavenumber_scale().max(1.0);
    ContourSpec {
        offset: 0.0,
        truncation: l,
        node_budget: 16 * (2.0 * l).ceil() as usize,
        tail_model: TailModel::Reciprocal,
        indentations: Vec::new(),
    }
}

/// The real line (ABSORBING) or the real line with semicircular detours (INDENTED).
///
/// INDENTED passes above the limiting positions `Re a₁`, `Re a₂`, `-Re k₁`,
/// `-Re k₂` of singularities that sit below the line, and below `+Re k₂`, where
/// the circle `α² = k₂²` meets the axis from above. Coinciding centres are merged.
pub fn gamma_contour(params: &WaveParams, mode: GammaMode, radius: f64) -> Result<GammaContour> {
    let mut contour = transform_contour(params);
    if mode == GammaMode::Absorbing {
        return Ok(GammaContour {
            contour,
            experimental: false,
            warnings: Vec::new(),
        });
    }
    if !(radius.is_finite() && radius > 0.0) {
        return Err(Error::Usage(format!("indentation radius must be positive, got {radius}")));
    }
    let mut centres: Vec<(f64, Side)> = vec![
        (params.a1.re, Side::Above),
        (params.a2.re, Side::Above),
        (-params.k1.re, Side::Above),
        (-params.k2.re, Side::Above),
        (params.k2.re, Side::Below),
    ];
    centres.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut merged: Vec<(f64, Side)> = Vec::new();
    for (x, side) in centres {
        match merged.last() {
            Some(&(last, _)) if (x - last).abs() < 1e-9 => {}
            Some(&(last, _)) if x - last <= 2.0 * radius => {
                return Err(Error::Usage(format!(
                    "indentations at {last} and {x} overlap for radius {radius}"
                )));
            }
            _ => merged.push((x, side)),
        }
    }
    contour.indentations = merged
        .into_iter()
        .map(|(x, side)| Indentation {
            center: Complex64::new(x, 0.0),
            radius,
            side,
        })
        .collect();
    contour.validate()?;
    let mut warnings = Vec::new();
    let im_k = params.k1.im.max(params.k2.im);
    if im_k > 10.0 * radius {
        warnings.push(format!(
            "mode mismatch: Im(k) = {im_k} is large compared with the indentation radius {radius}; \
             ABSORBING mode already avoids every singularity"
        ));
    }
    Ok(GammaContour {
        contour,
        experimental: true,
        warnings,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Region {
    Q1,
    Q2,
    Q3,
    Q4,
    #[serde(rename = "FULL")]
    Full,
}

impl Region {
    /// Membership of a point for the edge fit: open quadrants, and for FULL the
    /// complement of the open first quadrant.
    fn admits(self, x: PhysicalPoint) -> bool {
        match self {
            Region::Q1 => x.x1 > 0.0 && x.x2 > 0.0,
            Region::Q2 => x.x1 < 0.0 && x.x2 > 0.0,
            Region::Q3 => x.x1 < 0.0 && x.x2 < 0.0,
            Region::Q4 => x.x1 > 0.0 && x.x2 < 0.0,
            Region::Full => !(x.x1 > 0.0 && x.x2 > 0.0),
        }
    }
}

/// Samples on the lattice `((i0 + i)h, (j0 + j)h)`. Non-finite entries mark nodes
/// without data and are skipped by every check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldGrid {
    pub region: Region,
    pub spacing: f64,
    pub origin: (i64, i64),
    pub shape: (usize, usize),
    /// Row-major in `i` (the `x₁` index): `values[i * shape.1 + j]`.
    pub values: Vec<Complex64>,
}

impl FieldGrid {
    pub fn new(
        region: Region,
        spacing: f64,
        origin: (i64, i64),
        shape: (usize, usize),
        values: Vec<Complex64>,
    ) -> Result<Self> {
        if !(spacing.is_finite() && spacing > 0.0) {
            return Err(Error::Usage(format!("grid spacing must be positive, got {spacing}")));
        }
        if shape.0 < 2 || shape.1 < 2 {
            return Err(Error::Usage(format!("grid must be at least 2x2, got {shape:?}")));
        }
        if values.len() != shape.0 * shape.1 {
            return Err(Error::Usage("grid values do not match its shape".into()));
        }
        Ok(FieldGrid {
            region,
            spacing,
            origin,
            shape,
            values,
        })
    }

    /// Sample `f` at every node, in parallel; nodes where `f` fails are an error.
    pub fn sample<F>(
        region: Region,
        spacing: f64,
        origin: (i64, i64),
        shape: (usize, usize),
        f: F,
    ) -> Result<Self>
    where
        F: Fn(PhysicalPoint) -> Result<Complex64> + Sync,
    {
        let values = (0..shape.0 * shape.1)
            .into_par_iter()
            .map(|k| {
                let (i, j) = (k / shape.1, k % shape.1);
                f(PhysicalPoint::new(
                    (origin.0 + i as i64) as f64 * spacing,
                    (origin.1 + j as i64) as f64 * spacing,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(region, spacing, origin, shape, values)
    }

    pub fn point(&self, i: usize, j: usize) -> PhysicalPoint {
        PhysicalPoint::new(
            (self.origin.0 + i as i64) as f64 * self.spacing,
            (self.origin.1 + j as i64) as f64 * self.spacing,
        )
    }

    /// Value at absolute lattice index `(p, q)`, if present and finite.
    pub fn at(&self, p: i64, q: i64) -> Option<Complex64> {
        let i = p - self.origin.0;
        let j = q - self.origin.1;
        if i < 0 || j < 0 || i as usize >= self.shape.0 || j as usize >= self.shape.1 {
            return None;
        }
        let v = self.values[i as usize * self.shape.1 + j as usize];
        v.is_finite().then_some(v)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("x1,x2,re,im\n");
        for i in 0..self.shape.0 {
            for j in 0..self.shape.1 {
                let x = self.point(i, j);
                let v = self.values[i * self.shape.1 + j];
                let _ = writeln!(out, "{},{},{},{}", x.x1, x.x2, v.re, v.im);
            }
        }
        out
    }

    fn max_abs(&self) -> f64 {
        self.values
            .iter()
            .filter(|v| v.is_finite())
            .map(|v| v.norm())
            .fold(0.0, f64::max)
    }
}

/// `ψ` on `Q1` and the exterior total field `φ = φ_in + φ_sc` around it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldPair {
    /// Nodes `(i h, j h)`, `1 ≤ i, j ≤ n`.
    pub psi: FieldGrid,
    /// Nodes `(i h, j h)`, `-m ≤ i, j ≤ n`, undefined on the closed `Q1` and on the axes.
    pub phi: FieldGrid,
}

/// Reconstruct `ψ` from `Ψ₊₊` and `φ_sc` from `Φ₃/₄` by inverse transforms over
/// `contour × contour`, on a lattice of spacing `h` reaching `n` nodes along each
/// positive axis and `m` along each negative one.
pub fn reconstruct_fields(
    params: &WaveParams,
    psi_pp: &Evaluable,
    phi_34: &Evaluable,
    contour: &ContourSpec,
    spacing: f64,
    n: usize,
    m: usize,
) -> Result<FieldPair> {
    if n < 3 || m < 3 {
        return Err(Error::Usage(format!(
            "field lattice needs at least 3 nodes per half-axis, got n = {n}, m = {m}"
        )));
    }
    let psi_plan = TransformPlan::new(psi_pp, contour, contour)?;
    let phi_plan = TransformPlan::new(phi_34, contour, contour)?;
    let psi = FieldGrid::sample(Region::Q1, spacing, (1, 1), (n, n), |x| psi_plan.eval(x))?;
    let side = m + 1 + n;
    let nan = Complex64::new(f64::NAN, f64::NAN);
    let phi = FieldGrid::sample(Region::Full, spacing, (-(m as i64), -(m as i64)), (side, side), |x| {
        if x.x1 >= 0.0 && x.x2 >= 0.0 || x.x1 == 0.0 || x.x2 == 0.0 {
            Ok(nan)
        } else {
            Ok(incident_field(params, x) + phi_plan.eval(x)?)
        }
    })?;
    Ok(FieldPair { psi, phi })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Face {
    /// The positive `x₁` half-axis, with normal `x₂`.
    #[serde(rename = "X1_POSITIVE")]
    X1Positive,
    /// The positive `x₂` half-axis, with normal `x₁`.
    #[serde(rename = "X2_POSITIVE")]
    X2Positive,
}

/// Largest value and normal-derivative jumps across a face.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Jumps {
    pub value: f64,
    pub derivative: f64,
    pub samples: usize,
}

/// Extrapolated value and normal derivative at the face from rows at normal
/// offsets `±1, ±2, ±3` (the face row itself is not used).
fn face_trace(grid: &FieldGrid, face: Face, t: i64, side: i64) -> Option<(Complex64, Complex64)> {
    let get = |d: i64| match face {
        Face::X1Positive => grid.at(t, side * d),
        Face::X2Positive => grid.at(side * d, t),
    };
    let (f1, f2, f3) = (get(1)?, get(2)?, get(3)?);
    let value = 3.0 * f1 - 3.0 * f2 + f3;
    let h = grid.spacing;
    let derivative = if side > 0 {
        (-5.0 * f1 + 8.0 * f2 - 3.0 * f3) / (2.0 * h)
    } else {
        (5.0 * f1 - 8.0 * f2 + 3.0 * f3) / (2.0 * h)
    };
    Some((value, derivative))
}

fn covers(grid: &FieldGrid, face: Face, side: i64) -> bool {
    let n = match face {
        Face::X1Positive => (grid.origin.1, grid.shape.1),
        Face::X2Positive => (grid.origin.0, grid.shape.0),
    };
    let (lo, hi) = (n.0, n.0 + n.1 as i64 - 1);
    (1..=3).all(|d| (lo..=hi).contains(&(side * d)))
}

/// Jumps of value and normal derivative between `phi_grid` and `psi_grid` across
/// `face`. `psi_grid` is read from the wedge side (`+`) and `phi_grid` from the
/// outside (`-`) when they cover it, otherwise from whichever side they do cover.
pub fn continuity_check(phi_grid: &FieldGrid, psi_grid: &FieldGrid, face: Face) -> Result<Jumps> {
    if (phi_grid.spacing - psi_grid.spacing).abs() > 1e-12 * phi_grid.spacing {
        return Err(Error::Usage(format!(
            "grids have different spacings {} and {}",
            phi_grid.spacing, psi_grid.spacing
        )));
    }
    let pick = |grid: &FieldGrid, preferred: i64| -> Result<i64> {
        if covers(grid, face, preferred) {
            Ok(preferred)
        } else if covers(grid, face, -preferred) {
            Ok(-preferred)
        } else {
            Err(Error::Usage(format!(
                "grid does not cover three rows on either side of the {face:?} face"
            )))
        }
    };
    let psi_side = pick(psi_grid, 1)?;
    let phi_side = pick(phi_grid, -1)?;
    let tangential = |g: &FieldGrid| match face {
        Face::X1Positive => (g.origin.0, g.shape.0),
        Face::X2Positive => (g.origin.1, g.shape.1),
    };
    let (a, b) = (tangential(phi_grid), tangential(psi_grid));
    let lo = a.0.max(b.0).max(1);
    let hi = (a.0 + a.1 as i64).min(b.0 + b.1 as i64) - 1;
    let mut jumps = Jumps {
        value: 0.0,
        derivative: 0.0,
        samples: 0,
    };
    for t in lo..=hi {
        if let (Some(p), Some(q)) = (
            face_trace(phi_grid, face, t, phi_side),
            face_trace(psi_grid, face, t, psi_side),
        ) {
            jumps.value = jumps.value.max((p.0 - q.0).norm());
            jumps.derivative = jumps.derivative.max((p.1 - q.1).norm());
            jumps.samples += 1;
        }
    }
    if jumps.samples == 0 {
        return Err(Error::Usage("grids share no samples along the face".into()));
    }
    Ok(jumps)
}

/// `max |Δ_h u + k² u| / max |u|` over interior nodes, with the 5-point Laplacian.
pub fn helmholtz_residual(grid: &FieldGrid, k: Complex64) -> Result<f64> {
    if grid.shape.0 < 3 || grid.shape.1 < 3 {
        return Err(Error::Usage("helmholtz residual needs at least a 3x3 grid".into()));
    }
    let scale = grid.max_abs();
    if scale == 0.0 {
        return Ok(0.0);
    }
    let h2 = grid.spacing * grid.spacing;
    let k2 = k * k;
    let (o1, o2) = grid.origin;
    let mut worst: f64 = 0.0;
    for i in 1..grid.shape.0 as i64 - 1 {
        for j in 1..grid.shape.1 as i64 - 1 {
            let (p, q) = (o1 + i, o2 + j);
            let stencil = (
                grid.at(p, q),
                grid.at(p + 1, q),
                grid.at(p - 1, q),
                grid.at(p, q + 1),
                grid.at(p, q - 1),
            );
            if let (Some(c), Some(e), Some(w), Some(n), Some(s)) = stencil {
                let r = (e + w + n + s - 4.0 * c) / h2 + k2 * c;
                worst = worst.max(r.norm());
            }
        }
    }
    Ok(worst / scale)
}

/// Constants of `φ ∼ B + (A₁ sin ϑ + B₁ cos ϑ) r` near the tip. Interior (`Q1`)
/// fits fill `a1p`, `b1p`; every other region fills `a1`, `b1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct EdgeExpansion {
    pub B: Complex64,
    pub A1: Option<Complex64>,
    pub B1: Option<Complex64>,
    pub A1p: Option<Complex64>,
    pub B1p: Option<Complex64>,
    pub fit_radius: f64,
    pub fit_residual: f64,
    pub samples: usize,
}

/// Least-squares fit of `B + A·x₂ + B₁·x₁` plus quadratic terms over samples with
/// `2h ≤ r ≤ fit_radius` in the grid's region.
pub fn edge_expansion_fit(grid: &FieldGrid, fit_radius: f64) -> Result<EdgeExpansion> {
    if !(fit_radius.is_finite() && fit_radius > 0.0) {
        return Err(Error::Usage(format!("fit radius must be positive, got {fit_radius}")));
    }
    let rmin = 2.0 * grid.spacing;
    let mut rows = Vec::new();
    let mut angles = BTreeSet::new();
    for i in 0..grid.shape.0 {
        for j in 0..grid.shape.1 {
            let x = grid.point(i, j);
            let v = grid.values[i * grid.shape.1 + j];
            let r = x.x1.hypot(x.x2);
            if r < rmin - 1e-12 || r > fit_radius || !v.is_finite() || !grid.region.admits(x) {
                continue;
            }
            angles.insert((x.x2.atan2(x.x1) * 1e9).round() as i64);
            rows.push((x, v));
        }
    }
    let basis = 6;
    if angles.len() < 16 || rows.len() < 2 * basis {
        return Err(Error::Usage(format!(
            "edge fit needs at least 16 distinct angles and {} samples within r <= {fit_radius}; got {} angles, {} samples",
            2 * basis,
            angles.len(),
            rows.len()
        )));
    }
    let a = DMatrix::from_fn(rows.len(), basis, |r, c| {
        let x = rows[r].0;
        let v = match c {
            0 => 1.0,
            1 => x.x2,
            2 => x.x1,
            3 => x.x1 * x.x1,
            4 => x.x1 * x.x2,
            _ => x.x2 * x.x2,
        };
        Complex64::new(v, 0.0)
    });
    let b = DVector::from_iterator(rows.len(), rows.iter().map(|r| r.1));
    let coef = a
        .clone()
        .svd(true, true)
        .solve(&b, 1e-14)
        .map_err(|e| Error::Usage(format!("edge fit solve failed: {e}")))?;
    let residual = (&a * &coef - &b).iter().map(|v| v.norm()).fold(0.0, f64::max);
    let interior = grid.region == Region::Q1;
    Ok(EdgeExpansion {
        B: coef[0],
        A1: (!interior).then_some(coef[1]),
        B1: (!interior).then_some(coef[2]),
        A1p: interior.then_some(coef[1]),
        B1p: interior.then_some(coef[2]),
        fit_radius,
        fit_residual: residual,
        samples: rows.len(),
    })
}

/// Discrete `∬_{r ≤ ε} (|∇u|² + |u|²) dx` over interior nodes of the grid's region,
/// with centred differences.
pub fn tip_energy(grid: &FieldGrid, epsilon: f64) -> f64 {
    let h = grid.spacing;
    let (o1, o2) = grid.origin;
    let mut total = 0.0;
    for i in 0..grid.shape.0 as i64 {
        for j in 0..grid.shape.1 as i64 {
            let (p, q) = (o1 + i, o2 + j);
            let x = PhysicalPoint::new(p as f64 * h, q as f64 * h);
            if x.x1.hypot(x.x2) > epsilon || !grid.region.admits(x) {
                continue;
            }
            let stencil = (grid.at(p, q), grid.at(p + 1, q), grid.at(p - 1, q), grid.at(p, q + 1), grid.at(p, q - 1));
            if let (Some(c), Some(e), Some(w), Some(n), Some(s)) = stencil {
                let g1 = (e - w) / (2.0 * h);
                let g2 = (n - s) / (2.0 * h);
                total += (g1.norm_sqr() + g2.norm_sqr() + c.norm_sqr()) * h * h;
            }
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{degenerate_params, figure_params};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn incident_wave_basics() {
        let p = figure_params();
        assert_eq!(incident_field(&p, PhysicalPoint::new(0.0, 0.0)), c(1.0, 0.0));
        let near = incident_field(&p, PhysicalPoint::new(5.0, 5.0)).norm();
        let far = incident_field(&p, PhysicalPoint::new(20.0, 20.0)).norm();
        assert!(far < near && far < 1e-10);
    }

    #[test]
    fn gamma_modes() {
        let p = figure_params();
        let a = gamma_contour(&p, GammaMode::Absorbing, 0.1).unwrap();
        assert_eq!(a.contour.offset, 0.0);
        assert!(a.contour.indentations.is_empty() && !a.experimental);
        let b = gamma_contour(&p, GammaMode::Indented, 0.05).unwrap();
        assert!(b.contour.indentations.len() >= 3);
        assert!(b.experimental);
        assert!(!b.warnings.is_empty());
        assert!(gamma_contour(&p, GammaMode::Indented, -1.0).is_err());
    }

    #[test]
    fn zero_grid_has_zero_residual() {
        let g = FieldGrid::new(Region::Q1, 0.1, (1, 1), (4, 4), vec![c(0.0, 0.0); 16]).unwrap();
        assert_eq!(helmholtz_residual(&g, c(1.0, 1.0)).unwrap(), 0.0);
    }

    #[test]
    fn helmholtz_residual_of_plane_wave() {
        let p = degenerate_params();
        let h = 0.05;
        let g = FieldGrid::sample(Region::Q1, h, (1, 1), (20, 20), |x| Ok(incident_field(&p, x))).unwrap();
        let r = helmholtz_residual(&g, p.k1).unwrap();
        assert!(r <= h * h * p.k1.norm().powi(4), "{r}");
        let wrong = helmholtz_residual(&g, c(2.0, 1.0)).unwrap();
        // largest interior value sits one node in from the largest overall value
        let decay = incident_field(&p, PhysicalPoint::new(2.0 * h, 2.0 * h)).norm()
            / incident_field(&p, PhysicalPoint::new(h, h)).norm();
        let expect = (c(2.0, 1.0) * c(2.0, 1.0) - p.k1 * p.k1).norm() * decay;
        assert!((wrong - expect).abs() < 0.01 * expect, "{wrong} vs {expect}");
    }

    #[test]
    fn continuity_of_identical_and_offset_grids() {
        let p = degenerate_params();
        let g = FieldGrid::sample(Region::Q1, 0.05, (1, 1), (10, 10), |x| Ok(incident_field(&p, x))).unwrap();
        let j = continuity_check(&g, &g, Face::X2Positive).unwrap();
        assert_eq!((j.value, j.derivative), (0.0, 0.0));
        let mut shifted = g.clone();
        for v in &mut shifted.values {
            *v += c(0.25, 0.0);
        }
        let j = continuity_check(&g, &shifted, Face::X1Positive).unwrap();
        assert!((j.value - 0.25).abs() < 1e-12);
        let other = FieldGrid::sample(Region::Q1, 0.04, (1, 1), (10, 10), |x| Ok(incident_field(&p, x))).unwrap();
        assert!(continuity_check(&g, &other, Face::X1Positive).is_err());
    }

    #[test]
    fn edge_fit_recovers_synthetic_field() {
        let b0 = c(0.5, -0.25);
        let g = FieldGrid::sample(Region::Full, 0.05, (-10, -10), (21, 21), |x| Ok(b0 + x.x1)).unwrap();
        let fit = edge_expansion_fit(&g, 0.45).unwrap();
        assert!((fit.B - b0).norm() < 1e-12);
        assert!(fit.A1.unwrap().norm() < 1e-12);
        assert!((fit.B1.unwrap() - 1.0).norm() < 1e-12);
        assert!(fit.A1p.is_none());
    }

    #[test]
    fn edge_fit_needs_samples() {
        let g = FieldGrid::sample(Region::Q1, 0.1, (1, 1), (3, 3), |_| Ok(c(1.0, 0.0))).unwrap();
        assert!(matches!(edge_expansion_fit(&g, 0.3), Err(Error::Usage(_))));
    }

    #[test]
    fn grid_csv_and_json() {
        let g = FieldGrid::new(Region::Q2, 0.5, (-2, 1), (2, 2), vec![c(1.0, 2.0); 4]).unwrap();
        let csv = g.to_csv();
        assert!(csv.starts_with("x1,x2,re,im\n-1,0.5,1,2\n"));
        let json = serde_json::to_string(&g).unwrap();
        let back: FieldGrid = serde_json::from_str(&json).unwrap();
        assert_eq!(back, g);
        assert!(FieldGrid::new(Region::Q1, 0.1, (0, 0), (1, 3), vec![c(0.0, 0.0); 3]).is_err());
    }
}
