//! Inverse two-dimensional Fourier transform over a product of contours,
//!
//! ```text
//! ψ(x) = (1/4π²) ∬ Ψ(α) e^{-iα·x} dα
//! ```
//!
//! by tensor-product composite Gauss-Legendre rules. Beyond `±L` the spectral
//! function is replaced by a fitted `c₁/α + c₂/α² + c₃/α³`, whose oscillatory
//! integrals follow from `E₁` by recurrence.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::expint::e1;
use super::PhysicalPoint;
use crate::cauchy::quadrature::{rule, Piece};
use crate::cauchy::{fit_reciprocal, ContourSpec, TailModel};
use crate::complexfn::I;
use crate::error::{Error, Result};
use crate::kernel::SpectralPoint;
use crate::spectra::Evaluable;

const PANEL_ORDER: usize = 16;

/// Nodes and weights (`w·dz/ds`) of one contour.
#[derive(Debug, Clone)]
struct Axis {
    nodes: Vec<Complex64>,
    weights: Vec<Complex64>,
    /// `±L`, `±2L`, `±4L` on the contour line, positive side first.
    tail: [Complex64; 6],
    tails: bool,
    offset: f64,
    truncation: f64,
}

impl Axis {
    fn new(contour: &ContourSpec) -> Result<Self> {
        contour.validate()?;
        let l = contour.truncation;
        let panels_total = (contour.node_budget / PANEL_ORDER).max(1);
        let width = 2.0 * l / panels_total as f64;
        let r = rule(PANEL_ORDER);
        let mut nodes = Vec::new();
        let mut weights = Vec::new();
        let mut push_panel = |piece: &Piece, s0: f64, s1: f64| {
            let half = 0.5 * (s1 - s0);
            let mid = 0.5 * (s1 + s0);
            for (x, w) in r.nodes.iter().zip(&r.weights) {
                let (z, dz) = piece.eval(mid + half * x);
                nodes.push(z);
                weights.push(dz * (w * half));
            }
        };
        for piece in contour.pieces(l) {
            match piece {
                Piece::Line { t0, t1, .. } => {
                    if t1 <= t0 {
                        continue;
                    }
                    let n = ((t1 - t0) / width).ceil().max(1.0) as usize;
                    for k in 0..n {
                        let a = t0 + (t1 - t0) * k as f64 / n as f64;
                        let b = t0 + (t1 - t0) * (k + 1) as f64 / n as f64;
                        push_panel(&piece, a, b);
                    }
                }
                Piece::Arc { theta0, theta1, .. } => {
                    for k in 0..4 {
                        let a = theta0 + (theta1 - theta0) * k as f64 / 4.0;
                        let b = theta0 + (theta1 - theta0) * (k + 1) as f64 / 4.0;
                        push_panel(&piece, a, b);
                    }
                }
            }
        }
        let c = contour.offset;
        let tail = [
            Complex64::new(l, c),
            Complex64::new(2.0 * l, c),
            Complex64::new(4.0 * l, c),
            Complex64::new(-l, c),
            Complex64::new(-2.0 * l, c),
            Complex64::new(-4.0 * l, c),
        ];
        Ok(Axis {
            nodes,
            weights,
            tail,
            tails: contour.tail_model == TailModel::Reciprocal,
            offset: c,
            truncation: l,
        })
    }

    fn len(&self) -> usize {
        self.nodes.len()
    }

    fn extended(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.nodes.iter().copied().chain(self.tail)
    }

    /// `∫ α^{-m} e^{-iαx} dα` beyond `+L` and before `-L`, for `m = 1, 2, 3`.
    fn tail_moments(&self, x: f64) -> ([Complex64; 3], [Complex64; 3]) {
        let sp = Complex64::new(self.truncation, self.offset);
        let sm = Complex64::new(-self.truncation, self.offset);
        let mut jp = [Complex64::new(0.0, 0.0); 3];
        let mut jm = [Complex64::new(0.0, 0.0); 3];
        jp[0] = e1(I * x * sp);
        jm[0] = -e1(I * x * sm);
        let ep = (-I * sp * x).exp();
        let em = (-I * sm * x).exp();
        for m in 2..=3 {
            let k = (m - 1) as f64;
            jp[m - 1] = ep / (k * sp.powi(m as i32 - 1)) - I * x / k * jp[m - 2];
            jm[m - 1] = -em / (k * sm.powi(m as i32 - 1)) - I * x / k * jm[m - 2];
        }
        (jp, jm)
    }
}

/// Tail contribution from samples at the six tail points.
fn tail_sum(axis: &Axis, samples: &[Complex64], moments: &([Complex64; 3], [Complex64; 3])) -> Complex64 {
    let t = &axis.tail;
    let plus = fit_reciprocal([t[0], t[1], t[2]], [samples[0], samples[1], samples[2]]);
    let minus = fit_reciprocal([t[3], t[4], t[5]], [samples[3], samples[4], samples[5]]);
    let mut s = Complex64::new(0.0, 0.0);
    for m in 0..3 {
        s += plus[m] * moments.0[m] + minus[m] * moments.1[m];
    }
    s
}

/// Spectral samples on a product of contours, ready for repeated evaluation at
/// physical points.
pub struct TransformPlan {
    axis1: Axis,
    axis2: Axis,
    /// Row `j` (extended α₂ index) holds samples over the extended α₁ nodes.
    samples: Vec<Complex64>,
    stride: usize,
}

impl TransformPlan {
    pub fn new(spectral: &Evaluable, contour1: &ContourSpec, contour2: &ContourSpec) -> Result<Self> {
        let axis1 = Axis::new(contour1)?;
        let axis2 = Axis::new(contour2)?;
        let ext1: Vec<Complex64> = axis1.extended().collect();
        let ext2: Vec<Complex64> = axis2.extended().collect();
        let stride = ext1.len();
        let rows: Vec<Vec<Complex64>> = ext2
            .par_iter()
            .map(|&b| {
                ext1.iter()
                    .map(|&a| {
                        let v = spectral(SpectralPoint::new(a, b))?;
                        if v.is_finite() {
                            Ok(v)
                        } else {
                            Err(Error::Pole(format!("spectral function not finite at ({a}, {b})")))
                        }
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        Ok(TransformPlan {
            axis1,
            axis2,
            samples: rows.concat(),
            stride,
        })
    }

    /// Quadrature nodes per dimension.
    pub fn nodes(&self) -> (usize, usize) {
        (self.axis1.len(), self.axis2.len())
    }

    pub fn eval(&self, x: PhysicalPoint) -> Result<Complex64> {
        if !(x.x1.is_finite() && x.x2.is_finite()) {
            return Err(Error::Usage("physical point must be finite".into()));
        }
        if (self.axis1.tails && x.x1 == 0.0) || (self.axis2.tails && x.x2 == 0.0) {
            return Err(Error::Usage(
                "the fitted oscillatory tails need x1 != 0 and x2 != 0".into(),
            ));
        }
        let n1 = self.axis1.len();
        let phase1: Vec<Complex64> = self
            .axis1
            .nodes
            .iter()
            .zip(&self.axis1.weights)
            .map(|(a, w)| w * (-I * a * x.x1).exp())
            .collect();
        let mom1 = self.axis1.tail_moments(x.x1);
        let inner: Vec<Complex64> = self
            .samples
            .chunks_exact(self.stride)
            .map(|row| {
                let mut s: Complex64 = row[..n1].iter().zip(&phase1).map(|(f, p)| f * p).sum();
                if self.axis1.tails {
                    s += tail_sum(&self.axis1, &row[n1..], &mom1);
                }
                s
            })
            .collect();
        let n2 = self.axis2.len();
        let mut total: Complex64 = inner[..n2]
            .iter()
            .zip(self.axis2.nodes.iter().zip(&self.axis2.weights))
            .map(|(v, (b, w))| v * w * (-I * b * x.x2).exp())
            .sum();
        if self.axis2.tails {
            let mom2 = self.axis2.tail_moments(x.x2);
            total += tail_sum(&self.axis2, &inner[n2..], &mom2);
        }
        let value = total / (4.0 * PI * PI);
        if !value.is_finite() {
            return Err(Error::Accuracy {
                best: value,
                estimate: f64::INFINITY,
                evaluations: self.samples.len(),
            });
        }
        Ok(value)
    }
}

/// `(1/4π²) ∬ spectral(α) e^{-iα·x} dα` over `contour1 × contour2`.
pub fn inverse_transform(
    spectral: &Evaluable,
    contour1: &ContourSpec,
    contour2: &ContourSpec,
    x: PhysicalPoint,
) -> Result<Complex64> {
    TransformPlan::new(spectral, contour1, contour2)?.eval(x)
}
