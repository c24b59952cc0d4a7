//! Globally adaptive composite Gauss-Legendre quadrature along piecewise contours.
//!
//! A contour is a list of [`Piece`]s (horizontal segments and circular arcs), each
//! parametrised by a real variable. Panels are bisected worst-first until the sum of
//! the per-panel error estimates `|G₂ₙ - Gₙ|` meets the tolerance.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::num::NonZeroUsize;
use std::sync::OnceLock;

use gauss_quad::legendre::GaussLegendre;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub(crate) const LOW_ORDER: usize = 10;
pub(crate) const HIGH_ORDER: usize = 2 * LOW_ORDER;
pub(crate) const EVALS_PER_PANEL: usize = LOW_ORDER + HIGH_ORDER;

/// Nodes and weights on `[-1, 1]`, sorted by node.
#[derive(Debug, Clone)]
pub(crate) struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule {
    fn new(order: usize) -> Self {
        let gl = GaussLegendre::new(NonZeroUsize::new(order).expect("order > 0"));
        let mut pairs: Vec<(f64, f64)> = gl.as_node_weight_pairs().to_vec();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        Rule {
            nodes: pairs.iter().map(|p| p.0).collect(),
            weights: pairs.iter().map(|p| p.1).collect(),
        }
    }
}

/// Cached Gauss-Legendre rule of the given order.
pub(crate) fn rule(order: usize) -> &'static Rule {
    static LOW: OnceLock<Rule> = OnceLock::new();
    static HIGH: OnceLock<Rule> = OnceLock::new();
    static SIXTEEN: OnceLock<Rule> = OnceLock::new();
    match order {
        LOW_ORDER => LOW.get_or_init(|| Rule::new(LOW_ORDER)),
        HIGH_ORDER => HIGH.get_or_init(|| Rule::new(HIGH_ORDER)),
        16 => SIXTEEN.get_or_init(|| Rule::new(16)),
        _ => panic!("no cached Gauss-Legendre rule of order {order}"),
    }
}

/// One smooth piece of a contour.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Piece {
    /// `z = t + i·offset`, `t ∈ [t0, t1]`.
    Line { offset: f64, t0: f64, t1: f64 },
    /// `z = center + radius·e^{iθ}`, `θ` from `theta0` to `theta1`.
    Arc {
        center: Complex64,
        radius: f64,
        theta0: f64,
        theta1: f64,
    },
}

impl Piece {
    /// Point and derivative `dz/ds` at parameter `s`.
    #[inline]
    pub fn eval(&self, s: f64) -> (Complex64, Complex64) {
        match *self {
            Piece::Line { offset, .. } => (Complex64::new(s, offset), Complex64::new(1.0, 0.0)),
            Piece::Arc { center, radius, .. } => {
                let e = Complex64::from_polar(radius, s);
                (center + e, Complex64::new(0.0, 1.0) * e)
            }
        }
    }

    /// Euclidean distance from `p` to this piece.
    pub fn distance_to(&self, p: Complex64) -> f64 {
        match *self {
            Piece::Line { offset, t0, t1 } => {
                let t = p.re.clamp(t0.min(t1), t0.max(t1));
                (p - Complex64::new(t, offset)).norm()
            }
            Piece::Arc {
                center,
                radius,
                theta0,
                theta1,
            } => {
                let d = p - center;
                let (lo, hi) = (theta0.min(theta1), theta0.max(theta1));
                let mut best = f64::INFINITY;
                if d.norm() > 0.0 {
                    // closest circle point, if its angle lies on the arc
                    let mut ang = d.arg();
                    while ang < lo {
                        ang += 2.0 * std::f64::consts::PI;
                    }
                    if ang <= hi {
                        best = (d.norm() - radius).abs();
                    }
                } else {
                    best = radius;
                }
                for th in [theta0, theta1] {
                    best = best.min((p - center - Complex64::from_polar(radius, th)).norm());
                }
                best
            }
        }
    }
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Integral {
    pub value: Complex64,
    pub error: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct AdaptiveOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_evals: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    piece: usize,
    s0: f64,
    s1: f64,
    value: Complex64,
    error: f64,
    seq: usize,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

fn panel_estimate<F>(piece: &Piece, s0: f64, s1: f64, f: &mut F) -> Result<(Complex64, f64)>
where
    F: FnMut(Complex64) -> Result<Complex64>,
{
    let half = 0.5 * (s1 - s0);
    let mid = 0.5 * (s1 + s0);
    let mut apply = |r: &Rule| -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (x, w) in r.nodes.iter().zip(&r.weights) {
            let (z, dz) = piece.eval(mid + half * x);
            acc += f(z)? * dz * *w;
        }
        Ok(acc * half)
    };
    let low = apply(rule(LOW_ORDER))?;
    let high = apply(rule(HIGH_ORDER))?;
    let value = high;
    let error = (high - low).norm();
    if !(value.is_finite() && error.is_finite()) {
        return Err(Error::Pole(
            "integrand is not finite on the contour".to_string(),
        ));
    }
    Ok((value, error))
}

/// Integrate `f(z) dz` over the given panels of the given pieces.
pub(crate) fn integrate<F>(
    pieces: &[Piece],
    initial: &[(usize, f64, f64)],
    mut f: F,
    opts: AdaptiveOptions,
) -> Result<Integral>
where
    F: FnMut(Complex64) -> Result<Complex64>,
{
    let mut heap = BinaryHeap::with_capacity(initial.len() * 2);
    let mut evaluations = 0usize;
    let mut seq = 0usize;
    let mut total = Complex64::new(0.0, 0.0);
    let mut total_err = 0.0;
    for &(piece, s0, s1) in initial {
        let (value, error) = panel_estimate(&pieces[piece], s0, s1, &mut f)?;
        evaluations += EVALS_PER_PANEL;
        total += value;
        total_err += error;
        heap.push(Panel {
            piece,
            s0,
            s1,
            value,
            error,
            seq,
        });
        seq += 1;
    }

    let target = |total: Complex64| opts.abs_tol.max(opts.rel_tol * total.norm());
    let mut converged = total_err <= target(total);
    while !converged {
        let worst = match heap.peek() {
            Some(p) => *p,
            None => break,
        };
        let width = (worst.s1 - worst.s0).abs();
        let scale = worst.s0.abs().max(worst.s1.abs()).max(1.0);
        if width < 1e-13 * scale {
            // cannot refine further; accept what we have
            break;
        }
        if evaluations + 2 * EVALS_PER_PANEL > opts.max_evals {
            let value = sum_in_order(&heap);
            return Err(Error::Accuracy {
                best: value,
                estimate: heap.iter().map(|p| p.error).sum(),
                evaluations,
            });
        }
        heap.pop();
        let mid = 0.5 * (worst.s0 + worst.s1);
        let piece = &pieces[worst.piece];
        let (lv, le) = panel_estimate(piece, worst.s0, mid, &mut f)?;
        let (rv, re) = panel_estimate(piece, mid, worst.s1, &mut f)?;
        evaluations += 2 * EVALS_PER_PANEL;
        total += lv + rv - worst.value;
        total_err += le + re - worst.error;
        for (s0, s1, value, error) in [(worst.s0, mid, lv, le), (mid, worst.s1, rv, re)] {
            heap.push(Panel {
                piece: worst.piece,
                s0,
                s1,
                value,
                error,
                seq,
            });
            seq += 1;
        }
        // running sums drift; refresh them periodically
        if seq.is_multiple_of(64) {
            total = heap.iter().map(|p| p.value).sum();
            total_err = heap.iter().map(|p| p.error).sum();
        }
        converged = total_err <= target(total);
    }
    Ok(Integral {
        value: sum_in_order(&heap),
        error: heap.iter().map(|p| p.error).sum(),
        evaluations,
    })
}

/// Sum panel values in contour order so the result does not depend on heap layout.
fn sum_in_order(heap: &BinaryHeap<Panel>) -> Complex64 {
    let mut panels: Vec<&Panel> = heap.iter().collect();
    panels.sort_by(|a, b| a.piece.cmp(&b.piece).then(a.s0.total_cmp(&b.s0)));
    panels.iter().map(|p| p.value).sum()
}

/// Breakpoints on `[-l, l]`: uniform near the origin and the given features,
/// geometric further out.
pub(crate) fn line_breakpoints(l: f64, hints: &[f64], scale: f64) -> Vec<f64> {
    let feature = hints.iter().fold(scale.max(1.0), |m, h| m.max(h.abs()));
    let core = (2.0 * feature + 1.0).min(l);
    let mut points = Vec::new();
    let n_core = 16;
    for j in 0..=n_core {
        points.push(-core + 2.0 * core * j as f64 / n_core as f64);
    }
    let mut r = core;
    while r < l {
        r = (2.0 * r).min(l);
        points.push(r);
        points.push(-r);
    }
    points.push(l);
    points.push(-l);
    for &h in hints {
        if h.is_finite() && h.abs() < l {
            points.push(h);
        }
    }
    points.sort_by(f64::total_cmp);
    points.dedup_by(|a, b| (*a - *b).abs() < 1e-9 * feature);
    points
}

/// Split `[a, b]` into the given breakpoints restricted to the interval.
pub(crate) fn restrict(points: &[f64], a: f64, b: f64) -> Vec<f64> {
    let mut out = vec![a];
    for &p in points {
        if p > a + 1e-12 && p < b - 1e-12 {
            out.push(p);
        }
    }
    out.push(b);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> AdaptiveOptions {
        AdaptiveOptions {
            abs_tol: 1e-13,
            rel_tol: 1e-12,
            max_evals: 200_000,
        }
    }

    #[test]
    fn rules_integrate_polynomials_exactly() {
        for order in [LOW_ORDER, HIGH_ORDER, 16] {
            let r = rule(order);
            let s: f64 = r.nodes.iter().zip(&r.weights).map(|(x, w)| w * x.powi(4)).sum();
            assert!((s - 0.4).abs() < 1e-14);
            assert!(r.nodes.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn adaptive_line_integral_with_near_singularity() {
        // ∫_{-50}^{50} dt / ((t - 0.3)² + 0.01) = 10 (atan(497) + atan(503))
        let pieces = [Piece::Line {
            offset: 0.0,
            t0: -50.0,
            t1: 50.0,
        }];
        let bp = line_breakpoints(50.0, &[0.3], 1.0);
        let initial: Vec<_> = bp.windows(2).map(|w| (0, w[0], w[1])).collect();
        let r = integrate(
            &pieces,
            &initial,
            |z| Ok(Complex64::new(1.0, 0.0) / ((z - 0.3) * (z - 0.3) + 0.01)),
            opts(),
        )
        .unwrap();
        let exact = 10.0 * (497f64.atan() + 503f64.atan());
        assert!((r.value.re - exact).abs() < 1e-10, "{} vs {}", r.value.re, exact);
        assert!(r.value.im.abs() < 1e-12);
    }

    #[test]
    fn arc_integral_of_analytic_function() {
        // upper half circle from θ = π to 0 of z² dz equals ∫_{-1}^{1} t² dt reversed sign
        let pieces = [Piece::Arc {
            center: Complex64::new(0.0, 0.0),
            radius: 1.0,
            theta0: std::f64::consts::PI,
            theta1: 0.0,
        }];
        let r = integrate(&pieces, &[(0, std::f64::consts::PI, 0.0)], |z| Ok(z * z), opts()).unwrap();
        assert!((r.value - Complex64::new(2.0 / 3.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn budget_exhaustion_reports_best_value() {
        let pieces = [Piece::Line {
            offset: 0.0,
            t0: -1.0,
            t1: 1.0,
        }];
        let opts = AdaptiveOptions {
            abs_tol: 1e-30,
            rel_tol: 1e-30,
            max_evals: 200,
        };
        let err = integrate(&pieces, &[(0, -1.0, 1.0)], |z| Ok((z * 40.0).sin().exp()), opts).unwrap_err();
        assert!(matches!(err, Error::Accuracy { .. }));
    }

    #[test]
    fn distance_to_pieces() {
        let line = Piece::Line {
            offset: -0.5,
            t0: -10.0,
            t1: 10.0,
        };
        assert!((line.distance_to(Complex64::new(3.0, 0.5)) - 1.0).abs() < 1e-15);
        let arc = Piece::Arc {
            center: Complex64::new(2.0, 0.0),
            radius: 0.5,
            theta0: std::f64::consts::PI,
            theta1: 0.0,
        };
        assert!((arc.distance_to(Complex64::new(2.0, 1.0)) - 0.5).abs() < 1e-15);
        // below the centre the closest points are the arc endpoints
        assert!((arc.distance_to(Complex64::new(2.0, -1.0)) - 1.25f64.sqrt()).abs() < 1e-15);
    }
}
