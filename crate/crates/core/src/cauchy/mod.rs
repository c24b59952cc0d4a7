//! Cauchy-integral machinery: sum-splits, bracket operators, multiplicative
//! factorisation and the four kernel factors `K₋₋`, `K₋₊`, `K₊₋`, `K₊₊`.
//!
//! The plus part of a function is integrated on the lower contour `ℝ - iε′`,
//! the minus part on the upper contour `ℝ + iε′`:
//!
//! ```text
//! F₊(α) =  (1/2πi) ∫_{ℝ-iε′} F(z)/(z-α) dz
//! F₋(α) = -(1/2πi) ∫_{ℝ+iε′} F(z)/(z-α) dz
//! ```
//!
//! With [`Route::Auto`] a part is obtained from the complementary part
//! (`F₊ = F - F₋`, or `Ψ₊ = Ψ/Ψ₋`) whenever that keeps the probe point further
//! from the contour. This is the analytic continuation the formulae allow.

mod factors;
pub(crate) mod quadrature;

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::complexfn::mylog;
use crate::error::{Error, Result};
use crate::kernel::{SpectralPoint, WaveParams};
use quadrature::{AdaptiveOptions, Piece};

pub use factors::{k_factor, FactorKind, KernelFactors};

/// Default node budget per contour integral.
pub const DEFAULT_NODE_BUDGET: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TailModel {
    /// Plain truncation at `±L`.
    #[serde(rename = "NONE")]
    None,
    /// Fit `c₁/z + c₂/z² + c₃/z³` beyond `±L` and integrate it in closed form.
    #[serde(rename = "RECIPROCAL")]
    Reciprocal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    #[serde(rename = "ABOVE")]
    Above,
    #[serde(rename = "BELOW")]
    Below,
}

/// A semicircular detour of the contour around `center`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Indentation {
    pub center: Complex64,
    pub radius: f64,
    pub side: Side,
}

/// Horizontal contour `ℝ + i·offset`, truncated to `[-L, L]`, with optional indentations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContourSpec {
    pub offset: f64,
    pub truncation: f64,
    pub node_budget: usize,
    pub tail_model: TailModel,
    #[serde(default)]
    pub indentations: Vec<Indentation>,
}

impl ContourSpec {
    pub fn line(offset: f64, truncation: f64) -> Self {
        ContourSpec {
            offset,
            truncation,
            node_budget: DEFAULT_NODE_BUDGET,
            tail_model: TailModel::Reciprocal,
            indentations: Vec::new(),
        }
    }

    /// Contour at `offset` with the default truncation `100·max(|k₁|, |k₂|)`.
    pub fn for_params(params: &WaveParams, offset: f64) -> Self {
        Self::line(offset, default_truncation(params))
    }

    /// Node spacing `2L / node_budget`.
    pub fn spacing(&self) -> f64 {
        2.0 * self.truncation / self.node_budget as f64
    }

    pub fn validate(&self) -> Result<()> {
        if !self.offset.is_finite() {
            return Err(Error::Usage("contour offset must be finite".into()));
        }
        if !(self.truncation.is_finite() && self.truncation > 0.0) {
            return Err(Error::Usage(format!(
                "contour truncation must be positive, got {}",
                self.truncation
            )));
        }
        if self.node_budget == 0 {
            return Err(Error::Usage("node budget must be positive".into()));
        }
        let mut sorted = self.indentations.clone();
        sorted.sort_by(|a, b| a.center.re.total_cmp(&b.center.re));
        for ind in &sorted {
            if !(ind.radius.is_finite() && ind.radius > 0.0) {
                return Err(Error::Usage(format!(
                    "indentation radius must be positive, got {}",
                    ind.radius
                )));
            }
            if (ind.center.im - self.offset).abs() > 1e-9 * ind.radius.max(1.0) {
                return Err(Error::Usage(format!(
                    "indentation centre {} is not on the contour line Im z = {}",
                    ind.center, self.offset
                )));
            }
            if ind.center.re.abs() + ind.radius >= self.truncation {
                return Err(Error::Usage(format!(
                    "indentation at {} does not fit inside the truncation",
                    ind.center
                )));
            }
        }
        for w in sorted.windows(2) {
            if w[0].center.re + w[0].radius >= w[1].center.re - w[1].radius {
                return Err(Error::Usage(format!(
                    "indentations at {} and {} overlap",
                    w[0].center, w[1].center
                )));
            }
        }
        Ok(())
    }

    /// Pieces of the contour on `[-l, l]`, oriented left to right.
    pub(crate) fn pieces(&self, l: f64) -> Vec<Piece> {
        let mut sorted = self.indentations.clone();
        sorted.sort_by(|a, b| a.center.re.total_cmp(&b.center.re));
        let mut pieces = Vec::with_capacity(2 * sorted.len() + 1);
        let mut t = -l;
        for ind in sorted {
            let (theta0, theta1) = match ind.side {
                Side::Above => (PI, 0.0),
                Side::Below => (-PI, 0.0),
            };
            pieces.push(Piece::Line {
                offset: self.offset,
                t0: t,
                t1: ind.center.re - ind.radius,
            });
            pieces.push(Piece::Arc {
                center: Complex64::new(ind.center.re, self.offset),
                radius: ind.radius,
                theta0,
                theta1,
            });
            t = ind.center.re + ind.radius;
        }
        pieces.push(Piece::Line {
            offset: self.offset,
            t0: t,
            t1: l,
        });
        pieces
    }

    /// Lowest and highest imaginary part reached by the contour.
    pub(crate) fn vertical_extent(&self) -> (f64, f64) {
        let mut lo = self.offset;
        let mut hi = self.offset;
        for ind in &self.indentations {
            match ind.side {
                Side::Above => hi = hi.max(self.offset + ind.radius),
                Side::Below => lo = lo.min(self.offset - ind.radius),
            }
        }
        (lo, hi)
    }
}

/// `100·max(|k₁|, |k₂|)`: `log K∘` decays like `1/z²`, so this keeps the fitted tail small.
pub fn default_truncation(params: &WaveParams) -> f64 {
    100.0 * params.wavenumber_scale().max(0.1)
}

/// The pair of contours `ℝ ∓ iε′` used for plus and minus parts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitContours {
    pub lower: ContourSpec,
    pub upper: ContourSpec,
}

impl SplitContours {
    pub fn symmetric(offset: f64, truncation: f64) -> Self {
        SplitContours {
            lower: ContourSpec::line(-offset.abs(), truncation),
            upper: ContourSpec::line(offset.abs(), truncation),
        }
    }

    /// Contours at `±ε/2` with the default truncation.
    pub fn for_params(params: &WaveParams) -> Self {
        Self::symmetric(0.5 * params.epsilon_strip, default_truncation(params))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureResult {
    pub value: Complex64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

/// Requested accuracy of one contour integral: `err ≤ max(abs, rel·|value|)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            abs: 1e-13,
            rel: 1e-11,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "PLUS")]
    Plus,
    #[serde(rename = "MINUS")]
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Plane {
    #[serde(rename = "ALPHA1")]
    Alpha1,
    #[serde(rename = "ALPHA2")]
    Alpha2,
}

/// How a plus or minus part is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Route {
    /// Direct integral or complement, whichever keeps the probe further from its contour.
    #[default]
    Auto,
    /// Always the direct Cauchy integral on the part's own contour.
    Direct,
}

type Evaluable<'a> = dyn Fn(Complex64) -> Result<Complex64> + Send + Sync + 'a;

/// A function of one complex variable declared analytic on the strip `S(kappa1, kappa2)`.
pub struct Function1D<'a> {
    f: Box<Evaluable<'a>>,
    pub kappa1: f64,
    pub kappa2: f64,
    /// Real abscissae of nearby features; used to seed quadrature breakpoints.
    pub hints: Vec<f64>,
}

impl<'a> Function1D<'a> {
    pub fn new<F>(f: F, kappa1: f64, kappa2: f64) -> Self
    where
        F: Fn(Complex64) -> Result<Complex64> + Send + Sync + 'a,
    {
        Function1D {
            f: Box::new(f),
            kappa1,
            kappa2,
            hints: Vec::new(),
        }
    }

    pub fn with_hints(mut self, hints: impl IntoIterator<Item = f64>) -> Self {
        self.hints.extend(hints);
        self
    }

    #[inline]
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        (self.f)(z)
    }

    fn check_contour(&self, contour: &ContourSpec) -> Result<()> {
        let (lo, hi) = contour.vertical_extent();
        if !(lo > self.kappa1 && hi < self.kappa2) {
            return Err(Error::Usage(format!(
                "contour spanning Im z in [{lo}, {hi}] leaves the analyticity strip ({}, {})",
                self.kappa1, self.kappa2
            )));
        }
        Ok(())
    }
}

/// `±(1/2πi) ∫ f(z)/(z-α) dz` over `contour`, with the default tolerance.
pub fn cauchy_integral(
    f: &Function1D,
    contour: &ContourSpec,
    alpha: Complex64,
    sign: Sign,
) -> Result<QuadratureResult> {
    cauchy_integral_with(f, contour, alpha, sign, Tolerance::default())
}

pub fn cauchy_integral_with(
    f: &Function1D,
    contour: &ContourSpec,
    alpha: Complex64,
    sign: Sign,
    tol: Tolerance,
) -> Result<QuadratureResult> {
    contour.validate()?;
    f.check_contour(contour)?;
    if !alpha.is_finite() {
        return Err(Error::Usage(format!("probe point {alpha} is not finite")));
    }

    let l = match contour.tail_model {
        TailModel::Reciprocal => contour.truncation.max(4.0 * alpha.norm()),
        TailModel::None => contour.truncation,
    };
    let pieces = contour.pieces(l);
    let distance = pieces
        .iter()
        .map(|p| p.distance_to(alpha))
        .fold(f64::INFINITY, f64::min);
    let minimum = 2.0 * contour.spacing();
    if distance < minimum {
        return Err(Error::Proximity {
            alpha,
            distance,
            minimum,
        });
    }

    let initial = initial_panels(&pieces, f, alpha, distance, l);
    let opts = AdaptiveOptions {
        abs_tol: tol.abs * 2.0 * PI,
        rel_tol: tol.rel,
        max_evals: contour.node_budget,
    };
    let prefactor = match sign {
        Sign::Plus => Complex64::new(0.0, -0.5 / PI),
        Sign::Minus => Complex64::new(0.0, 0.5 / PI),
    };

    let body = quadrature::integrate(&pieces, &initial, |z| Ok(f.eval(z)? / (z - alpha)), opts)
        .map_err(|e| match e {
            Error::Accuracy {
                best,
                estimate,
                evaluations,
            } => Error::Accuracy {
                best: best * prefactor,
                estimate: estimate / (2.0 * PI),
                evaluations,
            },
            other => other,
        })?;

    let (tail, tail_err, tail_evals) = tails(f, contour, alpha, l, body.value * prefactor)?;
    let value = (body.value + tail) * prefactor;
    if !value.is_finite() {
        return Err(Error::Pole(format!("Cauchy integral at {alpha} is not finite")));
    }
    Ok(QuadratureResult {
        value,
        error_estimate: (body.error + tail_err) / (2.0 * PI),
        evaluations: body.evaluations + tail_evals,
    })
}

fn initial_panels(
    pieces: &[Piece],
    f: &Function1D,
    alpha: Complex64,
    distance: f64,
    l: f64,
) -> Vec<(usize, f64, f64)> {
    let mut hints = f.hints.clone();
    hints.push(alpha.re);
    for m in [1.0, 4.0] {
        hints.push(alpha.re - m * distance);
        hints.push(alpha.re + m * distance);
    }
    let scale = f.hints.iter().fold(1.0f64, |m, h| m.max(h.abs()));
    let points = quadrature::line_breakpoints(l, &hints, scale);
    let mut panels = Vec::new();
    for (i, piece) in pieces.iter().enumerate() {
        match piece {
            Piece::Line { t0, t1, .. } => {
                if t1 > t0 {
                    for w in quadrature::restrict(&points, *t0, *t1).windows(2) {
                        panels.push((i, w[0], w[1]));
                    }
                }
            }
            Piece::Arc { theta0, theta1, .. } => {
                let n = 4;
                for j in 0..n {
                    let a = theta0 + (theta1 - theta0) * j as f64 / n as f64;
                    let b = theta0 + (theta1 - theta0) * (j + 1) as f64 / n as f64;
                    panels.push((i, a, b));
                }
            }
        }
    }
    panels
}

/// Tail contributions beyond `±l` (before the `±1/2πi` prefactor).
fn tails(
    f: &Function1D,
    contour: &ContourSpec,
    alpha: Complex64,
    l: f64,
    best: Complex64,
) -> Result<(Complex64, f64, usize)> {
    let c = contour.offset;
    let mut total = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    for side in [1.0, -1.0] {
        let zs = [1.0, 2.0, 4.0].map(|m| Complex64::new(side * m * l, c));
        let mut fs = [Complex64::new(0.0, 0.0); 3];
        for (v, z) in fs.iter_mut().zip(zs) {
            *v = f.eval(z)?;
        }
        let (near, far) = (fs[0].norm(), fs[2].norm());
        if near * l > 1e-14 && far > 0.5 * near {
            return Err(Error::Accuracy {
                best,
                estimate: near * l,
                evaluations: 0,
            });
        }
        if contour.tail_model == TailModel::None {
            continue;
        }
        let coeffs = fit_reciprocal(zs, fs);
        let z_end = Complex64::new(side * l, c);
        let mut part = Complex64::new(0.0, 0.0);
        for (m, cm) in coeffs.iter().enumerate() {
            let term = cm * reciprocal_tail(m + 1, z_end, alpha);
            if m == 2 {
                err += term.norm();
            }
            part += term;
        }
        total += side * part;
    }
    Ok((total, err, 6))
}

/// Coefficients of `c₁/z + c₂/z² + c₃/z³` through three samples.
pub(crate) fn fit_reciprocal(zs: [Complex64; 3], fs: [Complex64; 3]) -> [Complex64; 3] {
    // f·z = c₁ + c₂ w + c₃ w², w = 1/z: quadratic interpolation in w
    let w = zs.map(|z| 1.0 / z);
    let y = [fs[0] * zs[0], fs[1] * zs[1], fs[2] * zs[2]];
    let d01 = (y[1] - y[0]) / (w[1] - w[0]);
    let d12 = (y[2] - y[1]) / (w[2] - w[1]);
    let d012 = (d12 - d01) / (w[2] - w[0]);
    let c3 = d012;
    let c2 = d01 - d012 * (w[0] + w[1]);
    let c1 = y[0] - d01 * w[0] + d012 * w[0] * w[1];
    [c1, c2, c3]
}

/// `∫ z^{-m}/(z-α) dz` from `z_end` to `+∞` (Re z_end > 0) or from `-∞` to
/// `z_end` (Re z_end < 0) along the horizontal line, by the series in `α/z`.
/// The sign convention makes both equal `side · Σ αⁿ z_end^{-(m+n)}/(m+n)`.
fn reciprocal_tail(m: usize, z_end: Complex64, alpha: Complex64) -> Complex64 {
    let ratio = alpha / z_end;
    let mut power = z_end.powi(-(m as i32));
    let mut sum = Complex64::new(0.0, 0.0);
    for n in 0..200 {
        let term = power / (m + n) as f64;
        sum += term;
        if term.norm() < 1e-18 * sum.norm().max(1e-300) {
            break;
        }
        power *= ratio;
    }
    sum
}

/// Both parts of `F = F₊ + F₋` at `alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitResult {
    pub plus: QuadratureResult,
    pub minus: QuadratureResult,
}

/// Whether the part of the given sign should come from its complement.
fn use_complement(alpha: Complex64, contours: &SplitContours, sign: Sign, route: Route) -> bool {
    if route == Route::Direct {
        return false;
    }
    let (direct, complement) = match sign {
        Sign::Plus => (alpha.im - contours.lower.offset, contours.upper.offset - alpha.im),
        Sign::Minus => (contours.upper.offset - alpha.im, alpha.im - contours.lower.offset),
    };
    let floor = 2.0 * contours.lower.spacing().max(contours.upper.spacing());
    complement > direct && complement >= floor
}

fn contour_for(contours: &SplitContours, sign: Sign) -> &ContourSpec {
    match sign {
        Sign::Plus => &contours.lower,
        Sign::Minus => &contours.upper,
    }
}

fn opposite(sign: Sign) -> Sign {
    match sign {
        Sign::Plus => Sign::Minus,
        Sign::Minus => Sign::Plus,
    }
}

/// The `sign` part of `f` at `alpha`, via the direct integral or `f - (other part)`.
pub fn split_part(
    f: &Function1D,
    contours: &SplitContours,
    alpha: Complex64,
    sign: Sign,
    route: Route,
    tol: Tolerance,
) -> Result<QuadratureResult> {
    if use_complement(alpha, contours, sign, route) {
        let other = opposite(sign);
        let part = cauchy_integral_with(f, contour_for(contours, other), alpha, other, tol)?;
        Ok(QuadratureResult {
            value: f.eval(alpha)? - part.value,
            error_estimate: part.error_estimate,
            evaluations: part.evaluations + 1,
        })
    } else {
        cauchy_integral_with(f, contour_for(contours, sign), alpha, sign, tol)
    }
}

/// Both parts of the additive split of `f` at `alpha`.
pub fn sum_split(
    f: &Function1D,
    contours: &SplitContours,
    alpha: Complex64,
    route: Route,
    tol: Tolerance,
) -> Result<SplitResult> {
    Ok(SplitResult {
        plus: split_part(f, contours, alpha, Sign::Plus, route, tol)?,
        minus: split_part(f, contours, alpha, Sign::Minus, route, tol)?,
    })
}

/// Bracket `[F]₊∘`, `[F]₋∘` (plane α₁) or `[F]∘₊`, `[F]∘₋` (plane α₂) at `alpha`,
/// with contours at `±ε/2` and breakpoint hints at `±Re k₁`, `±Re k₂`.
pub fn bracket<F>(
    f: F,
    plane: Plane,
    sign: Sign,
    params: &WaveParams,
    alpha: SpectralPoint,
    contours: &SplitContours,
) -> Result<QuadratureResult>
where
    F: Fn(SpectralPoint) -> Result<Complex64> + Send + Sync,
{
    let hints = [params.k1.re, -params.k1.re, params.k2.re, -params.k2.re];
    bracket_with(f, plane, sign, alpha, contours, &hints, Route::Auto, Tolerance::default())
}

#[allow(clippy::too_many_arguments)]
pub fn bracket_with<F>(
    f: F,
    plane: Plane,
    sign: Sign,
    alpha: SpectralPoint,
    contours: &SplitContours,
    hints: &[f64],
    route: Route,
    tol: Tolerance,
) -> Result<QuadratureResult>
where
    F: Fn(SpectralPoint) -> Result<Complex64> + Send + Sync,
{
    let (lo, hi) = strip_around(contours);
    let (g, at) = match plane {
        Plane::Alpha1 => (
            Function1D::new(move |z| f(SpectralPoint::new(z, alpha.alpha2)), lo, hi),
            alpha.alpha1,
        ),
        Plane::Alpha2 => (
            Function1D::new(move |z| f(SpectralPoint::new(alpha.alpha1, z)), lo, hi),
            alpha.alpha2,
        ),
    };
    let g = g.with_hints(hints.iter().copied());
    split_part(&g, contours, at, sign, route, tol)
}

/// A strip just wide enough to contain both contours of the pair.
fn strip_around(contours: &SplitContours) -> (f64, f64) {
    let (lo, _) = contours.lower.vertical_extent();
    let (_, hi) = contours.upper.vertical_extent();
    let pad = 1e-9 * (1.0 + lo.abs().max(hi.abs()));
    (lo - pad, hi + pad)
}

/// Check that `mylog∘g` has no jump of `π` or more between consecutive samples
/// along the contour.
pub fn winding_guard(g: &Function1D, contour: &ContourSpec) -> Result<()> {
    let l = contour.truncation;
    let pieces = contour.pieces(l);
    let scale = g.hints.iter().fold(1.0f64, |m, h| m.max(h.abs()));
    let points = quadrature::line_breakpoints(l, &g.hints, scale);
    let mut prev: Option<(Complex64, f64)> = None;
    for piece in &pieces {
        let params: Vec<f64> = match *piece {
            Piece::Line { t0, t1, .. } => {
                let cuts = quadrature::restrict(&points, t0, t1);
                let mut s = Vec::with_capacity(cuts.len() * 16);
                for w in cuts.windows(2) {
                    let n = 16;
                    for j in 0..n {
                        s.push(w[0] + (w[1] - w[0]) * j as f64 / n as f64);
                    }
                }
                s.push(t1);
                s
            }
            Piece::Arc { theta0, theta1, .. } => {
                (0..=32).map(|j| theta0 + (theta1 - theta0) * j as f64 / 32.0).collect()
            }
        };
        for s in params {
            let (z, _) = piece.eval(s);
            let arg = mylog(g.eval(z)?)?.im;
            if let Some((_, last)) = prev {
                let jump = (arg - last).abs();
                if jump >= PI {
                    return Err(Error::BranchCrossing { jump, near: z });
                }
            }
            prev = Some((z, arg));
        }
    }
    Ok(())
}

/// Both factors of `g = g₊·g₋` at `alpha`, as logarithm integrals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Factorisation {
    pub plus: Complex64,
    pub minus: Complex64,
    /// Error estimates of the two log integrals.
    pub log_error: (f64, f64),
    pub evaluations: usize,
}

/// `(Ψ₊(α), Ψ₋(α))` with `Ψ₊Ψ₋ = g`, using `mylog` as the logarithm.
pub fn factorize_log(
    g: &Function1D,
    contour_low: &ContourSpec,
    contour_high: &ContourSpec,
    alpha: Complex64,
) -> Result<(Complex64, Complex64)> {
    let contours = SplitContours {
        lower: contour_low.clone(),
        upper: contour_high.clone(),
    };
    let r = factorize_log_with(g, &contours, alpha, Route::Auto, Tolerance::default())?;
    Ok((r.plus, r.minus))
}

pub fn factorize_log_with(
    g: &Function1D,
    contours: &SplitContours,
    alpha: Complex64,
    route: Route,
    tol: Tolerance,
) -> Result<Factorisation> {
    winding_guard(g, &contours.lower)?;
    winding_guard(g, &contours.upper)?;
    let plus = factor_part(g, contours, alpha, Sign::Plus, route, tol)?;
    let minus = factor_part(g, contours, alpha, Sign::Minus, route, tol)?;
    Ok(Factorisation {
        plus: plus.value,
        minus: minus.value,
        log_error: (plus.error_estimate, minus.error_estimate),
        evaluations: plus.evaluations + minus.evaluations,
    })
}

/// One multiplicative factor of `g` (no winding guard). The error estimate
/// refers to the logarithm.
pub(crate) fn factor_part(
    g: &Function1D,
    contours: &SplitContours,
    alpha: Complex64,
    sign: Sign,
    route: Route,
    tol: Tolerance,
) -> Result<QuadratureResult> {
    let log_g = Function1D {
        f: Box::new(|z| mylog(g.eval(z)?)),
        kappa1: g.kappa1,
        kappa2: g.kappa2,
        hints: g.hints.clone(),
    };
    if use_complement(alpha, contours, sign, route) {
        let other = opposite(sign);
        let part = cauchy_integral_with(&log_g, contour_for(contours, other), alpha, other, tol)?;
        Ok(QuadratureResult {
            value: g.eval(alpha)? / part.value.exp(),
            error_estimate: part.error_estimate,
            evaluations: part.evaluations + 1,
        })
    } else {
        let part = cauchy_integral_with(&log_g, contour_for(contours, sign), alpha, sign, tol)?;
        Ok(QuadratureResult {
            value: part.value.exp(),
            ..part
        })
    }
}
