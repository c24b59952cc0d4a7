//! Wave configuration, the forcing `P`, the kernel `K` and its explicit
//! α₁-plane factors `K₊∘`, `K₋∘`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::complexfn::kappa;
use crate::error::{Error, Result};

/// A point `α = (α₁, α₂)` of ℂ².
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralPoint {
    pub alpha1: Complex64,
    pub alpha2: Complex64,
}

impl SpectralPoint {
    pub fn new(alpha1: Complex64, alpha2: Complex64) -> Self {
        SpectralPoint { alpha1, alpha2 }
    }

    pub fn is_finite(&self) -> bool {
        self.alpha1.is_finite() && self.alpha2.is_finite()
    }
}

/// On-disk form of [`WaveParams`]: only the three independent inputs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamsFile {
    pub k1: Complex64,
    pub k2: Complex64,
    pub theta0: f64,
}

/// Physical configuration and the spectral constants derived from it.
///
/// Derived fields are always recomputed from `(k1, k2, theta0)`; deserialisation
/// goes through [`make_params`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ParamsFile", into = "ParamsFile")]
pub struct WaveParams {
    /// Wavenumber outside the wedge.
    pub k1: Complex64,
    /// Wavenumber inside the wedge.
    pub k2: Complex64,
    /// Incident angle, strictly inside `(π, 3π/2)`.
    pub theta0: f64,
    pub a1: Complex64,
    pub a2: Complex64,
    pub delta: f64,
    /// Half-width `ε` of the common analyticity strip `S(-ε, ε)`.
    pub epsilon_strip: f64,
}

impl TryFrom<ParamsFile> for WaveParams {
    type Error = Error;

    fn try_from(file: ParamsFile) -> Result<Self> {
        make_params(file.k1, file.k2, file.theta0)
    }
}

impl From<WaveParams> for ParamsFile {
    fn from(p: WaveParams) -> Self {
        ParamsFile {
            k1: p.k1,
            k2: p.k2,
            theta0: p.theta0,
        }
    }
}

impl WaveParams {
    pub fn is_degenerate(&self) -> bool {
        self.k1 == self.k2
    }

    /// `max(|k₁|, |k₂|)`, the natural length scale of spectral features.
    pub fn wavenumber_scale(&self) -> f64 {
        self.k1.norm().max(self.k2.norm())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("params always serialise")
    }
}

/// Build a validated configuration and compute `a₁`, `a₂`, `δ` and `ε`.
///
/// `ε = min(δ/2, δ₁)` where `δ₁` is the minimum of `Im κ(k₁, α₂)` over the closed
/// strip `|Im α₂| ≤ δ/2` (see [`estimate_delta1`]).
pub fn make_params(k1: Complex64, k2: Complex64, theta0: f64) -> Result<WaveParams> {
    for (name, k) in [("k1", k1), ("k2", k2)] {
        if !k.is_finite() {
            return Err(Error::Config(format!("{name} must be finite")));
        }
        if k.im <= 0.0 {
            return Err(Error::Config(format!("Im({name}) must be > 0, got {}", k.im)));
        }
        if k.re <= 0.0 {
            return Err(Error::Config(format!("Re({name}) must be > 0, got {}", k.re)));
        }
    }
    if !(theta0 > PI && theta0 < PI + FRAC_PI_2) {
        return Err(Error::Config(format!(
            "theta0 must lie strictly inside (π, 3π/2), got {theta0}"
        )));
    }
    let a1 = k1 * theta0.cos();
    let a2 = k1 * theta0.sin();
    let delta = (k1.im * theta0.cos().abs()).min(k1.im * theta0.sin().abs());
    if delta.is_nan() || delta <= 0.0 {
        return Err(Error::Config(format!("delta must be positive, got {delta}")));
    }
    let delta1 = estimate_delta1(k1, k2, delta);
    let epsilon_strip = (0.5 * delta).min(delta1);
    if !(epsilon_strip > 0.0 && epsilon_strip <= delta) {
        return Err(Error::Config(format!(
            "strip half-width {epsilon_strip} outside (0, delta = {delta}]"
        )));
    }
    Ok(WaveParams {
        k1,
        k2,
        theta0,
        a1,
        a2,
        delta,
        epsilon_strip,
    })
}

/// Minimum of `Im κ(k₁, α₂)` over `|Im α₂| ≤ δ/2`, `|Re α₂| ≤ 10|k₂|`.
///
/// Coarse grid search followed by a shrinking pattern search around the best node.
pub fn estimate_delta1(k1: Complex64, k2: Complex64, delta: f64) -> f64 {
    let half = 0.5 * delta;
    let re_max = 10.0 * k2.norm();
    let objective = |x: f64, y: f64| kappa(k1, Complex64::new(x, y)).im;
    let (nx, ny) = (2001, 21);
    let mut best = (f64::INFINITY, 0.0, 0.0);
    for i in 0..nx {
        let x = -re_max + 2.0 * re_max * i as f64 / (nx - 1) as f64;
        for j in 0..ny {
            let y = -half + 2.0 * half * j as f64 / (ny - 1) as f64;
            let v = objective(x, y);
            if v < best.0 {
                best = (v, x, y);
            }
        }
    }
    let (mut value, mut x, mut y) = best;
    let mut step_x = 2.0 * re_max / (nx - 1) as f64;
    let mut step_y = 2.0 * half / (ny - 1) as f64;
    while step_x > 1e-12 * re_max.max(1.0) {
        let mut improved = false;
        for (dx, dy) in [(step_x, 0.0), (-step_x, 0.0), (0.0, step_y), (0.0, -step_y)] {
            let cx = (x + dx).clamp(-re_max, re_max);
            let cy = (y + dy).clamp(-half, half);
            let v = objective(cx, cy);
            if v < value {
                value = v;
                x = cx;
                y = cy;
                improved = true;
            }
        }
        if !improved {
            step_x *= 0.5;
            step_y *= 0.5;
        }
    }
    value
}

fn checked(value: Complex64, what: &str, alpha: SpectralPoint) -> Result<Complex64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Pole(format!(
            "{what} is singular at ({}, {})",
            alpha.alpha1, alpha.alpha2
        )))
    }
}

/// `P(α) = 1/((α₁ - a₁)(α₂ - a₂))`.
pub fn forcing_p(params: &WaveParams, alpha: SpectralPoint) -> Result<Complex64> {
    let d1 = alpha.alpha1 - params.a1;
    let d2 = alpha.alpha2 - params.a2;
    if d1 == Complex64::new(0.0, 0.0) || d2 == Complex64::new(0.0, 0.0) {
        return Err(Error::Pole(format!(
            "P has a pole at alpha1 = a1 or alpha2 = a2 (alpha = ({}, {}))",
            alpha.alpha1, alpha.alpha2
        )));
    }
    checked(1.0 / (d1 * d2), "P", alpha)
}

/// `K(α) = (k₂² - α₁² - α₂²) / (k₁² - α₁² - α₂²)`.
pub fn kernel_k(params: &WaveParams, alpha: SpectralPoint) -> Result<Complex64> {
    let s = alpha.alpha1 * alpha.alpha1 + alpha.alpha2 * alpha.alpha2;
    let den = params.k1 * params.k1 - s;
    if den == Complex64::new(0.0, 0.0) {
        return Err(Error::Pole("K has a pole where α₁² + α₂² = k₁²".into()));
    }
    checked((params.k2 * params.k2 - s) / den, "K", alpha)
}

/// `K₊∘(α) = (κ(k₂, α₂) + α₁) / (κ(k₁, α₂) + α₁)`, analytic on `UHP(-ε) × S(-ε, ε)`.
pub fn k_plus_circ(params: &WaveParams, alpha: SpectralPoint) -> Result<Complex64> {
    let num = kappa(params.k2, alpha.alpha2) + alpha.alpha1;
    let den = kappa(params.k1, alpha.alpha2) + alpha.alpha1;
    if den == Complex64::new(0.0, 0.0) {
        return Err(Error::Pole("K+circ has a pole where κ(k₁, α₂) = -α₁".into()));
    }
    checked(num / den, "K+circ", alpha)
}

/// `K₋∘(α) = (κ(k₂, α₂) - α₁) / (κ(k₁, α₂) - α₁)`, analytic on `LHP(ε) × S(-ε, ε)`.
pub fn k_minus_circ(params: &WaveParams, alpha: SpectralPoint) -> Result<Complex64> {
    let num = kappa(params.k2, alpha.alpha2) - alpha.alpha1;
    let den = kappa(params.k1, alpha.alpha2) - alpha.alpha1;
    if den == Complex64::new(0.0, 0.0) {
        return Err(Error::Pole("K-circ has a pole where κ(k₁, α₂) = α₁".into()));
    }
    checked(num / den, "K-circ", alpha)
}

/// Parameters of the phase-portrait figures: `k₁ = 1 + i`, `k₂ = 2 + i`, `ϑ₀ = 5π/4`.
pub fn figure_params() -> WaveParams {
    make_params(Complex64::new(1.0, 1.0), Complex64::new(2.0, 1.0), 1.25 * PI)
        .expect("figure parameters are valid")
}

/// Equal-wavenumber configuration `k₁ = k₂ = 1 + i`, `ϑ₀ = 5π/4`.
pub fn degenerate_params() -> WaveParams {
    make_params(Complex64::new(1.0, 1.0), Complex64::new(1.0, 1.0), 1.25 * PI)
        .expect("degenerate parameters are valid")
}
