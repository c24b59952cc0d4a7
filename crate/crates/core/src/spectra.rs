//! The two-equation Wiener-Hopf system for `Ψ₊₊` and `Φ₊₋`.
//!
//! Sign convention: every `psi_pp` here is `Ψ₊₊` itself, so Radlow's ansatz is
//!
//! ```text
//! Ψ₊₊ ≈ -P / (K₊₊ · K₋₊(a₁,α₂) · K₋₋(a₁,a₂) · K₊₋(α₁,a₂))
//! ```
//!
//! and the full expression adds `-(1/(K₊₊K₋₊(a₁,α₂))) [G]∘₊` with
//! `G = (K₋₊(a₁,α₂)/K₊₋) [Φ₊₋/K₋∘]₊∘`. The compatibility residual is
//! `P (1/(K₋₋(a₁,α₂)K₊₋) - 1/(K₋₋(a₁,a₂)K₊₋(α₁,a₂))) + [G]∘₋`.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cauchy::{
    bracket_with, FactorKind, KernelFactors, QuadratureResult, Route, Sign, SplitContours,
    Tolerance, Plane,
};
use crate::complexfn::kappa;
use crate::error::{Error, Result};
use crate::kernel::{forcing_p, k_minus_circ, k_plus_circ, kernel_k, SpectralPoint, WaveParams};

/// A function on ℂ² such as `Ψ₊₊` or `Φ₋∘`.
pub type Evaluable<'a> = dyn Fn(SpectralPoint) -> Result<Complex64> + Send + Sync + 'a;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CandidateKind {
    #[serde(rename = "ZERO")]
    Zero,
    #[serde(rename = "RATIONAL_BASIS")]
    RationalBasis,
}

/// `coeff / ((α₁ - pole1)^order1 (α₂ - pole2)^order2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CandidateTerm {
    pub coeff: Complex64,
    pub pole1: Complex64,
    pub order1: u32,
    pub pole2: Complex64,
    pub order2: u32,
}

impl CandidateTerm {
    fn eval(&self, alpha: SpectralPoint) -> Complex64 {
        self.coeff
            / ((alpha.alpha1 - self.pole1).powu(self.order1)
                * (alpha.alpha2 - self.pole2).powu(self.order2))
    }
}

/// Trial `Φ₊₋`: zero, or a sum of rational terms with `Im pole1 < -ε` and `Im pole2 > ε`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralCandidate {
    pub kind: CandidateKind,
    #[serde(default)]
    pub terms: Vec<CandidateTerm>,
}

impl SpectralCandidate {
    pub fn zero() -> Self {
        SpectralCandidate {
            kind: CandidateKind::Zero,
            terms: Vec::new(),
        }
    }

    pub fn rational(terms: Vec<CandidateTerm>) -> Self {
        SpectralCandidate {
            kind: CandidateKind::RationalBasis,
            terms,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.kind == CandidateKind::Zero || self.terms.iter().all(|t| t.coeff == Complex64::new(0.0, 0.0))
    }

    pub fn validate(&self, params: &WaveParams) -> Result<()> {
        if self.kind == CandidateKind::Zero && !self.terms.is_empty() {
            return Err(Error::Usage("a ZERO candidate cannot carry terms".into()));
        }
        let eps = params.epsilon_strip;
        for (i, t) in self.terms.iter().enumerate() {
            if t.order1 == 0 || t.order2 == 0 {
                return Err(Error::Usage(format!("term {i}: orders must be at least 1")));
            }
            if !(t.coeff.is_finite() && t.pole1.is_finite() && t.pole2.is_finite()) {
                return Err(Error::Usage(format!("term {i}: non-finite entries")));
            }
            if t.pole1.im >= -eps {
                return Err(Error::Usage(format!(
                    "term {i}: pole1 = {} must satisfy Im < -{eps}",
                    t.pole1
                )));
            }
            if t.pole2.im <= eps {
                return Err(Error::Usage(format!(
                    "term {i}: pole2 = {} must satisfy Im > {eps}",
                    t.pole2
                )));
            }
        }
        Ok(())
    }

    pub fn eval(&self, alpha: SpectralPoint) -> Complex64 {
        if self.kind == CandidateKind::Zero {
            return Complex64::new(0.0, 0.0);
        }
        self.terms.iter().map(|t| t.eval(alpha)).sum()
    }
}

/// Diagnostic value at one probe point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub probe: [Complex64; 2],
    pub residual: Complex64,
    pub error_estimate: f64,
}

/// The spectral functions of one configuration, evaluable pointwise.
pub struct SpectralFunctions<'a> {
    pub psi_pp: Box<Evaluable<'a>>,
    pub phi_mp: Box<Evaluable<'a>>,
    pub phi_mm: Box<Evaluable<'a>>,
    pub phi_pm: Box<Evaluable<'a>>,
    pub phi_34: Box<Evaluable<'a>>,
}

impl<'a> SpectralFunctions<'a> {
    /// Equal wavenumbers: `Ψ₊₊ = -P` and every `Φ` vanishes.
    pub fn degenerate(params: WaveParams) -> Self {
        let zero = |_: SpectralPoint| Ok(Complex64::new(0.0, 0.0));
        SpectralFunctions {
            psi_pp: Box::new(move |a| Ok(-forcing_p(&params, a)?)),
            phi_mp: Box::new(zero),
            phi_mm: Box::new(zero),
            phi_pm: Box::new(zero),
            phi_34: Box::new(zero),
        }
    }

    /// Functions implied by a candidate `Φ₊₋`: `Ψ₊₊` from the ansatz plus correction,
    /// `Φ₃/₄` from the Wiener-Hopf equation and `Φ₋₊`, `Φ₋₋` as the α₂-parts of
    /// `Φ₃/₄ - Φ₊₋`.
    pub fn from_candidate(system: &'a SpectralSystem, candidate: SpectralCandidate) -> Self {
        let c1 = candidate.clone();
        let c2 = candidate.clone();
        let c3 = candidate.clone();
        let c4 = candidate.clone();
        let phi_mcirc = move |c: &SpectralCandidate, a: SpectralPoint| -> Result<Complex64> {
            let psi = system.psi_pp(c, a)?;
            Ok(system.phi_34_from_psi(psi, a)? - c.eval(a))
        };
        let part = move |c: SpectralCandidate, sign: Sign| {
            move |a: SpectralPoint| -> Result<Complex64> {
                let f = |b: SpectralPoint| phi_mcirc(&c, b);
                Ok(system.bracket(f, Plane::Alpha2, sign, a, system.outer_tol)?.value)
            }
        };
        SpectralFunctions {
            psi_pp: Box::new(move |a| system.psi_pp(&c1, a)),
            phi_mp: Box::new(part(c2, Sign::Plus)),
            phi_mm: Box::new(part(c3, Sign::Minus)),
            phi_pm: Box::new(move |a| Ok(candidate.eval(a))),
            phi_34: Box::new(move |a| {
                let psi = system.psi_pp(&c4, a)?;
                system.phi_34_from_psi(psi, a)
            }),
        }
    }
}

/// Shared state for evaluating the system at many points: parameters and a
/// memoising kernel-factor evaluator.
pub struct SpectralSystem {
    params: WaveParams,
    factors: KernelFactors,
    outer_tol: Tolerance,
}

impl SpectralSystem {
    pub fn new(params: WaveParams) -> Self {
        Self::with_factors(KernelFactors::new(params))
    }

    pub fn with_factors(factors: KernelFactors) -> Self {
        SpectralSystem {
            params: *factors.params(),
            factors,
            outer_tol: Tolerance {
                abs: 1e-11,
                rel: 1e-9,
            },
        }
    }

    pub fn params(&self) -> &WaveParams {
        &self.params
    }

    pub fn factors(&self) -> &KernelFactors {
        &self.factors
    }

    pub fn contours(&self) -> &SplitContours {
        self.factors.contours()
    }

    fn k(&self, which: FactorKind, a1: Complex64, a2: Complex64) -> Result<Complex64> {
        if self.params.is_degenerate() {
            // K±∘ ≡ 1, so every factor is exactly 1
            return Ok(Complex64::new(1.0, 0.0));
        }
        self.factors.factor(which, SpectralPoint::new(a1, a2))
    }

    fn hints(&self) -> [f64; 4] {
        let p = &self.params;
        [p.k1.re, -p.k1.re, p.k2.re, -p.k2.re]
    }

    fn bracket<F>(
        &self,
        f: F,
        plane: Plane,
        sign: Sign,
        alpha: SpectralPoint,
        tol: Tolerance,
    ) -> Result<QuadratureResult>
    where
        F: Fn(SpectralPoint) -> Result<Complex64> + Send + Sync,
    {
        bracket_with(f, plane, sign, alpha, self.contours(), &self.hints(), Route::Auto, tol)
    }

    /// `-P / (K₊₊ K₋₊(a₁,α₂) K₋₋(a₁,a₂) K₊₋(α₁,a₂))`.
    pub fn radlow_ansatz(&self, alpha: SpectralPoint) -> Result<Complex64> {
        let p = forcing_p(&self.params, alpha)?;
        let (a1, a2) = (self.params.a1, self.params.a2);
        let den = self.k(FactorKind::PP, alpha.alpha1, alpha.alpha2)?
            * self.k(FactorKind::MP, a1, alpha.alpha2)?
            * self.k(FactorKind::MM, a1, a2)?
            * self.k(FactorKind::PM, alpha.alpha1, a2)?;
        Ok(-p / den)
    }

    /// `[Φ₊₋/K₋∘]₊∘` or `[Φ₊₋/K₋∘]₋∘` in closed form.
    ///
    /// With `1/K₋∘ = 1 + (κ₁ - κ₂)/(κ₂ - α₁)`, the only pole of a term in the upper
    /// α₁ half-plane is the simple pole at `α₁ = κ₂`; the plus part drops it.
    pub fn inner_bracket(
        &self,
        candidate: &SpectralCandidate,
        alpha: SpectralPoint,
        sign: Sign,
    ) -> Result<Complex64> {
        let k1 = kappa(self.params.k1, alpha.alpha2);
        let k2 = kappa(self.params.k2, alpha.alpha2);
        let mut plus = Complex64::new(0.0, 0.0);
        for t in candidate.terms.iter().filter(|_| !candidate.is_zero()) {
            let x = alpha.alpha1 - t.pole1;
            let y = k2 - t.pole1;
            let m = t.order1 as usize;
            // (x^{-m} - y^{-m})/(y - x) = Σ_{j<m} x^j y^{m-1-j} / (x^m y^m)
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..m {
                s += x.powu(j as u32) * y.powu((m - 1 - j) as u32);
            }
            s /= x.powu(t.order1) * y.powu(t.order1);
            let head = t.coeff / (alpha.alpha2 - t.pole2).powu(t.order2);
            plus += head * (x.powu(t.order1).inv() + (k1 - k2) * s);
        }
        if !plus.is_finite() {
            return Err(Error::Pole(format!(
                "inner bracket is singular at ({}, {})",
                alpha.alpha1, alpha.alpha2
            )));
        }
        match sign {
            Sign::Plus => Ok(plus),
            Sign::Minus => {
                let whole = candidate.eval(alpha) / k_minus_circ(&self.params, alpha)?;
                Ok(whole - plus)
            }
        }
    }

    /// `[Φ₊₋/K₋∘]±∘` by adaptive quadrature in the α₁ plane.
    pub fn inner_bracket_quadrature(
        &self,
        candidate: &SpectralCandidate,
        alpha: SpectralPoint,
        sign: Sign,
        route: Route,
    ) -> Result<QuadratureResult> {
        let params = self.params;
        let f = move |a: SpectralPoint| Ok(candidate.eval(a) / k_minus_circ(&params, a)?);
        bracket_with(
            f,
            Plane::Alpha1,
            sign,
            alpha,
            self.contours(),
            &self.hints(),
            route,
            Tolerance::default(),
        )
    }

    /// `G(α) = (K₋₊(a₁,α₂)/K₊₋(α)) [Φ₊₋/K₋∘]₊∘(α)`.
    pub fn g_function(&self, candidate: &SpectralCandidate, alpha: SpectralPoint) -> Result<Complex64> {
        let inner = self.inner_bracket(candidate, alpha, Sign::Plus)?;
        if inner == Complex64::new(0.0, 0.0) {
            return Ok(inner);
        }
        let num = self.k(FactorKind::MP, self.params.a1, alpha.alpha2)?;
        let den = self.k(FactorKind::PM, alpha.alpha1, alpha.alpha2)?;
        Ok(num / den * inner)
    }

    /// `[G]∘₊` or `[G]∘₋` at `alpha`.
    pub fn outer_bracket(
        &self,
        candidate: &SpectralCandidate,
        alpha: SpectralPoint,
        sign: Sign,
    ) -> Result<QuadratureResult> {
        if candidate.is_zero() {
            return Ok(QuadratureResult {
                value: Complex64::new(0.0, 0.0),
                error_estimate: 0.0,
                evaluations: 0,
            });
        }
        self.bracket(
            |a| self.g_function(candidate, a),
            Plane::Alpha2,
            sign,
            alpha,
            self.outer_tol,
        )
    }

    /// `-(1/(K₊₊ K₋₊(a₁,α₂))) [G]∘₊`, so that `Ψ₊₊ = radlow_ansatz + correction_term`.
    pub fn correction_term(
        &self,
        candidate: &SpectralCandidate,
        alpha: SpectralPoint,
    ) -> Result<QuadratureResult> {
        let outer = self.outer_bracket(candidate, alpha, Sign::Plus)?;
        if outer.value == Complex64::new(0.0, 0.0) {
            return Ok(outer);
        }
        let scale = -1.0
            / (self.k(FactorKind::PP, alpha.alpha1, alpha.alpha2)?
                * self.k(FactorKind::MP, self.params.a1, alpha.alpha2)?);
        Ok(QuadratureResult {
            value: scale * outer.value,
            error_estimate: scale.norm() * outer.error_estimate,
            evaluations: outer.evaluations,
        })
    }

    pub fn psi_pp(&self, candidate: &SpectralCandidate, alpha: SpectralPoint) -> Result<Complex64> {
        Ok(self.radlow_ansatz(alpha)? + self.correction_term(candidate, alpha)?.value)
    }

    fn p_mismatch_raw(&self, alpha: SpectralPoint) -> Result<Complex64> {
        let (a1, a2) = (self.params.a1, self.params.a2);
        let p = forcing_p(&self.params, alpha)?;
        let first = self.k(FactorKind::MM, a1, alpha.alpha2)?
            * self.k(FactorKind::PM, alpha.alpha1, alpha.alpha2)?;
        let second = self.k(FactorKind::MM, a1, a2)? * self.k(FactorKind::PM, alpha.alpha1, a2)?;
        Ok(p * (first.inv() - second.inv()))
    }

    /// `P (1/(K₋₋(a₁,α₂)K₊₋) - 1/(K₋₋(a₁,a₂)K₊₋(α₁,a₂)))`.
    ///
    /// The bracket vanishes at `α₂ = a₂`, cancelling the pole of `P` there; close to
    /// that point the value is the mean over a small circle around `α₂`.
    pub fn p_term_mismatch(&self, alpha: SpectralPoint) -> Result<Complex64> {
        let radius = 0.02;
        if (alpha.alpha2 - self.params.a2).norm() >= 0.5 * radius {
            return self.p_mismatch_raw(alpha);
        }
        let n = 8;
        let mut sum = Complex64::new(0.0, 0.0);
        for j in 0..n {
            let w = Complex64::from_polar(radius, 2.0 * PI * j as f64 / n as f64);
            sum += self.p_mismatch_raw(SpectralPoint::new(alpha.alpha1, alpha.alpha2 + w))?;
        }
        Ok(sum / n as f64)
    }

    /// Right-hand side of the compatibility equation; zero for the true `Φ₊₋`.
    pub fn compatibility_residual(
        &self,
        candidate: &SpectralCandidate,
        alpha: SpectralPoint,
    ) -> Result<QuadratureResult> {
        let outer = self.outer_bracket(candidate, alpha, Sign::Minus)?;
        Ok(QuadratureResult {
            value: self.p_term_mismatch(alpha)? + outer.value,
            ..outer
        })
    }

    /// `P/K₋∘ = P/K₋∘(a₁,α₂) + P (1/K₋∘ - 1/K₋∘(a₁,α₂))`, returned as (+∘ part, -∘ part).
    pub fn pole_removal_split_alpha1(&self, alpha: SpectralPoint) -> Result<(Complex64, Complex64)> {
        let a1 = self.params.a1;
        let d2 = alpha.alpha2 - self.params.a2;
        if d2 == Complex64::new(0.0, 0.0) {
            return Err(Error::Pole("pole-removal split is singular at alpha2 = a2".into()));
        }
        let at_a1 = k_minus_circ(&self.params, SpectralPoint::new(a1, alpha.alpha2))?;
        let plus = forcing_p(&self.params, alpha)? / at_a1;
        let k1 = kappa(self.params.k1, alpha.alpha2);
        let k2 = kappa(self.params.k2, alpha.alpha2);
        let den = (k2 - alpha.alpha1) * (k2 - a1) * d2;
        if den == Complex64::new(0.0, 0.0) {
            return Err(Error::Pole("pole-removal split is singular at alpha1 = κ(k₂, α₂)".into()));
        }
        Ok((plus, (k1 - k2) / den))
    }

    /// Upper-half minus lower-half expression of `E₁` at a strip point.
    pub fn e1_residual(
        &self,
        candidate: &SpectralCandidate,
        psi_pp: &Evaluable,
        phi_mcirc: &Evaluable,
        alpha: SpectralPoint,
    ) -> Result<Complex64> {
        let params = &self.params;
        let kpc = k_plus_circ(params, alpha)?;
        let kmc = k_minus_circ(params, alpha)?;
        let (split_plus, split_minus) = self.pole_removal_split_alpha1(alpha)?;
        let upper = -kpc * psi_pp(alpha)? - self.inner_bracket(candidate, alpha, Sign::Plus)? - split_plus;
        let lower = phi_mcirc(alpha)? / kmc
            + self.inner_bracket(candidate, alpha, Sign::Minus)?
            + split_minus;
        Ok(upper - lower)
    }

    /// Upper-half minus lower-half expression of `E₂` at a strip point.
    pub fn e2_residual(
        &self,
        candidate: &SpectralCandidate,
        psi_pp: &Evaluable,
        alpha: SpectralPoint,
    ) -> Result<Complex64> {
        let (a1, a2) = (self.params.a1, self.params.a2);
        let p = forcing_p(&self.params, alpha)?;
        let kpp = self.k(FactorKind::PP, alpha.alpha1, alpha.alpha2)?;
        let kmp_a1 = self.k(FactorKind::MP, a1, alpha.alpha2)?;
        let fixed = self.k(FactorKind::MM, a1, a2)? * self.k(FactorKind::PM, alpha.alpha1, a2)?;
        let upper = -psi_pp(alpha)? * kpp * kmp_a1
            - p / fixed
            - self.outer_bracket(candidate, alpha, Sign::Plus)?.value;
        let lower = self.p_term_mismatch(alpha)? + self.outer_bracket(candidate, alpha, Sign::Minus)?.value;
        Ok(upper - lower)
    }

    /// `Φ₃/₄ = -K Ψ₊₊ - P`.
    pub fn phi_34_from_psi(&self, psi: Complex64, alpha: SpectralPoint) -> Result<Complex64> {
        Ok(-kernel_k(&self.params, alpha)? * psi - forcing_p(&self.params, alpha)?)
    }

    /// Compatibility residual at every probe point, in parallel.
    pub fn residual_reports(
        &self,
        candidate: &SpectralCandidate,
        probes: &[SpectralPoint],
    ) -> Result<Vec<ResidualReport>> {
        probes
            .par_iter()
            .map(|&a| {
                let r = self.compatibility_residual(candidate, a)?;
                Ok(ResidualReport {
                    probe: [a.alpha1, a.alpha2],
                    residual: r.value,
                    error_estimate: r.error_estimate,
                })
            })
            .collect()
    }
}

pub fn radlow_ansatz(params: &WaveParams, alpha: SpectralPoint) -> Result<Complex64> {
    SpectralSystem::new(*params).radlow_ansatz(alpha)
}

pub fn correction_term(
    params: &WaveParams,
    phi_pm: &SpectralCandidate,
    alpha: SpectralPoint,
) -> Result<Complex64> {
    Ok(SpectralSystem::new(*params).correction_term(phi_pm, alpha)?.value)
}

pub fn compatibility_residual(
    params: &WaveParams,
    phi_pm: &SpectralCandidate,
    alpha: SpectralPoint,
) -> Result<Complex64> {
    Ok(SpectralSystem::new(*params).compatibility_residual(phi_pm, alpha)?.value)
}

pub fn pole_removal_split_alpha1(
    params: &WaveParams,
    alpha: SpectralPoint,
) -> Result<(Complex64, Complex64)> {
    SpectralSystem::new(*params).pole_removal_split_alpha1(alpha)
}

pub fn phi_34_from_psi(params: &WaveParams, psi_pp: &Evaluable, alpha: SpectralPoint) -> Result<Complex64> {
    SpectralSystem::new(*params).phi_34_from_psi(psi_pp(alpha)?, alpha)
}

/// 32 points of `𝒟₊₋` just inside the strip, where the compatibility equation holds.
pub fn probe_set(params: &WaveParams) -> Vec<SpectralPoint> {
    let eps = params.epsilon_strip;
    let mut probes = Vec::with_capacity(32);
    for i in 0..8 {
        for j in 0..4 {
            let a1 = Complex64::new(-1.75 + 0.5 * i as f64, 0.2 * eps);
            let a2 = Complex64::new(-1.5 + 1.0 * j as f64, -0.2 * eps);
            probes.push(SpectralPoint::new(a1, a2));
        }
    }
    probes
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DecayDirection {
    #[serde(rename = "ALPHA1")]
    Alpha1,
    #[serde(rename = "ALPHA2")]
    Alpha2,
    #[serde(rename = "JOINT")]
    Joint,
}

/// Least-squares slope of `log|f|` against `log t` along `i·t`, `t ∈ [10², 10⁴]`.
/// The other variable, if fixed, is `i·(1 + max|k|)`.
pub fn decay_rate_probe(f: &Evaluable, direction: DecayDirection, params: &WaveParams) -> Result<f64> {
    let fixed = Complex64::new(0.0, 1.0 + params.wavenumber_scale());
    let n = 9;
    let samples: Vec<(f64, f64)> = (0..n)
        .into_par_iter()
        .map(|j| {
            let t = 10f64.powf(2.0 + 2.0 * j as f64 / (n - 1) as f64);
            let ray = Complex64::new(0.0, t);
            let alpha = match direction {
                DecayDirection::Alpha1 => SpectralPoint::new(ray, fixed),
                DecayDirection::Alpha2 => SpectralPoint::new(fixed, ray),
                DecayDirection::Joint => SpectralPoint::new(ray, ray),
            };
            let v = f(alpha).map_err(|e| Error::Probe(format!("evaluation failed at t = {t}: {e}")))?;
            if !(v.is_finite() && v.norm() > 0.0) {
                return Err(Error::Probe(format!("|f| is zero or not finite at t = {t}")));
            }
            Ok((t.ln(), v.norm().ln()))
        })
        .collect::<Result<_>>()?;
    let mx = samples.iter().map(|s| s.0).sum::<f64>() / n as f64;
    let my = samples.iter().map(|s| s.1).sum::<f64>() / n as f64;
    let sxy: f64 = samples.iter().map(|s| (s.0 - mx) * (s.1 - my)).sum();
    let sxx: f64 = samples.iter().map(|s| (s.0 - mx).powi(2)).sum();
    Ok(sxy / sxx)
}

/// Least-squares fit of coefficients for a fixed rational basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateFit {
    pub candidate: SpectralCandidate,
    pub sup_residual: f64,
    pub zero_sup_residual: f64,
}

/// Choose coefficients of the given terms (their `coeff` fields are ignored) that
/// minimise the compatibility residual in the least-squares sense over `probes`.
/// Exploratory: the residual is affine in the coefficients, so one linear solve suffices.
pub fn fit_candidate(
    system: &SpectralSystem,
    basis: &[CandidateTerm],
    probes: &[SpectralPoint],
) -> Result<CandidateFit> {
    if basis.is_empty() || probes.len() < basis.len() {
        return Err(Error::Usage("need a non-empty basis and at least as many probes".into()));
    }
    let zero = SpectralCandidate::zero();
    let r0: Vec<Complex64> = system
        .residual_reports(&zero, probes)?
        .iter()
        .map(|r| r.residual)
        .collect();
    let mut columns = Vec::with_capacity(basis.len());
    for t in basis {
        let unit = SpectralCandidate::rational(vec![CandidateTerm {
            coeff: Complex64::new(1.0, 0.0),
            ..*t
        }]);
        unit.validate(system.params())?;
        let r = system.residual_reports(&unit, probes)?;
        columns.push(r.iter().zip(&r0).map(|(a, b)| a.residual - b).collect::<Vec<_>>());
    }
    let a = DMatrix::from_fn(probes.len(), basis.len(), |i, j| columns[j][i]);
    let b = DVector::from_iterator(probes.len(), r0.iter().map(|v| -v));
    let svd = a.clone().svd(true, true);
    let c = svd
        .solve(&b, 1e-12)
        .map_err(|e| Error::Usage(format!("least-squares solve failed: {e}")))?;
    let fitted = &a * &c - &b;
    let terms = basis
        .iter()
        .zip(c.iter())
        .map(|(t, &coeff)| CandidateTerm { coeff, ..*t })
        .collect();
    Ok(CandidateFit {
        candidate: SpectralCandidate::rational(terms),
        sup_residual: fitted.iter().map(|v| v.norm()).fold(0.0, f64::max),
        zero_sup_residual: r0.iter().map(|v| v.norm()).fold(0.0, f64::max),
    })
}
