//! The four exponential-integral factors of the kernel,
//!
//! ```text
//! K₋₋ = exp(-(1/2πi) ∫_{ℝ+iε′} mylog K₋∘(α₁, z)/(z - α₂) dz)
//! K₋₊ = exp( (1/2πi) ∫_{ℝ-iε′} mylog K₋∘(α₁, z)/(z - α₂) dz)
//! ```
//!
//! and likewise `K₊₋`, `K₊₊` from `K₊∘`, so that `K₋∘ = K₋₊K₋₋`, `K₊∘ = K₊₊K₊₋`.

use std::collections::{HashMap, HashSet};
use std::sync::Mutex;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{
    factor_part, winding_guard, Function1D, QuadratureResult, Route, Sign, SplitContours,
    Tolerance,
};
use crate::complexfn::kappa;
use crate::error::Result;
use crate::kernel::{k_minus_circ, k_plus_circ, SpectralPoint, WaveParams};

/// Which of `K₋₋`, `K₋₊`, `K₊₋`, `K₊₊`: the first sign picks `K₋∘` or `K₊∘`,
/// the second the minus or plus part in α₂.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FactorKind {
    MM,
    MP,
    PM,
    PP,
}

impl FactorKind {
    pub const ALL: [FactorKind; 4] = [FactorKind::MM, FactorKind::MP, FactorKind::PM, FactorKind::PP];

    fn alpha2_sign(self) -> Sign {
        match self {
            FactorKind::MM | FactorKind::PM => Sign::Minus,
            FactorKind::MP | FactorKind::PP => Sign::Plus,
        }
    }

    fn plus_circ(self) -> bool {
        matches!(self, FactorKind::PM | FactorKind::PP)
    }

    fn index(self) -> u8 {
        self as u8
    }
}

type Key = (u8, i64, i64, i64, i64);

fn round_key(x: f64) -> Option<i64> {
    let r = (x * 1e12).round();
    (r.abs() < 9.0e18).then_some(r as i64)
}

fn cache_key(which: FactorKind, alpha: SpectralPoint) -> Option<Key> {
    Some((
        which.index(),
        round_key(alpha.alpha1.re)?,
        round_key(alpha.alpha1.im)?,
        round_key(alpha.alpha2.re)?,
        round_key(alpha.alpha2.im)?,
    ))
}

/// Evaluator for the four factors with a shared memo cache.
///
/// Cached values are keyed by the factor and both arguments rounded to `10⁻¹²`;
/// a cached value is the same number a fresh evaluation would produce, so results
/// do not depend on evaluation order or thread count.
pub struct KernelFactors {
    params: WaveParams,
    contours: SplitContours,
    tol: Tolerance,
    cache: Mutex<HashMap<Key, Complex64>>,
    guarded: Mutex<HashSet<(bool, i64, i64)>>,
}

impl KernelFactors {
    pub fn new(params: WaveParams) -> Self {
        Self::with_contours(params, SplitContours::for_params(&params), Tolerance::default())
    }

    pub fn with_contours(params: WaveParams, contours: SplitContours, tol: Tolerance) -> Self {
        KernelFactors {
            params,
            contours,
            tol,
            cache: Mutex::new(HashMap::new()),
            guarded: Mutex::new(HashSet::new()),
        }
    }

    pub fn params(&self) -> &WaveParams {
        &self.params
    }

    pub fn contours(&self) -> &SplitContours {
        &self.contours
    }

    pub fn tolerance(&self) -> Tolerance {
        self.tol
    }

    pub fn cache_len(&self) -> usize {
        self.cache.lock().expect("cache lock").len()
    }

    /// The `K±∘(α₁, ·)` slice as a function of α₂.
    fn circ_slice(&self, plus: bool, alpha1: Complex64) -> Function1D<'_> {
        let params = self.params;
        let eps = params.epsilon_strip;
        let f = Function1D::new(
            move |z| {
                let a = SpectralPoint::new(alpha1, z);
                if plus {
                    k_plus_circ(&params, a)
                } else {
                    k_minus_circ(&params, a)
                }
            },
            -eps,
            eps,
        );
        let k1 = kappa(params.k1, alpha1);
        let k2 = kappa(params.k2, alpha1);
        f.with_hints([
            params.k1.re,
            -params.k1.re,
            params.k2.re,
            -params.k2.re,
            k1.re,
            -k1.re,
            k2.re,
            -k2.re,
        ])
    }

    fn guard(&self, plus: bool, alpha1: Complex64, slice: &Function1D) -> Result<()> {
        let key = match (round_key(alpha1.re), round_key(alpha1.im)) {
            (Some(a), Some(b)) => Some((plus, a, b)),
            _ => None,
        };
        if let Some(k) = key {
            if self.guarded.lock().expect("guard lock").contains(&k) {
                return Ok(());
            }
        }
        winding_guard(slice, &self.contours.lower)?;
        winding_guard(slice, &self.contours.upper)?;
        if let Some(k) = key {
            self.guarded.lock().expect("guard lock").insert(k);
        }
        Ok(())
    }

    /// Factor value, memoised, with the automatic route.
    pub fn factor(&self, which: FactorKind, alpha: SpectralPoint) -> Result<Complex64> {
        let key = cache_key(which, alpha);
        if let Some(k) = key {
            if let Some(v) = self.cache.lock().expect("cache lock").get(&k) {
                return Ok(*v);
            }
        }
        let value = self.evaluate(which, alpha, Route::Auto)?.value;
        if let Some(k) = key {
            self.cache.lock().expect("cache lock").insert(k, value);
        }
        Ok(value)
    }

    /// Uncached evaluation with an explicit route. The error estimate is relative,
    /// since it is that of the logarithm.
    pub fn evaluate(
        &self,
        which: FactorKind,
        alpha: SpectralPoint,
        route: Route,
    ) -> Result<QuadratureResult> {
        let plus = which.plus_circ();
        let slice = self.circ_slice(plus, alpha.alpha1);
        self.guard(plus, alpha.alpha1, &slice)?;
        factor_part(
            &slice,
            &self.contours,
            alpha.alpha2,
            which.alpha2_sign(),
            route,
            self.tol,
        )
    }

    /// `K₊₊K₊₋K₋₋K₋₊` at `alpha`.
    pub fn product(&self, alpha: SpectralPoint) -> Result<Complex64> {
        let mut p = Complex64::new(1.0, 0.0);
        for which in FactorKind::ALL {
            p *= self.factor(which, alpha)?;
        }
        Ok(p)
    }
}

/// One factor with default contours and no shared cache.
pub fn k_factor(params: &WaveParams, which: FactorKind, alpha: SpectralPoint) -> Result<Complex64> {
    KernelFactors::new(*params).factor(which, alpha)
}
