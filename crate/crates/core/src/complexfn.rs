//! Elementary functions with the branch cuts used throughout the factorisation,
//! plus membership tests for the half-planes, strips and product domains of ℂ².
//!
//! * [`mysqrt`] has its cut on the positive real axis and satisfies `mysqrt(-1) = i`,
//!   so its imaginary part is non-negative everywhere.
//! * [`mylog`] has its cut on the ray `arg z = -3π/4` and takes arguments in
//!   `(-3π/4, 5π/4]`.
//! * [`kappa`] is `mysqrt(k² - z²)`, on the sheet where `kappa(k, 0) = k`.

use std::f64::consts::FRAC_PI_4;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Replace a negative zero imaginary part by `+0.0` so that points on the negative
/// real axis are treated as lying on the upper lip of the principal cut.
#[inline]
fn upper_lip(z: Complex64) -> Complex64 {
    if z.im == 0.0 {
        Complex64::new(z.re, 0.0)
    } else {
        z
    }
}

/// Square root with its branch cut along the positive real axis, `mysqrt(z) = i·sqrt(-z)`.
///
/// On the cut the value is the one the identity gives with the principal root,
/// so `mysqrt(4) = -2`.
#[inline]
pub fn mysqrt(z: Complex64) -> Complex64 {
    I * upper_lip(-z).sqrt()
}

/// Logarithm with its branch cut along `arg z = -3π/4`.
pub fn mylog(z: Complex64) -> Result<Complex64> {
    if z.re == 0.0 && z.im == 0.0 {
        return Err(Error::Domain("mylog(0) is undefined".into()));
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain(format!("mylog of non-finite value {z}")));
    }
    let rotated = upper_lip(z * Complex64::from_polar(1.0, -FRAC_PI_4));
    Ok(rotated.ln() + I * FRAC_PI_4)
}

/// `κ(k, z) = mysqrt(k² - z²)`, with branch points at `z = ±k`.
#[inline]
pub fn kappa(k: Complex64, z: Complex64) -> Complex64 {
    mysqrt(k * k - z * z)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RegionKind {
    #[serde(rename = "UHP")]
    Uhp,
    #[serde(rename = "LHP")]
    Lhp,
    #[serde(rename = "STRIP")]
    Strip,
    #[serde(rename = "D++")]
    PlusPlus,
    #[serde(rename = "D+-")]
    PlusMinus,
    #[serde(rename = "D--")]
    MinusMinus,
    #[serde(rename = "D-+")]
    MinusPlus,
    #[serde(rename = "D+circ")]
    PlusCirc,
    #[serde(rename = "D-circ")]
    MinusCirc,
    #[serde(rename = "Dcirc+")]
    CircPlus,
    #[serde(rename = "Dcirc-")]
    CircMinus,
}

impl RegionKind {
    fn is_scalar(self) -> bool {
        matches!(self, RegionKind::Uhp | RegionKind::Lhp | RegionKind::Strip)
    }

    fn needs_ordered_offsets(self) -> bool {
        matches!(
            self,
            RegionKind::Strip
                | RegionKind::PlusCirc
                | RegionKind::MinusCirc
                | RegionKind::CircPlus
                | RegionKind::CircMinus
        )
    }
}

/// An open region of ℂ or ℂ².
///
/// Offsets are read as follows:
///
/// | kind     | set                                         |
/// |----------|---------------------------------------------|
/// | `UHP`    | `Im z > kappa1`                             |
/// | `LHP`    | `Im z < kappa1`                             |
/// | `STRIP`  | `kappa1 < Im z < kappa2`                    |
/// | `D±±`    | half-planes `(kappa1, kappa2)` per variable |
/// | `D+circ` | `UHP(kappa1) × S(kappa1, kappa2)`           |
/// | `D-circ` | `LHP(kappa2) × S(kappa1, kappa2)`           |
/// | `Dcirc+` | `S(kappa1, kappa2) × UHP(kappa1)`           |
/// | `Dcirc-` | `S(kappa1, kappa2) × LHP(kappa2)`           |
///
/// With `kappa1 = -ε`, `kappa2 = ε` the `circ` kinds are exactly `UHP × S`,
/// `LHP × S`, `S × UHP` and `S × LHP` for the strip `S = S(-ε, ε)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegionSpec {
    pub kind: RegionKind,
    pub kappa1: f64,
    #[serde(default)]
    pub kappa2: f64,
}

/// A point of ℂ or of ℂ².
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RegionPoint {
    Scalar(Complex64),
    Pair(Complex64, Complex64),
}

impl RegionSpec {
    pub fn new(kind: RegionKind, kappa1: f64, kappa2: f64) -> Result<Self> {
        let spec = RegionSpec {
            kind,
            kappa1,
            kappa2,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn uhp(kappa: f64) -> Self {
        RegionSpec {
            kind: RegionKind::Uhp,
            kappa1: kappa,
            kappa2: kappa,
        }
    }

    pub fn lhp(kappa: f64) -> Self {
        RegionSpec {
            kind: RegionKind::Lhp,
            kappa1: kappa,
            kappa2: kappa,
        }
    }

    pub fn strip(lower: f64, upper: f64) -> Result<Self> {
        Self::new(RegionKind::Strip, lower, upper)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.kappa1.is_finite() && self.kappa2.is_finite()) {
            return Err(Error::Usage("region offsets must be finite".into()));
        }
        if self.kind.needs_ordered_offsets() && self.kappa1 >= self.kappa2 {
            return Err(Error::Usage(format!(
                "{:?} requires kappa1 < kappa2, got {} >= {}",
                self.kind, self.kappa1, self.kappa2
            )));
        }
        Ok(())
    }
}

fn above(z: Complex64, level: f64) -> bool {
    z.im > level
}

fn below(z: Complex64, level: f64) -> bool {
    z.im < level
}

fn between(z: Complex64, lower: f64, upper: f64) -> bool {
    lower < z.im && z.im < upper
}

/// Open-set membership; boundary points are reported as outside.
pub fn region_contains(region: &RegionSpec, point: RegionPoint) -> Result<bool> {
    region.validate()?;
    let (k1, k2) = (region.kappa1, region.kappa2);
    match (region.kind.is_scalar(), point) {
        (true, RegionPoint::Scalar(z)) => Ok(match region.kind {
            RegionKind::Uhp => above(z, k1),
            RegionKind::Lhp => below(z, k1),
            _ => between(z, k1, k2),
        }),
        (false, RegionPoint::Pair(a1, a2)) => Ok(match region.kind {
            RegionKind::PlusPlus => above(a1, k1) && above(a2, k2),
            RegionKind::PlusMinus => above(a1, k1) && below(a2, k2),
            RegionKind::MinusMinus => below(a1, k1) && below(a2, k2),
            RegionKind::MinusPlus => below(a1, k1) && above(a2, k2),
            RegionKind::PlusCirc => above(a1, k1) && between(a2, k1, k2),
            RegionKind::MinusCirc => below(a1, k2) && between(a2, k1, k2),
            RegionKind::CircPlus => between(a1, k1, k2) && above(a2, k1),
            RegionKind::CircMinus => between(a1, k1, k2) && below(a2, k2),
            _ => unreachable!("scalar kinds handled above"),
        }),
        (true, RegionPoint::Pair(..)) => Err(Error::Usage(format!(
            "{:?} is a region of ℂ but a point of ℂ² was given",
            region.kind
        ))),
        (false, RegionPoint::Scalar(_)) => Err(Error::Usage(format!(
            "{:?} is a region of ℂ² but a scalar point was given",
            region.kind
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * (1.0 + b.norm())
    }

    #[test]
    fn mysqrt_reference_values() {
        assert_eq!(mysqrt(c(-1.0, 0.0)), c(0.0, 1.0));
        assert_eq!(mysqrt(c(0.0, 0.0)), c(0.0, 0.0));
        // oracle: i * principal sqrt(-4), where sqrt(-4) = 2i
        let oracle = I * c(-4.0, 0.0).sqrt();
        assert!(close(mysqrt(c(4.0, 0.0)), oracle, 1e-15));
        assert!(close(mysqrt(c(4.0, 0.0)), c(-2.0, 0.0), 1e-15));
    }

    #[test]
    fn mysqrt_imaginary_part_sign() {
        assert!(mysqrt(c(3.0, 0.1)).im > 0.0);
        assert!(mysqrt(c(3.0, -0.1)).im > 0.0);
        assert!(mysqrt(c(-3.0, 0.0)).im > 0.0);
        assert_eq!(mysqrt(c(3.0, 0.0)).im, 0.0);
    }

    #[test]
    fn mylog_reference_values() {
        assert_eq!(mylog(c(1.0, 0.0)).unwrap(), c(0.0, 0.0));
        // oracle: log(e^{-iπ/4} z) + iπ/4 with the principal logarithm
        let oracle = |z: Complex64| (z * Complex64::from_polar(1.0, -FRAC_PI_4)).ln() + I * FRAC_PI_4;
        assert!(close(mylog(I).unwrap(), oracle(I), 1e-15));
        assert!(close(mylog(I).unwrap(), c(0.0, FRAC_PI_2), 1e-15));
        assert!(close(mylog(c(-1.0, 0.0)).unwrap(), c(0.0, PI), 1e-15));
    }

    #[test]
    fn mylog_rejects_zero() {
        assert!(matches!(mylog(c(0.0, 0.0)), Err(Error::Domain(_))));
    }

    #[test]
    fn mylog_cut_value_is_upper_end_of_range() {
        let on_cut = Complex64::from_polar(2.0, -3.0 * FRAC_PI_4);
        let v = mylog(on_cut).unwrap();
        assert!((v.im - 5.0 * FRAC_PI_4).abs() < 1e-12 || (v.im + 3.0 * FRAC_PI_4).abs() < 1e-12);
        // just across the cut the two sides differ by 2π
        let above_cut = mylog(Complex64::from_polar(2.0, -3.0 * FRAC_PI_4 + 1e-9)).unwrap();
        let below_cut = mylog(Complex64::from_polar(2.0, -3.0 * FRAC_PI_4 - 1e-9)).unwrap();
        assert!(((below_cut.im - above_cut.im) - 2.0 * PI).abs() < 1e-6);
    }

    #[test]
    fn mylog_path_continuity_off_cut() {
        // circle of radius 1.5 starting just after the cut, going counterclockwise once
        let n = 20_000;
        let start = -3.0 * FRAC_PI_4 + 1e-3;
        let stop = start + 2.0 * PI - 2e-3;
        let mut prev = mylog(Complex64::from_polar(1.5, start)).unwrap();
        for j in 1..=n {
            let t = start + (stop - start) * j as f64 / n as f64;
            let cur = mylog(Complex64::from_polar(1.5, t)).unwrap();
            let expected_step = (stop - start) / n as f64;
            assert!(((cur - prev).norm() - expected_step).abs() < 1e-8);
            prev = cur;
        }
    }

    #[test]
    fn kappa_sheet_and_symmetry() {
        let k = c(3.0, 1.0);
        assert!(close(kappa(k, c(0.0, 0.0)), k, 1e-15));
        for z in [c(0.3, 0.2), c(-5.0, 0.1), c(10.0, -4.0)] {
            assert_eq!(kappa(k, z), kappa(k, -z));
        }
        // regression baseline, direct evaluation through mysqrt
        let v = kappa(c(1.0, 1.0), c(2.0, -0.2));
        assert!(v.im > 0.0);
        let oracle = I * (-(c(1.0, 1.0) * c(1.0, 1.0) - c(2.0, -0.2) * c(2.0, -0.2))).sqrt();
        assert!(close(v, oracle, 1e-15));
    }

    #[test]
    fn region_examples() {
        let eps = 0.25;
        assert!(region_contains(&RegionSpec::uhp(-eps), RegionPoint::Scalar(I)).unwrap());
        let s = RegionSpec::strip(-eps, eps).unwrap();
        assert!(!region_contains(&s, RegionPoint::Scalar(c(2.0, 2.0 * eps))).unwrap());
        let dpm = RegionSpec::new(RegionKind::PlusMinus, -eps, -eps).unwrap();
        assert!(region_contains(&dpm, RegionPoint::Pair(I, -I)).unwrap());
    }

    #[test]
    fn region_boundaries_are_open() {
        let s = RegionSpec::strip(-0.5, 0.5).unwrap();
        assert!(!region_contains(&s, RegionPoint::Scalar(c(1.0, 0.5))).unwrap());
        assert!(!region_contains(&s, RegionPoint::Scalar(c(1.0, -0.5))).unwrap());
        assert!(!region_contains(&RegionSpec::uhp(0.0), RegionPoint::Scalar(c(1.0, 0.0))).unwrap());
    }

    #[test]
    fn region_dimension_mismatch() {
        let s = RegionSpec::strip(-0.5, 0.5).unwrap();
        assert!(matches!(
            region_contains(&s, RegionPoint::Pair(I, I)),
            Err(Error::Usage(_))
        ));
        let d = RegionSpec::new(RegionKind::PlusCirc, -0.5, 0.5).unwrap();
        assert!(matches!(
            region_contains(&d, RegionPoint::Scalar(I)),
            Err(Error::Usage(_))
        ));
        assert!(RegionSpec::strip(0.5, -0.5).is_err());
    }

    #[test]
    fn circ_regions() {
        let eps = 0.3;
        let plus_circ = RegionSpec::new(RegionKind::PlusCirc, -eps, eps).unwrap();
        let minus_circ = RegionSpec::new(RegionKind::MinusCirc, -eps, eps).unwrap();
        let inside = RegionPoint::Pair(c(0.0, 5.0), c(1.0, 0.1));
        assert!(region_contains(&plus_circ, inside).unwrap());
        assert!(!region_contains(&minus_circ, inside).unwrap());
        let lower = RegionPoint::Pair(c(0.0, -5.0), c(1.0, 0.1));
        assert!(region_contains(&minus_circ, lower).unwrap());
        let circ_minus = RegionSpec::new(RegionKind::CircMinus, -eps, eps).unwrap();
        assert!(region_contains(&circ_minus, RegionPoint::Pair(c(1.0, 0.0), c(0.0, -9.0))).unwrap());
    }
}
