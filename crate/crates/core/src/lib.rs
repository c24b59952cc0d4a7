//! Numerical engine for plane-wave diffraction by a right-angled, no-contrast
//! penetrable wedge, formulated as a two-complex-variable Wiener-Hopf problem.
//!
//! Layers, from the bottom up:
//!
//! * [`complexfn`]: `mysqrt`, `mylog`, `κ` and region predicates.
//! * [`kernel`]: wave parameters, the forcing `P` and the kernel `K = K₊∘K₋∘`.
//! * [`cauchy`]: contour quadrature, sum-splits, factorisation and `K±±`.
//! * [`spectra`]: Radlow's ansatz, the correction term and residual diagnostics.
//! * [`fields`]: inverse transforms, finite-difference checks and tip fits.
//! * [`portraits`]: phase portraits and discontinuity detection.
//! * [`acceptance`]: the numbered acceptance checks.

pub mod acceptance;
pub mod cauchy;
pub mod complexfn;
pub mod error;
pub mod fields;
pub mod kernel;
pub mod portraits;
pub mod spectra;

pub use error::{Error, Result};
