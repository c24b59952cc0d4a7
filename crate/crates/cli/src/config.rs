use std::path::{Path, PathBuf};

use num_complex::Complex64;
use pwedge::fields::GammaMode;
use pwedge::kernel::{figure_params, WaveParams};
use pwedge::portraits::{Figure, Format, Shading};
use pwedge::spectra::SpectralCandidate;
use serde::{Deserialize, Serialize};

use crate::Failure;

/// Everything a command needs, after defaults and command-line overrides.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default = "figure_params")]
    pub params: WaveParams,
    #[serde(default)]
    pub tolerance: Option<f64>,
    #[serde(default)]
    pub probes: Option<usize>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default = "SpectralCandidate::zero")]
    pub candidate: SpectralCandidate,
    #[serde(default)]
    pub split: SplitSpec,
    #[serde(default)]
    pub grid: GridSpec,
    #[serde(default)]
    pub portrait: PortraitSpec,
    #[serde(default)]
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        serde_json::from_str("{}").expect("empty config deserialises")
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplitSpec {
    /// `c` values of the family `1/(z² + c²)`.
    pub c: Vec<f64>,
    /// Evaluation points, inside the strip `|Im z| < offset`.
    pub points: Vec<Complex64>,
    /// Contours at `±offset`.
    pub offset: f64,
    pub truncation: f64,
}

impl Default for SplitSpec {
    fn default() -> Self {
        SplitSpec {
            c: vec![1.0, 2.0, 5.0],
            points: vec![
                Complex64::new(-2.0, 0.1),
                Complex64::new(0.0, 0.0),
                Complex64::new(1.5, -0.1),
            ],
            offset: 0.25,
            truncation: 50.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FieldSource {
    /// The exact spectral functions; only available for `k1 = k2`.
    Degenerate,
    /// `Ψ₊₊ = -P` and `Φ₃/₄ = (K - 1)P` from the Wiener-Hopf equation.
    MinusP,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub spacing: f64,
    /// Nodes along each positive half-axis.
    pub nodes: usize,
    /// Nodes along each negative half-axis.
    pub exterior_nodes: usize,
    pub fit_radius: f64,
    #[serde(default = "default_mode")]
    pub mode: GammaMode,
    #[serde(default = "default_radius")]
    pub indentation_radius: f64,
    #[serde(default = "default_source")]
    pub source: FieldSource,
}

fn default_mode() -> GammaMode {
    GammaMode::Absorbing
}

fn default_radius() -> f64 {
    0.1
}

fn default_source() -> FieldSource {
    FieldSource::Degenerate
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            spacing: 0.05,
            nodes: 20,
            exterior_nodes: 10,
            fit_radius: 0.5,
            mode: default_mode(),
            indentation_radius: default_radius(),
            source: default_source(),
        }
    }
}

/// Functions that can be portrayed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Selector {
    Mylog,
    Mysqrt,
    Kappa,
    #[serde(rename = "K")]
    Kernel,
    #[serde(rename = "K_plus_circ")]
    KPlusCirc,
    #[serde(rename = "K_minus_circ")]
    KMinusCirc,
    #[serde(rename = "mylog_K_plus_circ")]
    MylogKPlusCirc,
    #[serde(rename = "mylog_K_minus_circ")]
    MylogKMinusCirc,
    #[serde(rename = "K_mm")]
    KMm,
    #[serde(rename = "K_mp")]
    KMp,
    #[serde(rename = "K_pm")]
    KPm,
    #[serde(rename = "K_pp")]
    KPp,
    Radlow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PlaneSpec {
    Alpha1,
    Alpha2,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PortraitSpec {
    /// A reference portrait; overrides `function`, `window` and the fixed variable.
    #[serde(default)]
    pub figure: Option<Figure>,
    #[serde(default = "default_selector")]
    pub function: Selector,
    /// Plane of the free variable for two-variable functions.
    #[serde(default = "default_plane")]
    pub plane: PlaneSpec,
    /// Value of the other variable.
    #[serde(default = "default_fixed")]
    pub fixed: Complex64,
    /// Wavenumber for `kappa`.
    #[serde(default = "default_k")]
    pub k: Complex64,
    /// `[re_min, re_max, im_min, im_max]`.
    #[serde(default = "default_window")]
    pub window: [f64; 4],
    #[serde(default = "default_pixels")]
    pub width: usize,
    #[serde(default = "default_pixels")]
    pub height: usize,
    #[serde(default = "default_format")]
    pub format: Format,
    #[serde(default)]
    pub shading: Shading,
    /// Report discontinuities above this phase jump.
    #[serde(default = "default_threshold")]
    pub threshold: Option<f64>,
    #[serde(default = "default_file")]
    pub file: String,
}

fn default_selector() -> Selector {
    Selector::Kappa
}

fn default_plane() -> PlaneSpec {
    PlaneSpec::Alpha2
}

fn default_fixed() -> Complex64 {
    Complex64::new(2.0, 0.2)
}

fn default_k() -> Complex64 {
    Complex64::new(3.0, 1.0)
}

fn default_window() -> [f64; 4] {
    [-5.0, 5.0, -5.0, 5.0]
}

fn default_pixels() -> usize {
    256
}

fn default_format() -> Format {
    Format::Ppm
}

fn default_threshold() -> Option<f64> {
    Some(std::f64::consts::FRAC_PI_2)
}

fn default_file() -> String {
    "portrait".into()
}

impl Default for PortraitSpec {
    fn default() -> Self {
        serde_json::from_str("{}").expect("empty portrait spec deserialises")
    }
}

/// Values given on the command line, which take precedence over the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub out: Option<PathBuf>,
    pub tolerance: Option<f64>,
    pub probes: Option<usize>,
    pub seed: Option<u64>,
}

pub fn load(path: Option<&Path>, overrides: &Overrides) -> Result<RunConfig, Failure> {
    let mut config = match path {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Failure::usage(format!("cannot read config {}: {e}", p.display())))?;
            serde_json::from_str(&text)
                .map_err(|e| Failure::usage(format!("invalid config {}: {e}", p.display())))?
        }
        None => RunConfig::default(),
    };
    if overrides.out.is_some() {
        config.out = overrides.out.clone();
    }
    if overrides.tolerance.is_some() {
        config.tolerance = overrides.tolerance;
    }
    if overrides.probes.is_some() {
        config.probes = overrides.probes;
    }
    if overrides.seed.is_some() {
        config.seed = overrides.seed;
    }
    if let Some(t) = config.tolerance {
        if !(t.is_finite() && t > 0.0) {
            return Err(Failure::usage(format!("tolerance must be positive, got {t}")));
        }
    }
    if config.probes == Some(0) {
        return Err(Failure::usage("probes must be at least 1"));
    }
    config
        .candidate
        .validate(&config.params)
        .map_err(|e| Failure::usage(format!("invalid candidate: {e}")))?;
    Ok(config)
}
