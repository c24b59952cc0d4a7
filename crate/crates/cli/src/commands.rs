use std::path::{Path, PathBuf};

use num_complex::Complex64;
use pwedge::acceptance::{factor_grid, run_all, AcceptanceOptions};
use pwedge::cauchy::{
    sum_split, FactorKind, Function1D, KernelFactors, Route, SplitContours, Tolerance,
};
use pwedge::complexfn::{kappa, mylog, mysqrt};
use pwedge::fields::{
    continuity_check, edge_expansion_fit, gamma_contour, helmholtz_residual, reconstruct_fields,
    Face,
};
use pwedge::kernel::{forcing_p, k_minus_circ, k_plus_circ, kernel_k, SpectralPoint, WaveParams};
use pwedge::portraits::{
    discontinuity_detect, edge_midpoint, render, write_image_with, CutStructure, Format, Window,
};
use pwedge::spectra::{
    decay_rate_probe, probe_set, DecayDirection, SpectralFunctions, SpectralSystem,
};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::config::{FieldSource, PlaneSpec, RunConfig, Selector};
use crate::Failure;

type Outcome = Result<Value, Failure>;

fn tolerance(config: &RunConfig, default: f64) -> f64 {
    config.tolerance.unwrap_or(default)
}

fn out_dir(config: &RunConfig) -> Result<PathBuf, Failure> {
    let dir = config.out.clone().unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&dir)
        .map_err(|e| Failure::usage(format!("cannot create {}: {e}", dir.display())))?;
    Ok(dir)
}

fn pair(z: Complex64) -> Value {
    json!([z.re, z.im])
}

/// Probe points from the standard set, the first `--probes` of them.
fn probes(config: &RunConfig) -> Result<Vec<SpectralPoint>, Failure> {
    let all = probe_set(&config.params);
    match config.probes {
        Some(n) if n > all.len() => Err(Failure::usage(format!(
            "at most {} probes are available, {n} requested",
            all.len()
        ))),
        Some(n) => Ok(all[..n].to_vec()),
        None => Ok(all),
    }
}

/// Turn per-point results into a report, failing with the partial report if
/// any point failed.
fn gather(rows: Vec<Result<Value, pwedge::Error>>, extra: Value) -> Result<(Vec<Value>, Value), Failure> {
    let mut first_error = None;
    let rows: Vec<Value> = rows
        .into_iter()
        .map(|r| match r {
            Ok(v) => v,
            Err(e) => {
                let msg = e.to_string();
                first_error.get_or_insert(e);
                json!({"error": msg})
            }
        })
        .collect();
    if let Some(e) = first_error {
        let partial = json!({"points": rows, "summary": extra});
        let mut failure = Failure::from(e);
        failure.partial = Some(partial);
        return Err(failure);
    }
    Ok((rows, extra))
}

pub fn factor(config: &RunConfig) -> Outcome {
    let params = config.params;
    let tol = tolerance(config, 1e-6);
    let n = config.probes.unwrap_or(10);
    let kf = KernelFactors::new(params);
    let grid = factor_grid(&params, n);
    let rows: Vec<Result<(f64, Value), pwedge::Error>> = grid
        .par_iter()
        .map(|&a| {
            let k = kernel_k(&params, a)?;
            let mut prod = Complex64::new(1.0, 0.0);
            let mut factors = Vec::new();
            for which in FactorKind::ALL {
                let v = kf.factor(which, a)?;
                factors.push(json!({"factor": which, "value": pair(v)}));
                prod *= v;
            }
            let err = ((k - prod) / k).norm();
            Ok((
                err,
                json!({"alpha1": pair(a.alpha1), "alpha2": pair(a.alpha2), "K": pair(k), "factors": factors, "relative_error": err}),
            ))
        })
        .collect();
    let max = rows.iter().filter_map(|r| r.as_ref().ok()).map(|r| r.0).fold(0.0, f64::max);
    let summary = json!({"grid_side": n, "max_relative_error": max, "tolerance": tol});
    let (points, summary) = gather(rows.into_iter().map(|r| r.map(|v| v.1)).collect(), summary)?;
    let report = json!({"points": points, "summary": summary});
    if max < tol {
        Ok(report)
    } else {
        Err(Failure::numerical(
            format!("max relative error {max:.3e} does not meet tolerance {tol:.3e}"),
            Some(report),
        ))
    }
}

pub fn split(config: &RunConfig) -> Outcome {
    let spec = &config.split;
    let tol = tolerance(config, 1e-8);
    if spec.c.is_empty() || spec.points.is_empty() {
        return Err(Failure::usage("split needs at least one c and one point"));
    }
    if !(spec.offset > 0.0 && spec.truncation > spec.offset) {
        return Err(Failure::usage("split needs 0 < offset < truncation"));
    }
    let contours = SplitContours::symmetric(spec.offset, spec.truncation);
    let mut rows = Vec::new();
    let mut max: f64 = 0.0;
    for &cc in &spec.c {
        if !(cc.is_finite() && cc > 2.0 * spec.offset) {
            return Err(Failure::usage(format!(
                "c = {cc} must exceed twice the contour offset so the poles lie outside the strip"
            )));
        }
        let f = Function1D::new(move |z| Ok(1.0 / (z * z + cc * cc)), -2.0 * spec.offset, 2.0 * spec.offset);
        let ic = Complex64::new(0.0, cc);
        for &z in &spec.points {
            let row = (|| -> Result<Value, pwedge::Error> {
                let s = sum_split(&f, &contours, z, Route::Direct, Tolerance::default())?;
                let plus = -1.0 / (2.0 * ic * (z + ic));
                let minus = 1.0 / (2.0 * ic * (z - ic));
                let e_sum = (s.plus.value + s.minus.value - f.eval(z)?).norm();
                let e_plus = (s.plus.value - plus).norm();
                let e_minus = (s.minus.value - minus).norm();
                max = max.max(e_sum).max(e_plus).max(e_minus);
                Ok(json!({
                    "c": cc, "z": pair(z),
                    "plus": pair(s.plus.value), "minus": pair(s.minus.value),
                    "sum_error": e_sum, "plus_error": e_plus, "minus_error": e_minus
                }))
            })();
            rows.push(row);
        }
    }
    let summary = json!({"max_error": max, "tolerance": tol});
    let (points, summary) = gather(rows, summary)?;
    let report = json!({"points": points, "summary": summary});
    if max < tol {
        Ok(report)
    } else {
        Err(Failure::numerical(format!("max error {max:.3e} exceeds {tol:.3e}"), Some(report)))
    }
}

pub fn ansatz(config: &RunConfig) -> Outcome {
    let params = config.params;
    let sys = SpectralSystem::new(params);
    let with_correction = !config.candidate.is_zero();
    let rows: Vec<Result<Value, pwedge::Error>> = probes(config)?
        .par_iter()
        .map(|&a| {
            let r = sys.radlow_ansatz(a)?;
            let mut row = json!({"alpha1": pair(a.alpha1), "alpha2": pair(a.alpha2), "radlow": pair(r)});
            if with_correction {
                let c = sys.correction_term(&config.candidate, a)?.value;
                row["correction"] = pair(c);
                row["psi_pp"] = pair(r + c);
            }
            Ok(row)
        })
        .collect();
    let f = |a: SpectralPoint| sys.radlow_ansatz(a);
    let decay = (|| -> Result<Value, pwedge::Error> {
        Ok(json!({
            "alpha1": decay_rate_probe(&f, DecayDirection::Alpha1, &params)?,
            "alpha2": decay_rate_probe(&f, DecayDirection::Alpha2, &params)?,
            "joint": decay_rate_probe(&f, DecayDirection::Joint, &params)?,
        }))
    })()?;
    let (points, summary) = gather(rows, json!({"decay_slopes": decay}))?;
    Ok(json!({"points": points, "summary": summary}))
}

pub fn residual(config: &RunConfig) -> Outcome {
    let sys = SpectralSystem::new(config.params);
    let probes = probes(config)?;
    let reports = sys.residual_reports(&config.candidate, &probes)?;
    let sup = reports.iter().map(|r| r.residual.norm()).fold(0.0, f64::max);
    Ok(json!({
        "points": reports,
        "summary": {"sup_residual": sup, "probes": probes.len(), "degenerate": config.params.is_degenerate()}
    }))
}

pub fn field(config: &RunConfig) -> Outcome {
    let params = config.params;
    let g = &config.grid;
    let tol = tolerance(config, 1e-2);
    let contour = gamma_contour(&params, g.mode, g.indentation_radius)?;
    let degenerate = SpectralFunctions::degenerate(params);
    let minus_p = move |a: SpectralPoint| Ok(-forcing_p(&params, a)?);
    let phi_minus_p = move |a: SpectralPoint| Ok((kernel_k(&params, a)? - 1.0) * forcing_p(&params, a)?);
    let fields = match g.source {
        FieldSource::Degenerate => {
            if !params.is_degenerate() {
                return Err(Failure::usage(
                    "source DEGENERATE needs k1 = k2; use MINUS_P for other configurations",
                ));
            }
            reconstruct_fields(&params, &*degenerate.psi_pp, &*degenerate.phi_34, &contour.contour, g.spacing, g.nodes, g.exterior_nodes)?
        }
        FieldSource::MinusP => {
            reconstruct_fields(&params, &minus_p, &phi_minus_p, &contour.contour, g.spacing, g.nodes, g.exterior_nodes)?
        }
    };
    let j1 = continuity_check(&fields.phi, &fields.psi, Face::X1Positive)?;
    let j2 = continuity_check(&fields.phi, &fields.psi, Face::X2Positive)?;
    let h_in = helmholtz_residual(&fields.psi, params.k2)?;
    let h_out = helmholtz_residual(&fields.phi, params.k1)?;
    let kmax = params.wavenumber_scale();
    let budget = g.spacing * g.spacing * kmax.powi(4) / 6.0;
    let inner = edge_expansion_fit(&fields.psi, g.fit_radius)?;
    let outer = edge_expansion_fit(&fields.phi, g.fit_radius)?;
    let mut files = Vec::new();
    if config.out.is_some() {
        let dir = out_dir(config)?;
        for (name, grid) in [("psi.csv", &fields.psi), ("phi.csv", &fields.phi)] {
            let path = dir.join(name);
            write(&path, grid.to_csv().as_bytes())?;
            files.push(path.display().to_string());
        }
    }
    let jump = [j1.value, j1.derivative, j2.value, j2.derivative].into_iter().fold(0.0, f64::max);
    let report = json!({
        "contour": {"mode": g.mode, "experimental": contour.experimental, "warnings": contour.warnings},
        "continuity": {"X1_POSITIVE": j1, "X2_POSITIVE": j2, "max_jump": jump, "tolerance": tol},
        "helmholtz": {"interior": h_in, "exterior": h_out, "stencil_budget": budget,
                      "within_budget": h_in <= budget && h_out <= budget},
        "edge": {"interior": inner, "exterior": outer, "B_difference": (inner.B - outer.B).norm()},
        "files": files,
    });
    if jump < tol {
        Ok(report)
    } else {
        Err(Failure::numerical(format!("continuity jump {jump:.3e} exceeds {tol:.3e}"), Some(report)))
    }
}

fn write(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    std::fs::write(path, bytes).map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))
}

type Scalar = Box<dyn Fn(Complex64) -> pwedge::Result<Complex64> + Sync>;

fn selector_function(config: &RunConfig) -> Scalar {
    let spec = &config.portrait;
    let params: WaveParams = config.params;
    let (fixed, plane, k) = (spec.fixed, spec.plane, spec.k);
    let at = move |z: Complex64| match plane {
        PlaneSpec::Alpha1 => SpectralPoint::new(z, fixed),
        PlaneSpec::Alpha2 => SpectralPoint::new(fixed, z),
    };
    let factor = |which: FactorKind| -> Scalar {
        let kf = KernelFactors::new(params);
        Box::new(move |z| kf.factor(which, at(z)))
    };
    match spec.function {
        Selector::Mylog => Box::new(mylog),
        Selector::Mysqrt => Box::new(|z| Ok(mysqrt(z))),
        Selector::Kappa => Box::new(move |z| Ok(kappa(k, z))),
        Selector::Kernel => Box::new(move |z| kernel_k(&params, at(z))),
        Selector::KPlusCirc => Box::new(move |z| k_plus_circ(&params, at(z))),
        Selector::KMinusCirc => Box::new(move |z| k_minus_circ(&params, at(z))),
        Selector::MylogKPlusCirc => Box::new(move |z| mylog(k_plus_circ(&params, at(z))?)),
        Selector::MylogKMinusCirc => Box::new(move |z| mylog(k_minus_circ(&params, at(z))?)),
        Selector::KMm => factor(FactorKind::MM),
        Selector::KMp => factor(FactorKind::MP),
        Selector::KPm => factor(FactorKind::PM),
        Selector::KPp => factor(FactorKind::PP),
        Selector::Radlow => {
            let sys = SpectralSystem::new(params);
            Box::new(move |z| sys.radlow_ansatz(at(z)))
        }
    }
}

pub fn portrait(config: &RunConfig) -> Outcome {
    let spec = &config.portrait;
    let (raster, check) = match spec.figure {
        Some(fig) => {
            let (raster, report) = fig.check(&config.params, spec.width, spec.height)?;
            (raster, Some(report))
        }
        None => {
            let [a, b, c, d] = spec.window;
            let f = selector_function(config);
            (render(f, Window::new(a, b, c, d), spec.width, spec.height)?, None)
        }
    };
    let dir = out_dir(config)?;
    let ext = match spec.format {
        Format::Ppm => "ppm",
        Format::Png => "png",
    };
    let path = dir.join(format!("{}.{ext}", spec.file));
    write_image_with(&raster, &path, spec.format, spec.shading)?;
    let mut report = json!({
        "file": path.display().to_string(),
        "window": raster.window,
        "width": raster.width,
        "height": raster.height,
        "failures": raster.failures.len(),
        "figure_check": check,
    });
    if let Some(threshold) = spec.threshold {
        if !(threshold > 0.0 && threshold < std::f64::consts::PI) {
            return Err(Failure::usage(format!("threshold must lie in (0, π), got {threshold}")));
        }
        let edges = discontinuity_detect(&raster, threshold);
        let sample: Vec<Value> = edges.iter().take(50).map(|e| pair(edge_midpoint(&raster, e))).collect();
        report["discontinuities"] = json!({"threshold": threshold, "edges": edges.len(), "midpoints_sample": sample});
        if spec.figure.is_none() && spec.function == Selector::Kappa {
            let s = CutStructure { cuts: vec![spec.k * spec.k], points: vec![] };
            report["discontinuities"]["unexplained"] = json!(s.unexplained(&raster, &edges, 2.0).len());
            report["discontinuities"]["unanchored_branch_points"] =
                json!(s.unanchored(&raster, &edges, 3.0).iter().map(|&p| pair(p)).collect::<Vec<_>>());
            report["discontinuities"]["branch_points"] =
                json!(s.branch_points().iter().map(|&p| pair(p)).collect::<Vec<_>>());
        }
    }
    Ok(report)
}

pub fn verify(config: &RunConfig) -> Outcome {
    let opts = AcceptanceOptions {
        seed: config.seed.unwrap_or(AcceptanceOptions::default().seed),
        random_points: config.probes.unwrap_or(AcceptanceOptions::default().random_points),
    };
    let reports = run_all(&opts);
    for r in &reports {
        eprintln!("{}", r.summary_line());
    }
    let failed = reports.iter().filter(|r| !r.pass).count();
    let report = json!({"options": opts, "criteria": reports, "failed": failed});
    if failed == 0 {
        Ok(report)
    } else {
        Err(Failure::numerical(format!("{failed} acceptance criteria failed"), Some(report)))
    }
}
