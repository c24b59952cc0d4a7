use num_complex::Complex64;
use pwedge::cauchy::Sign;
use pwedge::kernel::{degenerate_params, figure_params, SpectralPoint, WaveParams};
use pwedge::spectra::{CandidateTerm, SpectralCandidate, SpectralFunctions, SpectralSystem};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn one_term(params: &WaveParams) -> SpectralCandidate {
    let eps = params.epsilon_strip;
    SpectralCandidate::rational(vec![CandidateTerm {
        coeff: c(0.5, 0.25),
        pole1: c(0.2, -eps - 0.6),
        order1: 1,
        pole2: c(-0.1, eps + 0.6),
        order2: 2,
    }])
}

#[test]
fn degenerate_correction_vanishes_for_any_candidate() {
    let params = degenerate_params();
    let sys = SpectralSystem::new(params);
    let cand = one_term(&params);
    let alpha = SpectralPoint::new(c(0.4, 0.3), c(-0.2, 0.4));
    let corr = sys.correction_term(&cand, alpha).unwrap();
    assert!(corr.value.norm() < 1e-8, "{}", corr.value);
}

#[test]
fn theorem_psi_satisfies_upper_e2_branch() {
    // with Ψ₊₊ = ansatz + correction the upper expression of E₂ is zero,
    // so E₂ reduces to minus the compatibility residual
    let params = figure_params();
    let sys = SpectralSystem::new(params);
    let cand = one_term(&params);
    let alpha = SpectralPoint::new(c(0.3, 0.05), c(0.6, 0.02));
    let psi = |a: SpectralPoint| sys.psi_pp(&cand, a);
    let e2 = sys.e2_residual(&cand, &psi, alpha).unwrap();
    let compat = sys.compatibility_residual(&cand, alpha).unwrap();
    assert!((e2 + compat.value).norm() < 1e-7 * compat.value.norm().max(1.0), "{e2} vs {}", compat.value);
}

#[test]
fn outer_bracket_parts_reconstruct_g() {
    let params = figure_params();
    let sys = SpectralSystem::new(params);
    let cand = one_term(&params);
    let alpha = SpectralPoint::new(c(-0.5, 0.1), c(0.25, 0.03));
    let plus = sys.outer_bracket(&cand, alpha, Sign::Plus).unwrap();
    let minus = sys.outer_bracket(&cand, alpha, Sign::Minus).unwrap();
    let g = sys.g_function(&cand, alpha).unwrap();
    assert!((plus.value + minus.value - g).norm() < 1e-8 * g.norm().max(1e-3));
}

#[test]
fn residual_is_affine_in_candidate() {
    let params = figure_params();
    let sys = SpectralSystem::new(params);
    let cand = one_term(&params);
    let mut doubled = cand.clone();
    doubled.terms[0].coeff *= 2.0;
    let alpha = SpectralPoint::new(c(0.5, 0.05), c(-0.75, -0.05));
    let r0 = sys.compatibility_residual(&SpectralCandidate::zero(), alpha).unwrap().value;
    let r1 = sys.compatibility_residual(&cand, alpha).unwrap().value;
    let r2 = sys.compatibility_residual(&doubled, alpha).unwrap().value;
    assert!(((r2 - r0) - 2.0 * (r1 - r0)).norm() < 1e-6 * (r1 - r0).norm());
}

#[test]
fn degenerate_e1_e2_vanish() {
    let params = degenerate_params();
    let sys = SpectralSystem::new(params);
    let f = SpectralFunctions::degenerate(params);
    let zero = SpectralCandidate::zero();
    let phi_mcirc = |_: SpectralPoint| Ok(c(0.0, 0.0));
    for a in [SpectralPoint::new(c(0.3, 0.1), c(-0.6, -0.1)), SpectralPoint::new(c(-1.2, -0.2), c(0.9, 0.2))] {
        assert!(sys.e1_residual(&zero, &*f.psi_pp, &phi_mcirc, a).unwrap().norm() < 1e-12);
        assert!(sys.e2_residual(&zero, &*f.psi_pp, a).unwrap().norm() < 1e-12);
    }
}
