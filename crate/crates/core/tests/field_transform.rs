use num_complex::Complex64;
use pwedge::fields::{
    gamma_contour, incident_field, inverse_transform, GammaMode, PhysicalPoint, TransformPlan,
};
use pwedge::kernel::{degenerate_params, figure_params, forcing_p, SpectralPoint};

#[test]
fn minus_p_transforms_back_to_incident_wave() {
    let params = degenerate_params();
    let spectral = move |a: SpectralPoint| Ok(-forcing_p(&params, a)?);
    let contour = gamma_contour(&params, GammaMode::Absorbing, 0.1).unwrap().contour;
    let plan = TransformPlan::new(&spectral, &contour, &contour).unwrap();
    for x1 in [0.25, 1.0, 2.0] {
        for x2 in [0.25, 1.0, 2.0] {
            let x = PhysicalPoint::new(x1, x2);
            let got = plan.eval(x).unwrap();
            let want = incident_field(&params, x);
            assert!((got - want).norm() < 1e-3, "{x:?}: {got} vs {want}");
        }
    }
}

#[test]
fn transform_vanishes_outside_the_quadrant() {
    // the quarter-plane transform of φ_in is supported on Q1 only
    let params = degenerate_params();
    let spectral = move |a: SpectralPoint| Ok(-forcing_p(&params, a)?);
    let contour = gamma_contour(&params, GammaMode::Absorbing, 0.1).unwrap().contour;
    let v = inverse_transform(&spectral, &contour, &contour, PhysicalPoint::new(-1.0, 0.5)).unwrap();
    assert!(v.norm() < 1e-3, "{v}");
}

#[test]
fn zero_and_linearity() {
    let params = figure_params();
    let contour = gamma_contour(&params, GammaMode::Absorbing, 0.1).unwrap().contour;
    let x = PhysicalPoint::new(0.7, 0.4);
    let zero = |_: SpectralPoint| Ok(Complex64::new(0.0, 0.0));
    assert_eq!(inverse_transform(&zero, &contour, &contour, x).unwrap(), Complex64::new(0.0, 0.0));
    let f = move |a: SpectralPoint| Ok(-forcing_p(&params, a)?);
    let g = move |a: SpectralPoint| Ok(-2.0 * forcing_p(&params, a)?);
    let one = inverse_transform(&f, &contour, &contour, x).unwrap();
    let two = inverse_transform(&g, &contour, &contour, x).unwrap();
    assert!((two - 2.0 * one).norm() < 1e-14);
}

#[test]
fn indented_and_absorbing_agree() {
    let params = figure_params();
    let f = move |a: SpectralPoint| Ok(-forcing_p(&params, a)?);
    let plain = gamma_contour(&params, GammaMode::Absorbing, 0.1).unwrap().contour;
    let bent = gamma_contour(&params, GammaMode::Indented, 0.1).unwrap().contour;
    for x in [PhysicalPoint::new(0.5, 1.5), PhysicalPoint::new(2.0, 0.3), PhysicalPoint::new(-0.5, 0.8)] {
        let a = inverse_transform(&f, &plain, &plain, x).unwrap();
        let b = inverse_transform(&f, &bent, &bent, x).unwrap();
        assert!((a - b).norm() < 1e-8, "{x:?}: {a} vs {b}");
    }
}

#[test]
fn tails_need_nonzero_coordinates() {
    let params = degenerate_params();
    let f = move |a: SpectralPoint| Ok(-forcing_p(&params, a)?);
    let contour = gamma_contour(&params, GammaMode::Absorbing, 0.1).unwrap().contour;
    assert!(inverse_transform(&f, &contour, &contour, PhysicalPoint::new(0.0, 1.0)).is_err());
}
