//! Small hand-checkable cases for every public operation. Reference values
//! are recomputed here from first principles (std `exp`/`ln`/`cos`, brute
//! force searches) rather than taken from the library.

use std::f64::consts::{E, FRAC_1_SQRT_2, PI, SQRT_2};

use berezin_lab::berezin::{
    blaschke_radial_restriction, closed_form_dirichlet_elliptic, closed_form_fock_affine, closed_form_fock_elliptic,
    conjugate_symmetry_residual, ConvexityClass,
};
use berezin_lab::cplane::{collinear, densify_polygon, DEFAULT_T_GRID};
use berezin_lab::kernels::{dirichlet_kernel, dirichlet_norm_sq, fock_kernel, fock_norm_sq};
use berezin_lab::numrange::{support_boundary_point, EllipseShape};
use berezin_lab::symbols::{classify_fock_boundedness, Boundedness};
use berezin_lab::unitorbit::{circle_family_points, envelope_of_circle_family, orbit_diagonal, OrbitGrid};
use berezin_lab::{
    berezin_transform, blaschke_decomposition, build_unitary, classify_convexity, contains, convex_hull,
    convexity_report, convexity_report_default, elliptic_params, haar_orbit_cloud, hausdorff, numerical_range_cloud,
    orbit_cloud_2x2, sample_range, schur_2x2, CMatrix, CPoint, Error, PointCloud, SamplingGrid, SpaceId, SymbolSpec,
    UnitaryFamily, Verdict,
};
use num_complex::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn m2(a: Complex64, b: Complex64, cc: Complex64, d: Complex64) -> CMatrix {
    CMatrix::new(2, vec![a, b, cc, d]).unwrap()
}

fn real(x: f64) -> Complex64 {
    c(x, 0.0)
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol
}

// ---------------------------------------------------------------- geometry

#[test]
fn hull_drops_interior_points() {
    let cloud = PointCloud::new(vec![c(0., 0.), c(1., 0.), c(0., 1.), c(0.25, 0.25)]);
    assert_eq!(convex_hull(&cloud).unwrap(), vec![c(0., 0.), c(1., 0.), c(0., 1.)]);
    assert_eq!(convex_hull(&PointCloud::new(vec![c(0., 0.)])).unwrap(), vec![c(0., 0.)]);
}

#[test]
fn every_circle_sample_is_a_hull_vertex() {
    let pts: Vec<CPoint> = (0..100).map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / 100.0)).collect();
    // Brute force: p is extreme when the half-plane through p with outward
    // normal p leaves every other sample strictly inside.
    for (i, p) in pts.iter().enumerate() {
        for (j, q) in pts.iter().enumerate() {
            if i != j {
                assert!((q * p.conj()).re < p.norm_sqr());
            }
        }
    }
    assert_eq!(convex_hull(&PointCloud::new(pts)).unwrap().len(), 100);
}

#[test]
fn detector_on_segment_circle_and_tilted_rotation() {
    let seg = PointCloud::new((0..1000).map(|k| real(k as f64 / 999.0)).collect());
    let report = convexity_report(&seg, 1e-3, 200_000, &DEFAULT_T_GRID).unwrap();
    assert_eq!(report.verdict, Verdict::Convex);

    let circle = PointCloud::new((0..1000).map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / 1000.0)).collect());
    let report = convexity_report(&circle, 1e-3, 200_000, &DEFAULT_T_GRID).unwrap();
    assert_eq!(report.verdict, Verdict::NonConvex);
    assert!((report.max_violation - 1.0).abs() < 0.01, "{}", report.max_violation);
    assert!(report.witness.unwrap().chord_point().norm() < 0.01);

    let sym = SymbolSpec::DiscRotation { zeta: Complex64::from_polar(0.5, PI / 3.0) };
    let cloud = sample_range(SpaceId::Fock, &sym, &SamplingGrid::fock_default()).unwrap();
    assert_eq!(convexity_report_default(&cloud).unwrap().verdict, Verdict::NonConvex);
}

#[test]
fn collinearity_cases() {
    assert!(collinear(c(0., 0.), c(1., 0.), c(2., 0.), 1e-9));
    assert!(collinear(c(0., 0.), c(0., 0.), c(5., 5.), 1e-9));
    let (a, b) = (0.3f64, 1.0f64);
    let rho2 = PI;
    let p = c(1., 0.);
    let q = c(a.exp() * b.cos(), a.exp() * b.sin());
    let r = c((a * rho2).exp() * (b * rho2).cos(), (a * rho2).exp() * (b * rho2).sin());
    let det = (q.re - p.re) * (r.im - p.im) - (q.im - p.im) * (r.re - p.re);
    assert!(det.abs() > 0.1, "oracle determinant {det}");
    assert!(!collinear(p, q, r, 1e-9));
}

#[test]
fn hausdorff_cases() {
    let a = PointCloud::new(vec![c(1., 2.), c(-3., 0.5)]);
    assert_eq!(hausdorff(&a, &a).unwrap(), 0.0);
    assert_eq!(hausdorff(&PointCloud::new(vec![c(0., 0.)]), &PointCloud::new(vec![c(3., 4.)])).unwrap(), 5.0);
    let dense: Vec<CPoint> = (0..=1000).map(|k| real(k as f64 / 1000.0)).collect();
    let ends = vec![real(0.0), real(1.0)];
    let brute = dense
        .iter()
        .map(|p| ends.iter().map(|q| (p - q).norm()).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max);
    let d = hausdorff(&PointCloud::new(dense), &PointCloud::new(ends)).unwrap();
    assert_eq!(d, brute);
    assert!((d - 0.5).abs() < 1e-15);
}

// ----------------------------------------------------------------- kernels

#[test]
fn fock_kernel_values() {
    assert_eq!(fock_kernel(c(0., 0.), c(3., -2.)).unwrap(), real(1.0));
    assert!(close(fock_kernel(real(1.), real(1.)).unwrap(), real(E), 1e-15));
    assert!(close(fock_kernel(real(1.), c(0., 1.)).unwrap(), c(1f64.cos(), -1f64.sin()), 1e-15));
    assert_eq!(fock_norm_sq(c(0., 0.)).unwrap(), 1.0);
    assert!((fock_norm_sq(Complex64::from_polar(1.0, 0.7)).unwrap() - E).abs() < 1e-15);
    assert!((fock_norm_sq(c(2., 1.)).unwrap() - 5f64.exp()).abs() < 1e-12);
}

#[test]
fn dirichlet_kernel_values() {
    assert_eq!(dirichlet_kernel(c(0.3, 0.2), c(0., 0.)).unwrap(), real(1.0));
    assert_eq!(dirichlet_kernel(c(0., 0.), c(0.3, 0.2)).unwrap(), real(1.0));
    let u: f64 = 0.25;
    assert!(close(dirichlet_kernel(real(0.5), real(0.5)).unwrap(), real(-(1.0 - u).ln() / u), 1e-15));
    assert!((4.0 * (4.0f64 / 3.0).ln() - 1.150728).abs() < 1e-6);
    let u = 1e-6;
    let series = 1.0 + u / 2.0 + u * u / 3.0;
    assert!(close(dirichlet_kernel(real(1e-3), real(1e-3)).unwrap(), real(series), 1e-16));
    assert_eq!(dirichlet_norm_sq(c(0., 0.)).unwrap(), 1.0);
    let z = Complex64::from_polar(0.5f64.sqrt(), 1.3);
    assert!((dirichlet_norm_sq(z).unwrap() - 2.0 * 2f64.ln()).abs() < 1e-14);
    let s: f64 = 1.0 - 1e-8;
    let z = real(s.sqrt());
    let oracle = -(1e-8f64).ln() / s;
    assert!((dirichlet_norm_sq(z).unwrap() - oracle).abs() < 1e-6 * oracle);
    assert!((oracle - 18.42).abs() < 0.01);
}

// ----------------------------------------------------------------- symbols

#[test]
fn symbol_evaluations() {
    let z = c(0.3, -0.4);
    assert_eq!(SymbolSpec::Blaschke { alpha: c(0., 0.) }.apply(z).unwrap(), z);
    assert_eq!(SymbolSpec::Blaschke { alpha: real(0.5) }.apply(real(0.5)).unwrap(), c(0., 0.));
    let affine = SymbolSpec::FockAffine { zeta: real(0.5), a: real(1.0) };
    assert_eq!(affine.apply(real(2.0)).unwrap(), real(2.0));
}

#[test]
fn fock_boundedness_cases() {
    assert_eq!(classify_fock_boundedness(real(0.5), real(1.0)), Boundedness::BoundedCompact);
    assert_eq!(classify_fock_boundedness(Complex64::from_polar(1.0, PI / 3.0), c(0., 0.)), Boundedness::BoundedNonCompact);
    assert_eq!(classify_fock_boundedness(real(1.0), real(0.1)), Boundedness::Unbounded);
}

#[test]
fn symbol_validation_cases() {
    assert!(matches!(SymbolSpec::Blaschke { alpha: real(1.0) }.validate(), Err(Error::InvalidParameter(_))));
    let twelfth_turn = SymbolSpec::FockSpecialAutomorphism { a: Complex64::from_polar(1.0, PI / 12.0), b: c(0., 0.) };
    twelfth_turn.validate().unwrap();
    twelfth_turn.validate_for(SpaceId::Fock).unwrap();
    let pole = SymbolSpec::FockSpecialAutomorphism { a: real(SQRT_2), b: real(1.0) };
    pole.validate().unwrap();
    assert!(matches!(pole.validate_for(SpaceId::Fock), Err(Error::NotApplicable(_))));
}

// ----------------------------------------------------------------- berezin

#[test]
fn transform_special_values() {
    for sym in [
        SymbolSpec::Blaschke { alpha: c(0.2, 0.5) },
        SymbolSpec::DiscRotation { zeta: c(0., 1.) },
        SymbolSpec::DiscAutomorphism { theta: 1.0, alpha: c(-0.3, 0.1) },
    ] {
        assert_eq!(berezin_transform(SpaceId::Dirichlet, &sym, c(0., 0.)).unwrap(), real(1.0));
    }
    let id = SymbolSpec::DiscRotation { zeta: real(1.0) };
    assert!(close(berezin_transform(SpaceId::Fock, &id, c(3., 4.)).unwrap(), real(1.0), 1e-15));
    let b0 = SymbolSpec::Blaschke { alpha: c(0., 0.) };
    let z = Complex64::from_polar(0.7, 2.1);
    assert!(close(berezin_transform(SpaceId::Dirichlet, &b0, z).unwrap(), real(1.0), 1e-15));
}

#[test]
fn fock_closed_form_values() {
    assert!(close(closed_form_fock_elliptic(real(1.0), c(2., -1.)).unwrap(), real(1.0), 1e-15));
    let unit = Complex64::from_polar(1.0, 0.4);
    assert!(close(closed_form_fock_elliptic(real(-1.0), unit).unwrap(), real((-2f64).exp()), 1e-15));
    let oracle = c(1f64.cos(), 1f64.sin()) / E;
    assert!(close(closed_form_fock_elliptic(c(0., 1.), unit).unwrap(), oracle, 1e-15));
    assert!(close(oracle, c(0.198766, 0.309560), 1e-6));

    let (zeta, z) = (c(0.3, -0.2), c(1.5, 0.7));
    assert!(close(closed_form_fock_affine(zeta, c(0., 0.), z).unwrap(), closed_form_fock_elliptic(zeta, z).unwrap(), 1e-15));
    assert!(close(closed_form_fock_affine(real(0.5), real(1.0), real(1.0)).unwrap(), real(0.5f64.exp()), 1e-15));
    let oracle = c(10f64.cos(), -10f64.sin()) * (-0.5f64).exp();
    assert!(close(closed_form_fock_affine(real(0.5), real(10.0), c(0., 1.)).unwrap(), oracle, 1e-14));
}

#[test]
fn dirichlet_closed_form_values() {
    assert!(close(closed_form_dirichlet_elliptic(real(1.0), c(0.2, 0.6)).unwrap(), real(1.0), 1e-15));
    let z = Complex64::from_polar(0.5f64.sqrt(), 0.9);
    let oracle = -(1.5f64).ln() / 0.5f64.ln();
    assert!(close(closed_form_dirichlet_elliptic(real(-1.0), z).unwrap(), real(oracle), 1e-15));
    assert!((oracle - 0.5849625).abs() < 1e-7);
    let oracle = c(1.0, 0.5).ln() / (c(0., -1.) * 0.5f64.ln());
    assert!(close(closed_form_dirichlet_elliptic(c(0., -1.), z).unwrap(), oracle, 1e-15));
}

#[test]
fn blaschke_decomposition_cases() {
    let alpha = Complex64::from_polar(0.5, PI / 3.0);
    let z = Complex64::from_polar(0.6, 0.8);
    let direct = berezin_transform(SpaceId::Dirichlet, &SymbolSpec::Blaschke { alpha }, z).unwrap();
    assert!(close(blaschke_decomposition(alpha, z).unwrap().assemble(), direct, 1e-10));

    let d = blaschke_decomposition(c(0., 0.), c(0.3, -0.5)).unwrap();
    assert!(close(d.assemble(), real(1.0), 1e-14));

    let on_line = Complex64::from_polar(0.3, PI / 3.0);
    let d = blaschke_decomposition(alpha, on_line).unwrap();
    assert!(d.log_argument.im.abs() < 1e-15 && d.first_factor.im.abs() < 1e-15, "{d:?}");
}

#[test]
fn radial_restriction_cases() {
    let alpha = real(0.5);
    for r in [-1.9, -0.5, 0.1, 0.5, 1.0, 1.5, 1.99] {
        assert_eq!(blaschke_radial_restriction(alpha, r).unwrap().im, 0.0);
    }
    let r = (1.0 - 1e-6f64).sqrt() / 0.5;
    assert!((blaschke_radial_restriction(alpha, r).unwrap().re - 1.0).abs() < 0.06);

    // The printed formula at r = 0.5 (w = 0.25), evaluated with plain logs,
    // against the kernel path.
    let (w2, rs) = (0.0625f64, 0.125f64);
    let printed = w2 * (1.0 - rs) / (w2 - rs) * (1.0 - (1.0 - rs).ln() / (1.0 - w2).ln());
    let value = blaschke_radial_restriction(alpha, 0.5).unwrap();
    assert!((value.re - printed).abs() < 1e-14);
    let direct = berezin_transform(SpaceId::Dirichlet, &SymbolSpec::Blaschke { alpha }, real(0.25)).unwrap();
    assert!(close(value, direct, 1e-12));
}

#[test]
fn conjugate_symmetry_cases() {
    let alpha = Complex64::from_polar(0.3, 1.1);
    assert!(conjugate_symmetry_residual(alpha, 0.8, 2.5).unwrap() < 1e-12);
    let on_axis = berezin_transform(SpaceId::Dirichlet, &SymbolSpec::Blaschke { alpha }, Complex64::from_polar(0.8, 1.1)).unwrap();
    assert!(on_axis.im.abs() < 1e-15);
    assert!(conjugate_symmetry_residual(alpha, 0.8, 1.1).unwrap() < 1e-15);
}

#[test]
fn sampled_rotation_ranges() {
    let grid = SamplingGrid { n_r: 50, n_theta: 32, ..SamplingGrid::fock_default() };
    let id = sample_range(SpaceId::Fock, &SymbolSpec::DiscRotation { zeta: real(1.0) }, &grid).unwrap();
    assert!(id.points.iter().all(|p| close(*p, real(1.0), 1e-15)));
    for zeta in [-1.0, -0.4, 0.0, 0.9] {
        let cloud = sample_range(SpaceId::Fock, &SymbolSpec::DiscRotation { zeta: real(zeta) }, &grid).unwrap();
        assert!(cloud.points.iter().all(|p| p.im.abs() < 1e-15 && p.re > 0.0 && p.re <= 1.0 + 1e-15), "{zeta}");
    }
    let grid = SamplingGrid { n_r: 50, n_theta: 32, ..SamplingGrid::dirichlet_default() };
    let cloud = sample_range(SpaceId::Dirichlet, &SymbolSpec::DiscRotation { zeta: real(-1.0) }, &grid).unwrap();
    assert!(cloud.points.iter().all(|p| p.im.abs() < 1e-15 && p.re > 0.0 && p.re <= 1.0 + 1e-15));
}

#[test]
fn classification_cases() {
    let tilted = SymbolSpec::DiscRotation { zeta: Complex64::from_polar(0.5, PI / 3.0) };
    assert!(matches!(classify_convexity(SpaceId::Fock, &tilted).unwrap(), ConvexityClass::NonConvex(_)));
    let flip = SymbolSpec::DiscRotation { zeta: real(-1.0) };
    assert!(matches!(classify_convexity(SpaceId::Dirichlet, &flip).unwrap(), ConvexityClass::Convex(_)));
    let open = SymbolSpec::FockAffine { zeta: real(0.5), a: real(10.0) };
    assert!(matches!(classify_convexity(SpaceId::Fock, &open).unwrap(), ConvexityClass::OpenQuestion(_)));
}

// ---------------------------------------------------------------- numrange

#[test]
fn schur_cases() {
    let one = real(1.0);
    let zero = c(0., 0.);
    let s = schur_2x2(&m2(one, one, zero, -one)).unwrap();
    assert!(close(s.lambda1, one, 1e-15) && close(s.lambda2, -one, 1e-15) && close(s.m, one, 1e-15));
    assert!(s.unitary.sub(&CMatrix::identity(2)).max_abs() < 1e-15);

    let s = schur_2x2(&m2(zero, zero, one, zero)).unwrap();
    assert!(s.lambda1.norm() < 1e-15 && s.lambda2.norm() < 1e-15);
    assert!((s.m.norm() - 1.0).abs() < 1e-15);

    let s = schur_2x2(&m2(real(2.), one, one, real(2.))).unwrap();
    let mut eig = [s.lambda1.re, s.lambda2.re];
    eig.sort_by(f64::total_cmp);
    assert!((eig[0] - 1.0).abs() < 1e-13 && (eig[1] - 3.0).abs() < 1e-13);
    assert!(s.m.norm() < 1e-13);
}

#[test]
fn ellipse_cases() {
    let zero = c(0., 0.);
    let e = elliptic_params(&m2(zero, real(2.), zero, zero)).unwrap();
    assert_eq!(e.shape(), EllipseShape::Circle);
    assert!(e.center.norm() < 1e-15 && (e.minor_axis / 2.0 - 1.0).abs() < 1e-15);

    let e = elliptic_params(&CMatrix::diagonal(&[zero, real(1.)])).unwrap();
    assert_eq!(e.shape(), EllipseShape::Segment);
    let mut ends = [e.focus1.re, e.focus2.re];
    ends.sort_by(f64::total_cmp);
    assert_eq!(ends, [0.0, 1.0]);

    let t = m2(real(1.), real(1.), zero, real(-1.));
    let e = elliptic_params(&t).unwrap();
    assert!((e.focal_radius() - 1.0).abs() < 1e-15);
    assert!((e.minor_axis - 1.0).abs() < 1e-15);
    assert!((e.major_axis - 5f64.sqrt()).abs() < 1e-15);
    // Support-function widths along the axes.
    let width = |theta: f64| {
        let a = support_boundary_point(&t, theta).unwrap();
        let b = support_boundary_point(&t, theta + PI).unwrap();
        ((a - b) * Complex64::from_polar(1.0, -theta)).re
    };
    assert!((width(0.0) - 5f64.sqrt()).abs() < 1e-12);
    assert!((width(PI / 2.0) - 1.0).abs() < 1e-12);
}

#[test]
fn support_point_cases() {
    let zero = c(0., 0.);
    let jordan = m2(zero, real(1.), zero, zero);
    // Dense sampling of ⟨Tu, u⟩ = cos t sin t e^{is} for u = (cos t, e^{is} sin t).
    let mut best = f64::MIN;
    for i in 0..=400 {
        for j in 0..64 {
            let (t, s) = (PI / 2.0 * i as f64 / 400.0, 2.0 * PI * j as f64 / 64.0);
            best = best.max((t.cos() * t.sin() * Complex64::from_polar(1.0, s)).re);
        }
    }
    let p = support_boundary_point(&jordan, 0.0).unwrap();
    assert!(close(p, real(0.5), 1e-12));
    assert!((best - 0.5).abs() < 1e-4);

    let h = m2(real(2.), c(1., 1.), c(1., -1.), real(-1.));
    let top = 0.5 + (2.25f64 + 2.0).sqrt();
    assert!(close(support_boundary_point(&h, 0.0).unwrap(), real(top), 1e-12));

    let d = CMatrix::diagonal(&[zero, real(1.)]);
    for k in 0..16 {
        let p = support_boundary_point(&d, 2.0 * PI * k as f64 / 16.0).unwrap();
        assert!(close(p, zero, 1e-12) || close(p, real(1.), 1e-12), "{p}");
    }
}

#[test]
fn boundary_cloud_cases() {
    let zero = c(0., 0.);
    let jordan = m2(zero, real(1.), zero, zero);
    let cloud = numerical_range_cloud(&jordan, 360).unwrap();
    assert_eq!(cloud.len(), 360);
    assert!(cloud.points.iter().all(|p| (p.norm() - 0.5).abs() < 1e-12));

    let t = m2(c(0.3, -1.), c(2., 0.5), c(-0.4, 0.1), c(1., 1.));
    let e = elliptic_params(&t).unwrap();
    assert!(numerical_range_cloud(&t, 90).unwrap().points.iter().all(|p| (e.quadratic_form(*p) - 1.0).abs() < 1e-9));

    let scalar = CMatrix::new(1, vec![c(2., -3.)]).unwrap();
    assert!(numerical_range_cloud(&scalar, 16).unwrap().points.iter().all(|p| *p == c(2., -3.)));
}

#[test]
fn containment_cases() {
    let t = m2(c(0.3, -1.), c(2., 0.5), c(-0.4, 0.1), c(1., 1.));
    for k in 0..2 {
        assert!(contains(&t, t[(k, k)], 1e-10).unwrap());
    }
    let s = schur_2x2(&t).unwrap();
    assert!(contains(&t, (s.lambda1 + s.lambda2) / 2.0, 1e-10).unwrap());
    let zero = c(0., 0.);
    assert!(!contains(&m2(zero, real(1.), zero, zero), real(0.6), 1e-6).unwrap());
}

// --------------------------------------------------------------- unitorbit

#[test]
fn family_matrices() {
    let u = build_unitary(&UnitaryFamily::segment(1.0).unwrap()).unwrap();
    let expected = CMatrix::diagonal(&[real(1.), real(-1.)]);
    assert!(u.sub(&expected).max_abs() < 1e-15, "{u}");

    let fam = UnitaryFamily::disc(0.3, 1.0, real(2.0)).unwrap();
    let UnitaryFamily::DiscCase { alpha_half, .. } = fam else { panic!() };
    assert!((alpha_half - PI / 4.0).abs() < 1e-15);
    let u = build_unitary(&fam).unwrap();
    assert!(u.entries().iter().all(|x| (x.norm() - FRAC_1_SQRT_2).abs() < 1e-15));

    let u = build_unitary(&UnitaryFamily::general(0.0, 0.4, 1.1, -0.7)).unwrap();
    assert!(u[(0, 1)].norm() < 1e-15 && u[(1, 0)].norm() < 1e-15);
    assert!((u[(0, 0)].norm() - 1.0).abs() < 1e-15 && (u[(1, 1)].norm() - 1.0).abs() < 1e-15);
}

#[test]
fn family_diagonals() {
    let zero = c(0., 0.);
    let (a, b) = orbit_diagonal(&CMatrix::diagonal(&[zero, real(1.)]), &UnitaryFamily::segment(0.5).unwrap()).unwrap();
    assert!(close(a, real(0.5), 1e-15) && close(b, real(0.5), 1e-15));

    let t = m2(zero, real(2.), zero, zero);
    let (a, _) = orbit_diagonal(&t, &UnitaryFamily::disc(0.0, 1.0, real(2.0)).unwrap()).unwrap();
    assert!(close(a, real(1.0), 1e-15), "{a}");

    let t = m2(real(1.), real(1.), zero, real(-1.));
    let oracle = (PI / 2.0).cos() + 0.5 * (PI / 2.0).sin();
    let (a, b) = orbit_diagonal(&t, &UnitaryFamily::general(PI / 4.0, 0.0, 0.0, 0.0)).unwrap();
    assert!(close(a, real(oracle), 1e-15) && close(b, real(-oracle), 1e-15), "{a} {b}");
}

#[test]
fn orbit_cloud_cases() {
    let zero = c(0., 0.);
    let seg = orbit_cloud_2x2(&CMatrix::diagonal(&[zero, real(1.)]), OrbitGrid { n_a: 101, n_b: 1 }).unwrap();
    assert_eq!(seg.len(), 202);
    assert!(seg.points.iter().all(|p| p.im == 0.0 && (0.0..=1.0).contains(&p.re)));
    for k in 0..=100 {
        let target = k as f64 / 100.0;
        assert!(seg.points.iter().any(|p| (p.re - target).abs() < 1e-15));
    }

    let disc = orbit_cloud_2x2(&m2(zero, real(2.), zero, zero), OrbitGrid { n_a: 128, n_b: 32 }).unwrap();
    assert!(disc.points.iter().all(|p| p.norm() <= 1.0 + 1e-12));
    let hull = PointCloud::new(densify_polygon(&convex_hull(&disc).unwrap(), 1e-3));
    let circle = PointCloud::new((0..720).map(|k| Complex64::from_polar(1.0, PI * k as f64 / 360.0)).collect());
    assert!(hausdorff(&hull, &circle).unwrap() < 1e-2);

    let t = m2(real(1.), real(1.), zero, real(-1.));
    let cloud = orbit_cloud_2x2(&t, OrbitGrid { n_a: 64, n_b: 64 }).unwrap();
    let e = elliptic_params(&t).unwrap();
    assert!(cloud.points.iter().all(|p| e.quadratic_form(*p) <= 1.0 + 1e-9));
    let w_samples = berezin_lab::numrange::numerical_range_fill(&t, 360, 24).unwrap();
    assert!(hausdorff(&cloud, &w_samples).unwrap() < 0.1);
}

#[test]
fn envelope_cases() {
    let e = envelope_of_circle_family(1.0, 2.0).unwrap();
    assert!((e.major_axis / 2.0 - SQRT_2).abs() < 1e-15 && (e.minor_axis / 2.0 - 1.0).abs() < 1e-15);
    let e = envelope_of_circle_family(0.0, 3.0).unwrap();
    assert_eq!(e.shape(), EllipseShape::Circle);
    assert!((e.major_axis / 2.0 - 1.5).abs() < 1e-15);
    let ratios: Vec<f64> = [1.0, 10.0, 1e3]
        .iter()
        .map(|m| {
            let e = envelope_of_circle_family(1.0, *m).unwrap();
            e.minor_axis / e.major_axis
        })
        .collect();
    assert!(ratios[0] < ratios[1] && ratios[1] < ratios[2] && ratios[2] > 1.0 - 1e-5);
}

#[test]
fn circle_family_cases() {
    let (n_phi, n_psi) = (3, 16);
    let cloud = circle_family_points(1.0, 2.0, n_phi, n_psi).unwrap();
    // φ = 0 is the first row, φ = π/2 the second.
    assert!(cloud.points[..n_psi].iter().all(|p| *p == real(1.0)));
    assert!(cloud.points[n_psi..2 * n_psi].iter().all(|p| (p.norm() - 1.0).abs() < 1e-15 && p.re.abs() <= 1.0));
    let e = envelope_of_circle_family(1.0, 2.0).unwrap();
    let dense = circle_family_points(1.0, 2.0, 257, 256).unwrap();
    let q: Vec<f64> = dense.points.iter().map(|p| e.quadratic_form(*p)).collect();
    assert!(q.iter().all(|v| *v <= 1.0 + 1e-12));
    assert!(q.iter().cloned().fold(0.0, f64::max) > 1.0 - 1e-6);
}

#[test]
fn haar_cases() {
    let scalar = CMatrix::identity(3).scale(c(0.5, -2.0));
    let cloud = haar_orbit_cloud(&scalar, 200, 1).unwrap();
    assert!(cloud.points.iter().all(|p| close(*p, c(0.5, -2.0), 1e-14)));

    let d = CMatrix::diagonal(&[c(0., 0.), real(1.)]);
    let cloud = haar_orbit_cloud(&d, 10_000, 2).unwrap();
    let lo = cloud.points.iter().map(|p| p.re).fold(f64::MAX, f64::min);
    let hi = cloud.points.iter().map(|p| p.re).fold(f64::MIN, f64::max);
    assert!(lo < 0.01 && hi > 0.99, "[{lo}, {hi}]");
    assert!(cloud.points.iter().all(|p| p.im.abs() < 1e-14));

    let t = CMatrix::new(3, (0..9).map(|k| c((k as f64).sin(), (k as f64 * 0.7).cos())).collect()).unwrap();
    let cloud = haar_orbit_cloud(&t, 2_000, 3).unwrap();
    let tol = 1e-10 * (1.0 + t.frobenius());
    let table = berezin_lab::numrange::SupportTable::new(&t, 720).unwrap();
    assert!(cloud.points.iter().all(|p| table.contains(*p, tol)));
}
