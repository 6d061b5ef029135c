use std::f64::consts::{PI, TAU};

use berezin_lab::linalg::hermitian_eigen;
use berezin_lab::numrange::{numerical_range_fill, support_boundary_point, SupportTable};
use berezin_lab::unitorbit::{orbit_diagonal, orbit_diagonal_closed_form, OrbitGrid};
use berezin_lab::{
    build_unitary, contains, convex_hull, elliptic_params, haar_orbit_cloud, hausdorff, numerical_range_cloud,
    orbit_cloud_2x2, schur_2x2, CMatrix, CPoint, PointCloud, UnitaryFamily,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn matrix(n: usize) -> impl Strategy<Value = CMatrix> {
    prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), n * n)
        .prop_map(move |v| CMatrix::new(n, v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect()).unwrap())
}

fn segment_distance(p: CPoint, a: CPoint, b: CPoint) -> f64 {
    let d = b - a;
    let t = if d.norm_sqr() > 0.0 {
        (((p - a) * d.conj()).re / d.norm_sqr()).clamp(0.0, 1.0)
    } else {
        0.0
    };
    (p - (a + d * t)).norm()
}

fn distance_to_polygon(p: CPoint, poly: &[CPoint]) -> f64 {
    (0..poly.len())
        .map(|i| segment_distance(p, poly[i], poly[(i + 1) % poly.len()]))
        .fold(f64::INFINITY, f64::min)
}

fn rotate_shift(t: &CMatrix, mu: f64, c: Complex64) -> CMatrix {
    t.shift(c).scale(Complex64::from_polar(1.0, -mu))
}

const N_THETA: usize = 180;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn boundary_cloud_is_equivariant(n in 2usize..5, seed_t in matrix(4), k in 0usize..N_THETA, c in (-1.0f64..1.0, -1.0f64..1.0)) {
        let t = CMatrix::new(n, seed_t.entries()[..n * n].to_vec()).unwrap();
        let mu = TAU * k as f64 / N_THETA as f64;
        let c = Complex64::new(c.0, c.1);
        let moved = numerical_range_cloud(&rotate_shift(&t, mu, c), N_THETA).unwrap();
        let mapped = PointCloud::new(
            numerical_range_cloud(&t, N_THETA)
                .unwrap()
                .points
                .iter()
                .map(|p| (p - c) * Complex64::from_polar(1.0, -mu))
                .collect(),
        );
        prop_assert!(hausdorff(&moved, &mapped).unwrap() < 1e-12 * (1.0 + t.frobenius()));
    }

    #[test]
    fn two_by_two_boundary_is_the_ellipse(t in matrix(2)) {
        let e = elliptic_params(&t).unwrap();
        for p in numerical_range_cloud(&t, 64).unwrap().points {
            prop_assert!((e.quadratic_form(p) - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn boundary_cloud_lies_on_its_hull(n in 2usize..6, seed_t in matrix(5)) {
        let t = CMatrix::new(n, seed_t.entries()[..n * n].to_vec()).unwrap();
        let cloud = numerical_range_cloud(&t, 128).unwrap();
        let hull = convex_hull(&cloud).unwrap();
        prop_assume!(hull.len() >= 3);
        for p in &cloud.points {
            prop_assert!(distance_to_polygon(*p, &hull) < 1e-10);
        }
    }

    #[test]
    fn largest_real_part_is_the_top_eigenvalue(n in 1usize..6, seed_t in matrix(5)) {
        let t = CMatrix::new(n, seed_t.entries()[..n * n].to_vec()).unwrap();
        let h = t.add(&t.adjoint()).scale(Complex64::new(0.5, 0.0));
        let top = hermitian_eigen(&h).unwrap().values[0];
        let best = numerical_range_cloud(&t, 64).unwrap().points.iter().map(|p| p.re).fold(f64::MIN, f64::max);
        prop_assert!((best - top).abs() < 1e-12 * (1.0 + top.abs()));
    }

    #[test]
    fn schur_form_is_unitarily_similar(t in matrix(2)) {
        let s = schur_2x2(&t).unwrap();
        prop_assert!(s.unitary.unitarity_residual() < 1e-13);
        let r = t.conjugate_by(&s.unitary);
        prop_assert!(r.sub(&s.triangular()).max_abs() < 1e-12 * (1.0 + t.frobenius()));
    }

    #[test]
    fn families_are_unitary_and_match_closed_forms(
        k in 0.0f64..1.0,
        theta in 0.0..TAU,
        frac in 0.0f64..1.0,
        theta_mix in 0.0..PI / 2.0,
        phases in (0.0..TAU, 0.0..TAU, 0.0..TAU),
        l in (-2.0f64..2.0, -2.0f64..2.0, -2.0f64..2.0, -2.0f64..2.0),
        r in 0.0f64..2.0,
    ) {
        let z = Complex64::new(0.0, 0.0);
        let (l1, l2) = (Complex64::new(l.0, l.1), Complex64::new(l.2, l.3));
        let m = Complex64::new(l.1, l.2);
        let cases = [
            (UnitaryFamily::segment(k).unwrap(), CMatrix::diagonal(&[l1, l2])),
            (
                UnitaryFamily::disc(theta, frac * m.norm() / 2.0, m).unwrap(),
                CMatrix::from_rows(&[vec![l1, m], vec![z, l1]]).unwrap(),
            ),
            (
                UnitaryFamily::general(theta_mix, phases.0, phases.1, phases.2),
                CMatrix::from_rows(&[vec![Complex64::new(r, 0.0), m], vec![z, Complex64::new(-r, 0.0)]]).unwrap(),
            ),
        ];
        for (fam, t) in cases {
            prop_assert!(build_unitary(&fam).unwrap().unitarity_residual() < 1e-14);
            let (a, b) = orbit_diagonal(&t, &fam).unwrap();
            let (ca, cb) = orbit_diagonal_closed_form(&t, &fam).unwrap();
            prop_assert!((a - ca).norm() < 1e-12 && (b - cb).norm() < 1e-12, "{fam:?}");
        }
    }

    #[test]
    fn orbit_cloud_is_equivariant(t in matrix(2), mu in 0.0..TAU, c in (-1.0f64..1.0, -1.0f64..1.0)) {
        let s = schur_2x2(&t).unwrap();
        prop_assume!((s.lambda1 - s.lambda2).norm() > 1e-3 && s.m.norm() > 1e-3);
        let c = Complex64::new(c.0, c.1);
        let grid = OrbitGrid { n_a: 64, n_b: 64 };
        let moved = orbit_cloud_2x2(&rotate_shift(&t, mu, c), grid).unwrap();
        let mapped = PointCloud::new(
            orbit_cloud_2x2(&t, grid)
                .unwrap()
                .points
                .iter()
                .map(|p| (p - c) * Complex64::from_polar(1.0, -mu))
                .collect(),
        );
        prop_assert!(hausdorff(&moved, &mapped).unwrap() < 1e-10 * (1.0 + t.frobenius()));
    }

    #[test]
    fn orbit_points_stay_in_the_numerical_range(t in matrix(2), seed_t in matrix(3), seed in 0u64..1000) {
        let grid = OrbitGrid { n_a: 32, n_b: 32 };
        let table = SupportTable::new(&t, 720).unwrap();
        let tol = berezin_lab::numrange::default_contains_tol(&t);
        for p in orbit_cloud_2x2(&t, grid).unwrap().points {
            prop_assert!(table.contains(p, tol), "{p}");
        }
        let haar = haar_orbit_cloud(&seed_t, 500, seed).unwrap();
        let table = SupportTable::new(&seed_t, 720).unwrap();
        let tol = berezin_lab::numrange::default_contains_tol(&seed_t);
        for p in haar.points {
            prop_assert!(table.contains(p, tol), "{p}");
        }
    }
}

#[test]
fn hermitian_support_in_the_degenerate_direction_is_an_endpoint() {
    let t = CMatrix::from_rows(&[
        vec![Complex64::new(1.0, 0.0), Complex64::new(0.5, -0.5), Complex64::new(0.0, 0.0)],
        vec![Complex64::new(0.5, 0.5), Complex64::new(-1.0, 0.0), Complex64::new(0.2, 0.0)],
        vec![Complex64::new(0.0, 0.0), Complex64::new(0.2, 0.0), Complex64::new(0.3, 0.0)],
    ])
    .unwrap();
    let values = hermitian_eigen(&t).unwrap().values;
    let (hi, lo) = (values[0], values[2]);
    for theta in [PI / 2.0, -PI / 2.0] {
        let p = support_boundary_point(&t, theta).unwrap();
        assert!(p.im.abs() < 1e-12, "{p}");
        assert!((p.re - hi).abs() < 1e-12 || (p.re - lo).abs() < 1e-12, "{p} not in {{{lo}, {hi}}}");
    }
}

#[test]
fn containment_matches_the_fill() {
    let t = CMatrix::from_rows(&[
        vec![Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)],
        vec![Complex64::new(0.0, 0.0), Complex64::new(-1.0, 0.0)],
    ])
    .unwrap();
    for p in numerical_range_fill(&t, 90, 8).unwrap().points {
        assert!(contains(&t, p, 1e-9).unwrap());
    }
    let e = elliptic_params(&t).unwrap();
    assert!(!contains(&t, Complex64::new(e.major_axis / 2.0 + 1e-3, 0.0), 1e-9).unwrap());
}
