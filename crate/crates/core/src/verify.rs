//! The verification suite: sixteen numerical checks of the library against
//! the closed forms, identities and convexity characterizations it encodes.
//!
//! Every check uses fixed seeds and pinned tolerances, so a run is
//! reproducible. [`run_all`] is what the `verify` command and the acceptance
//! test target execute.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, PI};
use std::sync::OnceLock;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::berezin::{
    berezin_transform, blaschke_decomposition, blaschke_radial_restriction, classify_convexity,
    closed_form_dirichlet_elliptic, closed_form_fock_affine, closed_form_fock_elliptic,
    conjugate_symmetry_residual, sample_range, SamplingGrid,
};
use crate::cplane::{
    collinear, convex_hull, convexity_report_default, densify_polygon, hausdorff_points, PointCloud, Verdict,
};
use crate::error::Result;
use crate::kernels::SpaceId;
use crate::linalg::CMatrix;
use crate::numrange::{
    default_contains_tol, elliptic_params, support_boundary_point, numerical_range_fill, EllipseShape,
    SupportTable, CONTAINS_DIRECTIONS,
};
use crate::symbols::SymbolSpec;
use crate::unitorbit::{
    build_unitary, circle_family_points, envelope_of_circle_family, haar_orbit_cloud, haar_unitary,
    orbit_cloud_2x2, OrbitGrid, UnitaryFamily,
};

/// Outcome of one check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: String,
    pub passed: bool,
    pub summary: String,
    pub metrics: BTreeMap<String, f64>,
}

impl CriterionResult {
    /// `PASS 05 Fock rotation convexity: …`
    pub fn line(&self) -> String {
        format!(
            "{} {:02} {}: {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.summary
        )
    }
}

struct Outcome {
    passed: bool,
    summary: String,
    metrics: Vec<(&'static str, f64)>,
}

fn outcome(passed: bool, summary: String, metrics: Vec<(&'static str, f64)>) -> Result<Outcome> {
    Ok(Outcome { passed, summary, metrics })
}

type Check = fn() -> Result<Outcome>;

const CHECKS: [(u32, &str, Check); 16] = [
    (1, "Fock closed forms", check_fock_closed_forms),
    (2, "Dirichlet rotation closed form", check_dirichlet_closed_form),
    (3, "Blaschke decomposition", check_blaschke_decomposition),
    (4, "Blaschke conjugate symmetry", check_conjugate_symmetry),
    (5, "Fock rotation convexity", check_fock_convexity),
    (6, "Dirichlet rotation convexity", check_dirichlet_convexity),
    (7, "Blaschke range convexity", check_blaschke_convexity),
    (8, "Radial restriction limit", check_radial_limit),
    (9, "Boundary decay off the alpha-line", check_boundary_decay),
    (10, "Elliptic range of 2x2 matrices", check_elliptic_range),
    (11, "Unitary orbit coverage", check_orbit_coverage),
    (12, "Unitary families are unitary", check_unitarity),
    (13, "Circle-family envelope", check_envelope),
    (14, "Orbit points lie in W(T)", check_inclusion),
    (15, "Haar orbit fills W(T)", check_haar_coverage),
    (16, "Spiral points are not collinear", check_spiral),
];

pub fn criterion_count() -> usize {
    CHECKS.len()
}

/// Run check `id` (1-based). Errors inside a check count as failures.
pub fn run_criterion(id: u32) -> Option<CriterionResult> {
    let &(id, name, check) = CHECKS.iter().find(|c| c.0 == id)?;
    let (passed, summary, metrics) = match check() {
        Ok(o) => (o.passed, o.summary, o.metrics),
        Err(e) => (false, format!("error: {e}"), Vec::new()),
    };
    Some(CriterionResult {
        id,
        name: name.to_string(),
        passed,
        summary,
        metrics: metrics.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
    })
}

pub fn run_all() -> Vec<CriterionResult> {
    CHECKS.iter().filter_map(|c| run_criterion(c.0)).collect()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform point in the disc of the given radius.
fn in_disc(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    Complex64::from_polar(radius * rng.random::<f64>().sqrt(), rng.random_range(0.0..2.0 * PI))
}

fn unimodular(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::from_polar(1.0, rng.random_range(0.0..2.0 * PI))
}

fn check_fock_closed_forms() -> Result<Outcome> {
    let mut rng = rng(1);
    let (mut elliptic, mut affine) = (0.0f64, 0.0f64);
    for _ in 0..1000 {
        let zeta = in_disc(&mut rng, 1.0);
        let z = in_disc(&mut rng, 4.0);
        let generic = berezin_transform(SpaceId::Fock, &SymbolSpec::DiscRotation { zeta }, z)?;
        elliptic = elliptic.max((generic - closed_form_fock_elliptic(zeta, z)?).norm());
    }
    for _ in 0..1000 {
        let zeta = in_disc(&mut rng, 0.99);
        let a = in_disc(&mut rng, 2.0);
        let z = in_disc(&mut rng, 4.0);
        let generic = berezin_transform(SpaceId::Fock, &SymbolSpec::FockAffine { zeta, a }, z)?;
        let closed = closed_form_fock_affine(zeta, a, z)?;
        affine = affine.max((generic - closed).norm() / closed.norm().max(1.0));
    }
    outcome(
        elliptic < 1e-12 && affine < 1e-12,
        format!("rotation max abs err {elliptic:.2e}, affine max err {affine:.2e} (relative to max(1,|B|)); both < 1e-12"),
        vec![("rotation_max_err", elliptic), ("affine_max_err", affine)],
    )
}

fn check_dirichlet_closed_form() -> Result<Outcome> {
    let mut rng = rng(2);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let zeta = unimodular(&mut rng);
        let z = in_disc(&mut rng, 0.999);
        let generic = berezin_transform(SpaceId::Dirichlet, &SymbolSpec::DiscRotation { zeta }, z)?;
        let closed = closed_form_dirichlet_elliptic(zeta, z)?;
        worst = worst.max((generic - closed).norm() / closed.norm());
    }
    outcome(
        worst < 1e-10,
        format!("max relative err {worst:.2e} < 1e-10 over 1000 draws"),
        vec![("max_rel_err", worst)],
    )
}

fn check_blaschke_decomposition() -> Result<Outcome> {
    let mut rng = rng(3);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let alpha = in_disc(&mut rng, 0.9);
        let z = Complex64::from_polar(rng.random_range(0.01..=0.999), rng.random_range(0.0..2.0 * PI));
        let direct = berezin_transform(SpaceId::Dirichlet, &SymbolSpec::Blaschke { alpha }, z)?;
        worst = worst.max((blaschke_decomposition(alpha, z)?.assemble() - direct).norm());
    }
    outcome(
        worst < 1e-10,
        format!("max |assembled - direct| {worst:.2e} < 1e-10 over 1000 draws"),
        vec![("max_abs_err", worst)],
    )
}

fn check_conjugate_symmetry() -> Result<Outcome> {
    let mut rng = rng(4);
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        let alpha = Complex64::from_polar(rng.random_range(0.01..0.95), rng.random_range(0.0..2.0 * PI));
        let r = rng.random_range(0.0..0.999);
        let theta = rng.random_range(0.0..2.0 * PI);
        worst = worst.max(conjugate_symmetry_residual(alpha, r, theta)?);
    }
    outcome(
        worst < 1e-12,
        format!("max residual {worst:.2e} < 1e-12 over 10000 draws"),
        vec![("max_residual", worst)],
    )
}

/// Detector verdicts against the exact classification for each symbol.
fn concordance(space: SpaceId, syms: &[(SymbolSpec, Verdict)]) -> Result<Outcome> {
    let grid = SamplingGrid::default_for(space);
    let mut ok = true;
    let mut notes = Vec::new();
    let mut min_points = usize::MAX;
    for (sym, expected) in syms {
        let cloud = sample_range(space, sym, &grid)?;
        min_points = min_points.min(cloud.len());
        let report = convexity_report_default(&cloud)?;
        let class = classify_convexity(space, sym)?;
        let agree = report.verdict == *expected && class.verdict() == Some(*expected);
        ok &= agree;
        notes.push(format!(
            "{}{} {:?}/{} viol {:.1e}",
            if agree { "" } else { "MISMATCH " },
            sym,
            report.verdict,
            class.label(),
            report.max_violation
        ));
    }
    ok &= min_points >= 20_000;
    outcome(
        ok,
        format!("{} clouds of >= {min_points} points, detector/theorem agree: [{}]", syms.len(), notes.join("; ")),
        vec![("min_cloud_points", min_points as f64)],
    )
}

fn rotation(zeta: Complex64) -> SymbolSpec {
    SymbolSpec::DiscRotation { zeta }
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn check_fock_convexity() -> Result<Outcome> {
    let mut cases: Vec<(SymbolSpec, Verdict)> = [-1.0, -0.3, 0.0, 0.7, 1.0]
        .iter()
        .map(|&x| (rotation(real(x)), Verdict::Convex))
        .collect();
    for zeta in [
        Complex64::i(),
        -Complex64::i(),
        Complex64::from_polar(0.5, FRAC_PI_3),
        Complex64::from_polar(1.0, 3.0 * FRAC_PI_4),
    ] {
        cases.push((rotation(zeta), Verdict::NonConvex));
    }
    concordance(SpaceId::Fock, &cases)
}

fn check_dirichlet_convexity() -> Result<Outcome> {
    let mut cases = vec![(rotation(real(-1.0)), Verdict::Convex), (rotation(real(1.0)), Verdict::Convex)];
    for zeta in [-Complex64::i(), Complex64::from_polar(1.0, FRAC_PI_3), Complex64::from_polar(1.0, 0.4)] {
        cases.push((rotation(zeta), Verdict::NonConvex));
    }
    concordance(SpaceId::Dirichlet, &cases)
}

fn check_blaschke_convexity() -> Result<Outcome> {
    let grid = SamplingGrid::dirichlet_default();
    let zero = sample_range(SpaceId::Dirichlet, &SymbolSpec::Blaschke { alpha: real(0.0) }, &grid)?;
    let dev = zero.points.iter().map(|p| (p - 1.0).norm()).fold(0.0, f64::max);
    let constant_ok = dev < 1e-12
        && classify_convexity(SpaceId::Dirichlet, &SymbolSpec::Blaschke { alpha: real(0.0) })?.verdict()
            == Some(Verdict::Convex);
    let mut nonconvex = Vec::new();
    let mut ok = constant_ok;
    for alpha in [Complex64::from_polar(0.5, FRAC_PI_3), real(0.3), Complex64::new(0.0, 0.7)] {
        let sym = SymbolSpec::Blaschke { alpha };
        let report = convexity_report_default(&sample_range(SpaceId::Dirichlet, &sym, &grid)?)?;
        let class = classify_convexity(SpaceId::Dirichlet, &sym)?;
        ok &= report.verdict == Verdict::NonConvex && class.verdict() == Some(Verdict::NonConvex);
        nonconvex.push(format!("{alpha} {:?} viol {:.2e}", report.verdict, report.max_violation));
    }
    outcome(
        ok,
        format!("alpha=0 max |B-1| {dev:.1e} < 1e-12; [{}]", nonconvex.join("; ")),
        vec![("alpha0_max_dev", dev)],
    )
}

fn check_radial_limit() -> Result<Outcome> {
    let alpha = real(0.5);
    let s = alpha.norm_sqr();
    let r_at = |gap: f64| ((1.0 - gap) / s).sqrt();
    let at = blaschke_radial_restriction(alpha, r_at(1e-6))?.re;
    let r_end = r_at(1e-6);
    let along: Vec<f64> = (0..=200)
        .map(|k| blaschke_radial_restriction(alpha, r_end * (0.9 + 0.1 * k as f64 / 200.0)).map(|v| v.re))
        .collect::<Result<_>>()?;
    let decades: Vec<f64> = [1e-2, 1e-3, 1e-4, 1e-5, 1e-6]
        .iter()
        .map(|&g| blaschke_radial_restriction(alpha, r_at(g)).map(|v| v.re))
        .collect::<Result<_>>()?;
    let increasing = along.windows(2).all(|w| w[1] > w[0]) && decades.windows(2).all(|w| w[1] > w[0]);
    let err = (at - 1.0).abs();
    outcome(
        err < 0.06 && increasing,
        format!(
            "|value - 1| = {err:.4} < 0.06 at 1 - r^2|a|^2 = 1e-6; increasing on [0.9 r, r]: {increasing}; values at gaps 1e-2..1e-6: {}",
            decades.iter().map(|v| format!("{v:.4}")).collect::<Vec<_>>().join(", ")
        ),
        vec![("abs_err_at_1e-6", err)],
    )
}

fn check_boundary_decay() -> Result<Outcome> {
    let alpha = Complex64::from_polar(0.5, FRAC_PI_3);
    let sym = SymbolSpec::Blaschke { alpha };
    let mut ok = true;
    let mut worst_final = 0.0f64;
    let mut rows = Vec::new();
    for offset in [FRAC_PI_4, FRAC_PI_2, 3.0 * FRAC_PI_4] {
        let theta = FRAC_PI_3 + offset;
        let mags: Vec<f64> = [1e-4, 1e-6, 1e-8]
            .iter()
            .map(|&g| berezin_transform(SpaceId::Dirichlet, &sym, Complex64::from_polar(1.0 - g, theta)).map(|v| v.norm()))
            .collect::<Result<_>>()?;
        ok &= mags.windows(2).all(|w| w[1] < w[0]) && mags[2] < 0.25;
        worst_final = worst_final.max(mags[2]);
        rows.push(format!("{:.4}/{:.4}/{:.4}", mags[0], mags[1], mags[2]));
    }
    outcome(
        ok,
        format!("|B| at rho = 1-1e-4/1e-6/1e-8 for theta-psi = pi/4, pi/2, 3pi/4: {}; all < 0.25 at 1-1e-8 and decreasing", rows.join(", ")),
        vec![("max_final_modulus", worst_final)],
    )
}

fn random_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> CMatrix {
    CMatrix::new(n, (0..n * n).map(|_| random_complex(rng)).collect()).expect("finite entries")
}

fn check_elliptic_range() -> Result<Outcome> {
    let mut rng = rng(10);
    let mut worst = 0.0f64;
    let mut shapes_ok = true;
    for _ in 0..100 {
        let t = random_matrix(&mut rng, 2);
        let e = elliptic_params(&t)?;
        shapes_ok &= e.shape() == EllipseShape::Ellipse;
        for k in 0..64 {
            let p = support_boundary_point(&t, 2.0 * PI * k as f64 / 64.0)?;
            worst = worst.max((e.quadratic_form(p) - 1.0).abs());
        }
    }
    let mut degenerate_ok = true;
    for i in 0..20 {
        let u = haar_unitary(2, 10, i);
        let h = CMatrix::diagonal(&[real(rng.random_range(-2.0..2.0)), real(rng.random_range(-2.0..2.0))]).conjugate_by(&u);
        let lambda = random_complex(&mut rng);
        let m = random_complex(&mut rng);
        let jordan = CMatrix::new(2, vec![lambda, m, real(0.0), lambda])?.conjugate_by(&u);
        degenerate_ok &= elliptic_params(&h)?.shape() == EllipseShape::Segment;
        degenerate_ok &= elliptic_params(&jordan)?.shape() == EllipseShape::Circle;
        for mat in [&h, &jordan] {
            let e = elliptic_params(mat)?;
            for k in 0..16 {
                let p = support_boundary_point(mat, 2.0 * PI * k as f64 / 16.0)?;
                degenerate_ok &= (e.quadratic_form(p) - 1.0).abs() < 1e-9;
            }
        }
    }
    outcome(
        worst < 1e-9 && shapes_ok && degenerate_ok,
        format!(
            "100 random 2x2: max |Q - 1| on 64 support points {worst:.2e} < 1e-9; Hermitian -> Segment, equal eigenvalues -> Circle on 20 each: {degenerate_ok}"
        ),
        vec![("max_quadratic_form_err", worst)],
    )
}

fn m2(entries: [f64; 4]) -> CMatrix {
    CMatrix::new(2, entries.iter().map(|&x| real(x)).collect()).expect("finite entries")
}

struct OrbitCase {
    label: &'static str,
    matrix: CMatrix,
    cloud: PointCloud,
}

fn orbit_cases() -> &'static Result<Vec<OrbitCase>, String> {
    static CASES: OnceLock<Result<Vec<OrbitCase>, String>> = OnceLock::new();
    CASES.get_or_init(|| {
        let specs = [
            ("ellipse [[1,1],[0,-1]]", m2([1.0, 1.0, 0.0, -1.0]), OrbitGrid { n_a: 256, n_b: 256 }),
            ("segment diag(0,1)", m2([0.0, 0.0, 0.0, 1.0]), OrbitGrid { n_a: 1000, n_b: 1 }),
            ("disc [[0,2],[0,0]]", m2([0.0, 2.0, 0.0, 0.0]), OrbitGrid { n_a: 256, n_b: 256 }),
        ];
        specs
            .into_iter()
            .map(|(label, matrix, grid)| {
                let cloud = orbit_cloud_2x2(&matrix, grid).map_err(|e| e.to_string())?;
                Ok(OrbitCase { label, matrix, cloud })
            })
            .collect()
    })
}

fn check_orbit_coverage() -> Result<Outcome> {
    let cases = match orbit_cases() {
        Ok(c) => c,
        Err(e) => return outcome(false, format!("error: {e}"), vec![]),
    };
    let mut ok = true;
    let mut notes = Vec::new();
    let mut metrics = Vec::new();
    for (case, (limit, key)) in cases.iter().zip([(1e-2, "ellipse_hausdorff"), (1e-3, "segment_hausdorff"), (1e-2, "disc_hausdorff")]) {
        let ellipse = elliptic_params(&case.matrix)?;
        let hull = convex_hull(&case.cloud)?;
        let boundary = densify_polygon(&hull, 1e-3);
        let target = densify_polygon(&ellipse.boundary_polygon(4096), 1e-3);
        let mut h = hausdorff_points(&boundary, &target);
        if ellipse.shape() == EllipseShape::Segment {
            // The hull of a segment is its two ends; also measure how evenly the
            // orbit itself covers the segment.
            h = h.max(hausdorff_points(&case.cloud.points, &target));
        }
        ok &= h < limit;
        notes.push(format!("{} {h:.2e} < {limit:.0e}", case.label));
        metrics.push((key, h));
    }
    outcome(ok, format!("Hausdorff(orbit hull boundary, ellipse): {}", notes.join("; ")), metrics)
}

fn check_unitarity() -> Result<Outcome> {
    let mut rng = rng(12);
    let mut worst = [0.0f64; 3];
    for _ in 0..1000 {
        let seg = UnitaryFamily::segment(rng.random_range(0.0..=1.0))?;
        worst[0] = worst[0].max(build_unitary(&seg)?.unitarity_residual());
        let m = random_complex(&mut rng) * 3.0;
        let disc = UnitaryFamily::disc(
            rng.random_range(0.0..2.0 * PI),
            0.5 * m.norm() * rng.random_range(0.0..=1.0),
            m,
        )?;
        worst[1] = worst[1].max(build_unitary(&disc)?.unitarity_residual());
        let gen = UnitaryFamily::general(
            rng.random_range(0.0..2.0 * PI),
            rng.random_range(-PI..PI),
            rng.random_range(-PI..PI),
            rng.random_range(-PI..PI),
        );
        worst[2] = worst[2].max(build_unitary(&gen)?.unitarity_residual());
    }
    let max = worst.iter().cloned().fold(0.0, f64::max);
    outcome(
        max < 1e-14,
        format!(
            "max ||U*U - I|| segment {:.1e}, disc {:.1e}, general {:.1e} over 1000 draws each; < 1e-14",
            worst[0], worst[1], worst[2]
        ),
        vec![("segment", worst[0]), ("disc", worst[1]), ("general", worst[2])],
    )
}

fn check_envelope() -> Result<Outcome> {
    let env = envelope_of_circle_family(1.0, 2.0)?;
    let cloud = circle_family_points(1.0, 2.0, 512, 512)?;
    let q: Vec<f64> = cloud.points.iter().map(|&p| env.quadratic_form(p)).collect();
    let max = q.iter().cloned().fold(f64::MIN, f64::max);
    outcome(
        (1.0 - 1e-6..=1.0 + 1e-12).contains(&max),
        format!("512x512 circle family: max quadratic form {max:.12} in [1 - 1e-6, 1 + 1e-12]"),
        vec![("max_quadratic_form", max)],
    )
}

struct HaarCase {
    matrix: CMatrix,
    cloud: PointCloud,
    seconds: f64,
}

/// Standard complex Gaussian matrix scaled to unit Frobenius norm.
fn haar_test_matrix(n: usize, seed: u64) -> CMatrix {
    let mut rng = rng(seed);
    let entries: Vec<Complex64> = (0..n * n)
        .map(|_| {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            Complex64::new(re, im)
        })
        .collect();
    let t = CMatrix::new(n, entries).expect("finite entries");
    let f = t.frobenius();
    t.scale(real(1.0 / f))
}

const HAAR_SAMPLES: usize = 100_000;

fn haar_cases() -> &'static Result<Vec<HaarCase>, String> {
    static CASES: OnceLock<Result<Vec<HaarCase>, String>> = OnceLock::new();
    CASES.get_or_init(|| {
        [(3, 153), (4, 154)]
            .into_iter()
            .map(|(n, seed)| {
                let matrix = haar_test_matrix(n, seed);
                let start = Instant::now();
                let cloud = haar_orbit_cloud(&matrix, HAAR_SAMPLES, seed).map_err(|e| e.to_string())?;
                Ok(HaarCase { matrix, cloud, seconds: start.elapsed().as_secs_f64() })
            })
            .collect()
    })
}

fn check_inclusion() -> Result<Outcome> {
    let orbit = orbit_cases().as_ref().map_err(|e| crate::error::Error::Degenerate(e.clone()));
    let haar = haar_cases().as_ref().map_err(|e| crate::error::Error::Degenerate(e.clone()));
    let (orbit, haar) = match (orbit, haar) {
        (Ok(o), Ok(h)) => (o, h),
        (Err(e), _) | (_, Err(e)) => return outcome(false, format!("error: {e}"), vec![]),
    };
    let segment = CMatrix::diagonal(&[real(0.0), real(1.0)]);
    let segment_haar = haar_orbit_cloud(&segment, 10_000, 141)?;
    let seg_min = segment_haar.points.iter().map(|p| p.re).fold(f64::MAX, f64::min);
    let seg_max = segment_haar.points.iter().map(|p| p.re).fold(f64::MIN, f64::max);

    let mut clouds: Vec<(&CMatrix, &PointCloud)> = orbit.iter().map(|c| (&c.matrix, &c.cloud)).collect();
    clouds.extend(haar.iter().map(|c| (&c.matrix, &c.cloud)));
    clouds.push((&segment, &segment_haar));
    let mut violations = 0usize;
    let mut checked = 0usize;
    for (t, cloud) in clouds {
        let table = SupportTable::new(t, CONTAINS_DIRECTIONS)?;
        let tol = default_contains_tol(t);
        checked += cloud.len();
        violations += cloud.points.iter().filter(|&&p| !table.contains(p, tol)).count();
    }
    let spread_ok = seg_min < 0.01 && seg_max > 0.99;
    outcome(
        violations == 0 && spread_ok,
        format!(
            "{violations} violations among {checked} orbit and Haar points; Haar diag(0,1) spans [{seg_min:.4}, {seg_max:.4}]"
        ),
        vec![("violations", violations as f64), ("points_checked", checked as f64)],
    )
}

fn check_haar_coverage() -> Result<Outcome> {
    let cases = match haar_cases() {
        Ok(c) => c,
        Err(e) => return outcome(false, format!("error: {e}"), vec![]),
    };
    let mut ok = true;
    let mut notes = Vec::new();
    let mut metrics = Vec::new();
    for (case, key) in cases.iter().zip(["hausdorff_3x3", "hausdorff_4x4"]) {
        let start = Instant::now();
        let fill = numerical_range_fill(&case.matrix, 720, 60)?;
        let h = hausdorff_points(&case.cloud.points, &fill.points);
        let seconds = case.seconds + start.elapsed().as_secs_f64();
        ok &= h < 5e-2 && seconds < 60.0;
        notes.push(format!("{}x{} {h:.3e} ({seconds:.1}s)", case.matrix.n(), case.matrix.n()));
        metrics.push((key, h));
    }
    outcome(
        ok,
        format!(
            "Hausdorff(Haar orbit of {HAAR_SAMPLES} unitaries, W(T) fill), unit-Frobenius T: {}; < 5e-2 within 60s",
            notes.join(", ")
        ),
        metrics,
    )
}

fn check_spiral() -> Result<Outcome> {
    let point = |a: f64, b: f64, r: f64| (Complex64::new(a, b) * (r * r)).exp();
    let mut all_non_collinear = true;
    for (a, b) in [(0.3, 1.0), (-0.5, 2.0), (1.0, 0.5)] {
        let rs = [0.0, 1.0, (PI / b).sqrt()];
        let p: Vec<Complex64> = rs.iter().map(|&r| point(a, b, r)).collect();
        all_non_collinear &= !collinear(p[0], p[1], p[2], 1e-9);
    }
    let mut worst = 0.0f64;
    for b in [0.5, 1.0, 2.0] {
        for k in 0..1000 {
            let r = 5.0 * k as f64 / 999.0;
            worst = worst.max((point(0.0, b, r).norm() - 1.0).abs());
        }
    }
    outcome(
        all_non_collinear && worst < 1e-13,
        format!("triples at r = 0, 1, sqrt(pi/b) non-collinear: {all_non_collinear}; a=0 max ||p| - 1| {worst:.1e} < 1e-13"),
        vec![("unit_circle_dev", worst)],
    )
}
