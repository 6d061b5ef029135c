//! Diagonals of unitary conjugates `U* T U`.
//!
//! For a matrix, the Berezin range with respect to the standard basis is the
//! set of diagonal entries, so the union over unitarily equivalent copies is
//! `𝓑(T) = {(U* T U)_kk}`. For 2×2 matrices three explicit unitary families
//! sweep out the whole elliptic disc; for larger `n` Haar-random unitaries
//! give a statistical picture.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cplane::{CPoint, PointCloud};
use crate::error::{Error, Result};
use crate::linalg::{qr, CMatrix};
use crate::numrange::{ellipse_from_schur, schur_2x2, EllipseParams, EllipseShape};

/// Tolerance on the constraint checks of the unitary families.
pub const FAMILY_TOL: f64 = 1e-12;
/// Largest dimension for Haar orbit sampling.
pub const HAAR_MAX_DIM: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "case")]
pub enum UnitaryFamily {
    /// `[[√k, √(1-k)], [√(1-k), -√k]]`, for `T = diag(λ1, λ2)`.
    SegmentCase { k: f64 },
    /// `[[e^{-i(θ-δ)} sin α, cos α], [cos α, -e^{i(θ-δ)} sin α]]` with
    /// `α = ½ asin(2 r_target / |m|)`, for `T = [[λ, m], [0, λ]]`.
    DiscCase {
        theta: f64,
        r_target: f64,
        delta: f64,
        alpha_half: f64,
    },
    /// `[[e^{iα} cos θ, e^{iβ} sin θ], [e^{iγ} sin θ, e^{iδ} cos θ]]` with
    /// `δ - γ = π + (β - α)`.
    GeneralCase {
        theta_mix: f64,
        phase_alpha: f64,
        phase_beta: f64,
        phase_gamma: f64,
        phase_delta: f64,
    },
}

fn wrap_angle(x: f64) -> f64 {
    let y = x.rem_euclid(2.0 * PI);
    if y > PI {
        y - 2.0 * PI
    } else {
        y
    }
}

impl UnitaryFamily {
    pub fn segment(k: f64) -> Result<Self> {
        let fam = UnitaryFamily::SegmentCase { k };
        fam.validate()?;
        Ok(fam)
    }

    /// Disc family hitting `λ + r_target e^{iθ}` for `T = [[λ, m], [0, λ]]`.
    pub fn disc(theta: f64, r_target: f64, m: Complex64) -> Result<Self> {
        let m_abs = m.norm();
        if m_abs == 0.0 {
            return Err(Error::InvalidParameter("disc family needs m != 0".into()));
        }
        let ratio = 2.0 * r_target / m_abs;
        if !(-FAMILY_TOL..=1.0 + FAMILY_TOL).contains(&ratio) {
            return Err(Error::InvalidParameter(format!(
                "2 r_target / |m| = {ratio} outside [0, 1]"
            )));
        }
        Ok(UnitaryFamily::DiscCase {
            theta,
            r_target,
            delta: m.arg(),
            alpha_half: 0.5 * ratio.clamp(0.0, 1.0).asin(),
        })
    }

    /// General family with `δ` chosen from the phase constraint.
    pub fn general(theta_mix: f64, phase_alpha: f64, phase_beta: f64, phase_gamma: f64) -> Self {
        UnitaryFamily::GeneralCase {
            theta_mix,
            phase_alpha,
            phase_beta,
            phase_gamma,
            phase_delta: PI + phase_beta - phase_alpha + phase_gamma,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = |xs: &[f64]| xs.iter().all(|x| x.is_finite());
        match *self {
            UnitaryFamily::SegmentCase { k } => {
                if !(0.0..=1.0).contains(&k) {
                    return Err(Error::InvalidParameter(format!("k = {k} outside [0, 1]")));
                }
            }
            UnitaryFamily::DiscCase { theta, r_target, delta, alpha_half } => {
                if !finite(&[theta, r_target, delta, alpha_half]) || r_target < 0.0 {
                    return Err(Error::InvalidParameter("disc family parameters".into()));
                }
                if !(0.0..=PI / 4.0 + FAMILY_TOL).contains(&alpha_half) {
                    return Err(Error::InvalidParameter(format!(
                        "alpha = {alpha_half} outside [0, pi/4]"
                    )));
                }
            }
            UnitaryFamily::GeneralCase { theta_mix, phase_alpha, phase_beta, phase_gamma, phase_delta } => {
                if !finite(&[theta_mix, phase_alpha, phase_beta, phase_gamma, phase_delta]) {
                    return Err(Error::InvalidParameter("general family parameters".into()));
                }
                let gap = wrap_angle(phase_delta - phase_gamma - PI - (phase_beta - phase_alpha));
                if gap.abs() > FAMILY_TOL {
                    return Err(Error::InvalidParameter(format!(
                        "phase constraint delta - gamma = pi + (beta - alpha) off by {gap:e}"
                    )));
                }
            }
        }
        Ok(())
    }
}

pub fn build_unitary(fam: &UnitaryFamily) -> Result<CMatrix> {
    fam.validate()?;
    let r = |x: f64| Complex64::new(x, 0.0);
    let entries = match *fam {
        UnitaryFamily::SegmentCase { k } => {
            let (a, b) = (k.sqrt(), (1.0 - k).sqrt());
            vec![r(a), r(b), r(b), r(-a)]
        }
        UnitaryFamily::DiscCase { theta, delta, alpha_half, .. } => {
            let (s, c) = alpha_half.sin_cos();
            vec![
                Complex64::from_polar(s, -(theta - delta)),
                r(c),
                r(c),
                -Complex64::from_polar(s, theta - delta),
            ]
        }
        UnitaryFamily::GeneralCase { theta_mix, phase_alpha, phase_beta, phase_gamma, phase_delta } => {
            let (s, c) = theta_mix.sin_cos();
            vec![
                Complex64::from_polar(c, phase_alpha),
                Complex64::from_polar(s, phase_beta),
                Complex64::from_polar(s, phase_gamma),
                Complex64::from_polar(c, phase_delta),
            ]
        }
    };
    CMatrix::new(2, entries)
}

fn check_triangular(t: &CMatrix) -> Result<f64> {
    if t.n() != 2 {
        return Err(Error::Shape(format!("expected a 2x2 matrix, got {0}x{0}", t.n())));
    }
    let scale = t.max_abs().max(1.0);
    if t[(1, 0)].norm() > FAMILY_TOL * scale {
        return Err(Error::Shape("matrix is not upper triangular".into()));
    }
    Ok(scale)
}

fn check_case(t: &CMatrix, fam: &UnitaryFamily) -> Result<()> {
    let scale = check_triangular(t)?;
    let tiny = FAMILY_TOL * scale;
    let (l1, m, l2) = (t[(0, 0)], t[(0, 1)], t[(1, 1)]);
    match fam {
        UnitaryFamily::SegmentCase { .. } if m.norm() > tiny => {
            Err(Error::Shape("segment family needs a diagonal matrix".into()))
        }
        UnitaryFamily::DiscCase { .. } if (l1 - l2).norm() > tiny => {
            Err(Error::Shape("disc family needs equal eigenvalues".into()))
        }
        UnitaryFamily::GeneralCase { .. } if (l1 + l2).norm() > tiny || l1.im.abs() > tiny || l1.re < -tiny => {
            Err(Error::Shape("general family needs the form [[r, w], [0, -r]] with r >= 0".into()))
        }
        _ => Ok(()),
    }
}

/// Diagonal of `U* T U` for the family's unitary, computed by matrix products.
pub fn orbit_diagonal(t: &CMatrix, fam: &UnitaryFamily) -> Result<(Complex64, Complex64)> {
    check_case(t, fam)?;
    let d = t.conjugate_by(&build_unitary(fam)?);
    Ok((d[(0, 0)], d[(1, 1)]))
}

/// The same diagonal from the explicit formulas:
///
/// * segment: `kλ1 + (1-k)λ2`, `(1-k)λ1 + kλ2`;
/// * disc: `λ ± r_target e^{iθ}`;
/// * general, on `[[r, |m| e^{i(ζ-μ)}], [0, -r]]`:
///   `± (r cos 2θ + (|m|/2) sin 2θ e^{i(γ - μ - α + ζ)})`.
pub fn orbit_diagonal_closed_form(t: &CMatrix, fam: &UnitaryFamily) -> Result<(Complex64, Complex64)> {
    check_case(t, fam)?;
    fam.validate()?;
    let (l1, w, l2) = (t[(0, 0)], t[(0, 1)], t[(1, 1)]);
    Ok(match *fam {
        UnitaryFamily::SegmentCase { k } => (k * l1 + (1.0 - k) * l2, (1.0 - k) * l1 + k * l2),
        UnitaryFamily::DiscCase { theta, r_target, .. } => {
            let step = Complex64::from_polar(r_target, theta);
            (l1 + step, l1 - step)
        }
        UnitaryFamily::GeneralCase { theta_mix, phase_alpha, phase_gamma, .. } => {
            let r = l1.re;
            let p = r * (2.0 * theta_mix).cos()
                + Complex64::from_polar(
                    0.5 * w.norm() * (2.0 * theta_mix).sin(),
                    phase_gamma - phase_alpha + w.arg(),
                );
            (p, -p)
        }
    })
}

/// Grid sizes for [`orbit_cloud_2x2`]: `n_a` runs over the first family
/// parameter (`k`, `θ` or `θ_mix`), `n_b` over the second (`r_target` or the
/// net phase). The segment case uses only `n_a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitGrid {
    pub n_a: usize,
    pub n_b: usize,
}

impl Default for OrbitGrid {
    fn default() -> Self {
        OrbitGrid { n_a: 256, n_b: 256 }
    }
}

/// Diagonal entries of `U* T U` over the family matching the shape of `W(T)`.
///
/// `T` is first reduced to Schur form `R`. Distinct eigenvalues go through
/// `A = e^{-iμ}(R - c)` and the general family, sweeping `θ_mix ∈ [0, π/2]`
/// and the net phase `γ - μ - α + ζ ∈ [0, 2π)`; results are mapped back by
/// `p ↦ c + e^{iμ} p`. Both diagonal entries of every conjugate are kept.
pub fn orbit_cloud_2x2(t: &CMatrix, grid: OrbitGrid) -> Result<PointCloud> {
    if grid.n_a < 2 || grid.n_b < 1 {
        return Err(Error::InvalidParameter("orbit grid needs n_a >= 2 and n_b >= 1".into()));
    }
    let schur = schur_2x2(t)?;
    let ellipse = ellipse_from_schur(&schur);
    let r_mat = schur.triangular();
    let shape = ellipse.shape();
    let lin = |i: usize, n: usize| i as f64 / (n - 1) as f64;
    let pairs: Vec<(Complex64, Complex64)> = match shape {
        EllipseShape::Segment | EllipseShape::Point => {
            (0..grid.n_a)
                .into_par_iter()
                .map(|i| {
                    let fam = UnitaryFamily::SegmentCase { k: lin(i, grid.n_a) };
                    // The Schur remainder m is below the shape tolerance; keep it in the product.
                    let d = r_mat.conjugate_by(&build_unitary(&fam)?);
                    Ok((d[(0, 0)], d[(1, 1)]))
                })
                .collect::<Result<_>>()?
        }
        EllipseShape::Circle => {
            let m = schur.m;
            (0..grid.n_a * grid.n_b)
                .into_par_iter()
                .map(|idx| {
                    let (i, j) = (idx / grid.n_b, idx % grid.n_b);
                    let theta = 2.0 * PI * i as f64 / grid.n_a as f64;
                    let r_target = 0.5 * m.norm() * if grid.n_b == 1 { 1.0 } else { lin(j, grid.n_b) };
                    let fam = UnitaryFamily::disc(theta, r_target, m)?;
                    let d = r_mat.conjugate_by(&build_unitary(&fam)?);
                    Ok((d[(0, 0)], d[(1, 1)]))
                })
                .collect::<Result<_>>()?
        }
        EllipseShape::Ellipse => {
            let c = ellipse.center;
            let rot = Complex64::from_polar(1.0, ellipse.tilt_mu);
            let a = r_mat.shift(c).scale(rot.conj());
            let w_arg = a[(0, 1)].arg();
            (0..grid.n_a * grid.n_b)
                .into_par_iter()
                .map(|idx| {
                    let (i, j) = (idx / grid.n_b, idx % grid.n_b);
                    let theta_mix = FRAC_PI_2 * lin(i, grid.n_a);
                    let net = 2.0 * PI * j as f64 / grid.n_b as f64;
                    let fam = UnitaryFamily::general(theta_mix, 0.0, 0.0, net - w_arg);
                    let d = a.conjugate_by(&build_unitary(&fam)?);
                    Ok((c + rot * d[(0, 0)], c + rot * d[(1, 1)]))
                })
                .collect::<Result<_>>()?
        }
    };
    let points = pairs.into_iter().flat_map(|(p, q)| [p, q]).collect();
    Ok(PointCloud::new(points)
        .with_meta("cloud", "unitary_orbit")
        .with_meta("case", format!("{shape:?}"))
        .with_meta("n_a", grid.n_a)
        .with_meta("n_b", grid.n_b))
}

/// The circle `(x - r cos φ)² + y² = (|m|²/4) sin² φ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CircleFamily {
    pub r: f64,
    pub m_abs: f64,
    pub phi: f64,
}

impl CircleFamily {
    pub fn center(&self) -> CPoint {
        Complex64::new(self.r * self.phi.cos(), 0.0)
    }

    pub fn radius(&self) -> f64 {
        0.5 * self.m_abs * self.phi.sin().abs()
    }

    pub fn point(&self, psi: f64) -> CPoint {
        self.center() + Complex64::from_polar(self.radius(), psi)
    }
}

/// Envelope of the circles for `φ ∈ [0, π]`: the centered ellipse
/// `x²/(r² + |m|²/4) + y²/(|m|²/4) = 1`.
pub fn envelope_of_circle_family(r: f64, m_abs: f64) -> Result<EllipseParams> {
    if !(r >= 0.0 && m_abs >= 0.0 && r.is_finite() && m_abs.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "need finite r >= 0 and |m| >= 0, got r = {r}, |m| = {m_abs}"
        )));
    }
    Ok(EllipseParams {
        center: Complex64::new(0.0, 0.0),
        focus1: Complex64::new(r, 0.0),
        focus2: Complex64::new(-r, 0.0),
        major_axis: 2.0 * (r * r + 0.25 * m_abs * m_abs).sqrt(),
        minor_axis: m_abs,
        tilt_mu: 0.0,
    })
}

/// Points of the circle family on `φ_i = πi/(n_phi - 1)` and
/// `ψ_j = 2πj/n_psi`, φ-major.
pub fn circle_family_points(r: f64, m_abs: f64, n_phi: usize, n_psi: usize) -> Result<PointCloud> {
    if n_phi < 2 || n_psi < 2 {
        return Err(Error::InvalidParameter("n_phi and n_psi must be at least 2".into()));
    }
    let mut points = Vec::with_capacity(n_phi * n_psi);
    for i in 0..n_phi {
        let fam = CircleFamily {
            r,
            m_abs,
            phi: PI * i as f64 / (n_phi - 1) as f64,
        };
        points.extend((0..n_psi).map(|j| fam.point(2.0 * PI * j as f64 / n_psi as f64)));
    }
    Ok(PointCloud::new(points)
        .with_meta("cloud", "circle_family")
        .with_meta("r", r)
        .with_meta("m_abs", m_abs)
        .with_meta("n_phi", n_phi)
        .with_meta("n_psi", n_psi))
}

/// Haar-distributed `n × n` unitary from the stream `(seed, index)`.
///
/// A complex Gaussian matrix is factored as `QR` and `Q` is multiplied by
/// the phases of `R`'s diagonal, which makes the distribution exactly Haar.
pub fn haar_unitary(n: usize, seed: u64, index: u64) -> CMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let entries = (0..n * n)
        .map(|_| {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            Complex64::new(re, im)
        })
        .collect();
    let g = CMatrix::new(n, entries).expect("gaussian entries are finite");
    let (q, r) = qr(&g);
    let phases: Vec<Complex64> = r
        .diag()
        .iter()
        .map(|&d| if d.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { d / d.norm() })
        .collect();
    q.mul(&CMatrix::diagonal(&phases))
}

/// All `n` diagonal entries of `U* T U` for `n_samples` Haar unitaries.
///
/// Sample `i` uses stream `i` of the seeded generator, so the output depends
/// only on `(T, n_samples, seed)` and not on the thread count.
pub fn haar_orbit_cloud(t: &CMatrix, n_samples: usize, seed: u64) -> Result<PointCloud> {
    let n = t.n();
    if !(2..=HAAR_MAX_DIM).contains(&n) {
        return Err(Error::InvalidParameter(format!("dimension {n} outside [2, {HAAR_MAX_DIM}]")));
    }
    if n_samples == 0 {
        return Err(Error::InvalidParameter("n_samples must be at least 1".into()));
    }
    let rows: Vec<Vec<Complex64>> = (0..n_samples)
        .into_par_iter()
        .map(|i| {
            let u = haar_unitary(n, seed, i as u64);
            let tu = t.mul(&u);
            (0..n)
                .map(|k| (0..n).map(|r| u[(r, k)].conj() * tu[(r, k)]).sum())
                .collect()
        })
        .collect();
    Ok(PointCloud::new(rows.concat())
        .with_meta("cloud", "haar_orbit")
        .with_meta("n", n)
        .with_meta("n_samples", n_samples)
        .with_meta("seed", seed))
}
