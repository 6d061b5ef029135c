//! Numerical range `W(T) = {⟨Tu, u⟩ : ‖u‖ = 1}` of square matrices.
//!
//! The boundary is traced with support functions: for a direction `θ`, the
//! top eigenvector `v` of `H(θ) = (e^{-iθ}T + (e^{-iθ}T)*)/2` gives the
//! boundary point `⟨Tv, v⟩`, and `λ_max(H(θ))` is the support value
//! `max Re(e^{-iθ} W(T))`. For 2×2 matrices `W(T)` is an elliptic disc whose
//! parameters come from the Schur form.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cplane::{CPoint, PointCloud};
use crate::error::{Error, Result};
pub use crate::linalg::CMatrix;
use crate::linalg::{hermitian_eigen, HermitianEigen};

/// Largest dimension accepted by the support-function routines.
pub const MAX_DIM: usize = 64;
/// Directions used by [`contains`].
pub const CONTAINS_DIRECTIONS: usize = 720;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn check_square2(t: &CMatrix) -> Result<()> {
    if t.n() == 2 {
        Ok(())
    } else {
        Err(Error::Shape(format!("expected a 2x2 matrix, got {0}x{0}", t.n())))
    }
}

/// `U* T U = [[λ1, m], [0, λ2]]` for a 2×2 `T`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SchurForm2 {
    pub lambda1: Complex64,
    pub lambda2: Complex64,
    pub m: Complex64,
    pub unitary: CMatrix,
}

impl SchurForm2 {
    pub fn triangular(&self) -> CMatrix {
        CMatrix::new(2, vec![self.lambda1, self.m, ZERO, self.lambda2]).expect("finite entries")
    }
}

/// Eigenvalues from the characteristic polynomial and a unitary whose first
/// column is a unit eigenvector for `λ1`.
pub fn schur_2x2(t: &CMatrix) -> Result<SchurForm2> {
    check_square2(t)?;
    let (a, b, c, d) = (t[(0, 0)], t[(0, 1)], t[(1, 0)], t[(1, 1)]);
    let half_diff = 0.5 * (a - d);
    let root = (half_diff * half_diff + b * c).sqrt();
    let lambda1 = 0.5 * (a + d) + root;
    // Either (b, λ1 - a) or (λ1 - d, c) spans the eigenspace; pivot on the longer.
    let c1 = [b, lambda1 - a];
    let c2 = [lambda1 - d, c];
    let n1 = (c1[0].norm_sqr() + c1[1].norm_sqr()).sqrt();
    let n2 = (c2[0].norm_sqr() + c2[1].norm_sqr()).sqrt();
    let v = if n1 == 0.0 && n2 == 0.0 {
        [Complex64::new(1.0, 0.0), ZERO]
    } else if n1 >= n2 {
        [c1[0] / n1, c1[1] / n1]
    } else {
        [c2[0] / n2, c2[1] / n2]
    };
    let w = [-v[1].conj(), v[0].conj()];
    let unitary = CMatrix::new(2, vec![v[0], w[0], v[1], w[1]])?;
    let r = t.conjugate_by(&unitary);
    Ok(SchurForm2 {
        lambda1: r[(0, 0)],
        lambda2: r[(1, 1)],
        m: r[(0, 1)],
        unitary,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EllipseShape {
    Ellipse,
    Circle,
    Segment,
    Point,
}

/// An elliptic disc given by its foci and full axis lengths.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EllipseParams {
    pub center: Complex64,
    pub focus1: Complex64,
    pub focus2: Complex64,
    pub major_axis: f64,
    pub minor_axis: f64,
    /// Direction of the major axis: `(λ1 - λ2)/2 = r e^{iμ}`.
    pub tilt_mu: f64,
}

/// Relative size below which foci or axes count as coincident/zero.
const SHAPE_TOL: f64 = 1e-12;

impl EllipseParams {
    /// Half the focal distance.
    pub fn focal_radius(&self) -> f64 {
        0.5 * (self.focus1 - self.focus2).norm()
    }

    fn scale(&self) -> f64 {
        self.major_axis.max(self.center.norm()).max(1.0)
    }

    /// Shape decided from the axes: a circle when the axes agree, a segment
    /// when the minor axis vanishes. Coincident foci of a defective matrix are
    /// only resolved to about `sqrt(ε)`, but the axes are accurate to `ε`.
    pub fn shape(&self) -> EllipseShape {
        let tiny = SHAPE_TOL * self.scale();
        if self.major_axis <= tiny {
            EllipseShape::Point
        } else if self.minor_axis <= tiny {
            EllipseShape::Segment
        } else if self.major_axis - self.minor_axis <= tiny {
            EllipseShape::Circle
        } else {
            EllipseShape::Ellipse
        }
    }

    fn local(&self, p: CPoint) -> CPoint {
        (p - self.center) * Complex64::from_polar(1.0, -self.tilt_mu)
    }

    /// `x²/(r² + |m|²/4) + y²/(|m|²/4)` in the centered frame rotated by `-μ`;
    /// equal to 1 on the boundary.
    ///
    /// For a segment (`m = 0`) this is `x²/r²` on the segment's line and
    /// infinite off it; for a point it is 0 at the point and infinite elsewhere.
    pub fn quadratic_form(&self, p: CPoint) -> f64 {
        let q = self.local(p);
        let a = 0.5 * self.major_axis;
        let b = 0.5 * self.minor_axis;
        match self.shape() {
            EllipseShape::Ellipse | EllipseShape::Circle => (q.re / a).powi(2) + (q.im / b).powi(2),
            EllipseShape::Segment => {
                if q.im.abs() <= 1e-12 * self.scale() {
                    (q.re / a).powi(2)
                } else {
                    f64::INFINITY
                }
            }
            EllipseShape::Point => {
                if q.norm() <= 1e-12 * self.scale() {
                    0.0
                } else {
                    f64::INFINITY
                }
            }
        }
    }

    /// `n` points on the boundary, counterclockwise from the major vertex.
    pub fn boundary_polygon(&self, n: usize) -> Vec<CPoint> {
        let rot = Complex64::from_polar(1.0, self.tilt_mu);
        (0..n)
            .map(|k| {
                let t = 2.0 * PI * k as f64 / n as f64;
                self.center + rot * Complex64::new(0.5 * self.major_axis * t.cos(), 0.5 * self.minor_axis * t.sin())
            })
            .collect()
    }
}

/// Foci at the eigenvalues, minor axis `|m|`, major axis `sqrt(4r² + |m|²)`.
pub fn elliptic_params(t: &CMatrix) -> Result<EllipseParams> {
    let s = schur_2x2(t)?;
    Ok(ellipse_from_schur(&s))
}

pub fn ellipse_from_schur(s: &SchurForm2) -> EllipseParams {
    let half = 0.5 * (s.lambda1 - s.lambda2);
    let r = half.norm();
    let m = s.m.norm();
    EllipseParams {
        center: 0.5 * (s.lambda1 + s.lambda2),
        focus1: s.lambda1,
        focus2: s.lambda2,
        major_axis: (4.0 * r * r + m * m).sqrt(),
        minor_axis: m,
        tilt_mu: if r == 0.0 { 0.0 } else { half.arg() },
    }
}

fn check_dim(t: &CMatrix) -> Result<()> {
    if t.n() > MAX_DIM {
        Err(Error::Shape(format!("dimension {} exceeds {MAX_DIM}", t.n())))
    } else {
        Ok(())
    }
}

/// `(e^{-iθ}T + (e^{-iθ}T)*)/2` and `(e^{-iθ}T - (e^{-iθ}T)*)/(2i)`.
fn hermitian_parts(t: &CMatrix, theta: f64) -> (CMatrix, CMatrix) {
    let rotated = t.scale(Complex64::from_polar(1.0, -theta));
    let adj = rotated.adjoint();
    let re = rotated.add(&adj).scale(Complex64::new(0.5, 0.0));
    let im = rotated.sub(&adj).scale(Complex64::new(0.0, -0.5));
    (re, im)
}

/// Top eigenvector of `H(θ)`. When the top eigenvalue is repeated, picks the
/// vector in that eigenspace maximizing `Im(e^{-iθ}⟨Tv, v⟩)`.
fn support_vector(t: &CMatrix, theta: f64) -> Result<(f64, Vec<Complex64>)> {
    let (h, k) = hermitian_parts(t, theta);
    let HermitianEigen { values, vectors } = hermitian_eigen(&h)?;
    let top = values[0];
    // Measured against ‖T‖: when H(θ) itself is at rounding level (a flat
    // face seen edge-on), its eigenvectors carry no information.
    let tie = 1e-12 * (t.frobenius() + f64::MIN_POSITIVE);
    let dim = values.iter().take_while(|&&v| top - v <= tie).count();
    if dim == 1 {
        return Ok((top, vectors.column(0)));
    }
    let n = t.n();
    let mut compressed = CMatrix::zeros(dim);
    let cols: Vec<Vec<Complex64>> = (0..dim).map(|j| vectors.column(j)).collect();
    for i in 0..dim {
        let kv = k.mul_vec(&cols[i]);
        for (j, cj) in cols.iter().enumerate() {
            // ⟨K v_i, v_j⟩ stored at (j, i) so that compressed = V* K V.
            compressed[(j, i)] = (0..n).map(|r| kv[r] * cj[r].conj()).sum();
        }
    }
    let inner = hermitian_eigen(&compressed)?;
    let y = inner.vectors.column(0);
    let mut v = vec![ZERO; n];
    for (j, cj) in cols.iter().enumerate() {
        for r in 0..n {
            v[r] += y[j] * cj[r];
        }
    }
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.iter_mut().for_each(|z| *z /= norm);
    Ok((top, v))
}

/// Boundary point of `W(T)` with outward normal `e^{iθ}`.
pub fn support_boundary_point(t: &CMatrix, theta: f64) -> Result<Complex64> {
    check_dim(t)?;
    let (_, v) = support_vector(t, theta)?;
    Ok(t.quadratic(&v))
}

/// Boundary points for `θ = 2πk/n_theta`, in order.
pub fn numerical_range_cloud(t: &CMatrix, n_theta: usize) -> Result<PointCloud> {
    if n_theta < 8 {
        return Err(Error::InvalidParameter(format!("n_theta = {n_theta} must be at least 8")));
    }
    check_dim(t)?;
    let points = (0..n_theta)
        .into_par_iter()
        .map(|k| support_boundary_point(t, 2.0 * PI * k as f64 / n_theta as f64))
        .collect::<Result<Vec<_>>>()?;
    Ok(PointCloud::new(points)
        .with_meta("cloud", "numerical_range_boundary")
        .with_meta("n", t.n())
        .with_meta("n_theta", n_theta))
}

/// Boundary of `W(T)` plus the scaled copies `c + s(b - c)` for
/// `s = j/n_layers`, `j = 0..n_layers`, where `c = tr(T)/n` lies in `W(T)`.
/// Since `W(T)` is convex these points fill it.
pub fn numerical_range_fill(t: &CMatrix, n_theta: usize, n_layers: usize) -> Result<PointCloud> {
    let boundary = numerical_range_cloud(t, n_theta)?;
    let c = t.trace() / t.n() as f64;
    let mut points = vec![c];
    for j in 1..=n_layers.max(1) {
        let s = j as f64 / n_layers.max(1) as f64;
        points.extend(boundary.points.iter().map(|&b| c + s * (b - c)));
    }
    Ok(PointCloud::new(points)
        .with_meta("cloud", "numerical_range_fill")
        .with_meta("n", t.n())
        .with_meta("n_theta", n_theta)
        .with_meta("n_layers", n_layers))
}

/// Default tolerance for [`contains`]: `1e-10 (1 + ‖T‖_F)`.
pub fn default_contains_tol(t: &CMatrix) -> f64 {
    1e-10 * (1.0 + t.frobenius())
}

/// Support values `λ_max(H(θ_k))` on a fixed direction sweep, for repeated
/// membership tests against the same matrix.
#[derive(Clone, Debug)]
pub struct SupportTable {
    directions: Vec<Complex64>,
    support: Vec<f64>,
}

impl SupportTable {
    pub fn new(t: &CMatrix, n_dirs: usize) -> Result<Self> {
        check_dim(t)?;
        if n_dirs < 3 {
            return Err(Error::InvalidParameter("need at least 3 directions".into()));
        }
        let thetas: Vec<f64> = (0..n_dirs).map(|k| 2.0 * PI * k as f64 / n_dirs as f64).collect();
        let support = thetas
            .par_iter()
            .map(|&th| hermitian_eigen(&hermitian_parts(t, th).0).map(|e| e.values[0]))
            .collect::<Result<Vec<_>>>()?;
        Ok(SupportTable {
            directions: thetas.iter().map(|&th| Complex64::from_polar(1.0, -th)).collect(),
            support,
        })
    }

    /// Largest `Re(e^{-iθ}p) - λ_max(H(θ))` over the sweep; positive values
    /// mean `p` lies outside the swept polygon by that distance.
    pub fn excess(&self, p: Complex64) -> f64 {
        self.directions
            .iter()
            .zip(&self.support)
            .map(|(d, h)| (d * p).re - h)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn contains(&self, p: Complex64, tol: f64) -> bool {
        self.excess(p) <= tol
    }
}

/// `Re(e^{-iθ}p) ≤ λ_max(H(θ)) + tol` for all 720 sweep directions.
pub fn contains(t: &CMatrix, p: Complex64, tol: f64) -> Result<bool> {
    if tol.is_nan() || tol < 0.0 {
        return Err(Error::InvalidParameter(format!("tol = {tol} must be nonnegative")));
    }
    Ok(SupportTable::new(t, CONTAINS_DIRECTIONS)?.contains(p, tol))
}
