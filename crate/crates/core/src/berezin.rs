//! Berezin transforms of composition operators and sampled Berezin ranges.
//!
//! For a composition operator `C_φ` on a space with kernel `k`, the Berezin
//! transform at `z` is `⟨C_φ k̂_z, k̂_z⟩ = k_z(φ(z)) / ‖k_z‖²`. The generic
//! route below evaluates exactly that through [`crate::kernels`]; the
//! `closed_form_*` functions are independent closed-form expressions for the
//! rotation and affine symbols, and [`blaschke_decomposition`] expands the
//! Blaschke-factor transform into real and imaginary parts.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cplane::{PointCloud, Verdict};
use crate::error::{Error, Result};
use crate::kernels::{self, SpaceId};
use crate::symbols::{Boundedness, SymbolSpec, PARAM_TOL};

/// Largest admissible `|z|` for Dirichlet evaluations.
pub const DISC_RADIUS_CAP: f64 = 1.0 - 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BerezinSample {
    pub z: Complex64,
    pub value: Complex64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GridKind {
    PolarDisc,
    PolarPlane,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RadialSpacing {
    Uniform,
    TanhClustered,
}

/// Steepness of the tanh radius map; larger values crowd radii toward `r_max`.
const TANH_STEEPNESS: f64 = 3.0;

/// Polar sampling grid `z = r e^{iθ}`, `r` from 0 to `r_max` inclusive and
/// `θ = 2πj / n_theta`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SamplingGrid {
    pub kind: GridKind,
    pub n_r: usize,
    pub n_theta: usize,
    pub r_max: f64,
    pub r_spacing: RadialSpacing,
}

impl SamplingGrid {
    /// 200 × 128 uniform grid on `|z| ≤ 4`. For `Re ζ < 1` the transform is
    /// below `e^{(Re ζ - 1)·16}` beyond that radius.
    pub fn fock_default() -> Self {
        SamplingGrid {
            kind: GridKind::PolarPlane,
            n_r: 200,
            n_theta: 128,
            r_max: 4.0,
            r_spacing: RadialSpacing::Uniform,
        }
    }

    /// 200 × 128 grid on `|z| ≤ 1 - 10⁻⁶` with radii crowded toward the circle.
    pub fn dirichlet_default() -> Self {
        SamplingGrid {
            kind: GridKind::PolarDisc,
            n_r: 200,
            n_theta: 128,
            r_max: 1.0 - 1e-6,
            r_spacing: RadialSpacing::TanhClustered,
        }
    }

    pub fn default_for(space: SpaceId) -> Self {
        match space {
            SpaceId::Fock => Self::fock_default(),
            SpaceId::Dirichlet => Self::dirichlet_default(),
        }
    }

    pub fn validate_for(&self, space: SpaceId) -> Result<()> {
        if self.n_r < 2 || self.n_theta < 1 {
            return Err(Error::InvalidParameter(format!(
                "grid needs n_r >= 2 and n_theta >= 1, got {} x {}",
                self.n_r, self.n_theta
            )));
        }
        if !(self.r_max > 0.0 && self.r_max.is_finite()) {
            return Err(Error::InvalidParameter(format!("r_max = {} must be positive and finite", self.r_max)));
        }
        match (space, self.kind) {
            (SpaceId::Dirichlet, GridKind::PolarPlane) => Err(Error::InvalidParameter(
                "plane grids are only valid on the Fock space".into(),
            )),
            (_, GridKind::PolarDisc) if self.r_max > DISC_RADIUS_CAP => Err(Error::InvalidParameter(
                format!("disc grid r_max = {} exceeds 1 - 1e-12", self.r_max),
            )),
            _ => Ok(()),
        }
    }

    pub fn radii(&self) -> Vec<f64> {
        let last = (self.n_r - 1) as f64;
        (0..self.n_r)
            .map(|i| {
                let t = i as f64 / last;
                match self.r_spacing {
                    RadialSpacing::Uniform => self.r_max * t,
                    RadialSpacing::TanhClustered => {
                        self.r_max * (TANH_STEEPNESS * t).tanh() / TANH_STEEPNESS.tanh()
                    }
                }
            })
            .collect()
    }

    /// Grid points in r-major order.
    pub fn points(&self) -> Vec<Complex64> {
        let radii = self.radii();
        let mut out = Vec::with_capacity(self.n_r * self.n_theta);
        for &r in &radii {
            for j in 0..self.n_theta {
                out.push(Complex64::from_polar(r, 2.0 * PI * j as f64 / self.n_theta as f64));
            }
        }
        out
    }
}

/// `⟨C_φ k̂_z, k̂_z⟩ = k_z(φ(z)) / ‖k_z‖²`, through the kernel evaluators.
///
/// On the Dirichlet space the value at `z = 0` is 1 (`k_0 ≡ 1`), and points
/// where `z̄ φ(z) = 0` go through the kernel's power series.
pub fn berezin_transform(space: SpaceId, sym: &SymbolSpec, z: Complex64) -> Result<Complex64> {
    sym.validate_for(space)?;
    transform_unchecked(space, sym, z)
}

fn transform_unchecked(space: SpaceId, sym: &SymbolSpec, z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain(format!("z = {z} is not finite")));
    }
    if space == SpaceId::Dirichlet {
        if z.norm() > DISC_RADIUS_CAP {
            return Err(Error::Domain(format!("|z| = {} exceeds 1 - 1e-12", z.norm())));
        }
        if z == Complex64::new(0.0, 0.0) {
            return Ok(Complex64::new(1.0, 0.0));
        }
    }
    let w = sym.apply(z)?;
    let value = space.kernel(w, z)? / space.norm_sq(z)?;
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(Error::Overflow(format!("Berezin transform at {z}")));
    }
    Ok(value)
}

/// `exp((ζ - 1)|z|²)`: rotation symbol on the Fock space.
pub fn closed_form_fock_elliptic(zeta: Complex64, z: Complex64) -> Result<Complex64> {
    if zeta.norm() > 1.0 + PARAM_TOL {
        return Err(Error::UnboundedSymbol(format!("|zeta| = {} > 1", zeta.norm())));
    }
    checked_exp((zeta - 1.0) * z.norm_sqr())
}

/// `exp((ζ - 1)|z|² + a z̄)`: affine symbol on the Fock space.
pub fn closed_form_fock_affine(zeta: Complex64, a: Complex64, z: Complex64) -> Result<Complex64> {
    if crate::symbols::classify_fock_boundedness(zeta, a) == Boundedness::Unbounded {
        return Err(Error::UnboundedSymbol(format!("affine symbol zeta={zeta}, a={a}")));
    }
    checked_exp((zeta - 1.0) * z.norm_sqr() + a * z.conj())
}

fn checked_exp(x: Complex64) -> Result<Complex64> {
    let v = x.exp();
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow(format!("exp({x})")))
    }
}

/// `log(1 - ζ|z|²) / (ζ log(1 - |z|²))`, and 1 at `z = 0`: unimodular
/// rotation on the Dirichlet space.
pub fn closed_form_dirichlet_elliptic(zeta: Complex64, z: Complex64) -> Result<Complex64> {
    if (zeta.norm() - 1.0).abs() > PARAM_TOL {
        return Err(Error::Domain(format!("|zeta| = {} is not 1", zeta.norm())));
    }
    if z.norm() >= 1.0 {
        return Err(Error::Domain(format!("z = {z} outside the unit disc")));
    }
    let s = z.norm_sqr();
    if s == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let num = kernels::ln_one_minus(zeta * s);
    let den = zeta * (-s).ln_1p();
    Ok(num / den)
}

/// Real/imaginary expansion of the Blaschke-factor transform on the
/// Dirichlet space.
///
/// With `p = ᾱz`, `s = |z|²`:
///
/// * `a = 1/|s - z̄α|²`, `b = 1/|1 - s + 2i Im(z̄α)|²`, `c = a / ‖k_z‖²`;
/// * `first_factor = c [(s - Re p)(1 - Re p) - (Im p)² + i Im p (2 Re p - s - 1)]`,
///   which is `1 / (‖k_z‖² z̄ φ_α(z))`;
/// * `log_argument = b [(1 - s)(1 - Re p) + 2 (Im p)² + i Im p (1 + s - 2 Re p)]`,
///   which is `1 / (1 - z̄ φ_α(z))`.
///
/// The transform is `first_factor · log(log_argument)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlaschkeDecomposition {
    pub a_coeff: f64,
    pub b_coeff: f64,
    pub c_coeff: f64,
    pub first_factor: Complex64,
    pub log_argument: Complex64,
}

impl BlaschkeDecomposition {
    /// `first_factor · log(log_argument)` with the principal logarithm.
    pub fn assemble(&self) -> Complex64 {
        self.first_factor * self.log_argument.ln()
    }
}

pub fn blaschke_decomposition(alpha: Complex64, z: Complex64) -> Result<BlaschkeDecomposition> {
    if alpha.norm() >= 1.0 {
        return Err(Error::Domain(format!("|alpha| = {} must be < 1", alpha.norm())));
    }
    let s = z.norm_sqr();
    if s == 0.0 || z.norm() >= 1.0 {
        return Err(Error::Domain(format!("need 0 < |z| < 1, got z = {z}")));
    }
    if z == alpha {
        return Err(Error::Degenerate(format!(
            "z = alpha = {alpha}: z̄ φ_α(z) vanishes (removable point of the transform)"
        )));
    }
    let p = alpha.conj() * z;
    let (x, y) = (p.re, p.im);
    let zbar_alpha = z.conj() * alpha;
    let a_coeff = 1.0 / (Complex64::new(s, 0.0) - zbar_alpha).norm_sqr();
    let b_coeff = 1.0 / Complex64::new(1.0 - s, 2.0 * zbar_alpha.im).norm_sqr();
    let c_coeff = a_coeff / kernels::dirichlet_norm_sq(z)?;
    let first_factor = c_coeff * Complex64::new((s - x) * (1.0 - x) - y * y, y * (2.0 * x - s - 1.0));
    let log_argument =
        b_coeff * Complex64::new((1.0 - s) * (1.0 - x) + 2.0 * y * y, y * (1.0 + s - 2.0 * x));
    if ![a_coeff, b_coeff, c_coeff].iter().all(|v| v.is_finite() && *v > 0.0) {
        return Err(Error::Degenerate(format!("non-finite coefficients at z = {z}")));
    }
    Ok(BlaschkeDecomposition {
        a_coeff,
        b_coeff,
        c_coeff,
        first_factor,
        log_argument,
    })
}

/// The Blaschke-factor transform restricted to the line `w = rα`:
///
/// `|rα|²(1 - r|α|²) / (|rα|² - r|α|²) · (1 - log(1 - r|α|²) / log(1 - |rα|²))`.
///
/// The formula has removable singularities at `r = 0` (value 1) and `r = 1`
/// (value `1/‖k_α‖²`); near them an equivalent form without cancellation is
/// used.
pub fn blaschke_radial_restriction(alpha: Complex64, r: f64) -> Result<Complex64> {
    let rho = alpha.norm();
    if rho == 0.0 || rho >= 1.0 {
        return Err(Error::Domain(format!("need 0 < |alpha| < 1, got {rho}")));
    }
    if !(r.is_finite() && (r * rho).abs() < 1.0) {
        return Err(Error::Domain(format!("|r alpha| = {} must be < 1", (r * rho).abs())));
    }
    let s = rho * rho;
    let w2 = r * r * s;
    let rs = r * s;
    let value = if r.abs() < 1e-4 || (r - 1.0).abs() < 1e-4 {
        // x = rs(1 - r)/(1 - rs) is the log1p argument of the difference of logs.
        let x = rs * (1.0 - r) / (1.0 - rs);
        let log1p_ratio = if x.abs() < 1e-8 { 1.0 - 0.5 * x } else { x.ln_1p() / x };
        let norm_ratio = if w2 < 1e-8 {
            1.0 - 0.5 * w2
        } else {
            w2 / -(-w2).ln_1p()
        };
        norm_ratio * log1p_ratio
    } else {
        w2 * (1.0 - rs) / (w2 - rs) * (1.0 - (-rs).ln_1p() / (-w2).ln_1p())
    };
    Ok(Complex64::new(value, 0.0))
}

/// `|B̃(re^{iθ}) - conj(B̃(re^{i(2ψ - θ)}))|` for the Blaschke factor with
/// `α = ρe^{iψ}`: the reflection of `z` across the line through `α`.
pub fn conjugate_symmetry_residual(alpha: Complex64, r: f64, theta: f64) -> Result<f64> {
    if alpha.norm() == 0.0 {
        return Err(Error::Domain("alpha must be nonzero".into()));
    }
    if !(0.0..1.0).contains(&r) {
        return Err(Error::Domain(format!("r = {r} outside [0, 1)")));
    }
    let psi = alpha.arg();
    let sym = SymbolSpec::Blaschke { alpha };
    let here = berezin_transform(SpaceId::Dirichlet, &sym, Complex64::from_polar(r, theta))?;
    let mirror = berezin_transform(
        SpaceId::Dirichlet,
        &sym,
        Complex64::from_polar(r, 2.0 * psi - theta),
    )?;
    Ok((here - mirror.conj()).norm())
}

/// Sample the Berezin range over `grid`.
///
/// Output order is r-major, then θ, independent of the thread count. The
/// cloud's domain records each `z`; meta records the space, symbol and grid.
pub fn sample_range(space: SpaceId, sym: &SymbolSpec, grid: &SamplingGrid) -> Result<PointCloud> {
    sym.validate_for(space)?;
    grid.validate_for(space)?;
    let domain = grid.points();
    let values = domain
        .par_iter()
        .map(|&z| {
            transform_unchecked(space, sym, z).map_err(|e| Error::AtGridPoint {
                point: z,
                source: Box::new(e),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut cloud = PointCloud::with_domain(values, domain)
        .with_meta("space", space)
        .with_meta("symbol", sym.kind())
        .with_meta("symbol_spec", sym)
        .with_meta("grid", format!("{:?}", grid.kind))
        .with_meta("n_r", grid.n_r)
        .with_meta("n_theta", grid.n_theta)
        .with_meta("r_max", grid.r_max)
        .with_meta(
            "r_spacing",
            match grid.r_spacing {
                RadialSpacing::Uniform => "uniform",
                RadialSpacing::TanhClustered => "tanh",
            },
        );
    for (k, v) in symbol_params(sym) {
        cloud.set_meta(k, v);
    }
    Ok(cloud)
}

fn symbol_params(sym: &SymbolSpec) -> Vec<(&'static str, String)> {
    match *sym {
        SymbolSpec::FockAffine { zeta, a } => vec![("zeta", zeta.to_string()), ("a", a.to_string())],
        SymbolSpec::DiscRotation { zeta } => vec![("zeta", zeta.to_string())],
        SymbolSpec::Blaschke { alpha } => vec![("alpha", alpha.to_string())],
        SymbolSpec::DiscAutomorphism { theta, alpha } => {
            vec![("theta", theta.to_string()), ("alpha", alpha.to_string())]
        }
        SymbolSpec::FockSpecialAutomorphism { a, b } => vec![("a", a.to_string()), ("b", b.to_string())],
    }
}

/// Exact convexity verdict for the cases with a known characterization.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "class", content = "reason")]
pub enum ConvexityClass {
    Convex(String),
    NonConvex(String),
    OpenQuestion(String),
}

impl ConvexityClass {
    pub fn verdict(&self) -> Option<Verdict> {
        match self {
            ConvexityClass::Convex(_) => Some(Verdict::Convex),
            ConvexityClass::NonConvex(_) => Some(Verdict::NonConvex),
            ConvexityClass::OpenQuestion(_) => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            ConvexityClass::Convex(_) => "Convex",
            ConvexityClass::NonConvex(_) => "NonConvex",
            ConvexityClass::OpenQuestion(_) => "OpenQuestion",
        }
    }

    pub fn reason(&self) -> &str {
        match self {
            ConvexityClass::Convex(r) | ConvexityClass::NonConvex(r) | ConvexityClass::OpenQuestion(r) => r,
        }
    }
}

fn is_real(z: Complex64) -> bool {
    z.im.abs() <= PARAM_TOL
}

fn fock_rotation_class(zeta: Complex64) -> ConvexityClass {
    if is_real(zeta) {
        ConvexityClass::Convex(format!(
            "Fock rotation with real zeta = {zeta}: the range is {{1}} or the segment (0, 1]"
        ))
    } else {
        ConvexityClass::NonConvex(format!(
            "Fock rotation with non-real zeta = {zeta}: the range is a spiral or circle arc, not a point or segment"
        ))
    }
}

fn dirichlet_rotation_class(zeta: Complex64) -> ConvexityClass {
    if is_real(zeta) {
        ConvexityClass::Convex(format!(
            "Dirichlet rotation with zeta = {zeta} in {{-1, 1}}: the range is {{1}} or (0, 1]"
        ))
    } else {
        ConvexityClass::NonConvex(format!(
            "Dirichlet rotation with zeta = {zeta} off the real axis: the range is a curved path from 1 toward 0"
        ))
    }
}

fn blaschke_class(alpha: Complex64) -> ConvexityClass {
    const HYPOTHESIS: &str =
        "assumes Im B(z) = 0 only on the line Im(conj(alpha) z) = 0 (not verified for this alpha)";
    if alpha.norm() <= PARAM_TOL {
        ConvexityClass::Convex("Blaschke factor with alpha = 0: the range is {1}".into())
    } else {
        ConvexityClass::NonConvex(format!(
            "Blaschke factor with alpha = {alpha} != 0; {HYPOTHESIS}"
        ))
    }
}

/// Convexity of `Ber(C_φ)` from the exact characterizations:
///
/// * Fock, `φ(z) = ζz`, `|ζ| ≤ 1`: convex iff `ζ ∈ [-1, 1]`;
/// * Fock, `(az + b)/(b̄z + ā)` with `b = 0`: convex iff `a ∈ {±1, ±i}`;
/// * Fock, `ζz + a` with `|ζ| < 1`, `a ≠ 0`: open;
/// * Dirichlet, `φ(z) = ζz`, `|ζ| = 1`: convex iff `ζ ∈ {-1, 1}`;
/// * Dirichlet, Blaschke factor: convex iff `α = 0` (stated hypothesis
///   recorded in the reason);
/// * Dirichlet, `e^{iθ}(α - z)/(1 - ᾱz)`: reduced to a rotation when
///   `α = 0` and to a Blaschke factor when `θ = π`; open otherwise.
pub fn classify_convexity(space: SpaceId, sym: &SymbolSpec) -> Result<ConvexityClass> {
    sym.validate_for(space)?;
    Ok(match (space, *sym) {
        (SpaceId::Fock, SymbolSpec::DiscRotation { zeta }) => fock_rotation_class(zeta),
        (SpaceId::Fock, SymbolSpec::FockAffine { zeta, a }) => {
            if a.norm() <= PARAM_TOL {
                fock_rotation_class(zeta)
            } else {
                ConvexityClass::OpenQuestion(format!(
                    "affine symbol zeta = {zeta}, a = {a} with |zeta| < 1 and a != 0 has no known characterization"
                ))
            }
        }
        (SpaceId::Fock, SymbolSpec::FockSpecialAutomorphism { a, .. }) => {
            let unit = a / a.norm();
            let quarter_turn = [
                Complex64::new(1.0, 0.0),
                Complex64::new(-1.0, 0.0),
                Complex64::new(0.0, 1.0),
                Complex64::new(0.0, -1.0),
            ]
            .iter()
            .any(|&q| (unit - q).norm() <= PARAM_TOL);
            let zeta = a / a.conj();
            if quarter_turn {
                ConvexityClass::Convex(format!(
                    "b = 0 and a = {a} in {{1, -1, i, -i}}: rotation by zeta = {zeta} = ±1"
                ))
            } else {
                ConvexityClass::NonConvex(format!(
                    "b = 0 and a = {a} not in {{1, -1, i, -i}}: rotation by unimodular non-real zeta = {zeta}"
                ))
            }
        }
        (SpaceId::Dirichlet, SymbolSpec::DiscRotation { zeta }) => dirichlet_rotation_class(zeta),
        (SpaceId::Dirichlet, SymbolSpec::Blaschke { alpha }) => blaschke_class(alpha),
        (SpaceId::Dirichlet, SymbolSpec::DiscAutomorphism { theta, alpha }) => {
            let turn = Complex64::from_polar(1.0, theta);
            if alpha.norm() <= PARAM_TOL {
                dirichlet_rotation_class(-turn)
            } else if (turn + 1.0).norm() <= PARAM_TOL {
                blaschke_class(alpha)
            } else {
                ConvexityClass::OpenQuestion(format!(
                    "disc automorphism with theta = {theta}, alpha = {alpha} is neither a rotation nor a Blaschke factor"
                ))
            }
        }
        // validate_for already rejected the remaining pairs.
        (space, sym) => return Err(Error::NotApplicable(format!("{sym} on {space}"))),
    })
}
