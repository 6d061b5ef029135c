//! Reproducing kernels of the Fock space `F²(ℂ)` and the Dirichlet space `𝒟`.
//!
//! Fock: `K(z, w) = exp(z w̄)`, `‖k_z‖² = exp(|z|²)`.
//!
//! Dirichlet: with `u = w̄ z`, `k_w(z) = -log(1 - u) / u` and `k_0 ≡ 1`;
//! `‖k_z‖² = -log(1 - |z|²) / |z|²`. Both are defined on the open unit disc.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Below this `|u|` the Dirichlet kernel is summed as a power series.
pub const SERIES_SWITCH: f64 = 1e-4;

/// Largest argument accepted by `exp` before the result overflows.
const EXP_MAX: f64 = 709.782712893384;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpaceId {
    Fock,
    Dirichlet,
}

impl SpaceId {
    pub fn name(self) -> &'static str {
        match self {
            SpaceId::Fock => "fock",
            SpaceId::Dirichlet => "dirichlet",
        }
    }

    pub fn kernel(self, z: Complex64, w: Complex64) -> Result<Complex64> {
        match self {
            SpaceId::Fock => fock_kernel(z, w),
            SpaceId::Dirichlet => dirichlet_kernel(z, w),
        }
    }

    pub fn norm_sq(self, z: Complex64) -> Result<f64> {
        match self {
            SpaceId::Fock => fock_norm_sq(z),
            SpaceId::Dirichlet => dirichlet_norm_sq(z),
        }
    }
}

impl std::fmt::Display for SpaceId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for SpaceId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "fock" => Ok(SpaceId::Fock),
            "dirichlet" => Ok(SpaceId::Dirichlet),
            other => Err(Error::Parse(format!("unknown space `{other}`"))),
        }
    }
}

/// A kernel evaluation, optionally carrying `‖k_z‖²` for diagonal calls.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KernelValue {
    pub value: Complex64,
    pub norm_sq_at_diagonal: Option<f64>,
}

impl KernelValue {
    /// `k_z(z)` on the given space; the value is real and equals `‖k_z‖²`.
    pub fn diagonal(space: SpaceId, z: Complex64) -> Result<Self> {
        let value = space.kernel(z, z)?;
        Ok(KernelValue {
            value,
            norm_sq_at_diagonal: Some(space.norm_sq(z)?),
        })
    }
}

fn checked_exp(x: Complex64, what: &str) -> Result<Complex64> {
    if !x.re.is_finite() || !x.im.is_finite() || x.re > EXP_MAX {
        return Err(Error::Overflow(what.to_string()));
    }
    Ok(x.exp())
}

/// `K(z, w) = exp(z w̄)`.
pub fn fock_kernel(z: Complex64, w: Complex64) -> Result<Complex64> {
    checked_exp(z * w.conj(), "Fock kernel")
}

/// `‖k_z‖² = exp(|z|²)`.
pub fn fock_norm_sq(z: Complex64) -> Result<f64> {
    let x = z.norm_sqr();
    if !x.is_finite() || x > EXP_MAX {
        return Err(Error::Overflow("Fock kernel norm".into()));
    }
    Ok(x.exp())
}

fn check_disc(z: Complex64, name: &str) -> Result<()> {
    if z.norm() < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "{name} = {z} is not in the open unit disc"
        )))
    }
}

/// Principal `log(1 - u)` for `|u| < 1`, accurate for small `|u|` and for
/// `u` near 1.
///
/// Away from `u = 1`, `ln|1 - u| = ½ ln_1p(|u|² - 2 Re u)` avoids forming
/// `1 - u` before the logarithm. When `|1 - u| < ½` that argument is close
/// to -1 and loses relative precision, so `|1 - u|` is formed directly; the
/// subtraction `1 - Re u` is exact there.
pub(crate) fn ln_one_minus(u: Complex64) -> Complex64 {
    let w = Complex64::new(1.0 - u.re, -u.im);
    let re = if w.norm_sqr() < 0.25 {
        w.norm().ln()
    } else {
        0.5 * (u.norm_sqr() - 2.0 * u.re).ln_1p()
    };
    Complex64::new(re, w.im.atan2(w.re))
}

/// `1 + u/2 + u²/3 + …`, i.e. `-log(1 - u)/u`, summed to double precision.
pub(crate) fn dirichlet_series(u: Complex64) -> Complex64 {
    let mut sum = Complex64::new(1.0, 0.0);
    let mut power = Complex64::new(1.0, 0.0);
    for k in 1..200 {
        power *= u;
        let term = power / (k as f64 + 1.0);
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() {
            break;
        }
    }
    sum
}

/// `-log(1 - u)/u` via the logarithm.
pub(crate) fn dirichlet_closed(u: Complex64) -> Complex64 {
    -ln_one_minus(u) / u
}

/// Dirichlet kernel `k_w(z)`, with `u = w̄ z`.
///
/// Small `|u|` goes through the power series; elsewhere the principal
/// logarithm is used. `1 - u` lies in the right half-plane, away from the
/// branch cut.
pub fn dirichlet_kernel(z: Complex64, w: Complex64) -> Result<Complex64> {
    check_disc(z, "z")?;
    check_disc(w, "w")?;
    let u = w.conj() * z;
    if u.norm() < SERIES_SWITCH {
        Ok(dirichlet_series(u))
    } else {
        Ok(dirichlet_closed(u))
    }
}

/// `‖k_z‖² = -log(1 - |z|²)/|z|²`, equal to 1 at the origin.
pub fn dirichlet_norm_sq(z: Complex64) -> Result<f64> {
    check_disc(z, "z")?;
    let s = z.norm_sqr();
    if s < SERIES_SWITCH {
        Ok(dirichlet_series(Complex64::new(s, 0.0)).re)
    } else {
        Ok(-(-s).ln_1p() / s)
    }
}
