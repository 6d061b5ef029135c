//! Composition symbols `φ` and their boundedness on each space.
//!
//! On the Fock space only affine symbols `ζz + a` with `|ζ| ≤ 1` give bounded
//! composition operators; with `|ζ| = 1` this further requires `a = 0`, and
//! `|ζ| < 1` gives a compact operator. On the Dirichlet space every disc
//! automorphism gives a bounded operator, since the Dirichlet integral is
//! invariant under automorphisms.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernels::SpaceId;

/// Tolerance for the equalities `|ζ| = 1`, `a = 0` and `|a|² - |b|² = 1`.
pub const PARAM_TOL: f64 = 1e-12;

/// A composition symbol together with its parameters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SymbolSpec {
    /// `φ(z) = ζz + a` on `ℂ`.
    FockAffine { zeta: Complex64, a: Complex64 },
    /// `φ(z) = ζz`. Unimodular `ζ` on the disc; `|ζ| ≤ 1` on the Fock space.
    DiscRotation { zeta: Complex64 },
    /// Blaschke factor `φ_α(z) = (z - α)/(1 - ᾱz)`.
    Blaschke { alpha: Complex64 },
    /// General disc automorphism `e^{iθ}(α - z)/(1 - ᾱz)`.
    DiscAutomorphism { theta: f64, alpha: Complex64 },
    /// `(az + b)/(b̄z + ā)` with `|a|² - |b|² = 1`.
    FockSpecialAutomorphism { a: Complex64, b: Complex64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Boundedness {
    BoundedCompact,
    BoundedNonCompact,
    Unbounded,
    NotApplicable,
}

impl Boundedness {
    pub fn is_bounded(self) -> bool {
        matches!(self, Boundedness::BoundedCompact | Boundedness::BoundedNonCompact)
    }
}

/// Bounded composition operators on the Fock space with symbol `ζz + a`.
pub fn classify_fock_boundedness(zeta: Complex64, a: Complex64) -> Boundedness {
    let modulus = zeta.norm();
    if (modulus - 1.0).abs() <= PARAM_TOL {
        if a.norm() <= PARAM_TOL {
            Boundedness::BoundedNonCompact
        } else {
            Boundedness::Unbounded
        }
    } else if modulus < 1.0 {
        Boundedness::BoundedCompact
    } else {
        Boundedness::Unbounded
    }
}

fn in_disc(z: Complex64) -> bool {
    z.norm() < 1.0
}

impl SymbolSpec {
    /// Short name used in meta records and the CLI syntax.
    pub fn kind(&self) -> &'static str {
        match self {
            SymbolSpec::FockAffine { .. } => "affine",
            SymbolSpec::DiscRotation { .. } => "elliptic",
            SymbolSpec::Blaschke { .. } => "blaschke",
            SymbolSpec::DiscAutomorphism { .. } => "autD",
            SymbolSpec::FockSpecialAutomorphism { .. } => "autF",
        }
    }

    /// True for symbols defined only on the unit disc.
    pub fn is_disc_map(&self) -> bool {
        matches!(
            self,
            SymbolSpec::Blaschke { .. } | SymbolSpec::DiscAutomorphism { .. }
        )
    }

    /// Evaluate `φ(z)`.
    ///
    /// `DiscRotation` is entire and accepted on all of `ℂ`; the Blaschke
    /// factor and disc automorphisms require `|z| < 1`.
    pub fn apply(&self, z: Complex64) -> Result<Complex64> {
        let one = Complex64::new(1.0, 0.0);
        match *self {
            SymbolSpec::FockAffine { zeta, a } => Ok(zeta * z + a),
            SymbolSpec::DiscRotation { zeta } => Ok(zeta * z),
            SymbolSpec::Blaschke { alpha } => {
                if !in_disc(z) {
                    return Err(Error::Domain(format!("z = {z} outside the unit disc")));
                }
                Ok((z - alpha) / (one - alpha.conj() * z))
            }
            SymbolSpec::DiscAutomorphism { theta, alpha } => {
                if !in_disc(z) {
                    return Err(Error::Domain(format!("z = {z} outside the unit disc")));
                }
                Ok(Complex64::from_polar(1.0, theta) * (alpha - z) / (one - alpha.conj() * z))
            }
            SymbolSpec::FockSpecialAutomorphism { a, b } => {
                let den = b.conj() * z + a.conj();
                if den == Complex64::new(0.0, 0.0) {
                    return Err(Error::Pole(z));
                }
                Ok((a * z + b) / den)
            }
        }
    }

    /// Check the parameter constraints of the variant.
    pub fn validate(&self) -> Result<()> {
        let finite = |z: Complex64| z.re.is_finite() && z.im.is_finite();
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        match *self {
            SymbolSpec::FockAffine { zeta, a } => {
                if !finite(zeta) || !finite(a) {
                    return bad("affine parameters must be finite".into());
                }
            }
            SymbolSpec::DiscRotation { zeta } => {
                if !finite(zeta) {
                    return bad("zeta must be finite".into());
                }
                if zeta.norm() > 1.0 + PARAM_TOL {
                    return bad(format!("|zeta| = {} exceeds 1", zeta.norm()));
                }
            }
            SymbolSpec::Blaschke { alpha } => {
                if !finite(alpha) || !in_disc(alpha) {
                    return bad(format!("Blaschke parameter |alpha| = {} must be < 1", alpha.norm()));
                }
            }
            SymbolSpec::DiscAutomorphism { theta, alpha } => {
                if !theta.is_finite() {
                    return bad("theta must be finite".into());
                }
                if !finite(alpha) || !in_disc(alpha) {
                    return bad(format!("automorphism parameter |alpha| = {} must be < 1", alpha.norm()));
                }
            }
            SymbolSpec::FockSpecialAutomorphism { a, b } => {
                if !finite(a) || !finite(b) {
                    return bad("automorphism parameters must be finite".into());
                }
                let det = a.norm_sqr() - b.norm_sqr();
                if (det - 1.0).abs() > PARAM_TOL {
                    return bad(format!("|a|² - |b|² = {det}, expected 1"));
                }
            }
        }
        Ok(())
    }

    /// Boundedness of `C_φ` on `space`. Symbols foreign to the space, and
    /// special automorphisms with `b ≠ 0` on the Fock space (not entire),
    /// are `NotApplicable`.
    pub fn boundedness(&self, space: SpaceId) -> Boundedness {
        match (space, *self) {
            (SpaceId::Fock, SymbolSpec::FockAffine { zeta, a }) => classify_fock_boundedness(zeta, a),
            (SpaceId::Fock, SymbolSpec::DiscRotation { zeta }) => {
                classify_fock_boundedness(zeta, Complex64::new(0.0, 0.0))
            }
            (SpaceId::Fock, SymbolSpec::FockSpecialAutomorphism { a, b }) => {
                if b.norm() <= PARAM_TOL {
                    classify_fock_boundedness(a / a.conj(), Complex64::new(0.0, 0.0))
                } else {
                    Boundedness::NotApplicable
                }
            }
            (SpaceId::Fock, _) => Boundedness::NotApplicable,
            (SpaceId::Dirichlet, SymbolSpec::DiscRotation { zeta }) => {
                if (zeta.norm() - 1.0).abs() <= PARAM_TOL {
                    Boundedness::BoundedNonCompact
                } else {
                    Boundedness::NotApplicable
                }
            }
            (SpaceId::Dirichlet, SymbolSpec::Blaschke { .. })
            | (SpaceId::Dirichlet, SymbolSpec::DiscAutomorphism { .. }) => {
                Boundedness::BoundedNonCompact
            }
            (SpaceId::Dirichlet, _) => Boundedness::NotApplicable,
        }
    }

    /// Validate parameters and require a bounded operator on `space`.
    pub fn validate_for(&self, space: SpaceId) -> Result<()> {
        self.validate()?;
        match self.boundedness(space) {
            Boundedness::BoundedCompact | Boundedness::BoundedNonCompact => Ok(()),
            Boundedness::Unbounded => Err(Error::UnboundedSymbol(format!("{self} on {space}"))),
            Boundedness::NotApplicable => Err(Error::NotApplicable(format!("{self} on {space}"))),
        }
    }

    /// Inverse of the Blaschke factor, `ψ(w) = (w + α)/(1 + ᾱw)`.
    pub fn blaschke_inverse(alpha: Complex64, w: Complex64) -> Complex64 {
        (w + alpha) / (Complex64::new(1.0, 0.0) + alpha.conj() * w)
    }
}

fn fmt_c(z: Complex64) -> String {
    if z.im.is_sign_negative() {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

impl fmt::Display for SymbolSpec {
    /// Renders in the CLI syntax, e.g. `blaschke:alpha=0.25-0.43i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SymbolSpec::FockAffine { zeta, a } => {
                write!(f, "affine:zeta={},a={}", fmt_c(zeta), fmt_c(a))
            }
            SymbolSpec::DiscRotation { zeta } => write!(f, "elliptic:zeta={}", fmt_c(zeta)),
            SymbolSpec::Blaschke { alpha } => write!(f, "blaschke:alpha={}", fmt_c(alpha)),
            SymbolSpec::DiscAutomorphism { theta, alpha } => {
                write!(f, "autD:theta={},alpha={}", theta, fmt_c(alpha))
            }
            SymbolSpec::FockSpecialAutomorphism { a, b } => {
                write!(f, "autF:a={},b={}", fmt_c(a), fmt_c(b))
            }
        }
    }
}
