//! Berezin transforms and Berezin ranges of composition operators on the
//! Fock space `F²(ℂ)` and the Dirichlet space `𝒟`, numerical ranges of
//! matrices, and unitary-orbit Berezin ranges.
//!
//! ```
//! use berezin_lab::{berezin_transform, SpaceId, SymbolSpec};
//! use num_complex::Complex64;
//!
//! let sym: SymbolSpec = "elliptic:zeta=-1".parse().unwrap();
//! let b = berezin_transform(SpaceId::Fock, &sym, Complex64::new(1.0, 0.0)).unwrap();
//! assert!((b.re - (-2.0f64).exp()).abs() < 1e-15);
//! ```

pub mod berezin;
pub mod cplane;
pub mod error;
pub mod io;
pub mod kernels;
pub mod linalg;
pub mod numrange;
pub mod parse;
pub mod symbols;
pub mod unitorbit;
pub mod verify;

pub use berezin::{
    berezin_transform, blaschke_decomposition, blaschke_radial_restriction, classify_convexity,
    sample_range, ConvexityClass, SamplingGrid,
};
pub use cplane::{convex_hull, convexity_report, convexity_report_default, hausdorff, CPoint, ConvexityReport, PointCloud, Verdict};
pub use error::{Error, Result};
pub use kernels::SpaceId;
pub use linalg::CMatrix;
pub use numrange::{contains, elliptic_params, numerical_range_cloud, schur_2x2, EllipseParams};
pub use symbols::SymbolSpec;
pub use unitorbit::{build_unitary, haar_orbit_cloud, orbit_cloud_2x2, UnitaryFamily};

#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $file:literal) => {
            #[doc = include_str!(concat!("../../../book/src/", $file))]
            pub struct $name;
        };
    }
    chapter!(Introduction, "introduction.md");
    chapter!(Kernels, "kernels.md");
    chapter!(Symbols, "symbols.md");
    chapter!(Berezin, "berezin.md");
    chapter!(Convexity, "convexity.md");
    chapter!(Numrange, "numrange.md");
    chapter!(Orbits, "orbits.md");
    chapter!(Cli, "cli.md");

    #[doc = include_str!("../../../README.md")]
    pub struct Readme;
}
