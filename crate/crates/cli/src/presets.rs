//! Named parameter sets for the standard range plots.

use berezin_lab::SpaceId;

#[derive(Clone, Copy, Debug)]
pub struct Preset {
    pub name: &'static str,
    pub space: SpaceId,
    pub symbol: &'static str,
    /// Sampling radius when it differs from the space default.
    pub r_max: Option<f64>,
    /// Grid sizes `(n_r, n_theta)` when they differ from the space default.
    pub grid: Option<(usize, usize)>,
    /// Plot window `(x_min, x_max, y_min, y_max)`.
    pub view: (f64, f64, f64, f64),
    pub title: &'static str,
}

pub const PRESETS: [Preset; 6] = [
    Preset {
        name: "fig1",
        space: SpaceId::Fock,
        symbol: "elliptic:zeta=0.5@pi/3",
        r_max: None,
        grid: None,
        view: (-0.06, 1.05, -0.05, 0.25),
        title: "Fock space, phi(z) = zeta z, zeta = 0.5 e^{i pi/3}",
    },
    Preset {
        name: "fig2",
        space: SpaceId::Fock,
        symbol: "autF:a=1@pi/12,b=0",
        r_max: None,
        grid: None,
        view: (-0.5, 1.05, -0.35, 0.75),
        title: "Fock space, phi(z) = (az + b)/(conj(b) z + conj(a)), a = e^{i pi/12}, b = 0",
    },
    Preset {
        name: "fig3",
        space: SpaceId::Fock,
        symbol: "affine:zeta=0.5,a=1",
        r_max: None,
        grid: None,
        view: (-0.15, 1.7, -0.95, 0.95),
        title: "Fock space, phi(z) = zeta z + a, zeta = 0.5, a = 1",
    },
    Preset {
        name: "fig3-right",
        space: SpaceId::Fock,
        symbol: "affine:zeta=0.5,a=10",
        r_max: Some(0.08),
        grid: Some((400, 1024)),
        view: (0.3, 2.35, -1.05, 1.05),
        title: "Fock space, phi(z) = zeta z + a, zeta = 0.5, a = 10",
    },
    Preset {
        name: "fig4",
        space: SpaceId::Dirichlet,
        symbol: "elliptic:zeta=-i",
        r_max: None,
        grid: None,
        view: (0.0, 1.05, -0.2, 0.05),
        title: "Dirichlet space, phi(z) = zeta z, zeta = -i",
    },
    Preset {
        name: "fig5",
        space: SpaceId::Dirichlet,
        symbol: "blaschke:alpha=0.5@pi/3",
        r_max: None,
        grid: None,
        view: (0.0, 1.2, -0.4, 0.4),
        title: "Dirichlet space, Blaschke factor, alpha = 0.5 e^{i pi/3}",
    },
];

pub fn find(name: &str) -> Option<&'static Preset> {
    PRESETS.iter().find(|p| p.name == name)
}

pub fn names() -> Vec<&'static str> {
    PRESETS.iter().map(|p| p.name).collect()
}
