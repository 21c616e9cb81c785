//! Physical constants in SI units, as a swappable set so results can be
//! reproduced either at full CODATA precision or with the rounded speed of
//! light some published tables were computed with.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhysicalConstants {
    /// Speed of light, m/s.
    pub c: f64,
    /// Reduced Planck constant, J·s.
    pub hbar: f64,
    /// Megaparsec, m.
    pub mpc_m: f64,
    /// Electron-volt, J.
    pub ev_j: f64,
}

/// CODATA 2018 values (c and eV exact by definition).
pub const CODATA: PhysicalConstants = PhysicalConstants {
    c: 2.99792458e8,
    hbar: 1.054571817e-34,
    mpc_m: 3.0856775814913673e22,
    ev_j: 1.602176634e-19,
};

/// Same set with c rounded to 3e8 m/s, matching tables computed at that
/// precision.
pub const ROUNDED: PhysicalConstants = PhysicalConstants { c: 3.0e8, ..CODATA };

impl Default for PhysicalConstants {
    fn default() -> Self {
        CODATA
    }
}
