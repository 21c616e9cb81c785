//! The fundamental deformation scales of the phase-space bracket algebra.

use serde::Serialize;

/// Deformation triple (θ, η, ħ).
///
/// θ deforms position-position brackets and carries units of length²;
/// η deforms momentum-momentum brackets and carries units of momentum²;
/// ħ is the action scale tying brackets to commutators. θη = ħ² is the
/// surface on which the n = 2 symplectic structure degenerates and is
/// excluded outright.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NCParams {
    pub theta: f64,
    pub eta: f64,
    pub hbar: f64,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ParamsError {
    #[error("theta must be finite and >= 0, got {0}")]
    InvalidTheta(f64),
    #[error("eta must be finite and >= 0, got {0}")]
    InvalidEta(f64),
    #[error("hbar must be finite and > 0, got {0}")]
    InvalidHbar(f64),
    #[error("theta*eta = hbar^2 lies on the singular surface of the deformation")]
    SingularSurface,
}

impl NCParams {
    pub fn new(theta: f64, eta: f64, hbar: f64) -> Result<Self, ParamsError> {
        if !theta.is_finite() || theta < 0.0 {
            return Err(ParamsError::InvalidTheta(theta));
        }
        if !eta.is_finite() || eta < 0.0 {
            return Err(ParamsError::InvalidEta(eta));
        }
        if !hbar.is_finite() || hbar <= 0.0 {
            return Err(ParamsError::InvalidHbar(hbar));
        }
        let p = Self { theta, eta, hbar };
        if (1.0 - p.deformation()).abs() < 1e-12 {
            return Err(ParamsError::SingularSurface);
        }
        Ok(p)
    }

    /// Undeformed scales: θ = η = 0 with the given ħ.
    pub fn commutative(hbar: f64) -> Result<Self, ParamsError> {
        Self::new(0.0, 0.0, hbar)
    }

    /// θη/ħ², the dimensionless deformation strength.
    pub fn deformation(&self) -> f64 {
        self.theta * self.eta / (self.hbar * self.hbar)
    }

    /// True when both deformation scales vanish.
    pub fn is_commutative(&self) -> bool {
        self.theta == 0.0 && self.eta == 0.0
    }
}
