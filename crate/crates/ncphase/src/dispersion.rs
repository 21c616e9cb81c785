//! Deformed relativistic dispersion: extended Hamiltonians, on-shell
//! reduction, group velocity, spherical forms, and Lorentz boosts.
//!
//! The momentum deformation enters through one shift vector u = (η/2ħ)Nx
//! with N the constant unit-skew matrix; every operation here is a view of
//! E² = (p + u)²c² + m²c⁴. θ plays no role in the dispersion itself.

use serde::Serialize;

use crate::params::NCParams;
use crate::symplectic::unit_skew;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DispersionError {
    #[error("the extended Hamiltonian carries 1/2m; use the on-shell reduction for massless particles")]
    ZeroMass,
    #[error("group velocity undefined: energy vanishes at this state")]
    UndefinedVelocity,
    #[error("dispersion discriminant is negative (E² = {0:.6e})")]
    NegativeDiscriminant(f64),
    #[error("boost speed must satisfy |beta| < 1, got {0}")]
    SuperluminalBoost(f64),
    #[error("radial mode requires vanishing angular momentum components")]
    NonRadialMomentum,
    #[error("spatial dimension must be 2 or 3 and consistent across inputs, got {0}")]
    InvalidDimension(usize),
    #[error("invalid input: {0}")]
    InvalidInput(&'static str),
}

/// A point (t, x, 𝓗, p) of the extended phase space, with the energy
/// coordinate 𝓗 conjugate to time.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtendedPhasePoint {
    pub t: f64,
    pub x: Vec<f64>,
    pub h_coord: f64,
    pub p: Vec<f64>,
}

impl ExtendedPhasePoint {
    pub fn new(t: f64, x: Vec<f64>, h_coord: f64, p: Vec<f64>) -> Result<Self, DispersionError> {
        if x.len() != p.len() || !matches!(x.len(), 2 | 3) {
            return Err(DispersionError::InvalidDimension(x.len().max(p.len())));
        }
        let finite = t.is_finite()
            && h_coord.is_finite()
            && x.iter().chain(p.iter()).all(|v| v.is_finite());
        if !finite {
            return Err(DispersionError::InvalidInput("non-finite phase-space component"));
        }
        Ok(Self { t, x, h_coord, p })
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParticleSpec {
    /// Mass, kg (0 for photons).
    pub mass: f64,
    /// Speed of light, m/s.
    pub c: f64,
}

impl ParticleSpec {
    pub fn new(mass: f64, c: f64) -> Result<Self, DispersionError> {
        if !(mass.is_finite() && mass >= 0.0) {
            return Err(DispersionError::InvalidInput("mass must be finite and nonnegative"));
        }
        if !(c.is_finite() && c > 0.0) {
            return Err(DispersionError::InvalidInput("speed of light must be finite and positive"));
        }
        Ok(Self { mass, c })
    }
}

/// The deformation shift u = (η/2ħ)Nx.
pub fn momentum_shift(x: &[f64], params: &NCParams) -> Result<Vec<f64>, DispersionError> {
    let n = x.len();
    if !matches!(n, 2 | 3) {
        return Err(DispersionError::InvalidDimension(n));
    }
    let skew = unit_skew(n);
    let scale = params.eta / (2.0 * params.hbar);
    Ok((0..n)
        .map(|i| scale * (0..n).map(|j| skew[(i, j)] * x[j]).sum::<f64>())
        .collect())
}

fn shifted_momentum(
    x: &[f64],
    p: &[f64],
    params: &NCParams,
) -> Result<Vec<f64>, DispersionError> {
    if x.len() != p.len() {
        return Err(DispersionError::InvalidDimension(x.len().max(p.len())));
    }
    let u = momentum_shift(x, params)?;
    Ok(p.iter().zip(&u).map(|(pi, ui)| pi + ui).collect())
}

fn norm_sq(v: &[f64]) -> f64 {
    v.iter().map(|a| a * a).sum()
}

/// H₁ = (1/2m)[(p + u)² − 𝓗²/c²] + mc²/2. Vanishes exactly on shell; its
/// commutative (η = 0) version is boost-invariant because it depends only on
/// p² − 𝓗²/c².
pub fn extended_hamiltonian(
    point: &ExtendedPhasePoint,
    spec: &ParticleSpec,
    params: &NCParams,
) -> Result<f64, DispersionError> {
    if spec.mass <= 0.0 {
        return Err(DispersionError::ZeroMass);
    }
    let shifted = shifted_momentum(&point.x, &point.p, params)?;
    let kinetic = norm_sq(&shifted) - (point.h_coord / spec.c).powi(2);
    Ok(kinetic / (2.0 * spec.mass) + 0.5 * spec.mass * spec.c * spec.c)
}

/// The energy solving H₁ = 0: E = √[(p + u)²c² + m²c⁴]. Closed form with no
/// 1/m, so massless particles are fine.
pub fn reduce_on_shell(
    x: &[f64],
    p: &[f64],
    spec: &ParticleSpec,
    params: &NCParams,
) -> Result<f64, DispersionError> {
    let shifted = shifted_momentum(x, p, params)?;
    let c2 = spec.c * spec.c;
    Ok((norm_sq(&shifted) * c2 + (spec.mass * c2).powi(2)).sqrt())
}

/// c′ = (c²/E)(p + u). For massless particles ‖c′‖ = c identically: the
/// deformation bends the propagation direction, not the speed.
pub fn group_velocity(
    x: &[f64],
    p: &[f64],
    spec: &ParticleSpec,
    params: &NCParams,
) -> Result<Vec<f64>, DispersionError> {
    let shifted = shifted_momentum(x, p, params)?;
    let energy = reduce_on_shell(x, p, spec, params)?;
    if energy <= 0.0 {
        return Err(DispersionError::UndefinedVelocity);
    }
    let c2 = spec.c * spec.c;
    Ok(shifted.iter().map(|s| s * c2 / energy).collect())
}

/// Massless state in spherical coordinates with physical (orthonormal-frame)
/// momentum components along r̂, θ̂, φ̂.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SphericalState {
    pub r: f64,
    pub theta_ang: f64,
    pub phi_ang: f64,
    pub p_r: f64,
    pub p_theta: f64,
    pub p_phi: f64,
}

impl SphericalState {
    pub fn new(
        r: f64,
        theta_ang: f64,
        phi_ang: f64,
        p_r: f64,
        p_theta: f64,
        p_phi: f64,
    ) -> Result<Self, DispersionError> {
        let all = [r, theta_ang, phi_ang, p_r, p_theta, p_phi];
        if !all.iter().all(|v| v.is_finite()) {
            return Err(DispersionError::InvalidInput("non-finite spherical component"));
        }
        if r < 0.0 {
            return Err(DispersionError::InvalidInput("radius must be nonnegative"));
        }
        if !(0.0..=std::f64::consts::PI).contains(&theta_ang) {
            return Err(DispersionError::InvalidInput("polar angle must lie in [0, pi]"));
        }
        if !(0.0..std::f64::consts::TAU).contains(&phi_ang) {
            return Err(DispersionError::InvalidInput("azimuthal angle must lie in [0, 2pi)"));
        }
        Ok(Self { r, theta_ang, phi_ang, p_r, p_theta, p_phi })
    }
}

/// Spherical Cartesian equivalents: x = r·r̂, p = p_r r̂ + p_θ θ̂ + p_φ φ̂ with
/// x = r sinθcosφ, y = r sinθsinφ, z = r cosθ.
pub fn spherical_to_cartesian(state: &SphericalState) -> ([f64; 3], [f64; 3]) {
    let (st, ct) = state.theta_ang.sin_cos();
    let (sp, cp) = state.phi_ang.sin_cos();
    let r_hat = [st * cp, st * sp, ct];
    let theta_hat = [ct * cp, ct * sp, -st];
    let phi_hat = [-sp, cp, 0.0];
    let x = [state.r * r_hat[0], state.r * r_hat[1], state.r * r_hat[2]];
    let mut p = [0.0; 3];
    for i in 0..3 {
        p[i] = state.p_r * r_hat[i] + state.p_theta * theta_hat[i] + state.p_phi * phi_hat[i];
    }
    (x, p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DispersionMode {
    Full,
    Radial,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SphericalDispersion {
    pub energy: f64,
    pub f_value: f64,
    pub g_value: f64,
}

/// Angular factor f with 2r²f = |Nx|²: f = ½(2 − cosφ sin2θ + sin2θ sinφ
/// + sin²θ sin2φ). Equals 1 exactly on the polar axis.
pub fn angular_f(theta_ang: f64, phi_ang: f64) -> f64 {
    let s2t = (2.0 * theta_ang).sin();
    let st = theta_ang.sin();
    let (sp, cp) = phi_ang.sin_cos();
    let s2p = (2.0 * phi_ang).sin();
    0.5 * (2.0 - cp * s2t + s2t * sp + st * st * s2p)
}

/// Angular factor g with φ̂·(Nx) = r·g: g = cosθcosφ − cosθsinφ − sinθ.
/// Equals 1 exactly at θ = φ = 0.
pub fn angular_g(theta_ang: f64, phi_ang: f64) -> f64 {
    let (st, ct) = theta_ang.sin_cos();
    let (sp, cp) = phi_ang.sin_cos();
    ct * cp - ct * sp - st
}

/// Massless dispersion in spherical coordinates.
///
/// Full mode: E² = c²p² + (c²η/ħ)r[(η/2ħ)r·f + p_θ(sinφ + cosφ) + p_φ·g],
/// using r̂·(Nx) = 0, θ̂·(Nx) = r(sinφ + cosφ), φ̂·(Nx) = r·g. Radial mode
/// drops the momentum cross-term: E² = c²p_r² + (c²η²/2ħ²)r²f, and insists
/// the angular momentum components vanish so that it actually equals the
/// full expression.
pub fn spherical_dispersion(
    state: &SphericalState,
    params: &NCParams,
    c: f64,
    mode: DispersionMode,
) -> Result<SphericalDispersion, DispersionError> {
    if !(c.is_finite() && c > 0.0) {
        return Err(DispersionError::InvalidInput("speed of light must be finite and positive"));
    }
    let f_value = angular_f(state.theta_ang, state.phi_ang);
    let g_value = angular_g(state.theta_ang, state.phi_ang);
    let c2 = c * c;
    let eta_over_hbar = params.eta / params.hbar;
    let (sp, cp) = state.phi_ang.sin_cos();
    let e_squared = match mode {
        DispersionMode::Full => {
            let p2 = state.p_r * state.p_r
                + state.p_theta * state.p_theta
                + state.p_phi * state.p_phi;
            let cross = 0.5 * eta_over_hbar * state.r * f_value
                + state.p_theta * (sp + cp)
                + state.p_phi * g_value;
            c2 * p2 + c2 * eta_over_hbar * state.r * cross
        }
        DispersionMode::Radial => {
            if state.p_theta != 0.0 || state.p_phi != 0.0 {
                return Err(DispersionError::NonRadialMomentum);
            }
            c2 * state.p_r * state.p_r
                + 0.5 * c2 * eta_over_hbar * eta_over_hbar * state.r * state.r * f_value
        }
    };
    if e_squared < 0.0 {
        return Err(DispersionError::NegativeDiscriminant(e_squared));
    }
    Ok(SphericalDispersion { energy: e_squared.sqrt(), f_value, g_value })
}

/// Leading relative energy shift of a massless particle at distance r:
/// ΔE/E = (ηcr/(2ħE))². Exact algebraic inverse of the bound formula
/// η = (2ħ/(cr))√(E·ΔE).
pub fn relative_energy_shift(r: f64, energy: f64, params: &NCParams, c: f64) -> f64 {
    assert!(energy > 0.0 && r >= 0.0, "shift needs E > 0 and r >= 0");
    let x = params.eta * c * r / (2.0 * params.hbar * energy);
    x * x
}

/// Standard Lorentz boost of (ct, x) and (𝓗/c, p) with velocity β·c. Works
/// in any spatial dimension the point carries.
pub fn lorentz_boost(
    point: &ExtendedPhasePoint,
    beta: &[f64],
    spec: &ParticleSpec,
) -> Result<ExtendedPhasePoint, DispersionError> {
    if beta.len() != point.n() {
        return Err(DispersionError::InvalidDimension(beta.len()));
    }
    let b2 = norm_sq(beta);
    if b2 >= 1.0 {
        return Err(DispersionError::SuperluminalBoost(b2.sqrt()));
    }
    if b2 == 0.0 {
        return Ok(point.clone());
    }
    let c = spec.c;
    let gamma = 1.0 / (1.0 - b2).sqrt();
    let bx: f64 = beta.iter().zip(&point.x).map(|(b, x)| b * x).sum();
    let bp: f64 = beta.iter().zip(&point.p).map(|(b, p)| b * p).sum();
    let t = gamma * (point.t - bx / c);
    let h_coord = gamma * (point.h_coord - c * bp);
    let x_coef = (gamma - 1.0) / b2 * bx - gamma * c * point.t;
    let p_coef = (gamma - 1.0) / b2 * bp - gamma * point.h_coord / c;
    let x = point.x.iter().zip(beta).map(|(xi, bi)| xi + x_coef * bi).collect();
    let p = point.p.iter().zip(beta).map(|(pi, bi)| pi + p_coef * bi).collect();
    ExtendedPhasePoint::new(t, x, h_coord, p)
}
