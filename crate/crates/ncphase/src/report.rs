//! JSON-serializable reports assembled from the library pieces; consumed by
//! the CLI's geometry and dispersion subcommands.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::dispersion::{
    extended_hamiltonian, group_velocity, reduce_on_shell, spherical_dispersion,
    spherical_to_cartesian, DispersionError, DispersionMode, ExtendedPhasePoint, ParticleSpec,
    SphericalState,
};
use crate::kahler::{
    alternative_omega_normalization, alternative_volume_normalization, build_triplet,
    commutative_limit, compare_omega_normalization, proportionality,
    reference_metric_closed_form, volume_forms, KahlerError, LimitDiagnostics, VolumeData,
};
use crate::params::NCParams;
use crate::symplectic::invert_form;

pub fn matrix_rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeometryInputs {
    pub theta: f64,
    pub eta: f64,
    pub hbar: f64,
    pub n: usize,
    pub extended: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReferenceMetricReport {
    pub matrix: Vec<Vec<f64>>,
    /// Least-squares scalar fitting the constructed metric to the closed
    /// form; 1 means entrywise equality.
    pub proportionality_scalar: f64,
    pub max_rel_deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OmegaNormalizationFlag {
    pub matches_ground_truth: bool,
    pub scalar: f64,
    pub max_rel_deviation: f64,
    pub alternative: Vec<Vec<f64>>,
    pub note: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VolumeNormalizationFlag {
    pub value: f64,
    pub pfaffian_value: f64,
    pub matches: bool,
    pub note: &'static str,
}

/// Quantities that exist in the literature in a second normalization that is
/// not consistent with the bracket-table ground truth; reported, never used.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConsistencyFlags {
    pub alternative_omega_normalization: OmegaNormalizationFlag,
    pub alternative_volume_normalization: VolumeNormalizationFlag,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeometryReport {
    pub inputs: GeometryInputs,
    pub coordinates: Vec<String>,
    pub omega: Vec<Vec<f64>>,
    pub omega_inverse: Vec<Vec<f64>>,
    pub acs: Vec<Vec<f64>>,
    pub metric: Vec<Vec<f64>>,
    pub metric_signature: (usize, usize),
    pub volume: VolumeData,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference_metric: Option<ReferenceMetricReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub limit_diagnostics: Option<LimitDiagnostics>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub consistency_flags: Option<ConsistencyFlags>,
}

const OMEGA_NOTE: &str = "alternative closed-form 2-form: proportional to the inverted \
bracket table only when a deformation vanishes; with both deformations on, its \
position-momentum block is off by 4*hbar^2/(4*hbar^2 - eta*theta) and its entries carry \
different units. Reported only; the matrix inverse is ground truth.";

const VOLUME_NOTE: &str = "alternative closed-form volume hbar^4/(hbar^2 - eta*theta) \
carries an extra hbar^2 relative to the Pfaffian of the inverted bracket table. \
Reported only; the Pfaffian is ground truth.";

/// Full geometry report for one parameter set: the triplet, its volumes, the
/// n = 2 closed-form cross-checks, optional limit diagnostics, and the
/// normalization flags.
pub fn build_geometry_report(
    params: &NCParams,
    n: usize,
    extended: bool,
    limit_alpha: Option<f64>,
) -> Result<GeometryReport, KahlerError> {
    let triplet = build_triplet(params, n, extended)?;
    let omega_inverse = invert_form(&triplet.omega)?;
    let volume = volume_forms(&triplet);

    let reference_metric = if n == 2 && params.theta > 0.0 && params.eta > 0.0 {
        let reference = reference_metric_closed_form(params, extended)?;
        let (scalar, dev) = proportionality(&triplet.metric, &reference);
        Some(ReferenceMetricReport {
            matrix: matrix_rows(&reference),
            proportionality_scalar: scalar,
            max_rel_deviation: dev,
        })
    } else {
        None
    };

    let limit_diagnostics = limit_alpha
        .map(|alpha| commutative_limit(alpha, &[1e-2, 1e-3, 1e-4, 1e-5, 1e-6], params.hbar))
        .transpose()?;

    let consistency_flags = if n == 2 {
        let omega_check = compare_omega_normalization(params)?;
        let alt_volume = alternative_volume_normalization(params);
        let denom = alt_volume.abs().max(volume.vol_form.abs()).max(f64::MIN_POSITIVE);
        Some(ConsistencyFlags {
            alternative_omega_normalization: OmegaNormalizationFlag {
                matches_ground_truth: omega_check.matches_ground_truth,
                scalar: omega_check.scalar,
                max_rel_deviation: omega_check.max_rel_deviation,
                alternative: matrix_rows(&alternative_omega_normalization(params)),
                note: OMEGA_NOTE,
            },
            alternative_volume_normalization: VolumeNormalizationFlag {
                value: alt_volume,
                pfaffian_value: volume.vol_form,
                matches: (alt_volume - volume.vol_form).abs() <= 1e-10 * denom,
                note: VOLUME_NOTE,
            },
        })
    } else {
        None
    };

    Ok(GeometryReport {
        inputs: GeometryInputs {
            theta: params.theta,
            eta: params.eta,
            hbar: params.hbar,
            n,
            extended,
        },
        coordinates: triplet.omega.layout().names(),
        omega: matrix_rows(triplet.omega.entries()),
        omega_inverse: matrix_rows(omega_inverse.entries()),
        acs: matrix_rows(triplet.acs.matrix()),
        metric: matrix_rows(&triplet.metric),
        metric_signature: triplet.metric_signature(),
        volume,
        reference_metric,
        limit_diagnostics,
        consistency_flags,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StateInput {
    Cartesian { x: Vec<f64>, p: Vec<f64> },
    Spherical { state: SphericalState, mode: DispersionMode },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DispersionChecks {
    /// H₁ evaluated at 𝓗 = E, relative to E (massive states only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub on_shell_residual: Option<f64>,
    /// ‖c′‖/c − 1 (massless states only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub speed_relative_deviation: Option<f64>,
    /// Spherical energy against the Cartesian oracle (spherical input only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spherical_cartesian_relative_difference: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DispersionReport {
    #[serde(rename = "particle")]
    pub spec: ParticleSpec,
    pub theta: f64,
    pub eta: f64,
    pub hbar: f64,
    pub state: StateInput,
    #[serde(rename = "E")]
    pub energy: f64,
    #[serde(rename = "c_prime")]
    pub group_velocity: Vec<f64>,
    pub speed: f64,
    #[serde(rename = "f", skip_serializing_if = "Option::is_none")]
    pub f_value: Option<f64>,
    #[serde(rename = "g", skip_serializing_if = "Option::is_none")]
    pub g_value: Option<f64>,
    pub checks: DispersionChecks,
}

/// Dispersion report for one state: energy, group velocity, angular factors
/// when spherical, and self-checks.
pub fn build_dispersion_report(
    spec: &ParticleSpec,
    params: &NCParams,
    state: StateInput,
) -> Result<DispersionReport, DispersionError> {
    let (x, p, f_value, g_value, spherical_diff) = match &state {
        StateInput::Cartesian { x, p } => (x.clone(), p.clone(), None, None, None),
        StateInput::Spherical { state: s, mode } => {
            if spec.mass != 0.0 {
                return Err(DispersionError::InvalidInput(
                    "spherical dispersion is massless; use a Cartesian state for massive particles",
                ));
            }
            let d = spherical_dispersion(s, params, spec.c, *mode)?;
            let (x, p) = spherical_to_cartesian(s);
            let oracle = reduce_on_shell(&x, &p, spec, params)?;
            let diff = (d.energy - oracle).abs() / oracle.max(f64::MIN_POSITIVE);
            (x.to_vec(), p.to_vec(), Some(d.f_value), Some(d.g_value), Some(diff))
        }
    };
    let energy = reduce_on_shell(&x, &p, spec, params)?;
    let velocity = group_velocity(&x, &p, spec, params)?;
    let speed = velocity.iter().map(|v| v * v).sum::<f64>().sqrt();
    let on_shell_residual = if spec.mass > 0.0 {
        let point = ExtendedPhasePoint::new(0.0, x.clone(), energy, p.clone())?;
        Some(extended_hamiltonian(&point, spec, params)? / energy)
    } else {
        None
    };
    let speed_relative_deviation =
        if spec.mass == 0.0 { Some(speed / spec.c - 1.0) } else { None };
    Ok(DispersionReport {
        spec: *spec,
        theta: params.theta,
        eta: params.eta,
        hbar: params.hbar,
        state,
        energy,
        group_velocity: velocity,
        speed,
        f_value,
        g_value,
        checks: DispersionChecks {
            on_shell_residual,
            speed_relative_deviation,
            spherical_cartesian_relative_difference: spherical_diff,
        },
    })
}
