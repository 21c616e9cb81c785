//! Compatible triplets (form, complex structure, metric) on deformed phase space.
//!
//! The complex structure is conjugated from a fixed position-momentum pairing
//! K by the symplectic structure itself, J = ω⁻¹·K·ω, so J² = -Id follows
//! from K² = -Id and form-compatibility is inherited rather than imposed.
//! The metric is the composite g = ωJ; compatibility makes it symmetric, and
//! θη < ħ² makes the spatial block positive definite.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::layout::CoordinateLayout;
use crate::params::{NCParams, ParamsError};
use crate::symplectic::{
    build_extended_form, build_nc_inverse_symplectic, invert_form, FormRep, SkewForm,
    SymplecticError,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum KahlerError {
    #[error(transparent)]
    Symplectic(#[from] SymplecticError),
    #[error(transparent)]
    Params(#[from] ParamsError),
    #[error("pairing ratio is undefined when exactly one of theta, eta vanishes")]
    DegenerateRatio,
    #[error("matrix does not square to minus the identity (residual {0:.3e})")]
    NotComplexStructure(f64),
    #[error("complex structure does not preserve the form (residual {0:.3e})")]
    IncompatibleACS(f64),
    #[error("limit ratio must be positive and finite, got {0}")]
    InvalidAlpha(f64),
    #[error("closed-form reference exists for n = 2 with both deformations nonzero")]
    NoClosedForm,
}

/// A linear J with J² = -Id on a fixed coordinate layout.
#[derive(Debug, Clone, PartialEq)]
pub struct AlmostComplexStructure {
    matrix: DMatrix<f64>,
    layout: CoordinateLayout,
}

impl AlmostComplexStructure {
    pub fn new(matrix: DMatrix<f64>, layout: CoordinateLayout) -> Result<Self, KahlerError> {
        if matrix.nrows() != layout.dim() || matrix.ncols() != layout.dim() {
            return Err(SymplecticError::DimensionMismatch {
                got: matrix.nrows().max(matrix.ncols()),
                expected: layout.dim(),
            }
            .into());
        }
        let dim = matrix.nrows();
        let residual = (&matrix * &matrix + DMatrix::identity(dim, dim)).amax();
        if residual > 1e-10 {
            return Err(KahlerError::NotComplexStructure(residual));
        }
        Ok(Self { matrix, layout })
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn layout(&self) -> &CoordinateLayout {
        &self.layout
    }
}

/// Pairing ratio r = √(θ/η); the commutative case pairs with r = 1.
fn pairing_ratio(params: &NCParams) -> Result<f64, KahlerError> {
    if params.is_commutative() {
        Ok(1.0)
    } else if params.theta > 0.0 && params.eta > 0.0 {
        Ok((params.theta / params.eta).sqrt())
    } else {
        Err(KahlerError::DegenerateRatio)
    }
}

/// The fixed pairing K: positions to momenta with weight -r, momenta back
/// with +1/r, and (on extended layouts) time to energy with K[t][H] = +1.
/// K² = -Id by construction.
fn pairing_matrix(params: &NCParams, layout: &CoordinateLayout) -> Result<DMatrix<f64>, KahlerError> {
    let r = pairing_ratio(params)?;
    let dim = layout.dim();
    let mut k = DMatrix::zeros(dim, dim);
    for i in 0..layout.n() {
        k[(layout.position_slot(i), layout.momentum_slot(i))] = 1.0 / r;
        k[(layout.momentum_slot(i), layout.position_slot(i))] = -r;
    }
    if let (Some(t), Some(h)) = (layout.time_slot(), layout.energy_slot()) {
        k[(t, h)] = 1.0;
        k[(h, t)] = -1.0;
    }
    Ok(k)
}

/// J = ω⁻¹·K·ω. Accepts the form in either representation.
pub fn build_acs(params: &NCParams, form: &SkewForm) -> Result<AlmostComplexStructure, KahlerError> {
    let (omega, omega_inv) = both_reps(form)?;
    let k = pairing_matrix(params, form.layout())?;
    let j = omega_inv.entries() * k * omega.entries();
    AlmostComplexStructure::new(j, *form.layout())
}

fn both_reps(form: &SkewForm) -> Result<(SkewForm, SkewForm), KahlerError> {
    let other = invert_form(form)?;
    Ok(match form.rep() {
        FormRep::Form => (form.clone(), other),
        FormRep::Inverse => (other, form.clone()),
    })
}

/// The triplet with the form held in 2-form representation and the metric
/// symmetrized exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct CompatibleTriplet {
    pub omega: SkewForm,
    pub acs: AlmostComplexStructure,
    pub metric: DMatrix<f64>,
}

impl CompatibleTriplet {
    /// Counts of (positive, negative) metric eigenvalues.
    pub fn metric_signature(&self) -> (usize, usize) {
        let eigen = self.metric.clone().symmetric_eigen();
        let scale = eigen.eigenvalues.amax().max(f64::MIN_POSITIVE);
        let pos = eigen.eigenvalues.iter().filter(|&&l| l > 1e-12 * scale).count();
        let neg = eigen.eigenvalues.iter().filter(|&&l| l < -1e-12 * scale).count();
        (pos, neg)
    }

    pub fn is_positive_definite(&self) -> bool {
        let (pos, neg) = self.metric_signature();
        neg == 0 && pos == self.metric.nrows()
    }
}

/// g = ωJ, with two built-in cross-checks: J must preserve ω
/// (J^T ω J = ω within 1e-10 relative) and lowering the candidate inverse
/// metric -Jω⁻¹ with ω must reproduce g.
pub fn build_metric(
    form: &SkewForm,
    acs: &AlmostComplexStructure,
) -> Result<CompatibleTriplet, KahlerError> {
    let (omega, omega_inv) = both_reps(form)?;
    let j = acs.matrix();
    let w = omega.entries();
    let scale = w.amax();
    let residual = (j.transpose() * w * j - w).amax() / scale;
    if residual > 1e-10 {
        return Err(KahlerError::IncompatibleACS(residual));
    }
    let g = w * j;
    // Compatibility implies symmetry; the projection only strips roundoff.
    let g = (&g + g.transpose()) * 0.5;
    let g_inv = -(j * omega_inv.entries());
    let readback = w * g_inv * w.transpose();
    let readback_residual = (&readback - &g).amax() / g.amax();
    if readback_residual > 1e-8 {
        return Err(KahlerError::IncompatibleACS(readback_residual));
    }
    Ok(CompatibleTriplet { omega, acs: acs.clone(), metric: g })
}

/// Convenience: bracket table -> (extension) -> J -> metric, in one call.
pub fn build_triplet(
    params: &NCParams,
    n: usize,
    extended: bool,
) -> Result<CompatibleTriplet, KahlerError> {
    let mut form = build_nc_inverse_symplectic(params, n)?;
    if extended {
        form = build_extended_form(&form)?;
    }
    let acs = build_acs(params, &form)?;
    build_metric(&form, &acs)
}

/// Volume data computed two independent ways: the Pfaffian of the top power
/// of the form, and the metric volume density √|det g|. For a compatible
/// triplet they agree in magnitude.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VolumeData {
    /// √|det g|.
    pub vol_metric: f64,
    /// Pfaffian of ω in the pair ordering [(t, H),] (k1, q1), (k2, q2), ...
    /// which assigns the canonical structure volume +1.
    pub vol_form: f64,
    /// |vol_metric - |vol_form|| relative to the larger of the two.
    pub rel_difference: f64,
}

/// Ordering that pairs each coordinate with its conjugate and orients every
/// pair positively: time-energy first (extended layouts), then (k_i, q_i).
fn pair_ordering(layout: &CoordinateLayout) -> Vec<usize> {
    let mut order = Vec::with_capacity(layout.dim());
    if let (Some(t), Some(h)) = (layout.time_slot(), layout.energy_slot()) {
        order.push(t);
        order.push(h);
    }
    for i in 0..layout.n() {
        order.push(layout.momentum_slot(i));
        order.push(layout.position_slot(i));
    }
    order
}

/// Pfaffian by first-row expansion: Pf(A) = Σ_k (-1)^{k+1} a_0k Pf(A_{0k}).
/// Exact enough at the 6x6 sizes used here.
pub fn pfaffian(m: &DMatrix<f64>) -> f64 {
    let n = m.nrows();
    assert_eq!(n, m.ncols());
    if n == 0 {
        return 1.0;
    }
    if n % 2 == 1 {
        return 0.0;
    }
    if n == 2 {
        return m[(0, 1)];
    }
    let mut acc = 0.0;
    for k in 1..n {
        if m[(0, k)] == 0.0 {
            continue;
        }
        let keep: Vec<usize> = (0..n).filter(|&i| i != 0 && i != k).collect();
        let minor = DMatrix::from_fn(n - 2, n - 2, |i, j| m[(keep[i], keep[j])]);
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        acc += sign * m[(0, k)] * pfaffian(&minor);
    }
    acc
}

pub fn volume_forms(triplet: &CompatibleTriplet) -> VolumeData {
    let layout = triplet.omega.layout();
    let order = pair_ordering(layout);
    let w = triplet.omega.entries();
    let dim = layout.dim();
    let reordered = DMatrix::from_fn(dim, dim, |i, j| w[(order[i], order[j])]);
    let vol_form = pfaffian(&reordered);
    let vol_metric = triplet.metric.determinant().abs().sqrt();
    let denom = vol_metric.max(vol_form.abs()).max(f64::MIN_POSITIVE);
    let rel_difference = (vol_metric - vol_form.abs()).abs() / denom;
    VolumeData { vol_metric, vol_form, rel_difference }
}

/// Independent closed form of the n = 2 spatial metric, entered verbatim from
/// the published expressions: diagonal ħ²(√(η/θ)ħ² - √(η³θ))/(θη - ħ²)² on
/// positions (θ↔η on momenta), off-diagonal ħ√(ηθ)/(ħ² - θη) with the
/// epsilon sign pattern. `extended` surrounds it with -1 entries on the
/// time and energy diagonal.
pub fn reference_metric_closed_form(
    params: &NCParams,
    extended: bool,
) -> Result<DMatrix<f64>, KahlerError> {
    let (theta, eta, hbar) = (params.theta, params.eta, params.hbar);
    if theta <= 0.0 || eta <= 0.0 {
        return Err(KahlerError::NoClosedForm);
    }
    let h2 = hbar * hbar;
    let denom = (theta * eta - h2).powi(2);
    let g_pos = h2 * ((eta / theta).sqrt() * h2 - (eta.powi(3) * theta).sqrt()) / denom;
    let g_mom = h2 * ((theta / eta).sqrt() * h2 - (theta.powi(3) * eta).sqrt()) / denom;
    let g_off = hbar * (eta * theta).sqrt() / (h2 - theta * eta);
    let mut spatial = DMatrix::zeros(4, 4);
    spatial[(0, 0)] = g_pos;
    spatial[(1, 1)] = g_pos;
    spatial[(2, 2)] = g_mom;
    spatial[(3, 3)] = g_mom;
    spatial[(0, 3)] = g_off;
    spatial[(3, 0)] = g_off;
    spatial[(1, 2)] = -g_off;
    spatial[(2, 1)] = -g_off;
    if !extended {
        return Ok(spatial);
    }
    let layout = CoordinateLayout::spatial(2, crate::layout::Frame::Deformed)
        .map_err(SymplecticError::from)?
        .to_extended();
    let slot = |s: usize| {
        if s < 2 {
            layout.position_slot(s)
        } else {
            layout.momentum_slot(s - 2)
        }
    };
    let mut m = DMatrix::zeros(6, 6);
    for i in 0..4 {
        for j in 0..4 {
            m[(slot(i), slot(j))] = spatial[(i, j)];
        }
    }
    m[(layout.time_slot().unwrap(), layout.time_slot().unwrap())] = -1.0;
    m[(layout.energy_slot().unwrap(), layout.energy_slot().unwrap())] = -1.0;
    Ok(m)
}

/// Least-squares scalar λ minimizing ‖a - λb‖ and the residual of the fit,
/// for "equal up to one overall scalar" comparisons.
pub fn proportionality(a: &DMatrix<f64>, b: &DMatrix<f64>) -> (f64, f64) {
    let dot = a.iter().zip(b.iter()).map(|(x, y)| x * y).sum::<f64>();
    let norm_b = b.iter().map(|y| y * y).sum::<f64>();
    let lambda = dot / norm_b;
    let dev = (a - b * lambda).amax() / a.amax().max(f64::MIN_POSITIVE);
    (lambda, dev)
}

/// Diagonal metric the deformed metric approaches when θ = α·η and η → 0:
/// α^{-1/2} on positions, α^{1/2} on momenta.
pub fn limit_metric(alpha: f64, n: usize) -> Result<DMatrix<f64>, KahlerError> {
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(KahlerError::InvalidAlpha(alpha));
    }
    let mut m = DMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        m[(i, i)] = alpha.sqrt().recip();
        m[(n + i, n + i)] = alpha.sqrt();
    }
    Ok(m)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LimitRow {
    pub eta: f64,
    pub max_deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitDiagnostics {
    pub alpha: f64,
    pub rows: Vec<LimitRow>,
    /// Whether the deviation from the limit metric decreases along the
    /// sequence (which it does when the etas decrease toward zero).
    pub monotone_decreasing: bool,
}

/// Tracks ‖g(αη, η) - g_limit(α)‖_max along a sequence of η values (n = 2).
pub fn commutative_limit(
    alpha: f64,
    eta_sequence: &[f64],
    hbar: f64,
) -> Result<LimitDiagnostics, KahlerError> {
    let target = limit_metric(alpha, 2)?;
    let mut rows = Vec::with_capacity(eta_sequence.len());
    for &eta in eta_sequence {
        let params = NCParams::new(alpha * eta, eta, hbar)?;
        let triplet = build_triplet(&params, 2, false)?;
        rows.push(LimitRow { eta, max_deviation: (&triplet.metric - &target).amax() });
    }
    let monotone_decreasing = rows.windows(2).all(|w| w[1].max_deviation <= w[0].max_deviation);
    Ok(LimitDiagnostics { alpha, rows, monotone_decreasing })
}

/// The n = 2 form as printed in an alternative overall normalization:
/// prefactor P = 1 - ηθ/4ħ² on [(4ħ² - ηθ)dq∧dk - 4ηħ dq¹∧dq² - 4θħ dk₁∧dk₂].
/// Kept report-only: its entries are not proportional to the inverse of the
/// bracket table once both deformations are switched on, and they scale with
/// ħ² relative to it.
pub fn alternative_omega_normalization(params: &NCParams) -> DMatrix<f64> {
    let (theta, eta, hbar) = (params.theta, params.eta, params.hbar);
    let p = 1.0 - eta * theta / (4.0 * hbar * hbar);
    let qk = p * (4.0 * hbar * hbar - eta * theta);
    let qq = -4.0 * p * eta * hbar;
    let kk = -4.0 * p * theta * hbar;
    let mut m = DMatrix::zeros(4, 4);
    m[(0, 1)] = qq;
    m[(1, 0)] = -qq;
    m[(2, 3)] = kk;
    m[(3, 2)] = -kk;
    for i in 0..2 {
        m[(i, 2 + i)] = qk;
        m[(2 + i, i)] = -qk;
    }
    m
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormalizationCheck {
    pub matches_ground_truth: bool,
    pub scalar: f64,
    pub max_rel_deviation: f64,
}

/// Fits the alternative normalization to the inverted bracket table with one
/// overall scalar and reports the residual. Commutative input fits exactly;
/// with both deformations on, the position-momentum block disagrees with the
/// deformation blocks by 4ħ²/(4ħ² - ηθ), so the fit fails and the report
/// flags it.
pub fn compare_omega_normalization(params: &NCParams) -> Result<NormalizationCheck, KahlerError> {
    let ground = invert_form(&build_nc_inverse_symplectic(params, 2)?)?;
    let alt = alternative_omega_normalization(params);
    let (scalar, max_rel_deviation) = proportionality(&alt, ground.entries());
    Ok(NormalizationCheck {
        matches_ground_truth: max_rel_deviation < 1e-10,
        scalar,
        max_rel_deviation,
    })
}

/// The published closed-form volume ħ⁴/(ħ² - ηθ); the Pfaffian machinery
/// gives ħ²/(ħ² - ηθ), i.e. an extra ħ² relative to this. Report-only.
pub fn alternative_volume_normalization(params: &NCParams) -> f64 {
    let h2 = params.hbar * params.hbar;
    h2 * h2 / (h2 - params.eta * params.theta)
}
