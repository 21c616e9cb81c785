//! Constant-coefficient symplectic structures from deformed brackets.
//!
//! The bracket table of the coordinates fixes the inverse of the symplectic
//! form: {z^i, z^j} equals the (i, j) entry of ω⁻¹. Deformations enter as
//! constant skew blocks Θ/ħ (position-position) and N/ħ (momentum-momentum)
//! around the canonical identity blocks. The form itself is always obtained
//! by matrix inversion, never from a separate closed-form normalization.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::layout::{CoordinateLayout, Frame, LayoutError};
use crate::params::NCParams;

/// Whether the entries are the 2-form components ω_ij or the bracket table
/// ω^ij (entries of ω⁻¹). The two representations extend to the time-energy
/// sector with opposite signs, so the tag travels with the matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FormRep {
    Form,
    Inverse,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SymplecticError {
    #[error(transparent)]
    Layout(#[from] LayoutError),
    #[error("matrix is not skew-symmetric (max |m + m^T| = {0:.3e})")]
    NotSkew(f64),
    #[error("matrix dimension {got} does not match layout dimension {expected}")]
    DimensionMismatch { got: usize, expected: usize },
    #[error("form is numerically singular (relative determinant {0:.3e})")]
    SingularForm(f64),
    #[error("the canonical-frame map is defined for n = 2 only, got {0}")]
    UnsupportedDimension(usize),
    #[error("input form must have a spatial (non-extended) layout")]
    ExtendedInput,
    #[error("frame map matrix is not invertible")]
    SingularMap,
}

/// Unit skew matrix with +1 above the diagonal; the deformation blocks are
/// θ- and η-multiples of this. For n = 2 it is the two-index epsilon symbol
/// with ε_12 = +1.
pub fn unit_skew(n: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in (i + 1)..n {
            m[(i, j)] = 1.0;
            m[(j, i)] = -1.0;
        }
    }
    m
}

/// |det| measured against the matrix scale, so the singularity test does not
/// depend on overall units.
fn relative_determinant(m: &DMatrix<f64>) -> f64 {
    let dim = m.nrows();
    let scale = m.norm() / (dim as f64).sqrt();
    if scale == 0.0 {
        return 0.0;
    }
    m.determinant().abs() / scale.powi(dim as i32)
}

const SINGULAR_TOL: f64 = 1e-12;

/// A real skew-symmetric invertible matrix tied to a coordinate layout.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewForm {
    entries: DMatrix<f64>,
    layout: CoordinateLayout,
    rep: FormRep,
}

impl SkewForm {
    /// Checks dimensions, rejects meaningfully non-skew or singular input,
    /// then skew-projects (m - m^T)/2 so the invariant holds bit-exactly.
    pub fn new(
        entries: DMatrix<f64>,
        layout: CoordinateLayout,
        rep: FormRep,
    ) -> Result<Self, SymplecticError> {
        if entries.nrows() != layout.dim() || entries.ncols() != layout.dim() {
            return Err(SymplecticError::DimensionMismatch {
                got: entries.nrows().max(entries.ncols()),
                expected: layout.dim(),
            });
        }
        let scale = entries.amax().max(f64::MIN_POSITIVE);
        let asym = (&entries + entries.transpose()).amax();
        if asym > 1e-9 * scale {
            return Err(SymplecticError::NotSkew(asym));
        }
        let projected = (&entries - entries.transpose()) * 0.5;
        let rel_det = relative_determinant(&projected);
        if rel_det < SINGULAR_TOL {
            return Err(SymplecticError::SingularForm(rel_det));
        }
        Ok(Self { entries: projected, layout, rep })
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn layout(&self) -> &CoordinateLayout {
        &self.layout
    }

    pub fn rep(&self) -> FormRep {
        self.rep
    }
}

/// Bracket table of the deformed coordinates: [[Θ/ħ, Id], [-Id, N/ħ]] in the
/// [q.., k..] layout, with Θ = θ·unit_skew(n) and N = η·unit_skew(n).
///
/// The identity blocks encode {q^i, k_j} = δ^i_j; for n = 2 the deformation
/// blocks reduce to (θ/ħ)ε and (η/ħ)ε.
pub fn build_nc_inverse_symplectic(
    params: &NCParams,
    n: usize,
) -> Result<SkewForm, SymplecticError> {
    let layout = CoordinateLayout::spatial(n, Frame::Deformed)?;
    let e = unit_skew(n);
    let mut m = DMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = params.theta / params.hbar * e[(i, j)];
            m[(n + i, n + j)] = params.eta / params.hbar * e[(i, j)];
        }
        m[(i, n + i)] = 1.0;
        m[(n + i, i)] = -1.0;
    }
    SkewForm::new(m, layout, FormRep::Inverse)
}

/// Matrix inverse with the representation tag flipped; the result is
/// skew-projected to kill inversion roundoff.
pub fn invert_form(form: &SkewForm) -> Result<SkewForm, SymplecticError> {
    let rel_det = relative_determinant(form.entries());
    if rel_det < SINGULAR_TOL {
        return Err(SymplecticError::SingularForm(rel_det));
    }
    let inv = form
        .entries()
        .clone()
        .try_inverse()
        .ok_or(SymplecticError::SingularForm(rel_det))?;
    let rep = match form.rep() {
        FormRep::Form => FormRep::Inverse,
        FormRep::Inverse => FormRep::Form,
    };
    SkewForm::new(inv, *form.layout(), rep)
}

/// ω^{kl} ∂_k f ∂_l g evaluated at `point`, with gradients from central
/// differences at step h = 1e-6·max(1, ‖point‖).
///
/// For coordinate functions this reproduces the corresponding entry of the
/// bracket table up to difference-scheme roundoff.
pub fn bracket<F, G>(form_inverse: &SkewForm, f: F, g: G, point: &[f64]) -> f64
where
    F: Fn(&[f64]) -> f64,
    G: Fn(&[f64]) -> f64,
{
    assert_eq!(
        form_inverse.rep(),
        FormRep::Inverse,
        "bracket evaluation needs the bracket-table (inverse) representation"
    );
    assert_eq!(point.len(), form_inverse.dim(), "point/form dimension mismatch");
    let norm = point.iter().map(|x| x * x).sum::<f64>().sqrt();
    let h = 1e-6 * norm.max(1.0);
    let grad_f = central_gradient(&f, point, h);
    let grad_g = central_gradient(&g, point, h);
    let b = form_inverse.entries();
    let mut acc = 0.0;
    for k in 0..point.len() {
        for l in 0..point.len() {
            acc += grad_f[k] * b[(k, l)] * grad_g[l];
        }
    }
    acc
}

fn central_gradient<F>(f: &F, point: &[f64], h: f64) -> Vec<f64>
where
    F: Fn(&[f64]) -> f64,
{
    let mut shifted = point.to_vec();
    (0..point.len())
        .map(|i| {
            shifted[i] = point[i] + h;
            let fp = f(&shifted);
            shifted[i] = point[i] - h;
            let fm = f(&shifted);
            shifted[i] = point[i];
            (fp - fm) / (2.0 * h)
        })
        .collect()
}

/// An invertible linear change of phase-space coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearFrameMap {
    matrix: DMatrix<f64>,
    source_layout: CoordinateLayout,
    target_layout: CoordinateLayout,
}

impl LinearFrameMap {
    pub fn new(
        matrix: DMatrix<f64>,
        source_layout: CoordinateLayout,
        target_layout: CoordinateLayout,
    ) -> Result<Self, SymplecticError> {
        if matrix.nrows() != target_layout.dim() || matrix.ncols() != source_layout.dim() {
            return Err(SymplecticError::DimensionMismatch {
                got: matrix.nrows().max(matrix.ncols()),
                expected: source_layout.dim(),
            });
        }
        if relative_determinant(&matrix) < SINGULAR_TOL {
            return Err(SymplecticError::SingularMap);
        }
        Ok(Self { matrix, source_layout, target_layout })
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn source_layout(&self) -> &CoordinateLayout {
        &self.source_layout
    }

    pub fn target_layout(&self) -> &CoordinateLayout {
        &self.target_layout
    }

    pub fn apply(&self, point: &[f64]) -> Vec<f64> {
        assert_eq!(point.len(), self.source_layout.dim());
        let v = nalgebra::DVector::from_column_slice(point);
        (&self.matrix * v).iter().copied().collect()
    }

    pub fn inverse(&self) -> Result<Self, SymplecticError> {
        let inv = self
            .matrix
            .clone()
            .try_inverse()
            .ok_or(SymplecticError::SingularMap)?;
        Self::new(inv, self.target_layout, self.source_layout)
    }

    /// Commutator table of the target coordinates, assuming the source
    /// coordinates obey canonical commutators ([x, p] = iħδ, all else zero):
    /// ħ·M·S·M^T with S the canonical bracket table. Exact matrix arithmetic,
    /// no differencing — this is the oracle the frame-map brackets are tested
    /// against.
    pub fn induced_commutators(&self, hbar: f64) -> DMatrix<f64> {
        assert_eq!(
            self.source_layout.frame(),
            Frame::Canonical,
            "induced commutators assume a canonical source frame"
        );
        assert!(!self.source_layout.is_extended());
        let n = self.source_layout.n();
        let mut s = DMatrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            s[(i, n + i)] = 1.0;
            s[(n + i, i)] = -1.0;
        }
        (&self.matrix * s * self.matrix.transpose()) * hbar
    }
}

/// The linear map from canonical (x, p) to deformed (q, k) coordinates:
/// q^i = x^i - (θ/2ħ)ε^{ij}p_j, k_i = p_i + (η/2ħ)ε_{ij}x^j, with
/// ε_12 = ε^{12} = +1. Only n = 2 carries the two-index epsilon.
pub fn darboux_map(params: &NCParams, n: usize) -> Result<LinearFrameMap, SymplecticError> {
    if n != 2 {
        return Err(SymplecticError::UnsupportedDimension(n));
    }
    let a = params.theta / (2.0 * params.hbar);
    let b = params.eta / (2.0 * params.hbar);
    #[rustfmt::skip]
    let m = DMatrix::from_row_slice(4, 4, &[
        // x1    x2    p1    p2
        1.0,  0.0,  0.0,  -a,  // q1
        0.0,  1.0,  a,    0.0, // q2
        0.0,  b,    1.0,  0.0, // k1
        -b,   0.0,  0.0,  1.0, // k2
    ]);
    LinearFrameMap::new(
        m,
        CoordinateLayout::spatial(2, Frame::Canonical)?,
        CoordinateLayout::spatial(2, Frame::Deformed)?,
    )
}

/// Embeds a spatial form into the extended layout [t, pos.., H, mom..].
///
/// The time-energy pair contributes -dH∧dt, i.e. ω_e(∂_t, ∂_H) = +1 in the
/// form representation and {t, H} = -1 in the bracket table, so the inserted
/// block depends on the representation tag; extension and inversion then
/// commute.
pub fn build_extended_form(spatial: &SkewForm) -> Result<SkewForm, SymplecticError> {
    if spatial.layout().is_extended() {
        return Err(SymplecticError::ExtendedInput);
    }
    let n = spatial.layout().n();
    let old = spatial.entries();
    let slot = |s: usize| if s < n { s + 1 } else { s + 2 };
    let mut m = DMatrix::zeros(2 * n + 2, 2 * n + 2);
    for i in 0..2 * n {
        for j in 0..2 * n {
            m[(slot(i), slot(j))] = old[(i, j)];
        }
    }
    let (t, h) = (0, n + 1);
    let sign = match spatial.rep() {
        FormRep::Form => 1.0,
        FormRep::Inverse => -1.0,
    };
    m[(t, h)] = sign;
    m[(h, t)] = -sign;
    SkewForm::new(m, spatial.layout().to_extended(), spatial.rep())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn max_abs_diff(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
        (a - b).amax()
    }

    #[test]
    fn commutative_bracket_table_is_canonical() {
        let p = NCParams::commutative(1.0).unwrap();
        let f = build_nc_inverse_symplectic(&p, 2).unwrap();
        #[rustfmt::skip]
        let expected = DMatrix::from_row_slice(4, 4, &[
            0.0, 0.0, 1.0, 0.0,
            0.0, 0.0, 0.0, 1.0,
            -1.0, 0.0, 0.0, 0.0,
            0.0, -1.0, 0.0, 0.0,
        ]);
        assert_eq!(f.entries(), &expected);
        assert_eq!(f.rep(), FormRep::Inverse);
    }

    #[test]
    fn deformed_blocks_carry_theta_and_eta_over_hbar() {
        let p = NCParams::new(0.3, 0.5, 1.0).unwrap();
        let f = build_nc_inverse_symplectic(&p, 2).unwrap();
        let m = f.entries();
        assert_eq!(m[(0, 1)], 0.3);
        assert_eq!(m[(1, 0)], -0.3);
        assert_eq!(m[(2, 3)], 0.5);
        assert_eq!(m[(3, 2)], -0.5);
        assert_eq!(m[(0, 2)], 1.0);
        assert_eq!(m[(1, 3)], 1.0);
        // hbar rescales the deformation blocks only.
        let p2 = NCParams::new(0.3, 0.5, 2.0).unwrap();
        let f2 = build_nc_inverse_symplectic(&p2, 2).unwrap();
        assert_eq!(f2.entries()[(0, 1)], 0.15);
        assert_eq!(f2.entries()[(0, 2)], 1.0);
    }

    #[test]
    fn n3_deformation_blocks_are_constant_upper_entries() {
        let p = NCParams::new(1.0, 1.0, 2.0).unwrap();
        let f = build_nc_inverse_symplectic(&p, 3).unwrap();
        let m = f.entries();
        for i in 0..3 {
            for j in (i + 1)..3 {
                assert_eq!(m[(i, j)], 0.5);
                assert_eq!(m[(3 + i, 3 + j)], 0.5);
            }
            assert_eq!(m[(i, 3 + i)], 1.0);
        }
    }

    #[test]
    fn skewness_is_exact_after_construction() {
        let p = NCParams::new(0.123, 0.456, 0.789).unwrap();
        for n in [2, 3] {
            let f = build_nc_inverse_symplectic(&p, n).unwrap();
            let asym = (f.entries() + f.entries().transpose()).amax();
            assert_eq!(asym, 0.0);
            let inv = invert_form(&f).unwrap();
            let asym = (inv.entries() + inv.entries().transpose()).amax();
            assert_eq!(asym, 0.0);
        }
    }

    #[test]
    fn commutative_inverse_flips_identity_blocks() {
        let p = NCParams::commutative(1.0).unwrap();
        let f = build_nc_inverse_symplectic(&p, 2).unwrap();
        let omega = invert_form(&f).unwrap();
        #[rustfmt::skip]
        let expected = DMatrix::from_row_slice(4, 4, &[
            0.0, 0.0, -1.0, 0.0,
            0.0, 0.0, 0.0, -1.0,
            1.0, 0.0, 0.0, 0.0,
            0.0, 1.0, 0.0, 0.0,
        ]);
        assert!(max_abs_diff(omega.entries(), &expected) < 1e-15);
        assert_eq!(omega.rep(), FormRep::Form);
    }

    #[test]
    fn n2_inverse_matches_commuting_block_closed_form() {
        // For n = 2 the blocks commute and the inverse is
        // (1/(1 - θη/ħ²))·[[(η/ħ)ε, -Id], [Id, (θ/ħ)ε]].
        let p = NCParams::new(0.3, 0.5, 1.0).unwrap();
        let f = build_nc_inverse_symplectic(&p, 2).unwrap();
        let omega = invert_form(&f).unwrap();
        let s = 1.0 / 0.85;
        #[rustfmt::skip]
        let expected = DMatrix::from_row_slice(4, 4, &[
            0.0, 0.5, -1.0, 0.0,
            -0.5, 0.0, 0.0, -1.0,
            1.0, 0.0, 0.0, 0.3,
            0.0, 1.0, -0.3, 0.0,
        ]) * s;
        assert!(max_abs_diff(omega.entries(), &expected) < 1e-14);
        // Round trip.
        let back = invert_form(&omega).unwrap();
        assert!(max_abs_diff(back.entries(), f.entries()) < 1e-14);
    }

    #[test]
    fn singular_surfaces_are_rejected() {
        // On the n = 2 surface the parameters themselves are invalid.
        assert!(NCParams::new(1.0, 1.0, 1.0).is_err());
        // Just off the surface the determinant check trips instead.
        let p = NCParams::new(1.0, 1.0 - 1e-10, 1.0).unwrap();
        assert!(matches!(
            build_nc_inverse_symplectic(&p, 2),
            Err(SymplecticError::SingularForm(_))
        ));
        // n = 3 degenerates on θη = ħ²/3: det ∝ (1 - 3θη/ħ²)².
        let p = NCParams::new(1.0, 1.0 / 3.0, 1.0).unwrap();
        assert!(matches!(
            build_nc_inverse_symplectic(&p, 3),
            Err(SymplecticError::SingularForm(_))
        ));
        // ... while n = 2 with the same parameters is fine.
        assert!(build_nc_inverse_symplectic(&p, 2).is_ok());
    }

    #[test]
    fn rejects_invalid_dimension() {
        let p = NCParams::commutative(1.0).unwrap();
        assert!(matches!(
            build_nc_inverse_symplectic(&p, 4),
            Err(SymplecticError::Layout(LayoutError::InvalidDimension(4)))
        ));
    }

    #[test]
    fn coordinate_brackets_reproduce_table_entries() {
        let p = NCParams::new(0.3, 0.5, 1.0).unwrap();
        let f = build_nc_inverse_symplectic(&p, 2).unwrap();
        let point = [0.4, -1.2, 2.0, 0.7];
        // {q1, q2} = θ/ħ.
        let b = bracket(&f, |z| z[0], |z| z[1], &point);
        assert!((b - 0.3).abs() < 1e-10);
        // {q1, k1} = 1.
        let b = bracket(&f, |z| z[0], |z| z[2], &point);
        assert!((b - 1.0).abs() < 1e-10);
        // Antisymmetry on a generic quadratic.
        let quad = |z: &[f64]| z[0] * z[0] - 3.0 * z[1] * z[3] + 0.5 * z[2];
        let b = bracket(&f, quad, quad, &point);
        assert!(b.abs() < 1e-10);
    }

    #[test]
    fn frame_map_matches_worked_example() {
        // θ/2ħ = 0.1, η/2ħ = 0.2.
        let p = NCParams::new(0.2, 0.4, 1.0).unwrap();
        let map = darboux_map(&p, 2).unwrap();
        let out = map.apply(&[1.0, 0.0, 0.0, 1.0]);
        assert_eq!(out, vec![0.9, 0.0, 0.0, 0.8]);
        assert!(matches!(
            darboux_map(&p, 3),
            Err(SymplecticError::UnsupportedDimension(3))
        ));
        // θ = η = 0 gives the identity map.
        let id = darboux_map(&NCParams::commutative(1.0).unwrap(), 2).unwrap();
        assert_eq!(id.matrix(), &DMatrix::identity(4, 4));
    }

    #[test]
    fn frame_map_induced_commutators() {
        let p = NCParams::new(0.3, 0.5, 2.0).unwrap();
        let map = darboux_map(&p, 2).unwrap();
        let c = map.induced_commutators(p.hbar);
        let cross = p.hbar * (1.0 + p.theta * p.eta / (4.0 * p.hbar * p.hbar));
        // [q1, q2] = θ, [k1, k2] = η, [q_i, k_j] = ħ(1 + θη/4ħ²)δ_ij.
        assert!((c[(0, 1)] - p.theta).abs() < 1e-15);
        assert!((c[(2, 3)] - p.eta).abs() < 1e-15);
        assert!((c[(0, 2)] - cross).abs() < 1e-15);
        assert!((c[(1, 3)] - cross).abs() < 1e-15);
        assert!(c[(0, 3)].abs() < 1e-15);
        assert!(c[(1, 2)].abs() < 1e-15);
    }

    #[test]
    fn extension_inserts_time_energy_pair_per_representation() {
        let p = NCParams::new(0.3, 0.5, 1.0).unwrap();
        let inv = build_nc_inverse_symplectic(&p, 2).unwrap();
        let ext_inv = build_extended_form(&inv).unwrap();
        assert_eq!(ext_inv.dim(), 6);
        // Bracket table: {t, H} = -1.
        assert_eq!(ext_inv.entries()[(0, 3)], -1.0);
        assert_eq!(ext_inv.entries()[(3, 0)], 1.0);
        // Spatial blocks land on the shifted slots unchanged.
        assert_eq!(ext_inv.entries()[(1, 2)], 0.3);
        assert_eq!(ext_inv.entries()[(4, 5)], 0.5);
        assert_eq!(ext_inv.entries()[(1, 4)], 1.0);

        // Form representation: ω_e(∂_t, ∂_H) = +1.
        let omega = invert_form(&inv).unwrap();
        let ext_form = build_extended_form(&omega).unwrap();
        assert_eq!(ext_form.entries()[(0, 3)], 1.0);

        // Extension commutes with inversion.
        let a = invert_form(&ext_inv).unwrap();
        assert!(max_abs_diff(a.entries(), ext_form.entries()) < 1e-12);
        // Restricting the inverted extension to (t, H) gives the canonical 2x2.
        assert_eq!(a.entries()[(0, 3)], 1.0);
        assert_eq!(a.entries()[(3, 0)], -1.0);

        assert!(matches!(
            build_extended_form(&ext_inv),
            Err(SymplecticError::ExtendedInput)
        ));
    }

    #[test]
    fn commutative_limit_is_continuous_entrywise() {
        let canonical = build_nc_inverse_symplectic(&NCParams::commutative(1.0).unwrap(), 2)
            .unwrap();
        let mut prev = f64::INFINITY;
        for k in 1..=6 {
            let eps = 10f64.powi(-k);
            let p = NCParams::new(eps, eps, 1.0).unwrap();
            let f = build_nc_inverse_symplectic(&p, 2).unwrap();
            let dev = max_abs_diff(f.entries(), canonical.entries());
            assert!(dev < prev);
            prev = dev;
        }
        assert!(prev < 1e-5);
    }

    #[test]
    fn rejects_non_skew_input() {
        let layout = CoordinateLayout::spatial(2, Frame::Deformed).unwrap();
        let mut m = unit_skew(4);
        m[(0, 1)] = 2.0; // breaks skewness against m[(1, 0)] = -1
        assert!(matches!(
            SkewForm::new(m, layout, FormRep::Form),
            Err(SymplecticError::NotSkew(_))
        ));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            // Inversion round-trips and stays exactly skew away from the
            // singular surface. rho bounds the theta/eta anisotropy so the
            // condition number stays mild and the 1e-12 check is meaningful.
            #[test]
            fn inversion_round_trip(
                rho in 0.2..5.0f64,
                frac in 0.0..0.9f64,
                hbar in 0.5..2.0f64,
            ) {
                let theta = (frac * rho).sqrt() * hbar;
                let eta = (frac / rho).sqrt() * hbar;
                let p = NCParams::new(theta, eta, hbar).unwrap();
                let f = build_nc_inverse_symplectic(&p, 2).unwrap();
                let inv = invert_form(&f).unwrap();
                let prod = inv.entries() * f.entries();
                let dev = (&prod - DMatrix::identity(4, 4)).amax();
                prop_assert!(dev < 1e-12);
            }

            // Coordinate brackets equal bracket-table entries for every pair.
            #[test]
            fn bracket_duality(
                theta in 0.0..1.5f64,
                frac in 0.0..0.9f64,
                x in -5.0..5.0f64,
                y in -5.0..5.0f64,
            ) {
                let eta = if theta > 0.0 { frac / theta } else { frac };
                let p = NCParams::new(theta, eta, 1.0).unwrap();
                let f = build_nc_inverse_symplectic(&p, 2).unwrap();
                let point = [x, y, -y, x];
                // Finite-difference roundoff grows with the entry scale.
                let tol = 1e-8 * f.entries().amax().max(1.0);
                for i in 0..4 {
                    for j in 0..4 {
                        let b = bracket(&f, move |z: &[f64]| z[i], move |z: &[f64]| z[j], &point);
                        prop_assert!((b - f.entries()[(i, j)]).abs() < tol);
                    }
                }
            }
        }
    }
}
