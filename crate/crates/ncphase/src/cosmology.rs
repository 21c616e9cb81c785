//! Flat-or-curved ΛCDM light-travel distance: d = (c/H₀)∫₀^z dz′/[(1+z′)E(z′)].

use std::cell::RefCell;

use serde::Serialize;

use crate::constants::PhysicalConstants;
use crate::quadrature::{integrate, QuadratureError};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CosmologyError {
    #[error("invalid cosmological parameter {name} = {value}")]
    InvalidParameter { name: &'static str, value: f64 },
    #[error("redshift must be finite and nonnegative, got {0}")]
    InvalidRedshift(f64),
    #[error("relative tolerance must lie in (0, 1e-4], got {0}")]
    InvalidTolerance(f64),
    #[error("expansion-rate radicand is nonpositive at z = {z} (value {radicand:.6e})")]
    NegativeRadicand { z: f64, radicand: f64 },
    #[error("distance quadrature failed: {0}")]
    QuadratureFailure(String),
}

/// Density parameters today plus the Hubble constant in km/s/Mpc. Flatness is
/// not enforced; omega_k may take either sign.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Cosmology {
    pub h0_km_s_mpc: f64,
    pub omega_m: f64,
    pub omega_lambda: f64,
    pub omega_r: f64,
    pub omega_k: f64,
}

impl Cosmology {
    pub fn new(
        h0_km_s_mpc: f64,
        omega_m: f64,
        omega_lambda: f64,
        omega_r: f64,
        omega_k: f64,
    ) -> Result<Self, CosmologyError> {
        let check = |name: &'static str, value: f64, nonneg: bool| {
            if !value.is_finite() || (nonneg && value < 0.0) {
                Err(CosmologyError::InvalidParameter { name, value })
            } else {
                Ok(())
            }
        };
        if !(h0_km_s_mpc.is_finite() && h0_km_s_mpc > 0.0) {
            return Err(CosmologyError::InvalidParameter { name: "h0", value: h0_km_s_mpc });
        }
        check("omega_m", omega_m, true)?;
        check("omega_lambda", omega_lambda, true)?;
        check("omega_r", omega_r, true)?;
        check("omega_k", omega_k, false)?;
        Ok(Self { h0_km_s_mpc, omega_m, omega_lambda, omega_r, omega_k })
    }

    /// E(z) = √[Ωr(1+z)⁴ + Ωm(1+z)³ + Ωk(1+z)² + ΩΛ].
    pub fn hubble_e(&self, z: f64) -> Result<f64, CosmologyError> {
        if !(z.is_finite() && z >= 0.0) {
            return Err(CosmologyError::InvalidRedshift(z));
        }
        let a = 1.0 + z;
        let radicand = self.omega_r * a.powi(4)
            + self.omega_m * a.powi(3)
            + self.omega_k * a.powi(2)
            + self.omega_lambda;
        if radicand <= 0.0 {
            return Err(CosmologyError::NegativeRadicand { z, radicand });
        }
        Ok(radicand.sqrt())
    }

    /// H₀ in s⁻¹.
    pub fn h0_si(&self, constants: &PhysicalConstants) -> f64 {
        self.h0_km_s_mpc * 1000.0 / constants.mpc_m
    }

    /// Hubble distance c/H₀ in meters.
    pub fn hubble_distance_m(&self, constants: &PhysicalConstants) -> f64 {
        constants.c / self.h0_si(constants)
    }

    /// Light-travel distance in meters, to relative tolerance rtol ∈ (0, 1e-4].
    pub fn light_travel_distance(
        &self,
        z: f64,
        constants: &PhysicalConstants,
        rtol: f64,
    ) -> Result<f64, CosmologyError> {
        if !(z.is_finite() && z >= 0.0) {
            return Err(CosmologyError::InvalidRedshift(z));
        }
        if !(rtol > 0.0 && rtol <= 1e-4) {
            return Err(CosmologyError::InvalidTolerance(rtol));
        }
        // The quadrature only sees numbers; domain failures inside the
        // integrand are parked here and take precedence over the NaN they
        // leak into the estimate.
        let domain_failure: RefCell<Option<CosmologyError>> = RefCell::new(None);
        let integrand = |zp: f64| match self.hubble_e(zp) {
            Ok(e) => 1.0 / ((1.0 + zp) * e),
            Err(err) => {
                domain_failure.borrow_mut().get_or_insert(err);
                f64::NAN
            }
        };
        let result = integrate(integrand, 0.0, z, rtol);
        if let Some(err) = domain_failure.into_inner() {
            return Err(err);
        }
        let quad = result.map_err(|e: QuadratureError| {
            CosmologyError::QuadratureFailure(e.to_string())
        })?;
        Ok(self.hubble_distance_m(constants) * quad.value)
    }

    /// Same distance expressed in Mpc.
    pub fn light_travel_distance_mpc(
        &self,
        z: f64,
        constants: &PhysicalConstants,
        rtol: f64,
    ) -> Result<f64, CosmologyError> {
        Ok(self.light_travel_distance(z, constants, rtol)? / constants.mpc_m)
    }
}

impl Default for Cosmology {
    fn default() -> Self {
        Self::new(70.0, 0.27, 0.73, 0.0, 0.0).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::CODATA;

    #[test]
    fn expansion_rate_closed_values() {
        let cosmo = Cosmology::default();
        assert_eq!(cosmo.hubble_e(0.0).unwrap(), 1.0);
        assert!((cosmo.hubble_e(1.0).unwrap() - 1.7).abs() < 1e-15);
        let matter = Cosmology::new(70.0, 1.0, 0.0, 0.0, 0.0).unwrap();
        assert_eq!(matter.hubble_e(3.0).unwrap(), 8.0);
    }

    #[test]
    fn parameter_and_input_validation() {
        assert!(matches!(
            Cosmology::new(0.0, 0.27, 0.73, 0.0, 0.0),
            Err(CosmologyError::InvalidParameter { name: "h0", .. })
        ));
        assert!(matches!(
            Cosmology::new(70.0, -0.1, 0.73, 0.0, 0.0),
            Err(CosmologyError::InvalidParameter { name: "omega_m", .. })
        ));
        // Open-curvature term may be negative...
        let closed = Cosmology::new(70.0, 0.0, 0.73, 0.0, -0.5).unwrap();
        // ... and can push the radicand negative at high z.
        assert!(closed.hubble_e(0.1).is_ok());
        assert!(matches!(
            closed.hubble_e(5.0),
            Err(CosmologyError::NegativeRadicand { .. })
        ));
        assert!(matches!(
            closed.light_travel_distance(5.0, &CODATA, 1e-10),
            Err(CosmologyError::NegativeRadicand { .. })
        ));
        let cosmo = Cosmology::default();
        assert!(matches!(
            cosmo.hubble_e(-0.1),
            Err(CosmologyError::InvalidRedshift(_))
        ));
        assert!(matches!(
            cosmo.light_travel_distance(1.0, &CODATA, 1e-3),
            Err(CosmologyError::InvalidTolerance(_))
        ));
        assert!(matches!(
            cosmo.light_travel_distance(1.0, &CODATA, 0.0),
            Err(CosmologyError::InvalidTolerance(_))
        ));
    }

    #[test]
    fn zero_redshift_distance_vanishes() {
        let d = Cosmology::default().light_travel_distance(0.0, &CODATA, 1e-10).unwrap();
        assert_eq!(d, 0.0);
    }

    #[test]
    fn matter_only_distance_matches_closed_form() {
        // ∫₀^z dz'/(1+z')^(5/2) = (2/3)(1 − (1+z)^(-3/2))
        let cosmo = Cosmology::new(70.0, 1.0, 0.0, 0.0, 0.0).unwrap();
        for z in [0.3, 1.0, 4.5] {
            let d = cosmo.light_travel_distance(z, &CODATA, 1e-12).unwrap();
            let exact = cosmo.hubble_distance_m(&CODATA)
                * (2.0 / 3.0)
                * (1.0 - (1.0 + z).powf(-1.5));
            assert!((d - exact).abs() < 1e-10 * exact, "z = {z}");
        }
    }

    #[test]
    fn distance_is_monotone_in_redshift() {
        let cosmo = Cosmology::default();
        let mut prev = 0.0;
        for z in [0.1, 0.5, 1.0, 2.0, 3.3] {
            let d = cosmo.light_travel_distance(z, &CODATA, 1e-10).unwrap();
            assert!(d > prev);
            prev = d;
        }
    }

    #[test]
    fn halving_the_tolerance_is_self_consistent() {
        let cosmo = Cosmology::default();
        let rtol = 1e-8;
        let d1 = cosmo.light_travel_distance(2.0, &CODATA, rtol).unwrap();
        let d2 = cosmo.light_travel_distance(2.0, &CODATA, rtol / 2.0).unwrap();
        assert!((d1 - d2).abs() <= rtol * d1);
    }

    #[test]
    fn published_distance_spot_checks() {
        let cosmo = Cosmology::default();
        let d = cosmo.light_travel_distance(0.6678, &CODATA, 1e-10).unwrap();
        assert!((d / 5.86083e25 - 1.0).abs() < 0.01);
        let d = cosmo.light_travel_distance(3.29, &CODATA, 1e-10).unwrap();
        assert!((d / 1.12211e26 - 1.0).abs() < 0.01);
    }
}
