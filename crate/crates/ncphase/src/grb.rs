//! Burst-catalog pipeline: fluence + redshift -> momentum-scale bound.
//!
//! Per row: the band fluence times the detector area stands in for the photon
//! energy and its uncertainty, the redshift becomes a light-travel distance,
//! and the bound is η = (2ħ/(c·r))·√(E·ΔE). η is computed independently in
//! SI and in eV-based units as a cross-check on the unit handling.

use std::collections::HashSet;
use std::io::Read;

use serde::Serialize;

use crate::constants::PhysicalConstants;
use crate::cosmology::{Cosmology, CosmologyError};

/// One catalog row: fluences in erg/cm² (uncertainty absolute, not
/// pre-scaled), redshift dimensionless.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrbRecord {
    pub name: String,
    pub fluence_erg_cm2: f64,
    pub dfluence_erg_cm2: f64,
    pub z: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DetectorConfig {
    /// Cross-sectional detection area, m².
    pub area_m2: f64,
    /// Informational band label.
    pub band: String,
}

impl Default for DetectorConfig {
    fn default() -> Self {
        Self { area_m2: 1.0, band: "BATSE 50-300 keV".to_owned() }
    }
}

/// Per-row bound. η is carried in SI momentum² and in (eV/c)²; the two are
/// computed along independent unit paths and must agree to 1e-12 relative.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EtaBound {
    pub name: String,
    pub r_m: f64,
    pub eta_si: f64,
    pub eta_ev_c2: f64,
    pub sqrt_eta_ev_per_c: f64,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CatalogError {
    #[error("catalog read failed: {0}")]
    Io(String),
    #[error("catalog parse error at line {line}: {message}")]
    Parse { line: u64, message: String },
    #[error("invalid value for {field} at line {line}: {message}")]
    Validation { line: u64, field: &'static str, message: String },
    #[error("duplicate burst name {name:?} at line {line}")]
    DuplicateName { line: u64, name: String },
    #[error("bad catalog header: expected `name,fluence_erg_cm2,dfluence_erg_cm2,z`, got `{0}`")]
    Header(String),
}

/// The 14-row catalog the crate ships with.
pub const BUNDLED_CATALOG: &str = include_str!("../data/grb_catalog.csv");

const EXPECTED_HEADER: [&str; 4] = ["name", "fluence_erg_cm2", "dfluence_erg_cm2", "z"];

/// Parses and validates a CSV catalog. `#` lines are comments; records keep
/// file order; names must be unique.
pub fn parse_catalog<R: Read>(source: R) -> Result<Vec<GrbRecord>, CatalogError> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(source);

    let headers = reader.headers().map_err(csv_error)?.clone();
    if headers.iter().collect::<Vec<_>>() != EXPECTED_HEADER {
        return Err(CatalogError::Header(headers.iter().collect::<Vec<_>>().join(",")));
    }

    let mut seen = HashSet::new();
    let mut records = Vec::new();
    for row in reader.records() {
        let row = row.map_err(csv_error)?;
        let line = row.position().map_or(0, |p| p.line());
        if row.len() != 4 {
            return Err(CatalogError::Parse {
                line,
                message: format!("expected 4 fields, got {}", row.len()),
            });
        }
        let number = |idx: usize, field: &'static str| -> Result<f64, CatalogError> {
            row[idx].parse::<f64>().map_err(|e| CatalogError::Validation {
                line,
                field,
                message: format!("{e} (got {:?})", &row[idx]),
            })
        };
        let name = row[0].to_owned();
        if name.is_empty() {
            return Err(CatalogError::Validation {
                line,
                field: "name",
                message: "must be nonempty".to_owned(),
            });
        }
        let fluence = number(1, "fluence_erg_cm2")?;
        let dfluence = number(2, "dfluence_erg_cm2")?;
        let z = number(3, "z")?;
        let positive = |field: &'static str, v: f64, strict: bool| -> Result<(), CatalogError> {
            if !v.is_finite() || (strict && v <= 0.0) || (!strict && v < 0.0) {
                Err(CatalogError::Validation {
                    line,
                    field,
                    message: format!(
                        "must be finite and {} (got {v})",
                        if strict { "positive" } else { "nonnegative" }
                    ),
                })
            } else {
                Ok(())
            }
        };
        positive("fluence_erg_cm2", fluence, true)?;
        positive("dfluence_erg_cm2", dfluence, false)?;
        positive("z", z, true)?;
        if !seen.insert(name.clone()) {
            return Err(CatalogError::DuplicateName { line, name });
        }
        records.push(GrbRecord { name, fluence_erg_cm2: fluence, dfluence_erg_cm2: dfluence, z });
    }
    Ok(records)
}

fn csv_error(e: csv::Error) -> CatalogError {
    let line = e.position().map_or(0, |p| p.line());
    match e.kind() {
        csv::ErrorKind::Io(io) => CatalogError::Io(io.to_string()),
        _ => CatalogError::Parse { line, message: e.to_string() },
    }
}

const ERG_PER_CM2_TO_J_PER_M2: f64 = 1e-3;

/// η bound for one burst: E = F·A, ΔE = ΔF·A, r from the light-travel
/// distance, η = (2ħ/(c·r))√(E·ΔE).
pub fn eta_bound(
    record: &GrbRecord,
    det: &DetectorConfig,
    cosmo: &Cosmology,
    constants: &PhysicalConstants,
    rtol: f64,
) -> Result<EtaBound, CosmologyError> {
    let r_m = cosmo.light_travel_distance(record.z, constants, rtol)?;
    let e_j = record.fluence_erg_cm2 * ERG_PER_CM2_TO_J_PER_M2 * det.area_m2;
    let de_j = record.dfluence_erg_cm2 * ERG_PER_CM2_TO_J_PER_M2 * det.area_m2;
    let eta_si = 2.0 * constants.hbar / (constants.c * r_m) * (e_j * de_j).sqrt();
    // Independent route in eV-based units: energies in eV, ħ in eV·s,
    // momentum in eV/c.
    let hbar_ev_s = constants.hbar / constants.ev_j;
    let e_ev = e_j / constants.ev_j;
    let de_ev = de_j / constants.ev_j;
    let eta_ev_c2 = 2.0 * hbar_ev_s * constants.c / r_m * (e_ev * de_ev).sqrt();
    let mut warnings = Vec::new();
    if de_j == 0.0 {
        warnings.push("zero fluence uncertainty: bound degenerates to 0".to_owned());
    }
    Ok(EtaBound {
        name: record.name.clone(),
        r_m,
        eta_si,
        eta_ev_c2,
        sqrt_eta_ev_per_c: eta_ev_c2.sqrt(),
        warnings,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RowResult {
    pub name: String,
    pub z: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<EtaBound>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// min / max / median of √η (eV/c) over the rows that produced a bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Summary {
    pub min_sqrt_eta_ev_per_c: f64,
    pub max_sqrt_eta_ev_per_c: f64,
    pub median_sqrt_eta_ev_per_c: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PipelineReport {
    pub rows: Vec<RowResult>,
    pub summary: Option<Summary>,
    /// Number of rows that failed; the CLI maps failed > 0 to a partial-
    /// failure exit code.
    pub failed: usize,
}

/// Runs every row, never aborting on per-row failures; output order equals
/// input order.
pub fn run_pipeline(
    records: &[GrbRecord],
    det: &DetectorConfig,
    cosmo: &Cosmology,
    constants: &PhysicalConstants,
    rtol: f64,
) -> PipelineReport {
    let mut rows = Vec::with_capacity(records.len());
    let mut sqrt_etas = Vec::new();
    let mut failed = 0;
    for record in records {
        match eta_bound(record, det, cosmo, constants, rtol) {
            Ok(bound) => {
                sqrt_etas.push(bound.sqrt_eta_ev_per_c);
                rows.push(RowResult {
                    name: record.name.clone(),
                    z: record.z,
                    bound: Some(bound),
                    error: None,
                });
            }
            Err(err) => {
                failed += 1;
                rows.push(RowResult {
                    name: record.name.clone(),
                    z: record.z,
                    bound: None,
                    error: Some(err.to_string()),
                });
            }
        }
    }
    let summary = if sqrt_etas.is_empty() {
        None
    } else {
        sqrt_etas.sort_by(f64::total_cmp);
        let n = sqrt_etas.len();
        let median = if n % 2 == 1 {
            sqrt_etas[n / 2]
        } else {
            0.5 * (sqrt_etas[n / 2 - 1] + sqrt_etas[n / 2])
        };
        Some(Summary {
            min_sqrt_eta_ev_per_c: sqrt_etas[0],
            max_sqrt_eta_ev_per_c: sqrt_etas[n - 1],
            median_sqrt_eta_ev_per_c: median,
        })
    };
    PipelineReport { rows, summary, failed }
}
