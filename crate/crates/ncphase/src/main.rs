use std::error::Error;
use std::fs::File;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ncphase::constants::{PhysicalConstants, CODATA, ROUNDED};
use ncphase::cosmology::Cosmology;
use ncphase::dispersion::{DispersionMode, ParticleSpec, SphericalState};
use ncphase::grb::{parse_catalog, run_pipeline, DetectorConfig, PipelineReport, BUNDLED_CATALOG};
use ncphase::params::NCParams;
use ncphase::report::{build_dispersion_report, build_geometry_report, StateInput};

#[derive(Parser)]
#[command(
    name = "ncphase",
    version,
    about = "Deformed phase-space geometry, modified photon dispersion, and burst-catalog momentum-scale bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Symplectic form, complex structure, compatible metric, and volume report (JSON)
    Geometry(GeometryArgs),
    /// Deformed dispersion relation for one state (JSON)
    Dispersion(DispersionArgs),
    /// Light-travel distance for one redshift
    Distance(DistanceArgs),
    /// Per-burst momentum-scale bounds from a catalog (table, CSV, or JSON)
    Bound(BoundArgs),
}

#[derive(Args)]
struct GeometryArgs {
    /// Position-position deformation, m^2
    #[arg(long, default_value_t = 0.0)]
    theta: f64,
    /// Momentum-momentum deformation, (kg m/s)^2
    #[arg(long, default_value_t = 0.0)]
    eta: f64,
    /// Action scale, J s
    #[arg(long, default_value_t = 1.0)]
    hbar: f64,
    /// Spatial dimension (2 or 3)
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Extend by the time-energy pair
    #[arg(long)]
    extended: bool,
    /// Also report the commutative limit at theta = alpha * eta
    #[arg(long)]
    limit_alpha: Option<f64>,
}

#[derive(Args)]
struct DispersionArgs {
    /// Particle mass, kg (0 = photon)
    #[arg(long, default_value_t = 0.0)]
    mass: f64,
    /// Speed of light, m/s
    #[arg(long, default_value_t = CODATA.c)]
    c: f64,
    /// Momentum-momentum deformation, (kg m/s)^2
    #[arg(long, default_value_t = 0.0)]
    eta: f64,
    /// Position-position deformation, m^2 (carried in the report; the dispersion uses eta only)
    #[arg(long, default_value_t = 0.0)]
    theta: f64,
    /// Action scale, J s
    #[arg(long, default_value_t = CODATA.hbar)]
    hbar: f64,
    /// Cartesian position (comma-separated, 2 or 3 components)
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, requires = "p", conflicts_with = "spherical")]
    x: Option<Vec<f64>>,
    /// Cartesian momentum (comma-separated, matches --x)
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, requires = "x", conflicts_with = "spherical")]
    p: Option<Vec<f64>>,
    /// Spherical state r,theta,phi,p_r,p_theta,p_phi (massless only)
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    spherical: Option<Vec<f64>>,
    /// Spherical formula variant
    #[arg(long, value_enum, default_value_t = ModeChoice::Full)]
    mode: ModeChoice,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeChoice {
    Full,
    Radial,
}

impl From<ModeChoice> for DispersionMode {
    fn from(m: ModeChoice) -> Self {
        match m {
            ModeChoice::Full => DispersionMode::Full,
            ModeChoice::Radial => DispersionMode::Radial,
        }
    }
}

#[derive(Args)]
struct CosmoArgs {
    /// Hubble constant, km/s/Mpc
    #[arg(long, default_value_t = 70.0)]
    h0: f64,
    #[arg(long, default_value_t = 0.27)]
    omega_m: f64,
    #[arg(long, default_value_t = 0.73)]
    omega_lambda: f64,
    #[arg(long, default_value_t = 0.0)]
    omega_r: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    omega_k: f64,
}

impl CosmoArgs {
    fn build(&self) -> Result<Cosmology, Box<dyn Error>> {
        Ok(Cosmology::new(self.h0, self.omega_m, self.omega_lambda, self.omega_r, self.omega_k)?)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstantsChoice {
    /// Full-precision constants
    Codata,
    /// Same set with c rounded to 3e8 m/s
    PaperRounded,
}

impl ConstantsChoice {
    fn get(self) -> PhysicalConstants {
        match self {
            ConstantsChoice::Codata => CODATA,
            ConstantsChoice::PaperRounded => ROUNDED,
        }
    }

    fn label(self) -> &'static str {
        match self {
            ConstantsChoice::Codata => "codata",
            ConstantsChoice::PaperRounded => "paper-rounded",
        }
    }
}

#[derive(Args)]
struct DistanceArgs {
    /// Redshift
    #[arg(long)]
    z: f64,
    #[command(flatten)]
    cosmo: CosmoArgs,
    /// Relative quadrature tolerance, in (0, 1e-4]
    #[arg(long, default_value_t = 1e-10)]
    rtol: f64,
    #[arg(long, value_enum, default_value_t = ConstantsChoice::Codata)]
    constants: ConstantsChoice,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Args)]
struct BoundArgs {
    /// Catalog CSV (header name,fluence_erg_cm2,dfluence_erg_cm2,z); the
    /// bundled 14-row catalog if omitted
    #[arg(long)]
    catalog: Option<PathBuf>,
    /// Detector cross-section, m^2
    #[arg(long, default_value_t = 1.0)]
    area_m2: f64,
    #[command(flatten)]
    cosmo: CosmoArgs,
    /// Relative quadrature tolerance, in (0, 1e-4]
    #[arg(long, default_value_t = 1e-10)]
    rtol: f64,
    #[arg(long, value_enum, default_value_t = ConstantsChoice::Codata)]
    constants: ConstantsChoice,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, Box<dyn Error>> {
    match command {
        Command::Geometry(args) => {
            let params = NCParams::new(args.theta, args.eta, args.hbar)?;
            let report =
                build_geometry_report(&params, args.n, args.extended, args.limit_alpha)?;
            println!("{}", serde_json::to_string_pretty(&report)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Dispersion(args) => run_dispersion(args),
        Command::Distance(args) => {
            let cosmo = args.cosmo.build()?;
            let constants = args.constants.get();
            let d = cosmo.light_travel_distance(args.z, &constants, args.rtol)?;
            println!("{d} m");
            println!("{} Mpc", d / constants.mpc_m);
            Ok(ExitCode::SUCCESS)
        }
        Command::Bound(args) => run_bound(args),
    }
}

fn run_dispersion(args: DispersionArgs) -> Result<ExitCode, Box<dyn Error>> {
    let spec = ParticleSpec::new(args.mass, args.c)?;
    let params = NCParams::new(args.theta, args.eta, args.hbar)?;
    let state = if let Some(s) = args.spherical {
        if s.len() != 6 {
            return Err(format!(
                "--spherical needs r,theta,phi,p_r,p_theta,p_phi (6 values, got {})",
                s.len()
            )
            .into());
        }
        let state = SphericalState::new(s[0], s[1], s[2], s[3], s[4], s[5])?;
        StateInput::Spherical { state, mode: args.mode.into() }
    } else {
        match (args.x, args.p) {
            (Some(x), Some(p)) => StateInput::Cartesian { x, p },
            _ => return Err("provide either --x and --p, or --spherical".into()),
        }
    };
    let report = build_dispersion_report(&spec, &params, state)?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(ExitCode::SUCCESS)
}

/// JSON payload of the bound subcommand: one flat object per row, the
/// summary, and the configuration everything was computed under.
#[derive(serde::Serialize)]
struct BoundReport<'a> {
    rows: Vec<BoundRow<'a>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    summary: Option<BoundSummary>,
    config: BoundConfig<'a>,
}

#[derive(serde::Serialize)]
struct BoundRow<'a> {
    name: &'a str,
    z: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    r_m: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    eta_si: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sqrt_eta_ev_per_c: Option<f64>,
    warnings: &'a [String],
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<&'a str>,
}

#[derive(serde::Serialize)]
struct BoundSummary {
    min: f64,
    max: f64,
    median: f64,
}

#[derive(serde::Serialize)]
struct BoundConfig<'a> {
    catalog: &'a str,
    detector: &'a DetectorConfig,
    cosmology: &'a Cosmology,
    rtol: f64,
    constants_preset: &'a str,
    constants: &'a PhysicalConstants,
}

fn run_bound(args: BoundArgs) -> Result<ExitCode, Box<dyn Error>> {
    if !(args.area_m2.is_finite() && args.area_m2 > 0.0) {
        return Err(format!("detector area must be positive, got {}", args.area_m2).into());
    }
    let (records, catalog_label) = match &args.catalog {
        Some(path) => {
            let file = File::open(path)
                .map_err(|e| format!("cannot open catalog {}: {e}", path.display()))?;
            (parse_catalog(file)?, path.display().to_string())
        }
        None => (parse_catalog(BUNDLED_CATALOG.as_bytes())?, "bundled".to_owned()),
    };
    let det = DetectorConfig { area_m2: args.area_m2, ..DetectorConfig::default() };
    let cosmo = args.cosmo.build()?;
    let constants = args.constants.get();
    let report = run_pipeline(&records, &det, &cosmo, &constants, args.rtol);

    match args.format {
        Format::Json => {
            const NO_WARNINGS: &[String] = &[];
            let rows = report
                .rows
                .iter()
                .map(|row| BoundRow {
                    name: &row.name,
                    z: row.z,
                    r_m: row.bound.as_ref().map(|b| b.r_m),
                    eta_si: row.bound.as_ref().map(|b| b.eta_si),
                    sqrt_eta_ev_per_c: row.bound.as_ref().map(|b| b.sqrt_eta_ev_per_c),
                    warnings: row.bound.as_ref().map_or(NO_WARNINGS, |b| &b.warnings),
                    error: row.error.as_deref(),
                })
                .collect();
            let payload = BoundReport {
                rows,
                summary: report.summary.map(|s| BoundSummary {
                    min: s.min_sqrt_eta_ev_per_c,
                    max: s.max_sqrt_eta_ev_per_c,
                    median: s.median_sqrt_eta_ev_per_c,
                }),
                config: BoundConfig {
                    catalog: &catalog_label,
                    detector: &det,
                    cosmology: &cosmo,
                    rtol: args.rtol,
                    constants_preset: args.constants.label(),
                    constants: &constants,
                },
            };
            println!("{}", serde_json::to_string_pretty(&payload)?);
        }
        Format::Csv => print_csv(&report)?,
        Format::Table => print_table(&report),
    }

    if report.failed > 0 {
        eprintln!("{} of {} rows failed", report.failed, report.rows.len());
        Ok(ExitCode::from(3))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}

fn print_csv(report: &PipelineReport) -> Result<(), Box<dyn Error>> {
    let mut writer = csv::Writer::from_writer(std::io::stdout().lock());
    writer.write_record(["name", "z", "r_m", "eta_si", "eta_ev_c2", "sqrt_eta_ev_per_c", "note"])?;
    for row in &report.rows {
        match (&row.bound, &row.error) {
            (Some(b), _) => writer.write_record([
                row.name.as_str(),
                &row.z.to_string(),
                &b.r_m.to_string(),
                &b.eta_si.to_string(),
                &b.eta_ev_c2.to_string(),
                &b.sqrt_eta_ev_per_c.to_string(),
                &b.warnings.join("; "),
            ])?,
            (None, err) => writer.write_record([
                row.name.as_str(),
                &row.z.to_string(),
                "",
                "",
                "",
                "",
                err.as_deref().unwrap_or("failed"),
            ])?,
        }
    }
    writer.flush()?;
    if let Some(s) = &report.summary {
        let mut out = std::io::stdout().lock();
        writeln!(
            out,
            "# summary sqrt_eta_ev_per_c: min={} median={} max={}",
            s.min_sqrt_eta_ev_per_c, s.median_sqrt_eta_ev_per_c, s.max_sqrt_eta_ev_per_c
        )?;
    }
    Ok(())
}

fn print_table(report: &PipelineReport) {
    println!(
        "{:<10} {:>8} {:>13} {:>13} {:>16}  {}",
        "name", "z", "r [m]", "eta [SI]", "sqrt(eta)[eV/c]", "note"
    );
    for row in &report.rows {
        match (&row.bound, &row.error) {
            (Some(b), _) => println!(
                "{:<10} {:>8} {:>13.5e} {:>13.5e} {:>16.5e}  {}",
                row.name,
                row.z,
                b.r_m,
                b.eta_si,
                b.sqrt_eta_ev_per_c,
                b.warnings.join("; ")
            ),
            (None, err) => println!(
                "{:<10} {:>8} {:>13} {:>13} {:>16}  {}",
                row.name,
                row.z,
                "-",
                "-",
                "-",
                err.as_deref().unwrap_or("failed")
            ),
        }
    }
    if let Some(s) = &report.summary {
        println!(
            "\nsummary sqrt(eta) [eV/c]: min {:.4e}   median {:.4e}   max {:.4e}",
            s.min_sqrt_eta_ev_per_c, s.median_sqrt_eta_ev_per_c, s.max_sqrt_eta_ev_per_c
        );
    }
}
