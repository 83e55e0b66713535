//! Command-line front end: argument parsing, dispatch, and exit codes.
//!
//! Output is a pure function of the parsed configuration, so identical
//! invocations produce byte-identical files.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::checks::{run_suite, SuiteOptions};
use crate::dispersion::{asymptotic_pair, two_layer_pair, ContainerGeometry, Stratification};
use crate::error::{Error, Result};
use crate::export::{csv_string, json_string, membrane_csv, Cell, OutputHeader};
use crate::inverse::{
    recover, synthesize_measurement, Candidate, ElevationSample, Measurement, MembraneData, RecoveryBranch,
    RecoveryOptions,
};
use crate::membrane::{membrane_spectrum, CrossSection, MembraneEigenvalue};
use crate::modes::{coefficients, rayleigh_two_layer, vertical_profile, PotentialPair};
use crate::spectrum::{enumerate_spectrum, weyl_count, Branch};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_PROPERTY_FAILURE: i32 = 15;

/// Process exit code for an error: 2 for configuration, 3 for validation,
/// 4 and up for solver outcomes.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Config(_) => EXIT_CONFIG,
        Error::InvalidParameter(_) | Error::PointOutsideDomain(..) | Error::Unsupported(_) | Error::OutOfRange { .. } => {
            EXIT_VALIDATION
        }
        Error::NotAnEigenvalue { .. } => 4,
        Error::ZeroDenominator => 5,
        Error::RankDeficient(_) => 6,
        Error::InfiniteDepth => 7,
        Error::AdmissibilityViolation { .. } => 8,
        Error::InconsistentRho { .. } => 9,
        Error::NoRoot { .. } => 10,
        Error::MultipleRoots { .. } => 11,
        Error::OutsideWindow(_) => 12,
        Error::NumericalFault(_) => 13,
        Error::Io(_) => 14,
    }
}

/// `error kind=<tag> code=<n> message=<json string>`
pub fn reason_line(kind: &str, code: i32, message: &str) -> String {
    format!("error kind={kind} code={code} message={}", serde_json::Value::String(message.to_string()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BranchChoice {
    /// Whichever eigenvalue is actually second smallest.
    Natural,
    Plus,
    Minus,
}

#[derive(Debug, Clone, Parser, Serialize)]
#[command(name = "sloshing", version, about = "Two-layer sloshing spectra and inverse recovery")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Container geometry as JSON; defaults to the square of side π, depth 1.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub geometry: Option<PathBuf>,

    /// Density ratio ρ₂/ρ₁ > 1.
    #[arg(long, global = true, default_value_t = 2.0)]
    pub rho: f64,

    /// Interface depth.
    #[arg(long, global = true, default_value_t = 0.5)]
    pub h: f64,

    #[arg(long, global = true, default_value_t = 10.0)]
    pub nu_max: f64,

    #[arg(long, global = true, default_value_t = 128)]
    pub quadrature_n: usize,

    #[arg(long, global = true, default_value_t = 2048)]
    pub scan_n: usize,

    #[arg(long, global = true, default_value_t = 1e-6)]
    pub class_tol: f64,

    #[arg(long, global = true, default_value_t = 1e-8)]
    pub consistency_tol: f64,

    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub out: Option<PathBuf>,

    /// Defaults to json for `inverse`, csv otherwise.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Seed for synthetic sample points.
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,

    /// Adds `ω = √(ν g)` columns.
    #[arg(long, global = true)]
    pub gravity: Option<f64>,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(tag = "name", rename_all = "lowercase")]
pub enum Command {
    /// Merged two-layer spectrum up to --nu-max with the counting function.
    Spectrum {
        /// Also write the membrane spectrum as CSV.
        #[arg(long)]
        #[serde(skip)]
        membrane_out: Option<PathBuf>,
    },
    /// Eigenvalue pairs per membrane level with their large-k ratios.
    Forward {
        #[arg(long, default_value_t = 10)]
        levels: usize,
        /// Also write a synthetic measurement file.
        #[arg(long)]
        #[serde(skip)]
        measurement_out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = BranchChoice::Natural)]
        branch: BranchChoice,
        #[arg(long, default_value_t = 24)]
        samples: usize,
    },
    /// Mode coefficients and Rayleigh-quotient checks.
    Modes {
        #[arg(long, default_value_t = 5)]
        levels: usize,
        /// Also write vertical profiles as CSV.
        #[arg(long)]
        #[serde(skip)]
        profile_out: Option<PathBuf>,
        #[arg(long, default_value_t = 101)]
        profile_samples: usize,
    },
    /// Recover (ρ, h) from a measurement file.
    Inverse {
        #[arg(long)]
        measurement: PathBuf,
    },
    /// Run the property suite.
    Check,
}

/// The configuration that determines the output, hashed into every header.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig<'a> {
    pub cli: &'a Cli,
    pub geometry: &'a ContainerGeometry,
    /// Contents of the input measurement, if any.
    pub measurement: Option<&'a Measurement>,
}

/// Everything a run produces.
#[derive(Debug, Clone, PartialEq)]
pub struct Execution {
    pub output: Option<String>,
    pub side_files: Vec<(PathBuf, String)>,
    pub status: i32,
    pub reason: Option<String>,
}

impl Execution {
    fn failed(e: &Error) -> Self {
        let code = exit_code(e);
        Execution { output: None, side_files: vec![], status: code, reason: Some(reason_line(e.kind(), code, &e.to_string())) }
    }
}

pub fn default_geometry() -> ContainerGeometry {
    ContainerGeometry { cross_section: CrossSection::Rectangle { side_a: PI, side_b: PI }, depth: crate::dispersion::Depth::Finite(1.0) }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}

pub fn load_geometry(path: Option<&Path>) -> Result<ContainerGeometry> {
    let g = match path {
        Some(p) => read_json::<ContainerGeometry>(p)?,
        None => default_geometry(),
    };
    g.validate()?;
    Ok(g)
}

/// Measurement document; the membrane block is derived from the geometry
/// when omitted.
#[derive(Debug, Clone, Deserialize)]
struct MeasurementFile {
    nu_1: f64,
    #[serde(alias = "nu_N")]
    nu_n: f64,
    geometry: ContainerGeometry,
    #[serde(default)]
    elevation: Vec<ElevationSample>,
    membrane: Option<MembraneData>,
}

pub fn load_measurement(path: &Path) -> Result<Measurement> {
    let f: MeasurementFile = read_json(path)?;
    f.geometry.validate()?;
    let membrane = match f.membrane {
        Some(m) => m,
        None => MembraneData::from_cross_section(&f.geometry.cross_section)?,
    };
    Ok(Measurement { nu_1: f.nu_1, nu_n: f.nu_n, geometry: f.geometry, elevation: f.elevation, membrane })
}

fn omega(nu: f64, gravity: Option<f64>) -> Option<f64> {
    gravity.map(|g| (nu * g).sqrt())
}

/// The lowest `n` membrane levels (fewer if a tabulated provider runs out).
pub fn first_levels(cs: &CrossSection, n: usize) -> Result<Vec<MembraneEigenvalue>> {
    let limit = cs.provider_limit();
    let mut bound = (8.0 * PI * (n + 1) as f64 / cs.area()).min(limit);
    loop {
        let levels = membrane_spectrum(cs, bound)?;
        if levels.len() >= n || bound >= limit {
            return Ok(levels.into_iter().take(n).collect());
        }
        bound = (bound * 2.0).min(limit);
    }
}

struct Table {
    columns: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

fn render<T: Serialize>(format: Format, header: &OutputHeader, table: &Table, json: &T) -> Result<String> {
    match format {
        Format::Csv => csv_string(header, &table.columns, &table.rows),
        Format::Json => json_string(header, json),
    }
}

fn tolerances(cli: &Cli) -> Vec<(&'static str, f64)> {
    vec![
        ("class_tol", cli.class_tol),
        ("consistency_tol", cli.consistency_tol),
        ("multiplicity_rel_tol", crate::membrane::MULTIPLICITY_REL_TOL),
        ("coupling_tol", crate::modes::COUPLING_TOL),
        ("bisection_h_tol_rel", 1e-12),
    ]
}

fn validate_cli(cli: &Cli) -> Result<()> {
    for (name, v) in [("class_tol", cli.class_tol), ("consistency_tol", cli.consistency_tol), ("nu_max", cli.nu_max)] {
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::InvalidParameter(format!("{name} must be positive, got {v}")));
        }
    }
    if let Some(g) = cli.gravity {
        if !(g > 0.0) || !g.is_finite() {
            return Err(Error::InvalidParameter(format!("gravity must be positive, got {g}")));
        }
    }
    Ok(())
}

fn recovery_options(cli: &Cli) -> RecoveryOptions {
    RecoveryOptions {
        class_tol: cli.class_tol,
        consistency_tol: cli.consistency_tol,
        scan_n: cli.scan_n,
        ..RecoveryOptions::default()
    }
}

#[derive(Serialize)]
struct SpectrumRow {
    nu: f64,
    branch: Branch,
    k_squared: f64,
    multiplicity: usize,
    count: usize,
    weyl_predicted: f64,
    omega: Option<f64>,
}

#[derive(Serialize)]
struct SpectrumDoc {
    nu_max: f64,
    truncated: bool,
    area: f64,
    entries: Vec<SpectrumRow>,
}

fn cmd_spectrum(cli: &Cli, geom: &ContainerGeometry, header: &OutputHeader, membrane_out: Option<&Path>) -> Result<Execution> {
    let strat = Stratification::new(cli.rho, cli.h)?;
    let spec = enumerate_spectrum(geom, &strat, cli.nu_max)?;
    let area = geom.cross_section.area();
    let mut count = 0;
    let rows: Vec<SpectrumRow> = spec
        .entries
        .iter()
        .map(|e| {
            count += e.multiplicity;
            SpectrumRow {
                nu: e.nu,
                branch: e.branch,
                k_squared: e.k_squared,
                multiplicity: e.multiplicity,
                count,
                weyl_predicted: weyl_count(area, strat.rho, e.nu),
                omega: omega(e.nu, cli.gravity),
            }
        })
        .collect();
    let mut columns = vec!["nu", "branch", "k_squared", "multiplicity", "count", "weyl_predicted"];
    if cli.gravity.is_some() {
        columns.push("omega");
    }
    let table_rows = rows
        .iter()
        .map(|r| {
            let mut row: Vec<Cell> = vec![
                r.nu.into(),
                r.branch.as_str().into(),
                r.k_squared.into(),
                r.multiplicity.into(),
                r.count.into(),
                r.weyl_predicted.into(),
            ];
            if let Some(w) = r.omega {
                row.push(w.into());
            }
            row
        })
        .collect();
    let doc = SpectrumDoc { nu_max: spec.nu_max, truncated: spec.truncated, area, entries: rows };
    let output = render(cli.format.unwrap_or(Format::Csv), header, &Table { columns, rows: table_rows }, &doc)?;

    let mut side_files = vec![];
    if let Some(path) = membrane_out {
        let slope_inv = (2.0 / (strat.rho - 1.0)).max(1.0);
        let k = cli.nu_max * slope_inv * crate::spectrum::K_BOUND_MARGIN;
        let levels = membrane_spectrum(&geom.cross_section, (k * k).min(geom.cross_section.provider_limit()))?;
        side_files.push((path.to_path_buf(), membrane_csv(header, &levels)?));
    }
    let reason = spec.truncated.then(|| "warning kind=truncated message=\"membrane provider exhausted\"".to_string());
    Ok(Execution { output: Some(output), side_files, status: EXIT_OK, reason })
}

#[derive(Serialize)]
struct ForwardRow {
    level: usize,
    k_squared: f64,
    multiplicity: usize,
    k: f64,
    nu_minus: f64,
    nu_plus: f64,
    nu_homogeneous: f64,
    ratio_minus: f64,
    ratio_plus: f64,
    limit_minus: f64,
    limit_plus: f64,
    omega_minus: Option<f64>,
    omega_plus: Option<f64>,
}

fn cmd_forward(
    cli: &Cli,
    geom: &ContainerGeometry,
    header: &OutputHeader,
    levels: usize,
    measurement_out: Option<&Path>,
    branch: BranchChoice,
    samples: usize,
) -> Result<Execution> {
    let strat = Stratification::new(cli.rho, cli.h)?;
    let (lim_m, lim_p) = asymptotic_pair(1.0, strat.rho)?;
    let mut rows = Vec::new();
    for (i, l) in first_levels(&geom.cross_section, levels)?.iter().enumerate() {
        let p = two_layer_pair(l.k(), geom, &strat)?;
        rows.push(ForwardRow {
            level: i + 1,
            k_squared: l.k_squared,
            multiplicity: l.multiplicity,
            k: l.k(),
            nu_minus: p.nu_minus,
            nu_plus: p.nu_plus,
            nu_homogeneous: p.nu_homogeneous(),
            ratio_minus: p.nu_minus / l.k(),
            ratio_plus: p.nu_plus / l.k(),
            limit_minus: lim_m,
            limit_plus: lim_p,
            omega_minus: omega(p.nu_minus, cli.gravity),
            omega_plus: omega(p.nu_plus, cli.gravity),
        });
    }
    let mut columns = vec![
        "level",
        "k_squared",
        "multiplicity",
        "k",
        "nu_minus",
        "nu_plus",
        "nu_homogeneous",
        "ratio_minus",
        "ratio_plus",
        "limit_minus",
        "limit_plus",
    ];
    if cli.gravity.is_some() {
        columns.extend(["omega_minus", "omega_plus"]);
    }
    let table_rows = rows
        .iter()
        .map(|r| {
            let mut row: Vec<Cell> = vec![
                r.level.into(),
                r.k_squared.into(),
                r.multiplicity.into(),
                r.k.into(),
                r.nu_minus.into(),
                r.nu_plus.into(),
                r.nu_homogeneous.into(),
                r.ratio_minus.into(),
                r.ratio_plus.into(),
                r.limit_minus.into(),
                r.limit_plus.into(),
            ];
            if let (Some(a), Some(b)) = (r.omega_minus, r.omega_plus) {
                row.extend([a.into(), b.into()]);
            }
            row
        })
        .collect();
    let output = render(cli.format.unwrap_or(Format::Csv), header, &Table { columns, rows: table_rows }, &rows)?;

    let mut side_files = vec![];
    if let Some(path) = measurement_out {
        let b = match branch {
            BranchChoice::Natural => None,
            BranchChoice::Plus => Some(RecoveryBranch::PlusSystem),
            BranchChoice::Minus => Some(RecoveryBranch::MinusSystem),
        };
        let m = synthesize_measurement(geom, &strat, b, samples, cli.seed)?;
        side_files.push((path.to_path_buf(), crate::export::to_json_17(&m)?));
    }
    Ok(Execution { output: Some(output), side_files, status: EXIT_OK, reason: None })
}

#[derive(Serialize)]
struct ModeRow {
    level: usize,
    mode_id: String,
    branch: Branch,
    nu: f64,
    a: f64,
    b: f64,
    c: f64,
    coupling_residual: f64,
    rayleigh: f64,
    relative_gap: f64,
}

fn cmd_modes(
    cli: &Cli,
    geom: &ContainerGeometry,
    header: &OutputHeader,
    levels: usize,
    profile_out: Option<&Path>,
    profile_samples: usize,
) -> Result<Execution> {
    let strat = Stratification::new(cli.rho, cli.h)?;
    let cs = &geom.cross_section;
    let mut rows = Vec::new();
    let mut profile_rows: Vec<Vec<Cell>> = Vec::new();
    for (i, l) in first_levels(cs, levels)?.iter().enumerate() {
        let id = *l.mode_ids.first().ok_or_else(|| Error::Unsupported("level without eigenfunctions".into()))?;
        let p = two_layer_pair(l.k(), geom, &strat)?;
        for (nu, branch) in [(p.nu_minus, Branch::Minus), (p.nu_plus, Branch::Plus)] {
            let c = coefficients(nu, l.k(), geom, &strat, 1.0)?;
            let pp = PotentialPair::eigenmode(cs, id, c)?;
            let r = rayleigh_two_layer(&pp, geom, &strat, cli.quadrature_n)?;
            rows.push(ModeRow {
                level: i + 1,
                mode_id: id.to_string(),
                branch,
                nu,
                a: c.a,
                b: c.b,
                c: c.c,
                coupling_residual: c.coupling_residual(),
                rayleigh: r,
                relative_gap: (r - nu).abs() / nu,
            });
            for (y, v) in vertical_profile(&c, profile_samples) {
                profile_rows.push(vec![(i + 1).into(), id.to_string().into(), branch.as_str().into(), y.into(), v.into()]);
            }
        }
    }
    let columns =
        vec!["level", "mode_id", "branch", "nu", "a", "b", "c", "coupling_residual", "rayleigh", "relative_gap"];
    let table_rows = rows
        .iter()
        .map(|r| {
            vec![
                r.level.into(),
                r.mode_id.clone().into(),
                r.branch.as_str().into(),
                r.nu.into(),
                r.a.into(),
                r.b.into(),
                r.c.into(),
                r.coupling_residual.into(),
                r.rayleigh.into(),
                r.relative_gap.into(),
            ]
        })
        .collect();
    let output = render(cli.format.unwrap_or(Format::Csv), header, &Table { columns, rows: table_rows }, &rows)?;
    let mut side_files = vec![];
    if let Some(path) = profile_out {
        let text = csv_string(header, &["level", "mode_id", "branch", "y", "value"], &profile_rows)?;
        side_files.push((path.to_path_buf(), text));
    }
    Ok(Execution { output: Some(output), side_files, status: EXIT_OK, reason: None })
}

#[derive(Serialize)]
struct InverseDoc {
    status: String,
    message: Option<String>,
    #[serde(flatten)]
    result: Option<crate::inverse::RecoveryResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error_candidates: Option<Vec<Candidate>>,
}

fn candidate_table(cands: &[Candidate]) -> Table {
    Table {
        columns: vec!["rho", "h", "rho_consistency", "forward_residual", "ordering_violation", "disagreement"],
        rows: cands
            .iter()
            .map(|c| {
                vec![
                    c.rho.into(),
                    c.h.into(),
                    c.rho_consistency.into(),
                    c.forward_residual.into(),
                    c.ordering_violation.into(),
                    c.disagreement.into(),
                ]
            })
            .collect(),
    }
}

fn cmd_inverse(cli: &Cli, m: &Measurement, header: &OutputHeader) -> Result<Execution> {
    let format = cli.format.unwrap_or(Format::Json);
    match recover(m, &recovery_options(cli)) {
        Ok(r) => {
            let table = candidate_table(&r.candidates);
            let doc = InverseDoc { status: "ok".into(), message: None, result: Some(r), error_candidates: None };
            Ok(Execution { output: Some(render(format, header, &table, &doc)?), side_files: vec![], status: EXIT_OK, reason: None })
        }
        Err(e) => {
            let cands = match &e {
                Error::MultipleRoots { candidates, .. } => candidates.clone(),
                Error::InconsistentRho { candidate, .. } => vec![**candidate],
                _ => vec![],
            };
            let code = exit_code(&e);
            let table = candidate_table(&cands);
            let doc = InverseDoc {
                status: e.kind().into(),
                message: Some(e.to_string()),
                result: None,
                error_candidates: Some(cands),
            };
            Ok(Execution {
                output: Some(render(format, header, &table, &doc)?),
                side_files: vec![],
                status: code,
                reason: Some(reason_line(e.kind(), code, &e.to_string())),
            })
        }
    }
}

fn cmd_check(cli: &Cli, header: &OutputHeader) -> Result<Execution> {
    let opts = SuiteOptions { quadrature_n: cli.quadrature_n, recovery: recovery_options(cli), seed: cli.seed };
    opts.recovery.validate()?;
    let reports = run_suite(&opts);
    let failed: Vec<&str> = reports.iter().filter(|r| !r.passed).map(|r| r.name.as_str()).collect();
    let table = Table {
        columns: vec!["criterion", "property", "passed", "detail"],
        rows: reports
            .iter()
            .map(|r| {
                vec![
                    (r.criterion as usize).into(),
                    r.name.clone().into(),
                    (if r.passed { "pass" } else { "fail" }).into(),
                    r.detail.clone().into(),
                ]
            })
            .collect(),
    };
    let output = render(cli.format.unwrap_or(Format::Csv), header, &table, &reports)?;
    let (status, reason) = if failed.is_empty() {
        (EXIT_OK, None)
    } else {
        let msg = format!("{} properties failed: {}", failed.len(), failed.join(","));
        (EXIT_PROPERTY_FAILURE, Some(reason_line("property-failure", EXIT_PROPERTY_FAILURE, &msg)))
    };
    Ok(Execution { output: Some(output), side_files: vec![], status, reason })
}

/// Run a parsed command. Errors become a status code and a reason line.
pub fn execute(cli: &Cli) -> Execution {
    let run = || -> Result<Execution> {
        validate_cli(cli)?;
        if let Command::Inverse { measurement } = &cli.command {
            let m = load_measurement(measurement)?;
            let config = RunConfig { cli, geometry: &m.geometry, measurement: Some(&m) };
            let header = OutputHeader::new(&config, &tolerances(cli))?;
            return cmd_inverse(cli, &m, &header);
        }
        let geom = load_geometry(cli.geometry.as_deref())?;
        let config = RunConfig { cli, geometry: &geom, measurement: None };
        let header = OutputHeader::new(&config, &tolerances(cli))?;
        match &cli.command {
            Command::Spectrum { membrane_out } => cmd_spectrum(cli, &geom, &header, membrane_out.as_deref()),
            Command::Forward { levels, measurement_out, branch, samples } => {
                cmd_forward(cli, &geom, &header, *levels, measurement_out.as_deref(), *branch, *samples)
            }
            Command::Modes { levels, profile_out, profile_samples } => {
                cmd_modes(cli, &geom, &header, *levels, profile_out.as_deref(), *profile_samples)
            }
            Command::Check => cmd_check(cli, &header),
            Command::Inverse { .. } => unreachable!("handled above"),
        }
    };
    run().unwrap_or_else(|e| Execution::failed(&e))
}

/// Write the outputs of `exec` and return the exit status.
pub fn emit(cli: &Cli, exec: &Execution) -> i32 {
    let write = |path: &Path, text: &str| -> Result<()> { std::fs::write(path, text).map_err(Error::from) };
    if let Some(text) = &exec.output {
        let res = match &cli.out {
            Some(path) => write(path, text),
            None => {
                print!("{text}");
                Ok(())
            }
        };
        if let Err(e) = res {
            eprintln!("{}", reason_line(e.kind(), exit_code(&e), &e.to_string()));
            return exit_code(&e);
        }
    }
    for (path, text) in &exec.side_files {
        if let Err(e) = write(path, text) {
            eprintln!("{}", reason_line(e.kind(), exit_code(&e), &e.to_string()));
            return exit_code(&e);
        }
    }
    if let Some(r) = &exec.reason {
        eprintln!("{r}");
    }
    exec.status
}

/// Parse `args` (program name first), run, write outputs; returns the exit
/// status. Parse failures print clap's message and return 2.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = e.print();
            if code != EXIT_OK {
                eprintln!("{}", reason_line("config-parse-error", code, e.kind().as_str().unwrap_or("invalid arguments")));
            }
            return code;
        }
    };
    let exec = execute(&cli);
    emit(&cli, &exec)
}
