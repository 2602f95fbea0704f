//! Subcommands. Each returns its stdout text or a [`CliError`] carrying the
//! exit status.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use hn_core::engine::{classical_hn, hn_filtration, hn_polygon, polygon_slopes, EngineError, Mode, Trust};
use hn_core::instances::{build_cyclic, build_degree_rank, build_eigen, build_eigen_from_matrix, build_norm_k_demo};
use hn_core::oracle::{certify_theorems_in, EnumerationBudget, OracleError};
use hn_core::slope::{validate_bounded, SlopeError};
use hn_core::{PosetValue, SlopeFunction};
use serde::Deserialize;
use thiserror::Error;

use crate::instance::{
    labels_spec, lambda_spec, load_instance, to_lists, InputError, Instance, InstanceFile, RationalText, SlopeSpec,
};
use crate::output::{
    certification_json, hasse_dot, hn_report_json, hn_report_text, polygon_csv, validation_json, violation_text,
};

pub const EXIT_INPUT: u8 = 1;
pub const EXIT_REFUSED: u8 = 2;
pub const EXIT_VALIDATION: u8 = 3;
pub const EXIT_BUDGET: u8 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("refused: {0}")]
    Refused(String),
    /// The report is still printed.
    #[error("{message}")]
    Validation { report: String, message: String },
    #[error("budget exceeded: {0}")]
    Budget(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Refused(_) => EXIT_REFUSED,
            CliError::Validation { .. } => EXIT_VALIDATION,
            CliError::Budget(_) => EXIT_BUDGET,
        }
    }
}

impl From<InputError> for CliError {
    fn from(e: InputError) -> Self {
        CliError::Input(e.to_string())
    }
}

fn slope_failure(e: SlopeError) -> CliError {
    match e {
        SlopeError::TooManyPairs { .. } => CliError::Budget(e.to_string()),
        e => CliError::Input(e.to_string()),
    }
}

fn oracle_failure(e: OracleError) -> CliError {
    match e {
        OracleError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
        e => CliError::Input(e.to_string()),
    }
}

#[derive(Debug, Parser)]
#[command(name = "hnf", version, about = "Harder-Narasimhan filtrations of slope functions on set families")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the HN filtration of an instance.
    Compute(ComputeArgs),
    /// Check the slope inequality, or the strong one with --strong.
    Validate(ValidateArgs),
    /// Certify the theorems on an instance by exhaustive enumeration.
    Oracle(OracleArgs),
    /// Print the HN polygon of an instance with degree/rank labels.
    Polygon(PolygonArgs),
    /// Build and analyse a bundled example.
    #[command(subcommand)]
    Demo(Demo),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Auto,
    Total,
    Partial,
}

impl ModeArg {
    fn resolve(self, sf: &SlopeFunction) -> Mode {
        match self {
            ModeArg::Auto => Mode::for_poset(sf.poset()),
            ModeArg::Total => Mode::Total,
            ModeArg::Partial => Mode::Partial,
        }
    }
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    pub path: PathBuf,
    #[arg(long, value_enum, default_value = "auto")]
    pub mode: ModeArg,
    /// Run even when the strong slope inequality fails.
    #[arg(long)]
    pub trusted: bool,
    /// Replace the slope by its strengthening first.
    #[arg(long)]
    pub strengthen: bool,
    #[arg(long)]
    pub json: bool,
    /// Write the Hasse diagram with the HN chain highlighted.
    #[arg(long, value_name = "OUT")]
    pub dot: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    pub path: PathBuf,
    #[arg(long)]
    pub strong: bool,
    /// Refuse when more pair combinations than this would be examined.
    #[arg(long, value_name = "N")]
    pub max_pairs: Option<u64>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    pub path: PathBuf,
    /// Maximum number of filtrations to enumerate.
    #[arg(long, value_name = "N", default_value_t = 1_000_000)]
    pub budget: u64,
    #[arg(long, value_name = "N", default_value_t = 64)]
    pub max_members: usize,
    #[arg(long, value_enum, default_value = "auto")]
    pub mode: ModeArg,
    /// Replace the slope by its strengthening first.
    #[arg(long)]
    pub strengthen: bool,
}

#[derive(Debug, Args)]
pub struct PolygonArgs {
    pub path: PathBuf,
    /// Write the vertices here instead of stdout.
    #[arg(long, value_name = "OUT")]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EmitArg {
    /// Write the instance file for this demo.
    #[arg(long, value_name = "OUT")]
    pub emit: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Demo {
    /// Subgroup lattice of Z/n with the prime-support slope.
    Zn {
        n: usize,
        #[command(flatten)]
        emit: EmitArg,
    },
    /// Spectral lattice from eigenvalues or a symmetric matrix.
    Eigen {
        #[arg(
            long,
            value_delimiter = ',',
            allow_negative_numbers = true,
            conflicts_with = "matrix",
            required_unless_present = "matrix"
        )]
        eigs: Vec<f64>,
        /// CSV file with one matrix row per line.
        #[arg(long, value_name = "FILE")]
        matrix: Option<PathBuf>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[command(flatten)]
        emit: EmitArg,
    },
    /// The lattice Z^2 with the norm ||.||_k.
    Normk {
        #[arg(long)]
        k: f64,
        #[command(flatten)]
        emit: EmitArg,
    },
    /// Classical degree/rank instance from a JSON file.
    Degrank {
        path: PathBuf,
        #[command(flatten)]
        emit: EmitArg,
    },
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Instance, CliError> {
    Ok(load_instance(&read(path)?)?)
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

pub fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Compute(a) => compute(&a),
        Command::Validate(a) => validate(&a),
        Command::Oracle(a) => oracle(&a),
        Command::Polygon(a) => polygon(&a),
        Command::Demo(d) => demo(d),
    }
}

fn compute_slope(sf: &SlopeFunction, a: &ComputeArgs) -> Result<String, CliError> {
    let mode = a.mode.resolve(sf);
    let trust = if a.trusted { Trust::Trusted } else { Trust::Verify };
    let report = hn_filtration(sf, mode, trust).map_err(|e| match e {
        EngineError::StrongInequalityFails(v) => CliError::Refused(format!(
            "the strong slope inequality fails: {}; rerun with --trusted to compute anyway",
            violation_text(sf, &v)
        )),
        EngineError::Slope(e) => slope_failure(e),
        e => CliError::Input(e.to_string()),
    })?;
    if let Some(path) = &a.dot {
        write(path, &hasse_dot(sf.family(), report.filtration.members()))?;
    }
    let text = if a.json { pretty(&hn_report_json(sf, &report)) } else { hn_report_text(sf, &report) };
    if report.check.passed() {
        Ok(text)
    } else {
        Err(CliError::Validation { report: text, message: "the computed filtration is not a HN filtration".into() })
    }
}

fn maybe_strengthen(sf: SlopeFunction, strengthen: bool) -> Result<SlopeFunction, CliError> {
    if !strengthen {
        return Ok(sf);
    }
    sf.strengthen().map_err(|e| match e {
        SlopeError::WeakInequalityFails(v) => {
            CliError::Refused(format!("cannot strengthen, the slope inequality fails: {}", violation_text(&sf, &v)))
        }
        SlopeError::SupUnavailable => CliError::Refused("cannot strengthen, the value poset has no suprema".into()),
        e => CliError::Input(e.to_string()),
    })
}

fn compute(a: &ComputeArgs) -> Result<String, CliError> {
    compute_slope(&maybe_strengthen(load(&a.path)?.slope, a.strengthen)?, a)
}

fn validate(a: &ValidateArgs) -> Result<String, CliError> {
    let inst = load(&a.path)?;
    let sf = &inst.slope;
    let report = validate_bounded(sf, a.strong, a.max_pairs.unwrap_or(u64::MAX)).map_err(slope_failure)?;
    let name = if a.strong { "strong slope inequality" } else { "slope inequality" };
    let text = if a.json {
        pretty(&validation_json(sf, a.strong, &report))
    } else {
        let mut t = format!(
            "{name}: {} ({} checks, {} violations)\n",
            if report.passed() { "pass" } else { "fail" },
            report.checked,
            report.violation_count
        );
        for v in &report.violations {
            t.push_str(&format!("  {}\n", violation_text(sf, v)));
        }
        t
    };
    if report.passed() {
        Ok(text)
    } else {
        Err(CliError::Validation { report: text, message: format!("the {name} fails") })
    }
}

fn certify(sf: &SlopeFunction, mode: Mode, budget: EnumerationBudget) -> Result<String, CliError> {
    let report = certify_theorems_in(sf, mode, budget).map_err(oracle_failure)?;
    let text = pretty(&certification_json(sf, &report));
    if report.passed() {
        Ok(text)
    } else {
        Err(CliError::Validation { report: text, message: "a theorem suite failed with its hypotheses met".into() })
    }
}

fn oracle(a: &OracleArgs) -> Result<String, CliError> {
    let sf = maybe_strengthen(load(&a.path)?.slope, a.strengthen)?;
    let budget = EnumerationBudget { max_members: a.max_members, max_filtrations: a.budget };
    certify(&sf, a.mode.resolve(&sf), budget)
}

fn polygon(a: &PolygonArgs) -> Result<String, CliError> {
    let inst = load(&a.path)?;
    let labels =
        inst.labels.as_ref().ok_or_else(|| CliError::Input("labels: the instance has no deg/rk labels".into()))?;
    let csv = polygon_csv(&hn_polygon(&inst.family, labels));
    match &a.csv {
        Some(path) => {
            write(path, &csv)?;
            Ok(String::new())
        }
        None => Ok(csv),
    }
}

fn emit(file: &InstanceFile, target: &EmitArg) -> Result<(), CliError> {
    if let Some(path) = &target.emit {
        let mut text = serde_json::to_string_pretty(file).expect("json");
        text.push('\n');
        write(path, &text)?;
    }
    Ok(())
}

fn defaults(path: PathBuf) -> ComputeArgs {
    ComputeArgs { path, mode: ModeArg::Auto, trusted: false, strengthen: false, json: false, dot: None }
}

fn demo(d: Demo) -> Result<String, CliError> {
    match d {
        Demo::Zn { n, emit: target } => {
            let z = build_cyclic(n).map_err(|e| CliError::Input(e.to_string()))?;
            let fam = z.family();
            let file = InstanceFile {
                ground_size: n,
                gamma: to_lists(fam),
                lambda: lambda_spec(z.slope.poset()),
                slope: SlopeSpec::PrimeSupport,
                labels: None,
            };
            emit(&file, &target)?;
            let mut out = format!("Z/{n}: {} subgroups, primes {:?}\n", fam.len(), z.primes);
            out += &compute_slope(&z.slope, &defaults(PathBuf::new()))?;
            let cert =
                certify_theorems_in(&z.slope, Mode::Partial, EnumerationBudget::default()).map_err(oracle_failure)?;
            out += &format!("HN filtrations: {}\n", cert.hn_count());
            Ok(out)
        }
        Demo::Eigen { eigs, matrix, tol, emit: target } => {
            let inst = match &matrix {
                Some(path) => build_eigen_from_matrix(&read_matrix(path)?, tol),
                None => build_eigen(&eigs),
            }
            .map_err(|e| CliError::Input(e.to_string()))?;
            let file = InstanceFile {
                ground_size: inst.groups.len(),
                gamma: to_lists(inst.family()),
                lambda: lambda_spec(inst.slope.poset()),
                slope: SlopeSpec::Eigen { eigenvalues: inst.groups.iter().map(|g| g.value).collect() },
                labels: None,
            };
            emit(&file, &target)?;
            let groups: Vec<String> =
                inst.groups.iter().map(|g| format!("{} (x{})", g.value, g.multiplicity)).collect();
            let mut out = format!("eigenvalue groups: {}\n", groups.join(", "));
            let report =
                hn_filtration(&inst.slope, Mode::Total, Trust::Verify).map_err(|e| CliError::Input(e.to_string()))?;
            let dims: Vec<String> = report
                .filtration
                .step_pairs()
                .map(|(a, b)| (inst.dimension(b) - inst.dimension(a)).to_string())
                .collect();
            out += &hn_report_text(&inst.slope, &report);
            out += &format!("subquotient dimensions: {}\n", dims.join(", "));
            Ok(out)
        }
        Demo::Normk { k, emit: target } => {
            let d = build_norm_k_demo(k).map_err(|e| CliError::Input(e.to_string()))?;
            let file = InstanceFile {
                ground_size: 2,
                gamma: to_lists(&d.family),
                lambda: lambda_spec(&hn_core::ValuePoset::exact_reals()),
                slope: SlopeSpec::DegreeRank,
                labels: Some(crate::instance::LabelsSpec {
                    deg: vec![
                        RationalText::Text("0".into()),
                        RationalText::Text("0".into()),
                        RationalText::Number(d.deg_total),
                    ],
                    rk: vec![0, 1, 2],
                }),
            };
            emit(&file, &target)?;
            let hull = hn_polygon(&d.family, &d.labels);
            let last = polygon_slopes(&hull).last().map(|s| num_traits::ToPrimitive::to_f64(s).unwrap_or(f64::NAN));
            let mut out = String::new();
            out += &format!("k = {k}\n");
            out += &format!("|e1| = {}, |e2| = {}\n", d.e1_norm, d.e2_norm);
            out += &format!("deg_total = {:.12}\n", d.deg_total);
            out += &format!("quotient norm (numeric) = {:.12}\n", d.quotient_norm);
            out += &format!("quotient degree = {:.12}\n", d.quotient_degree);
            out += &format!("last polygon slope = {:.12}\n", last.unwrap_or(f64::NAN));
            out += &format!("last slope - quotient degree = {:.12}\n", d.mismatch());
            let vectors: Vec<String> = d.smallest_vectors.iter().map(|(a, b)| format!("({a},{b})")).collect();
            out += &format!(
                "smallest nonzero vectors with |a|,|b| <= {}: {} of norm {}\n",
                hn_core::instances::SMALLEST_VECTOR_GRID,
                vectors.join(" "),
                d.smallest_norm
            );
            out += &polygon_csv(&hull);
            Ok(out)
        }
        Demo::Degrank { path, emit: target } => {
            let spec: DegRankFile =
                serde_path_to_error::deserialize(&mut serde_json::Deserializer::from_str(&read(&path)?))
                    .map_err(|e| CliError::Input(format!("{}: {}", e.path(), e.inner())))?;
            let mut deg = Vec::new();
            for (i, d) in spec.deg.iter().enumerate() {
                deg.push(d.to_rational().map_err(|m| CliError::Input(format!("deg[{i}]: {m}")))?);
            }
            let (fam, labels) = build_degree_rank(spec.ground_size, &spec.gamma, deg, spec.rk)
                .map_err(|e| CliError::Input(e.to_string()))?;
            let file = InstanceFile {
                ground_size: spec.ground_size,
                gamma: spec.gamma.clone(),
                lambda: lambda_spec(&hn_core::ValuePoset::exact_reals()),
                slope: SlopeSpec::DegreeRank,
                labels: Some(labels_spec(&labels)),
            };
            emit(&file, &target)?;
            let classical = classical_hn(&fam, &labels).map_err(|e| CliError::Input(e.to_string()))?;
            let sf = SlopeFunction::degree_rank(fam.clone(), labels.clone()).map_err(slope_failure)?;
            let strong = sf.strengthen().map_err(slope_failure)?;
            let report =
                hn_filtration(&strong, Mode::Total, Trust::Verify).map_err(|e| CliError::Input(e.to_string()))?;
            let render = |v: &PosetValue| strong.poset().render(v);
            let chain = |ms: &[hn_core::MemberId]| {
                ms.iter().map(|&m| fam.subset(m).to_string()).collect::<Vec<_>>().join(" < ")
            };
            let classical_slopes: Vec<String> =
                classical.step_slopes.iter().map(|s| render(&PosetValue::Rational(s.clone()))).collect();
            let engine_slopes: Vec<String> = report.step_slopes.iter().map(render).collect();
            let agree = classical.filtration == report.filtration && classical_slopes == engine_slopes;
            let mut out = String::new();
            out += &format!(
                "classical: {} slopes {}\n",
                chain(classical.filtration.members()),
                classical_slopes.join(", ")
            );
            out += &format!("engine:    {} slopes {}\n", chain(report.filtration.members()), engine_slopes.join(", "));
            out += &format!("agree: {agree}\n");
            out += &polygon_csv(&hn_polygon(&fam, &labels));
            if agree {
                Ok(out)
            } else {
                Err(CliError::Validation { report: out, message: "classical and engine filtrations differ".into() })
            }
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct DegRankFile {
    ground_size: usize,
    gamma: Vec<Vec<usize>>,
    deg: Vec<RationalText>,
    rk: Vec<u64>,
}

fn read_matrix(path: &Path) -> Result<Vec<Vec<f64>>, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let mut rows = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let row: Result<Vec<f64>, _> = rec.iter().map(str::parse::<f64>).collect();
        rows.push(row.map_err(|e| CliError::Input(format!("{} row {}: {e}", path.display(), i + 1)))?);
    }
    Ok(rows)
}
