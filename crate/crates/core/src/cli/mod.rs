//! The `monogenic` command-line front end.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 for usage
//! and configuration errors.

mod checks;
mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{build_algebra, AlgebraKind, AlgebraSpec};
use crate::error::{Error, Result};

pub use checks::{registry, Command, MAX_DEGREE_CAP};
pub use report::{CheckRecord, ConvergenceRow, Measured, Report, Status, Tolerance, SCHEMA_VERSION};

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "MONOGENIC_OUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "monogenic", version, about = "Verification suites for monogenic function theory")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Algebra axioms, quadratic cone and spec serialization.
    CheckAlgebra(CommonArgs),
    /// Exact-track identities for Fueter polynomials, CK-extensions and the kernel.
    VerifyMonogenic(CommonArgs),
    /// Quadrature suites for the integral formulas.
    Reconstruct(CommonArgs),
    /// Taylor partial sums of a shifted Cauchy kernel.
    TaylorDemo(CommonArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// complex, quaternion, octonion, clifford or dual-quaternion.
    #[arg(long, default_value = "octonion")]
    pub kind: String,
    /// Frame size. Octonions default to 7 for check-algebra and
    /// verify-monogenic and to 2 for reconstruct and taylor-demo.
    #[arg(long)]
    pub m: Option<usize>,
    /// Algebra spec JSON file; overrides --kind and --m.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    /// Comma-separated subset of checks to run.
    #[arg(long, value_delimiter = ',')]
    pub checks: Vec<String>,
    #[arg(long, default_value_t = 32)]
    pub resolution: usize,
    #[arg(long, default_value_t = 0.05)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Largest total degree (at most 6). Defaults to 4, or 6 for taylor-demo.
    #[arg(long)]
    pub degree_cap: Option<u32>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Output file; defaults to $MONOGENIC_OUT_DIR/<command>.<format> or stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Report runtimes as 0 so reports are byte-identical across runs.
    #[arg(long)]
    pub no_timing: bool,
}

/// Resolved configuration echoed into every report.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteConfig {
    pub algebra: String,
    pub spec_file: Option<String>,
    pub m: usize,
    pub checks: Vec<String>,
    pub resolution: usize,
    pub epsilon: f64,
    pub seed: u64,
    pub degree_cap: u32,
    pub format: Format,
    pub output_path: Option<String>,
}

/// Everything a check needs.
pub struct Context {
    pub spec: Arc<AlgebraSpec>,
    pub config: SuiteConfig,
    cache: checks::Cache,
}

impl Context {
    pub fn new(spec: Arc<AlgebraSpec>, config: SuiteConfig) -> Self {
        Self { spec, config, cache: checks::Cache::default() }
    }

    fn provenance(&self) -> String {
        let c = &self.config;
        format!("{} m={} resolution={} epsilon={} seed={}", c.algebra, c.m, c.resolution, c.epsilon, c.seed)
    }
}

fn load_spec(command: Command, args: &CommonArgs) -> Result<Arc<AlgebraSpec>> {
    if let Some(path) = &args.spec {
        let text = std::fs::read_to_string(path)?;
        // check-algebra reports axiom failures itself instead of rejecting
        return match command {
            Command::CheckAlgebra => Ok(Arc::new(AlgebraSpec::from_json_unchecked(&text)?)),
            _ => AlgebraSpec::from_json(&text),
        };
    }
    let numeric = matches!(command, Command::Reconstruct | Command::TaylorDemo);
    let m = match (args.m, args.kind.to_ascii_lowercase().replace('-', "_").as_str()) {
        (None, "octonion") if numeric => Some(2),
        (m, _) => m,
    };
    build_algebra(&AlgebraKind::parse(&args.kind, m)?)
}

/// Builds the context for a subcommand, validating check names and caps.
pub fn prepare(command: Command, args: &CommonArgs) -> Result<Context> {
    let spec = load_spec(command, args)?;
    let known = registry(command);
    for name in &args.checks {
        if !known.iter().any(|c| c.name == name) {
            let names: Vec<_> = known.iter().map(|c| c.name).collect();
            return Err(Error::InvalidParameter(format!("unknown check `{name}`; expected one of {}", names.join(", "))));
        }
    }
    let degree_cap = args.degree_cap.unwrap_or(if command == Command::TaylorDemo { 6 } else { 4 });
    if degree_cap > MAX_DEGREE_CAP {
        return Err(Error::DegreeTooLarge { cap: degree_cap, max: MAX_DEGREE_CAP });
    }
    if args.resolution < 4 {
        return Err(Error::InvalidParameter(format!("resolution must be at least 4, got {}", args.resolution)));
    }
    if !(args.epsilon > 0.0 && args.epsilon < 0.5) {
        return Err(Error::InvalidParameter(format!("epsilon must lie in (0, 0.5), got {}", args.epsilon)));
    }
    let config = SuiteConfig {
        algebra: spec.name().to_string(),
        spec_file: args.spec.as_ref().map(|p| p.display().to_string()),
        m: spec.m(),
        checks: args.checks.clone(),
        resolution: args.resolution,
        epsilon: args.epsilon,
        seed: args.seed,
        degree_cap,
        format: args.format,
        output_path: args.out.as_ref().map(|p| p.display().to_string()),
    };
    Ok(Context::new(spec, config))
}

/// Runs the selected checks in parallel and assembles a name-ordered report.
pub fn run_suite(command: Command, ctx: &Context, timing: bool) -> Result<Report> {
    let selected: Vec<_> = registry(command)
        .into_iter()
        .filter(|c| ctx.config.checks.is_empty() || ctx.config.checks.iter().any(|n| n == c.name))
        .collect();
    let mut records: Vec<CheckRecord> = selected
        .par_iter()
        .map(|check| {
            let start = Instant::now();
            let outcome = (check.run)(ctx);
            let runtime_ms = if timing { start.elapsed().as_secs_f64() * 1e3 } else { 0.0 };
            checks::to_record(outcome, check.name, runtime_ms, ctx.provenance())
        })
        .collect();
    records.sort_by(|a, b| a.name.cmp(&b.name));
    let convergence = match command {
        Command::Reconstruct => checks::convergence_table(ctx)?,
        _ => Vec::new(),
    };
    let all_passed = records.iter().all(|r| r.status != Status::Fail);
    Ok(Report {
        schema: SCHEMA_VERSION,
        command: command.name().to_string(),
        algebra: ctx.config.algebra.clone(),
        m: ctx.config.m,
        config: serde_json::to_value(&ctx.config)?,
        records,
        convergence,
        all_passed,
    })
}

fn output_path(command: Command, args: &CommonArgs) -> Option<PathBuf> {
    if let Some(p) = &args.out {
        return Some(p.clone());
    }
    let dir = std::env::var_os(OUT_DIR_ENV)?;
    let ext = match args.format {
        Format::Json => "json",
        Format::Csv => "csv",
    };
    Some(PathBuf::from(dir).join(format!("{}.{ext}", command.name())))
}

fn write_report(report: &Report, command: Command, args: &CommonArgs) -> Result<()> {
    let mut buf = Vec::new();
    match args.format {
        Format::Json => report.write_json(&mut buf)?,
        Format::Csv => report.write_csv(&mut buf)?,
    }
    match output_path(command, args) {
        Some(path) => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent)?;
            }
            std::fs::write(&path, &buf)?;
            println!(
                "{}: {} checks, {} failed, report written to {}",
                command.name(),
                report.records.len(),
                report.failures(),
                path.display()
            );
        }
        None => std::io::stdout().write_all(&buf)?,
    }
    Ok(())
}

/// Parses `args` and runs the command; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let (command, common) = match &cli.command {
        CliCommand::CheckAlgebra(a) => (Command::CheckAlgebra, a),
        CliCommand::VerifyMonogenic(a) => (Command::VerifyMonogenic, a),
        CliCommand::Reconstruct(a) => (Command::Reconstruct, a),
        CliCommand::TaylorDemo(a) => (Command::TaylorDemo, a),
    };
    let ctx = match prepare(command, common) {
        Ok(ctx) => ctx,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let report = match run_suite(command, &ctx, !common.no_timing) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    if let Err(e) = write_report(&report, command, common) {
        eprintln!("error: {e}");
        return 2;
    }
    if report.all_passed {
        0
    } else {
        1
    }
}
