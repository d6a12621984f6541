//! The `spinorlab` command-line harness: verification suites, parameter
//! tables and norm estimates, reported as JSON or CSV.

pub mod config;
pub mod mapspec;
pub mod report;
pub mod suites;
pub mod tables;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use spinorlab::{schatten, PExponent};

use config::{OutputFormat, RunConfig};
use report::{CheckResult, Report};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "spinorlab", version, about = "Verification harness for spin-system norm computations")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Default)]
pub struct GlobalArgs {
    /// `key = value` config file; flags override it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub restarts: Option<usize>,
    #[arg(long = "max-iter", global = true)]
    pub max_iter: Option<usize>,
    /// Tolerance for exact checks.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Tolerance for optimizer-based checks.
    #[arg(long = "tol-opt", global = true)]
    pub tol_opt: Option<f64>,
    #[arg(long = "dimension-cap", global = true)]
    pub dimension_cap: Option<usize>,
    /// json or csv.
    #[arg(long, global = true)]
    pub format: Option<String>,
    /// Report path; stdout when omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run a verification suite: fock, clifford, tau, theorem7, projections, witnesses or all.
    Verify {
        #[arg(value_name = "SUITE")]
        suite_pos: Option<String>,
        #[arg(long)]
        suite: Option<String>,
    },
    /// Emit a parameter table: theorem7_grid, tau_cb, rad1_sweep or witness_rect_sweep.
    Table {
        kind: String,
        /// Integer range such as `1..4` or `1,2`.
        #[arg(long)]
        n: Option<String>,
        /// Comma list of exponents.
        #[arg(long)]
        p: Option<String>,
        /// Comma list of t values.
        #[arg(long)]
        t: Option<String>,
        /// Comma list of witness angles.
        #[arg(long)]
        theta: Option<String>,
        /// Comma list of complex coefficients for rad1_sweep.
        #[arg(long)]
        alpha: Option<String>,
    },
    /// Lower-bound the level-k norm of a map given in a map spec file.
    Estimate {
        spec: PathBuf,
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Exponent; `inf` is accepted.
        #[arg(long)]
        p: f64,
    },
}

/// Resolves the run configuration: defaults, then `SPINORLAB_SEED`, then the
/// config file, then flags.
pub fn resolve_config(g: &GlobalArgs) -> Result<RunConfig, String> {
    let mut cfg = RunConfig::from_env().map_err(|e| e.to_string())?;
    if let Some(path) = &g.config {
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        cfg.apply_file_contents(&text)
            .map_err(|e| format!("{}: {e}", path.display()))?;
    }
    if let Some(v) = g.seed {
        cfg.seed = v;
    }
    if let Some(v) = g.restarts {
        cfg.restarts = v;
    }
    if let Some(v) = g.max_iter {
        cfg.max_iter = v;
    }
    if let Some(v) = g.tol {
        cfg.tol_exact = v;
    }
    if let Some(v) = g.tol_opt {
        cfg.tol_opt = v;
    }
    if let Some(v) = g.dimension_cap {
        cfg.dimension_cap = v;
    }
    if let Some(v) = &g.format {
        cfg.output_format = v.parse::<OutputFormat>()?;
    }
    if let Some(v) = &g.out {
        cfg.output_path = Some(v.clone());
    }
    cfg.validate().map_err(|e| e.to_string())?;
    Ok(cfg)
}

fn witness_path(out: &Path) -> PathBuf {
    let mut name = out.file_stem().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(".witness.json");
    out.with_file_name(name)
}

fn estimate(spec: &Path, k: usize, p: f64, cfg: &RunConfig) -> Result<CheckResult, String> {
    let text = std::fs::read_to_string(spec).map_err(|e| format!("cannot read {}: {e}", spec.display()))?;
    let map = mapspec::parse_map_spec(&text).map_err(|e| format!("{}:{e}", spec.display()))?;
    let pe = PExponent::new(p).map_err(|e| e.to_string())?;
    if k == 0 {
        return Err("--k must be positive".into());
    }
    let est = schatten::level_norm_lower_bound(&map, k, pe, &cfg.optimizer()).map_err(|e| e.to_string())?;
    let witness: Vec<[f64; 2]> = est.witness.iter().flatten().map(|z| [z.re, z.im]).collect();
    let file_name = spec.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let mut row = CheckResult::lower_bound("estimate", est.value)
        .param("spec", file_name)
        .param("k", k)
        .param("p", if p.is_infinite() { json!("inf") } else { json!(p) })
        .param("method", est.method.clone())
        .param("iterations", est.iterations)
        .param("stalled", est.stalled);
    match &cfg.output_path {
        Some(out) => {
            let path = witness_path(out);
            let body = serde_json::to_vec_pretty(&json!({ "coordinates": witness, "value": est.value }))
                .map_err(|e| e.to_string())?;
            std::fs::write(&path, body).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            row.witness_ref = path.file_name().map(|n| n.to_string_lossy().into_owned());
        }
        None => row = row.param("witness", json!(witness)),
    }
    Ok(row)
}

/// Runs the CLI on the given arguments and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    let cfg = match resolve_config(&cli.global) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let results = match cli.command {
        Command::Verify { suite_pos, suite } => {
            let name = suite.or(suite_pos).unwrap_or_else(|| "all".into());
            suites::run_suite(&name, &cfg).map_err(|e| e.to_string())
        }
        Command::Table { kind, n, p, t, theta, alpha } => {
            let ranges = tables::TableRanges { n, p, t, theta, alpha };
            tables::run_table(&kind, &ranges, &cfg).map_err(|e| e.to_string())
        }
        Command::Estimate { spec, k, p } => estimate(&spec, k, p, &cfg).map(|r| vec![r]),
    };
    let results = match results {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let report = Report::new(cfg, results);
    if let Err(e) = report.emit() {
        eprintln!("error: {e}");
        return EXIT_USAGE;
    }
    for f in report.failures() {
        eprintln!(
            "FAIL {}: computed {:?}, expected {:?} ({} tol {:?}){}",
            f.id,
            f.computed,
            f.expected,
            f.relation,
            f.tolerance,
            f.note.as_deref().map(|n| format!(": {n}")).unwrap_or_default()
        );
    }
    if report.all_passed() {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}
