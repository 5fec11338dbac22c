use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use noncompact::config::parse_grid;
use noncompact::output::{curve_to_csv, curve_to_json, curve_to_svg};
use noncompact::verify::suite_names;
use noncompact::{run_suite, Config, OutputFormat, VerifyContext};
use noncompact_core::{
    alpha_k, beta_m, characteristic, chi_k, hull_distance, measure_exact, modulus_curve, parse_set,
    truncate, unit_ball_measure, Error, MeasureKind, StructuredSet,
};

/// Measures of noncompactness and moduli of noncompact convexity on l_p.
#[derive(Parser)]
#[command(name = "noncompact", version)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// key = value settings applied before any flag.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Exponent of l_p.
    #[arg(long, global = true)]
    p: Option<f64>,
    /// Truncation size (estimator witnesses; points fed to oracles).
    #[arg(long, global = true)]
    trunc: Option<usize>,
    /// Estimator tolerance.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Threshold below which a modulus counts as zero.
    #[arg(long, global = true)]
    zero_tol: Option<f64>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// csv, json, svg or text.
    #[arg(long, global = true)]
    format: Option<String>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Exact measure of a set expression, optionally against a finite oracle.
    Measure {
        expr: String,
        #[arg(long)]
        kind: MeasureKind,
        /// `k=N` (alpha, chi) or `m=N` (beta).
        #[arg(long)]
        oracle: Option<String>,
    },
    /// Distance from the origin to the convex hull of a (truncated) set.
    HullDist { expr: String },
    /// Sample a modulus curve.
    Modulus {
        #[arg(long)]
        kind: MeasureKind,
        /// Restrict to minimal sets.
        #[arg(long)]
        prime: bool,
        /// start:stop:step
        #[arg(long)]
        grid: Option<String>,
    },
    /// Estimate the characteristic of a modulus.
    Characteristic {
        #[arg(long)]
        kind: MeasureKind,
        #[arg(long)]
        prime: bool,
        #[arg(long)]
        grid: Option<String>,
    },
    /// Run verification checks.
    Verify {
        /// `all` or one check name.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Leave wall times out so identical runs give identical reports.
        #[arg(long)]
        no_runtime: bool,
    },
}

/// Exit statuses.
const CHECK_FAILED: u8 = 1;
const USAGE: u8 = 2;
const NUMERIC: u8 = 3;

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NonConvergence { .. } => NUMERIC,
            _ => USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: USAGE,
        message: message.into(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn load_config(c: &Common) -> Result<Config, Failure> {
    let mut cfg = match &c.config {
        Some(path) => Config::from_file(path).map_err(|e| usage(e.to_string()))?,
        None => Config::default(),
    };
    let mut set = |key: &str, value: Option<String>| -> Result<(), Failure> {
        match value {
            Some(v) => cfg.set(key, &v).map_err(|e| usage(e.to_string())),
            None => Ok(()),
        }
    };
    set("p", c.p.map(|v| v.to_string()))?;
    set("truncation", c.trunc.map(|v| v.to_string()))?;
    set("tol", c.tol.map(|v| v.to_string()))?;
    set("zero_tol", c.zero_tol.map(|v| v.to_string()))?;
    set("seed", c.seed.map(|v| v.to_string()))?;
    set("format", c.format.clone())?;
    Ok(cfg)
}

/// Fixed-point with trailing zeros trimmed: `1.41421356`, `0`.
fn fmt8(x: f64) -> String {
    let s = format!("{x:.8}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let cfg = load_config(&cli.common)?;
    let space = cfg.space()?;
    let out = &cli.common.out;
    match cli.command {
        Command::Measure { expr, kind, oracle } => {
            let set = parse_expr(&expr)?;
            let exact = measure_exact(&set, kind, &space);
            let mut text = format!("exact={}\n", fmt8(exact));
            if let Some(spec) = oracle {
                let (key, value) = spec
                    .split_once('=')
                    .ok_or_else(|| usage(format!("--oracle expects k=N or m=N, got '{spec}'")))?;
                let n: usize = value
                    .trim()
                    .parse()
                    .map_err(|_| usage(format!("--oracle: '{value}' is not a count")))?;
                let points = if cfg.truncation_explicit {
                    cfg.truncation
                } else {
                    cfg.budget.max_points
                };
                let finite = truncate(&set, points, &space)?;
                let value = match (kind, key.trim()) {
                    (MeasureKind::Alpha, "k") => alpha_k(&finite, n, &space, &cfg.budget)?,
                    (MeasureKind::Chi, "k") => chi_k(&finite, n, &space, &cfg.budget)?,
                    (MeasureKind::Beta, "m") => beta_m(&finite, n, &space, &cfg.budget)?,
                    _ => {
                        return Err(usage(format!(
                            "--oracle for {kind} takes {}=N",
                            if kind == MeasureKind::Beta { "m" } else { "k" }
                        )))
                    }
                };
                text += &format!(
                    "oracle={} ({key}={n}, {points} points)\ndifference={}\n",
                    fmt8(value),
                    fmt8((exact - value).abs())
                );
            }
            emit(out, &text)?;
            Ok(0)
        }
        Command::HullDist { expr } => {
            let set = parse_expr(&expr)?;
            let finite = match &set {
                StructuredSet::Finite(f) => f.clone(),
                _ => truncate(&set, cfg.truncation, &space)?,
            };
            let r = hull_distance(&finite, &space, cfg.tol.min(1e-8))?;
            let text = if cfg.format == OutputFormat::Json {
                serde_json::to_string_pretty(&serde_json::json!({
                    "value": r.value,
                    "dual_bound": r.dual_bound,
                    "gap": r.gap,
                    "iterations": r.iterations,
                    "points": finite.len(),
                }))
                .expect("json")
                    + "\n"
            } else {
                format!(
                    "distance={}\ndual_bound={}\ngap={:.3e}\niterations={}\npoints={}\n",
                    fmt8(r.value),
                    fmt8(r.dual_bound),
                    r.gap,
                    r.iterations,
                    finite.len()
                )
            };
            emit(out, &text)?;
            Ok(0)
        }
        Command::Modulus { kind, prime, grid } => {
            let curve = curve_for(&cfg, kind, prime, grid.as_deref())?;
            let text = match cfg.format {
                OutputFormat::Csv | OutputFormat::Text => curve_to_csv(&curve),
                OutputFormat::Json => curve_to_json(&curve) + "\n",
                OutputFormat::Svg => curve_to_svg(&curve),
            };
            emit(out, &text)?;
            for pt in curve.failures() {
                eprintln!(
                    "warning: eps = {}: {}",
                    pt.epsilon,
                    pt.error.as_deref().unwrap_or("failed")
                );
            }
            Ok(0)
        }
        Command::Characteristic { kind, prime, grid } => {
            let curve = curve_for(&cfg, kind, prime, grid.as_deref())?;
            let c = characteristic(&curve, cfg.zero_tol);
            let text = if cfg.format == OutputFormat::Json {
                serde_json::to_string_pretty(&c).expect("json") + "\n"
            } else {
                format!("characteristic={}\n", fmt8(c.value))
            };
            emit(out, &text)?;
            Ok(0)
        }
        Command::Verify { suite, no_runtime } => {
            let ctx = VerifyContext::from_config(&cfg)?;
            let report = run_suite(&ctx, &suite).ok_or_else(|| {
                usage(format!(
                    "unknown suite '{suite}' (expected all, {})",
                    suite_names().collect::<Vec<_>>().join(", ")
                ))
            })?;
            let report = if no_runtime {
                report.without_runtime()
            } else {
                report
            };
            let text = match cfg.format {
                OutputFormat::Text => report.to_text(),
                _ => report.to_json() + "\n",
            };
            emit(out, &text)?;
            let errored = report
                .checks
                .iter()
                .any(|c| c.details.starts_with("error:"));
            Ok(match (report.all_passed(), errored) {
                (true, _) => 0,
                (false, true) => NUMERIC,
                (false, false) => CHECK_FAILED,
            })
        }
    }
}

/// Parses a set expression; parse errors point a caret at the offending byte.
fn parse_expr(expr: &str) -> Result<StructuredSet, Failure> {
    parse_set(expr).map_err(|e| {
        let mut f = Failure::from(e.clone());
        if let Error::Parse { position, .. } = e {
            f.message += &format!("\n  {expr}\n  {}^", " ".repeat(position));
        }
        f
    })
}

fn curve_for(
    cfg: &Config,
    kind: MeasureKind,
    prime: bool,
    grid: Option<&str>,
) -> Result<noncompact_core::ModulusCurve, Failure> {
    let space = cfg.space()?;
    let grid = match grid {
        Some(g) => parse_grid(g).map_err(|e| usage(e.to_string()))?,
        None => cfg.grid_or_default(unit_ball_measure(kind, &space)),
    };
    Ok(modulus_curve(kind, &space, &grid, prime, &cfg.estimator())?)
}
