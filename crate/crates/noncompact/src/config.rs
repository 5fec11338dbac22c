//! Run configuration: defaults, a `key = value` file, then flag overrides.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use noncompact_core::{EstimatorConfig, Grid, OracleBudget, SpaceSpec};

/// Output format for curves and reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    /// Comma-separated values.
    #[default]
    Csv,
    /// JSON.
    Json,
    /// SVG line chart (curves only).
    Svg,
    /// Human-readable lines (reports only).
    Text,
}

impl FromStr for OutputFormat {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, ConfigError> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            "svg" => Ok(OutputFormat::Svg),
            "text" | "txt" => Ok(OutputFormat::Text),
            other => Err(ConfigError::new(format!(
                "unknown format '{other}' (expected csv, json, svg or text)"
            ))),
        }
    }
}

/// A bad configuration file or flag value.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError(String);

impl ConfigError {
    fn new(msg: impl Into<String>) -> Self {
        ConfigError(msg.into())
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

/// Everything a run needs.
#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub p: f64,
    /// Witness truncation size for the estimator.
    pub truncation: usize,
    /// Set when the truncation was given explicitly rather than defaulted.
    pub truncation_explicit: bool,
    pub tol: f64,
    pub zero_tol: f64,
    pub seed: u64,
    /// `None` means `[0, domain - 0.05]` in steps of 0.05.
    pub grid: Option<Grid>,
    pub format: OutputFormat,
    pub budget: OracleBudget,
    /// Random sets per property check in `verify`.
    pub trials: usize,
    /// Base grid step for `verify` sweeps.
    pub verify_step: f64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            p: 2.0,
            truncation: 256,
            truncation_explicit: false,
            tol: 1e-6,
            zero_tol: 1e-4,
            seed: 42,
            grid: None,
            format: OutputFormat::Csv,
            budget: OracleBudget::default(),
            trials: 200,
            verify_step: 0.02,
        }
    }
}

/// Parses `start:stop:step`.
pub fn parse_grid(s: &str) -> Result<Grid, ConfigError> {
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, c] = parts[..] else {
        return Err(ConfigError::new(format!(
            "grid '{s}' is not start:stop:step"
        )));
    };
    let num = |t: &str| {
        t.trim()
            .parse::<f64>()
            .map_err(|_| ConfigError::new(format!("grid '{s}': '{t}' is not a number")))
    };
    let grid = Grid::new(num(a)?, num(b)?, num(c)?);
    grid.points().map_err(|e| ConfigError::new(e.to_string()))?;
    Ok(grid)
}

fn parse_value<T: FromStr>(key: &str, value: &str) -> Result<T, ConfigError> {
    value
        .trim()
        .parse()
        .map_err(|_| ConfigError::new(format!("invalid value '{value}' for '{key}'")))
}

impl Config {
    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        match key.trim() {
            "p" => self.p = parse_value(key, value)?,
            "truncation" | "truncation_n" | "trunc" | "N" => {
                self.truncation = parse_value(key, value)?;
                self.truncation_explicit = true;
            }
            "tol" => self.tol = parse_value(key, value)?,
            "zero_tol" => self.zero_tol = parse_value(key, value)?,
            "seed" => self.seed = parse_value(key, value)?,
            "grid" => self.grid = Some(parse_grid(value)?),
            "format" | "output_format" => self.format = value.parse()?,
            "max_points" => self.budget.max_points = parse_value(key, value)?,
            "max_parts" => self.budget.max_parts = parse_value(key, value)?,
            "solver_tolerance" => self.budget.solver_tolerance = parse_value(key, value)?,
            "trials" => self.trials = parse_value(key, value)?,
            "verify_step" => self.verify_step = parse_value(key, value)?,
            other => return Err(ConfigError::new(format!("unknown config key '{other}'"))),
        }
        Ok(())
    }

    /// Parses `key = value` lines; `#` starts a comment.
    pub fn parse_file_contents(&mut self, text: &str) -> Result<(), ConfigError> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return Err(ConfigError::new(format!(
                    "line {}: expected key = value, got '{line}'",
                    lineno + 1
                )));
            };
            self.set(k, v)
                .map_err(|e| ConfigError::new(format!("line {}: {e}", lineno + 1)))?;
        }
        Ok(())
    }

    /// Defaults overlaid with the file at `path`.
    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError::new(format!("cannot read {}: {e}", path.display())))?;
        let mut cfg = Config::default();
        cfg.parse_file_contents(&text)?;
        Ok(cfg)
    }

    /// The ambient space, wide enough for the estimator's truncations.
    pub fn space(&self) -> noncompact_core::Result<SpaceSpec> {
        SpaceSpec::new(self.p, (self.truncation + 1).max(64))
    }

    pub fn estimator(&self) -> EstimatorConfig {
        EstimatorConfig::new(self.truncation, self.tol)
    }

    /// The configured grid, or the default one ending 0.05 before `domain_end`.
    pub fn grid_or_default(&self, domain_end: f64) -> Grid {
        self.grid.unwrap_or_else(|| {
            let stop = ((domain_end - 0.05) / 0.05 + 1e-9).floor() * 0.05;
            Grid::new(0.0, stop.max(0.0), 0.05)
        })
    }
}
