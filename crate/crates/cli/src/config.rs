//! Run configuration: defaults, `key = value` config files, the
//! `SPINORLAB_SEED` fallback and command-line overrides.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;
use spinorlab::OptimizerConfig;

pub const SEED_ENV: &str = "SPINORLAB_SEED";

/// Optimizer budget per level-norm search; `verify all` runs about twenty
/// such searches.
pub const DEFAULT_RESTARTS: usize = 16;
pub const DEFAULT_MAX_ITER: usize = 300;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            other => Err(format!("unknown output format `{other}` (expected json or csv)")),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Json => "json",
            Self::Csv => "csv",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub seed: u64,
    pub restarts: usize,
    pub max_iter: usize,
    pub tol_exact: f64,
    pub tol_opt: f64,
    pub dimension_cap: usize,
    pub output_format: OutputFormat,
    /// Not part of the report, so identical runs written to different files
    /// stay byte-identical.
    #[serde(skip)]
    pub output_path: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: OptimizerConfig::default().seed,
            restarts: DEFAULT_RESTARTS,
            max_iter: DEFAULT_MAX_ITER,
            tol_exact: 1e-10,
            tol_opt: 1e-6,
            dimension_cap: spinorlab::linalg::DEFAULT_DIMENSION_CAP,
            output_format: OutputFormat::Json,
            output_path: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for ConfigError {}

fn parse_value<T: FromStr>(key: &str, value: &str, line: usize) -> Result<T, ConfigError> {
    value.parse().map_err(|_| ConfigError {
        line,
        message: format!("invalid value `{value}` for `{key}`"),
    })
}

impl RunConfig {
    /// Defaults with the seed taken from `SPINORLAB_SEED` when set.
    pub fn from_env() -> Result<Self, ConfigError> {
        let mut cfg = Self::default();
        if let Ok(v) = std::env::var(SEED_ENV) {
            cfg.seed = parse_value(SEED_ENV, v.trim(), 0)?;
        }
        Ok(cfg)
    }

    /// Applies a `key = value` config file. Blank lines and lines starting
    /// with `#` are ignored.
    pub fn apply_file_contents(&mut self, text: &str) -> Result<(), ConfigError> {
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.trim();
            if content.is_empty() || content.starts_with('#') {
                continue;
            }
            let (key, value) = content.split_once('=').ok_or_else(|| ConfigError {
                line,
                message: format!("expected `key = value`, found `{content}`"),
            })?;
            self.set(key.trim(), value.trim(), line)?;
        }
        self.validate()
    }

    pub fn set(&mut self, key: &str, value: &str, line: usize) -> Result<(), ConfigError> {
        match key {
            "seed" => self.seed = parse_value(key, value, line)?,
            "restarts" => self.restarts = parse_value(key, value, line)?,
            "max_iter" => self.max_iter = parse_value(key, value, line)?,
            "tol_exact" | "tol" => self.tol_exact = parse_value(key, value, line)?,
            "tol_opt" => self.tol_opt = parse_value(key, value, line)?,
            "dimension_cap" => self.dimension_cap = parse_value(key, value, line)?,
            "format" | "output_format" => {
                self.output_format = value.parse().map_err(|message| ConfigError { line, message })?
            }
            "out" | "output_path" => self.output_path = Some(PathBuf::from(value)),
            _ => {
                return Err(ConfigError {
                    line,
                    message: format!("unknown key `{key}`"),
                })
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let bad = |message: &str| {
            Err(ConfigError {
                line: 0,
                message: message.into(),
            })
        };
        if self.restarts == 0 || self.max_iter == 0 || self.dimension_cap == 0 {
            return bad("restarts, max_iter and dimension_cap must be positive");
        }
        if !(self.tol_exact > 0.0 && self.tol_opt > 0.0) {
            return bad("tolerances must be positive");
        }
        Ok(())
    }

    pub fn optimizer(&self) -> OptimizerConfig {
        OptimizerConfig {
            seed: self.seed,
            restarts: self.restarts,
            max_iter: self.max_iter,
            ..OptimizerConfig::default()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_parsing() {
        let mut cfg = RunConfig::default();
        cfg.apply_file_contents("# comment\nseed = 9\n\nrestarts=4\nformat = CSV\ntol_opt = 1e-5\n")
            .unwrap();
        assert_eq!(cfg.seed, 9);
        assert_eq!(cfg.restarts, 4);
        assert_eq!(cfg.output_format, OutputFormat::Csv);
        assert_eq!(cfg.tol_opt, 1e-5);

        let err = RunConfig::default().apply_file_contents("seed = 1\nbogus\n").unwrap_err();
        assert_eq!(err.line, 2);
        let err = RunConfig::default().apply_file_contents("colour = red").unwrap_err();
        assert!(err.message.contains("unknown key"));
        assert!(RunConfig::default().apply_file_contents("restarts = 0").is_err());
        assert!(RunConfig::default().apply_file_contents("seed = -1").is_err());
    }
}
