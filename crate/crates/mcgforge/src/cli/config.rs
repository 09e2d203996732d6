use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Precision, DEFAULT_EPSILON, DEFAULT_PRECISION};
use crate::mcg::DEFAULT_DELTA;

pub const PRECISION_ENV: &str = "MCGFORGE_PRECISION";

/// Run configuration, echoed in every report header.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    /// Significant digits of printed bounds.
    pub precision: u32,
    pub epsilon: f64,
    /// Growth classification tolerance.
    pub delta: f64,
    pub iterations: usize,
    /// Curve enumeration bound for distance computations.
    pub weight_bound: u64,
    /// Search depth for graph distances.
    pub cap: u32,
    /// Universal constant for coset volume reports; absent by default.
    pub volume_constant: Option<f64>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            precision: DEFAULT_PRECISION,
            epsilon: DEFAULT_EPSILON,
            delta: DEFAULT_DELTA,
            iterations: 12,
            weight_bound: 12,
            cap: 6,
            volume_constant: None,
        }
    }
}

impl Config {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Invalid(format!("cannot read config {}: {e}", path.display())))?;
        let is_json = path.extension().is_some_and(|e| e == "json") || text.trim_start().starts_with('{');
        let cfg: Config = if is_json {
            serde_json::from_str(&text).map_err(|e| Error::Parse(format!("config: {e}")))?
        } else {
            toml::from_str(&text).map_err(|e| Error::Parse(format!("config: {e}")))?
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Defaults, then the config file, then `MCGFORGE_PRECISION`.
    pub fn resolve(path: Option<&Path>, env_precision: Option<&str>) -> Result<Self> {
        let mut cfg = match path {
            Some(p) => Config::from_file(p)?,
            None => Config::default(),
        };
        if let Some(v) = env_precision {
            cfg.precision = v
                .trim()
                .parse()
                .map_err(|_| Error::Invalid(format!("{PRECISION_ENV}={v:?} is not an integer")))?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        Precision::new(self.precision)?;
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(Error::Invalid("epsilon must be positive".into()));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::Invalid("delta must lie in (0, 1)".into()));
        }
        if self.iterations < 5 || self.weight_bound == 0 || self.cap == 0 {
            return Err(Error::Invalid("iterations >= 5, weight_bound >= 1 and cap >= 1 required".into()));
        }
        if self.volume_constant.is_some_and(|b| !(b > 0.0 && b.is_finite())) {
            return Err(Error::Invalid("volume_constant must be positive".into()));
        }
        Ok(())
    }

    pub fn precision(&self) -> Precision {
        Precision::new(self.precision).expect("validated")
    }
}
