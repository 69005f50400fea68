use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::asymptotics::{ExpectationMethod, ModelSpec};
use crate::error::{Error, Result};
use crate::montecarlo::{check_indicator_shape, McSettings};
use crate::weights::WeightLaw;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// `P(S > x, T > y)` over a grid of `(x, y)`.
    Joint,
    /// `P(S + T > z)` over a grid of `z`.
    Sum,
    /// Joint ruin of the discounted two-line risk model.
    RiskJoint,
    /// Total-surplus ruin of the risk model at `z = x + y`.
    RiskSum,
    /// Sampler and expansion diagnostics.
    Diag,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Csv,
    Markdown,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "markdown" | "md" => Ok(Format::Markdown),
            _ => Err(Error::Config(format!("unknown output format '{s}' (csv or markdown)"))),
        }
    }
}

/// Threshold grid: `points` for the joint and risk modes, `thresholds` for
/// the sum and diagnostic modes.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub thresholds: Vec<f64>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default)]
    pub format: Format,
    /// Written to standard output when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub mode: Mode,
    /// Also report the indicator-count estimators (joint and sum modes,
    /// two summands per line with iid uniform weights).
    #[serde(default)]
    pub indicator_estimators: bool,
    /// Defaults to quadrature for iid uniform weights, Monte Carlo otherwise.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expectation: Option<ExpectationMethod>,
    pub model: ModelSpec,
    pub grid: Grid,
    pub mc: McSettings,
    #[serde(default)]
    pub output: OutputConfig,
}

fn field(name: &str, e: Error) -> Error {
    match e {
        Error::Config(m) | Error::Domain(m) | Error::Shape(m) => Error::Config(format!("{name}: {m}")),
        other => other,
    }
}

fn check_positive(name: &str, values: impl Iterator<Item = f64>) -> Result<()> {
    for (i, v) in values.enumerate() {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::Config(format!("{name}[{i}]: thresholds must be positive and finite, got {v}")));
        }
    }
    Ok(())
}

impl ExperimentConfig {
    pub fn from_toml_str(s: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_owned(), source })?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_toml_string()?).map_err(|source| Error::Io { path: path.to_owned(), source })
    }

    pub fn expectation_method(&self) -> ExpectationMethod {
        self.expectation.unwrap_or_else(|| ExpectationMethod::default_for(&self.model.weights))
    }

    pub fn validate(&self) -> Result<()> {
        let g = &self.grid;
        match self.mode {
            Mode::Joint | Mode::RiskJoint | Mode::RiskSum => {
                if g.points.is_empty() {
                    return Err(Error::Config("grid.points: must be nonempty for this mode".into()));
                }
                if !g.thresholds.is_empty() {
                    return Err(Error::Config("grid.thresholds: not used in this mode; give grid.points".into()));
                }
                check_positive("grid.points", g.points.iter().flatten().copied())?;
            }
            Mode::Sum => {
                if g.thresholds.is_empty() {
                    return Err(Error::Config("grid.thresholds: must be nonempty for sum mode".into()));
                }
                if !g.points.is_empty() {
                    return Err(Error::Config("grid.points: not used in sum mode; give grid.thresholds".into()));
                }
                check_positive("grid.thresholds", g.thresholds.iter().copied())?;
            }
            Mode::Diag => {
                if !g.points.is_empty() {
                    return Err(Error::Config("grid.points: not used in diag mode".into()));
                }
                check_positive("grid.thresholds", g.thresholds.iter().copied())?;
            }
        }
        self.mc.validate().map_err(|e| field("mc", e))?;
        if self.indicator_estimators {
            if !matches!(self.mode, Mode::Joint | Mode::Sum) {
                return Err(Error::Config("indicator_estimators: only available in joint and sum modes".into()));
            }
            check_indicator_shape(&self.model).map_err(|e| field("indicator_estimators", e))?;
        }
        if matches!(self.mode, Mode::RiskJoint | Mode::RiskSum) {
            if !matches!(self.model.weights.law(), WeightLaw::DiscountProduct { .. }) {
                return Err(Error::Config("model.weights.law: risk modes need discount_product".into()));
            }
            if self.model.n() != self.model.m() {
                return Err(Error::Config("model.weights: risk modes need n = m (the horizon)".into()));
            }
        }
        if self.expectation == Some(ExpectationMethod::Quadrature) && !self.model.weights.is_iid_uniform() {
            return Err(Error::Config("expectation: quadrature needs iid_uniform weights".into()));
        }
        if let Some(ExpectationMethod::MonteCarlo { n_mc, .. }) = self.expectation {
            if n_mc < crate::weights::MIN_EXPECTATION_DRAWS {
                return Err(Error::Config(format!(
                    "expectation.n_mc: needs at least {} draws",
                    crate::weights::MIN_EXPECTATION_DRAWS
                )));
            }
        }
        Ok(())
    }
}
