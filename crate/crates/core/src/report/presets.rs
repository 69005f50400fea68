use crate::asymptotics::ModelSpec;
use crate::distributions::Marginal;
use crate::error::Error;
use crate::fgm::FgmPair;
use crate::montecarlo::McSettings;
use crate::weights::WeightModel;

use super::config::{ExperimentConfig, Grid, Mode, OutputConfig};

pub const PRESET_SEED: u64 = 20_250_101;
const PRESET_SAMPLES: usize = 10_000_000;
const PRESET_REPS: usize = 10;

/// Built-in reproductions of the two published accuracy tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    /// Joint tail, Pareto(2.01, 2) and Pareto(2.2, 4), r = 0.5. The weight
    /// interval for this table was never published; [1, 2] is assumed.
    Table1,
    /// Sum tail, Pareto(2.01, 1) on both lines, r = 0.6, weights U[1, 2].
    Table2,
}

impl std::str::FromStr for Preset {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "table1" => Ok(Preset::Table1),
            "table2" => Ok(Preset::Table2),
            _ => Err(Error::Config(format!("unknown preset '{s}' (table1 or table2)"))),
        }
    }
}

fn pareto(alpha: f64, k: f64) -> Marginal {
    Marginal::pareto(alpha, k).expect("preset parameters are valid")
}

pub fn preset(p: Preset) -> ExperimentConfig {
    let weights = WeightModel::iid_uniform((1.0, 2.0), (1.0, 2.0), 2, 2).expect("preset weights are valid");
    let mc = McSettings::new(PRESET_SAMPLES, PRESET_REPS, PRESET_SEED).expect("preset settings are valid");
    let (mode, pair, grid) = match p {
        Preset::Table1 => (
            Mode::Joint,
            FgmPair::new(0.5, pareto(2.01, 2.0), pareto(2.2, 4.0)),
            Grid {
                points: (0..8).map(|k| [20.0 + 5.0 * k as f64, 25.0 + 5.0 * k as f64]).collect(),
                thresholds: vec![],
            },
        ),
        Preset::Table2 => (
            Mode::Sum,
            FgmPair::new(0.6, pareto(2.01, 1.0), pareto(2.01, 1.0)),
            Grid { points: vec![], thresholds: (1..=8).map(|k| 10.0 * k as f64).collect() },
        ),
    };
    ExperimentConfig {
        mode,
        indicator_estimators: false,
        expectation: None,
        model: ModelSpec::new(pair.expect("preset pair is valid"), weights),
        grid,
        mc,
        output: OutputConfig::default(),
    }
}
