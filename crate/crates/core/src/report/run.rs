use crate::asymptotics::Evaluator;
use crate::error::{Error, Result};
use crate::montecarlo::{simulate_joint_grid, simulate_sum_grid, GridEstimate};

use super::config::{ExperimentConfig, Mode};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Threshold {
    Single(f64),
    Pair(f64, f64),
}

/// Indicator-count estimates with their across-replicate errors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IndicatorColumns {
    pub asy1: f64,
    pub asy1_stderr: f64,
    pub asy2: f64,
    pub asy2_stderr: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TableRow {
    pub threshold: Threshold,
    pub sim: f64,
    pub sim_stderr: f64,
    pub asy1: f64,
    pub asy2: f64,
    pub ratio1: f64,
    pub ratio2: f64,
    /// Weight-expectation error of `asy2`; zero under quadrature.
    pub asy_stderr: f64,
    pub indicators: Option<IndicatorColumns>,
    pub warnings: Vec<String>,
}

impl TableRow {
    fn new(
        threshold: Threshold,
        g: &GridEstimate,
        asy1: f64,
        asy2: f64,
        asy_stderr: f64,
        warnings: Vec<String>,
    ) -> Self {
        let indicators = g.indicators.as_ref().map(|p| IndicatorColumns {
            asy1: p.asy1.mean,
            asy1_stderr: p.asy1.stderr,
            asy2: p.asy2.mean,
            asy2_stderr: p.asy2.stderr,
        });
        Self {
            threshold,
            sim: g.sim.mean,
            sim_stderr: g.sim.stderr,
            asy1,
            asy2,
            ratio1: asy1 / g.sim.mean,
            ratio2: asy2 / g.sim.mean,
            asy_stderr,
            indicators,
            warnings,
        }
    }
}

/// Simulated and asymptotic values at every grid point, in grid order.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<TableRow>> {
    cfg.validate()?;
    let ms = &cfg.model;
    let ev = Evaluator::with_method(ms, cfg.expectation_method());
    let points: Vec<(f64, f64)> = cfg.grid.points.iter().map(|p| (p[0], p[1])).collect();
    match cfg.mode {
        Mode::Joint | Mode::RiskJoint => {
            let sims = simulate_joint_grid(ms, &points, &cfg.mc, cfg.indicator_estimators)?;
            points
                .iter()
                .zip(&sims)
                .map(|(&(x, y), g)| {
                    let a1 = ev.joint_asy1(x, y)?;
                    let a2 = ev.joint_asy2(x, y)?;
                    Ok(TableRow::new(Threshold::Pair(x, y), g, a1.value(), a2.value(), a2.stderr, a2.warnings))
                })
                .collect()
        }
        Mode::Sum => {
            let z = &cfg.grid.thresholds;
            let sims = simulate_sum_grid(ms, z, &cfg.mc, cfg.indicator_estimators)?;
            z.iter().zip(&sims).map(|(&z, g)| sum_row(&ev, Threshold::Single(z), z, g)).collect()
        }
        Mode::RiskSum => {
            let z: Vec<f64> = points.iter().map(|&(x, y)| x + y).collect();
            let sims = simulate_sum_grid(ms, &z, &cfg.mc, false)?;
            points
                .iter()
                .zip(&z)
                .zip(&sims)
                .map(|((&(x, y), &z), g)| sum_row(&ev, Threshold::Pair(x, y), z, g))
                .collect()
        }
        Mode::Diag => Err(Error::Config("mode: diag produces a diagnostics report, not table rows".into())),
    }
}

fn sum_row(ev: &Evaluator, t: Threshold, z: f64, g: &GridEstimate) -> Result<TableRow> {
    let a1 = ev.sum_asy1(z)?;
    let a2 = ev.sum_asy2(z)?;
    Ok(TableRow::new(t, g, a1.value(), a2.value(), a2.stderr, a2.warnings))
}
