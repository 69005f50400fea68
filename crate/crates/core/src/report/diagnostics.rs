use std::fmt::Write as _;

use crate::asymptotics::ModelSpec;
use crate::error::{Error, Result};
use crate::fgm::FgmPair;
use crate::montecarlo::{simulate_sum_grid, McEstimate};
use crate::rng::{chunk_rng, open_unit};
use crate::stats::{kendall_tau, ks_statistic};
use crate::weights::WeightModel;

use super::config::{ExperimentConfig, Mode};
use super::emit::format_sig6;

pub const DEFAULT_S2_GRID: [f64; 4] = [50.0, 100.0, 200.0, 400.0];
pub const KS_SAMPLES: usize = 100_000;
pub const TAU_SAMPLES: usize = 1_000_000;
pub const TAU_LEVELS: [f64; 5] = [-1.0, -0.5, 0.0, 0.5, 0.9];

#[derive(Clone, Debug, PartialEq)]
pub struct S2Row {
    pub marginal: String,
    pub x: f64,
    /// `None` when the local mass underflows at `x`.
    pub ratio: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExpansionRow {
    pub x: f64,
    pub first_order: f64,
    pub expansion: f64,
    pub mc: McEstimate,
}

#[derive(Clone, Debug, PartialEq)]
pub struct KsRow {
    pub marginal: String,
    pub samples: usize,
    pub statistic: f64,
    /// `1.95/√N`.
    pub bound: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TauRow {
    pub r: f64,
    pub samples: usize,
    pub empirical: f64,
    pub exact: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiagnosticsReport {
    pub s2: Vec<S2Row>,
    pub pair_sum: Vec<ExpansionRow>,
    pub ks: Vec<KsRow>,
    pub tau: Vec<TauRow>,
}

/// KS statistics of the two sampled marginals against their cdfs.
pub fn copula_ks(pair: &FgmPair, n: usize, seed: u64) -> (f64, f64) {
    let mut rng = chunk_rng(seed, 0, 0);
    let (xs, ys): (Vec<f64>, Vec<f64>) =
        (0..n).map(|_| pair.sample_tail_pair(open_unit(&mut rng), open_unit(&mut rng))).unzip();
    (ks_statistic(&xs, |x| pair.first().cdf(x)), ks_statistic(&ys, |y| pair.second().cdf(y)))
}

/// Empirical Kendall's tau of `n` copula draws with parameter `r`.
pub fn copula_tau(r: f64, n: usize, seed: u64) -> Result<f64> {
    let pair = FgmPair::new(r, crate::Marginal::pareto(2.0, 1.0)?, crate::Marginal::pareto(2.0, 1.0)?)?;
    let mut rng = chunk_rng(seed, 0, 0);
    let (us, vs): (Vec<f64>, Vec<f64>) =
        (0..n).map(|_| pair.sample_copula(open_unit(&mut rng), open_unit(&mut rng))).unzip();
    Ok(kendall_tau(&us, &vs))
}

/// Second-order ratios of both margins, the pair expansion against
/// simulation, and the copula sampler checks.
pub fn run_diagnostics(cfg: &ExperimentConfig) -> Result<DiagnosticsReport> {
    if cfg.mode != Mode::Diag {
        return Err(Error::Config("mode: diagnostics need mode = \"diag\"".into()));
    }
    cfg.validate()?;
    let pair = &cfg.model.pair;
    let grid: Vec<f64> =
        if cfg.grid.thresholds.is_empty() { DEFAULT_S2_GRID.to_vec() } else { cfg.grid.thresholds.clone() };

    let mut s2 = Vec::new();
    for m in [pair.first(), pair.second()] {
        for &x in &grid {
            let ratio = match m.s2_diagnostic(x) {
                Ok(v) => Some(v),
                Err(Error::Underflow(_)) => None,
                Err(e) => return Err(e),
            };
            s2.push(S2Row { marginal: m.to_string(), x, ratio });
        }
    }

    let single = ModelSpec::new(pair.clone(), WeightModel::unit(1, 1));
    let sims = simulate_sum_grid(&single, &grid, &cfg.mc, false)?;
    let mut pair_sum = Vec::new();
    for (&x, g) in grid.iter().zip(sims) {
        let e = pair.pair_sum_tail_expansion(1.0, 1.0, x)?;
        pair_sum.push(ExpansionRow { x, first_order: e.first_order, expansion: e.value(), mc: g.sim });
    }

    let (kx, ky) = copula_ks(pair, KS_SAMPLES, cfg.mc.seed);
    let bound = 1.95 / (KS_SAMPLES as f64).sqrt();
    let ks = vec![
        KsRow { marginal: pair.first().to_string(), samples: KS_SAMPLES, statistic: kx, bound },
        KsRow { marginal: pair.second().to_string(), samples: KS_SAMPLES, statistic: ky, bound },
    ];

    let mut levels = TAU_LEVELS.to_vec();
    if !levels.contains(&pair.r()) {
        levels.push(pair.r());
    }
    let tau = levels
        .iter()
        .enumerate()
        .map(|(i, &r)| {
            Ok(TauRow {
                r,
                samples: TAU_SAMPLES,
                empirical: copula_tau(r, TAU_SAMPLES, cfg.mc.seed.wrapping_add(1 + i as u64))?,
                exact: 2.0 * r / 9.0,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(DiagnosticsReport { s2, pair_sum, ks, tau })
}

impl DiagnosticsReport {
    pub fn to_markdown(&self) -> String {
        let mut out = String::from("## Diagnostics\n\n### Second-order subexponential ratio\n\n");
        out.push_str("Ratio `(F̄²*(x) − 2F̄(x)) / (2 μ_F F(x, x+1])`; tends to 1.\n\n");
        out.push_str("| marginal | x | ratio |\n|---|---|---|\n");
        for r in &self.s2 {
            let v = r.ratio.map_or_else(|| "underflow".to_string(), format_sig6);
            let _ = writeln!(out, "| {} | {} | {} |", r.marginal, r.x, v);
        }
        out.push_str("\n### Pair sum expansion against simulation\n\n");
        out.push_str("| x | first order | expansion | Sim | Sim stderr | expansion/Sim |\n|---|---|---|---|---|---|\n");
        for r in &self.pair_sum {
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} | {} | {} |",
                r.x,
                format_sig6(r.first_order),
                format_sig6(r.expansion),
                format_sig6(r.mc.mean),
                format_sig6(r.mc.stderr),
                format_sig6(r.expansion / r.mc.mean)
            );
        }
        out.push_str("\n### Copula sampler\n\n| marginal | N | KS statistic | 1.95/sqrt(N) |\n|---|---|---|---|\n");
        for r in &self.ks {
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} |",
                r.marginal,
                r.samples,
                format_sig6(r.statistic),
                format_sig6(r.bound)
            );
        }
        out.push_str("\n| r | N | empirical tau | 2r/9 |\n|---|---|---|---|\n");
        for r in &self.tau {
            let _ =
                writeln!(out, "| {} | {} | {} | {} |", r.r, r.samples, format_sig6(r.empirical), format_sig6(r.exact));
        }
        out
    }
}
