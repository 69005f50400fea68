//! Crude Monte Carlo for the joint and sum tails of the weighted sums, plus
//! the indicator-count estimators of the first- and second-order formulas.
//!
//! Each replicate is split into fixed-size chunks with their own RNG streams
//! keyed by `(seed, rep, chunk)`. Chunks produce integer counts, so merging is
//! exact and results never depend on the number of worker threads.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::asymptotics::ModelSpec;
use crate::error::{config, Error, Result};
use crate::rng::{chunk_rng, open_unit, MAX_CHUNKS};
use crate::weights::{sample_into, WeightSample};

pub const DEFAULT_CHUNK_SIZE: usize = 1 << 16;
pub const MIN_SAMPLES: usize = 1_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct McSettings {
    pub n_samples: usize,
    pub n_reps: usize,
    pub seed: u64,
    #[serde(default = "default_chunk")]
    pub chunk_size: usize,
}

fn default_chunk() -> usize {
    DEFAULT_CHUNK_SIZE
}

impl McSettings {
    pub fn new(n_samples: usize, n_reps: usize, seed: u64) -> Result<Self> {
        let s = Self { n_samples, n_reps, seed, chunk_size: DEFAULT_CHUNK_SIZE };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_samples < MIN_SAMPLES {
            return Err(config(format!("n_samples must be at least {MIN_SAMPLES}, got {}", self.n_samples)));
        }
        // The spread across replicates is the error estimate, so one is not enough.
        if self.n_reps < 2 {
            return Err(config(format!("n_reps must be at least 2, got {}", self.n_reps)));
        }
        if self.chunk_size == 0 {
            return Err(config("chunk_size must be positive"));
        }
        if self.chunks_per_rep() as u64 > MAX_CHUNKS || self.n_reps as u64 >= u32::MAX as u64 {
            return Err(config("too many chunks or replicates for the stream key space"));
        }
        Ok(())
    }

    fn chunks_per_rep(&self) -> usize {
        self.n_samples.div_ceil(self.chunk_size)
    }
}

/// Mean over replicates with the standard error of that mean.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub per_rep: Vec<f64>,
}

impl McEstimate {
    pub fn from_reps(per_rep: Vec<f64>) -> Self {
        let k = per_rep.len() as f64;
        let mean = per_rep.iter().sum::<f64>() / k;
        let stderr = if per_rep.len() > 1 {
            let var = per_rep.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (k - 1.0);
            (var / k).sqrt()
        } else {
            0.0
        };
        Self { mean, stderr, per_rep }
    }
}

/// Indicator-count estimators of the first- and second-order formulas.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IndicatorEstimates {
    pub asy1: McEstimate,
    pub asy2: McEstimate,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridEstimate {
    pub sim: McEstimate,
    pub indicators: Option<IndicatorEstimates>,
}

/// Draws the weighted summands `θ_i X_i` and `Θ_j Y_j` of one block.
struct BlockSampler<'a> {
    ms: &'a ModelSpec,
    w: WeightSample,
    first: Vec<f64>,
    second: Vec<f64>,
}

impl<'a> BlockSampler<'a> {
    fn new(ms: &'a ModelSpec) -> Self {
        Self { ms, w: ms.weights.empty_sample(), first: vec![0.0; ms.n()], second: vec![0.0; ms.m()] }
    }

    /// Fills the summands and returns `(S, T)`.
    #[inline]
    fn draw<R: rand::RngCore>(&mut self, rng: &mut R) -> (f64, f64) {
        sample_into(&self.ms.weights, rng, &mut self.w);
        let pair = &self.ms.pair;
        let (n, m) = (self.first.len(), self.second.len());
        let k = n.min(m);
        for i in 0..k {
            let (x, y) = pair.sample_tail_pair(open_unit(rng), open_unit(rng));
            self.first[i] = self.w.theta[i] * x;
            self.second[i] = self.w.big_theta[i] * y;
        }
        // Unmatched indices come from their marginal alone.
        for i in k..n {
            self.first[i] = self.w.theta[i] * pair.first().tail_quantile(open_unit(rng));
        }
        for j in k..m {
            self.second[j] = self.w.big_theta[j] * pair.second().tail_quantile(open_unit(rng));
        }
        (self.first.iter().sum(), self.second.iter().sum())
    }
}

#[derive(Clone, Copy, Debug, Default)]
struct JointCounts {
    sim: u64,
    pairs_tail: u64,
    tail_strip_second: u64,
    diag_strip_second: u64,
    strip_first_tail: u64,
    diag_strip_first: u64,
}

impl Mergeable for JointCounts {
    fn merge_into(&mut self, o: &Self) {
        self.sim += o.sim;
        self.pairs_tail += o.pairs_tail;
        self.tail_strip_second += o.tail_strip_second;
        self.diag_strip_second += o.diag_strip_second;
        self.strip_first_tail += o.strip_first_tail;
        self.diag_strip_first += o.diag_strip_first;
    }
}

#[derive(Clone, Copy, Debug, Default)]
struct SumCounts {
    sim: u64,
    tails: u64,
    strip_first: u64,
    strip_second: u64,
}

impl Mergeable for SumCounts {
    fn merge_into(&mut self, o: &Self) {
        self.sim += o.sim;
        self.tails += o.tails;
        self.strip_first += o.strip_first;
        self.strip_second += o.strip_second;
    }
}

#[inline]
fn in_strip(v: f64, t: f64) -> bool {
    v > t && v <= t + 1.0
}

/// Runs `chunk_fn` over every `(rep, chunk)` and sums the per-chunk count
/// vectors per replicate.
fn run_counts<C, F>(s: &McSettings, len: usize, chunk_fn: F) -> Vec<Vec<C>>
where
    C: Copy + Default + Send + Mergeable,
    F: Fn(u64, u64, usize) -> Vec<C> + Sync,
{
    let chunks = s.chunks_per_rep();
    let tasks: Vec<(usize, usize)> = (0..s.n_reps).flat_map(|r| (0..chunks).map(move |c| (r, c))).collect();
    let results: Vec<Vec<C>> = tasks
        .par_iter()
        .map(|&(r, c)| {
            let size = s.chunk_size.min(s.n_samples - c * s.chunk_size);
            chunk_fn(r as u64, c as u64, size)
        })
        .collect();
    let mut per_rep = vec![vec![C::default(); len]; s.n_reps];
    for (&(r, _), counts) in tasks.iter().zip(results) {
        for (acc, c) in per_rep[r].iter_mut().zip(counts) {
            acc.merge_into(&c);
        }
    }
    per_rep
}

trait Mergeable {
    fn merge_into(&mut self, o: &Self);
}

fn check_thresholds(t: &[f64]) -> Result<()> {
    if t.is_empty() {
        return Err(config("threshold grid is empty"));
    }
    if t.iter().all(|v| *v >= 0.0 && v.is_finite()) {
        Ok(())
    } else {
        Err(crate::error::domain(format!("thresholds must be finite and >= 0, got {t:?}")))
    }
}

/// Checks the shape the indicator estimators are written for: two summands
/// per line and independent uniform weights.
pub fn check_indicator_shape(ms: &ModelSpec) -> Result<()> {
    if ms.n() != 2 || ms.m() != 2 || !ms.weights.is_iid_uniform() {
        return Err(Error::Shape(format!(
            "indicator estimators need n = m = 2 with iid_uniform weights, got n={}, m={}, {:?}",
            ms.n(),
            ms.m(),
            ms.weights.law()
        )));
    }
    Ok(())
}

/// Coefficients of the indicator-count estimators, with `E[θ]`, `E[Θ]` the
/// weight means.
#[derive(Clone, Copy, Debug)]
struct IndicatorCoefficients {
    mean_theta: f64,
    mean_big_theta: f64,
    mu_f: f64,
    mu_f_sq: f64,
    mu_g: f64,
    mu_g_sq: f64,
    r: f64,
}

impl IndicatorCoefficients {
    fn of(ms: &ModelSpec) -> Self {
        let (f, g) = (ms.pair.first(), ms.pair.second());
        Self {
            mean_theta: ms.weights.theta_mean(0),
            mean_big_theta: ms.weights.big_theta_mean(0),
            mu_f: f.mean(),
            mu_f_sq: f.mean_of_square_dist(),
            mu_g: g.mean(),
            mu_g_sq: g.mean_of_square_dist(),
            r: ms.pair.r(),
        }
    }

    fn joint(&self, c: &JointCounts, n: f64) -> (f64, f64) {
        let p = self;
        let asy1 = c.pairs_tail as f64 / n;
        let shift_second = p.mean_big_theta * (p.r * (p.mu_g_sq - p.mu_g) + p.mu_g);
        let diag_second = p.r * p.mean_big_theta * (p.mu_g_sq - 2.0 * p.mu_g);
        let shift_first = p.mean_theta * (p.r * (p.mu_f_sq - p.mu_f) + p.mu_f);
        let diag_first = p.r * p.mean_theta * (p.mu_f_sq - 2.0 * p.mu_f);
        let corr = shift_second * c.tail_strip_second as f64 - diag_second * c.diag_strip_second as f64
            + shift_first * c.strip_first_tail as f64
            - diag_first * c.diag_strip_first as f64;
        (asy1, asy1 + corr / n)
    }

    fn sum(&self, c: &SumCounts, n: f64) -> (f64, f64) {
        let p = self;
        let asy1 = c.tails as f64 / n;
        let both = p.mean_theta * p.mu_f + p.mean_big_theta * p.mu_g;
        // The double sum over (i, j) of a term indexed by i counts it twice.
        let mut corr = both * 2.0 * (c.strip_first + c.strip_second) as f64;
        corr += (p.r * p.mean_big_theta * (p.mu_g_sq - p.mu_g) - p.mean_theta * p.mu_f) * c.strip_first as f64;
        corr += (p.r * p.mean_theta * (p.mu_f_sq - p.mu_f) - p.mean_big_theta * p.mu_g) * c.strip_second as f64;
        (asy1, asy1 + corr / n)
    }
}

/// `P(S > x, T > y)` at every grid point from one shared set of draws, with
/// the indicator estimators if `indicators` is set.
pub fn simulate_joint_grid(
    ms: &ModelSpec,
    points: &[(f64, f64)],
    s: &McSettings,
    indicators: bool,
) -> Result<Vec<GridEstimate>> {
    s.validate()?;
    check_thresholds(&points.iter().flat_map(|&(x, y)| [x, y]).collect::<Vec<_>>())?;
    if indicators {
        check_indicator_shape(ms)?;
    }
    let min_x = points.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let min_y = points.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
    let k = ms.n().min(ms.m());

    let per_rep = run_counts::<JointCounts, _>(s, points.len(), |rep, chunk, size| {
        let mut rng = chunk_rng(s.seed, rep, chunk);
        let mut block = BlockSampler::new(ms);
        let mut counts = vec![JointCounts::default(); points.len()];
        for _ in 0..size {
            let (sx, ty) = block.draw(&mut rng);
            // Every counted event needs S > x and T > y.
            if sx <= min_x || ty <= min_y {
                continue;
            }
            let (a, b) = (&block.first, &block.second);
            for (c, &(x, y)) in counts.iter_mut().zip(points) {
                c.sim += (sx > x && ty > y) as u64;
                if !indicators {
                    continue;
                }
                let tail_a = a.iter().filter(|&&v| v > x).count() as u64;
                let tail_b = b.iter().filter(|&&v| v > y).count() as u64;
                let strip_a = a.iter().filter(|&&v| in_strip(v, x)).count() as u64;
                let strip_b = b.iter().filter(|&&v| in_strip(v, y)).count() as u64;
                c.pairs_tail += tail_a * tail_b;
                c.tail_strip_second += tail_a * strip_b;
                c.strip_first_tail += strip_a * tail_b;
                for i in 0..k {
                    c.diag_strip_second += (a[i] > x && in_strip(b[i], y)) as u64;
                    c.diag_strip_first += (in_strip(a[i], x) && b[i] > y) as u64;
                }
            }
        }
        counts
    });

    let n = s.n_samples as f64;
    let coef = IndicatorCoefficients::of(ms);
    Ok((0..points.len())
        .map(|p| {
            let sim = McEstimate::from_reps(per_rep.iter().map(|r| r[p].sim as f64 / n).collect());
            let indicators = indicators.then(|| {
                let (a1, a2): (Vec<f64>, Vec<f64>) = per_rep.iter().map(|r| coef.joint(&r[p], n)).unzip();
                IndicatorEstimates { asy1: McEstimate::from_reps(a1), asy2: McEstimate::from_reps(a2) }
            });
            GridEstimate { sim, indicators }
        })
        .collect())
}

/// `P(S + T > z)` at every threshold from one shared set of draws.
pub fn simulate_sum_grid(
    ms: &ModelSpec,
    thresholds: &[f64],
    s: &McSettings,
    indicators: bool,
) -> Result<Vec<GridEstimate>> {
    s.validate()?;
    check_thresholds(thresholds)?;
    if indicators {
        check_indicator_shape(ms)?;
    }
    let min_z = thresholds.iter().copied().fold(f64::INFINITY, f64::min);

    let per_rep = run_counts::<SumCounts, _>(s, thresholds.len(), |rep, chunk, size| {
        let mut rng = chunk_rng(s.seed, rep, chunk);
        let mut block = BlockSampler::new(ms);
        let mut counts = vec![SumCounts::default(); thresholds.len()];
        for _ in 0..size {
            let (sx, ty) = block.draw(&mut rng);
            let total = sx + ty;
            if total <= min_z {
                continue;
            }
            for (c, &z) in counts.iter_mut().zip(thresholds) {
                c.sim += (total > z) as u64;
                if !indicators {
                    continue;
                }
                let (a, b) = (&block.first, &block.second);
                c.tails += (a.iter().filter(|&&v| v > z).count() + b.iter().filter(|&&v| v > z).count()) as u64;
                c.strip_first += a.iter().filter(|&&v| in_strip(v, z)).count() as u64;
                c.strip_second += b.iter().filter(|&&v| in_strip(v, z)).count() as u64;
            }
        }
        counts
    });

    let n = s.n_samples as f64;
    let coef = IndicatorCoefficients::of(ms);
    Ok((0..thresholds.len())
        .map(|p| {
            let sim = McEstimate::from_reps(per_rep.iter().map(|r| r[p].sim as f64 / n).collect());
            let indicators = indicators.then(|| {
                let (a1, a2): (Vec<f64>, Vec<f64>) = per_rep.iter().map(|r| coef.sum(&r[p], n)).unzip();
                IndicatorEstimates { asy1: McEstimate::from_reps(a1), asy2: McEstimate::from_reps(a2) }
            });
            GridEstimate { sim, indicators }
        })
        .collect())
}

pub fn simulate_joint_tail(ms: &ModelSpec, x: f64, y: f64, s: &McSettings) -> Result<McEstimate> {
    Ok(simulate_joint_grid(ms, &[(x, y)], s, false)?.remove(0).sim)
}

pub fn simulate_sum_tail(ms: &ModelSpec, z: f64, s: &McSettings) -> Result<McEstimate> {
    Ok(simulate_sum_grid(ms, &[z], s, false)?.remove(0).sim)
}

/// Indicator-count estimates of the first- and second-order joint formulas.
pub fn estimate_asy_paper_joint(ms: &ModelSpec, x: f64, y: f64, s: &McSettings) -> Result<(McEstimate, McEstimate)> {
    let p = simulate_joint_grid(ms, &[(x, y)], s, true)?.remove(0).indicators.expect("requested");
    Ok((p.asy1, p.asy2))
}

/// Indicator-count estimates of the first- and second-order sum formulas.
pub fn estimate_asy_paper_sum(ms: &ModelSpec, z: f64, s: &McSettings) -> Result<(McEstimate, McEstimate)> {
    let p = simulate_sum_grid(ms, &[z], s, true)?.remove(0).indicators.expect("requested");
    Ok((p.asy1, p.asy2))
}
