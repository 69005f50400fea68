//! Bounded positive random weights `(θ₁..θ_n, Θ₁..Θ_m)`.
//!
//! Weights may depend on each other arbitrarily but are always independent
//! of the primary variables. Three laws are provided; further laws only need
//! a sampler and per-index bounds.

use rand::RngCore;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{config, Error, Result};
use crate::quadrature::GaussLegendre;
use crate::rng::{chunk_rng, open_unit};

/// Draws per chunk in weight-law expectations.
const EXPECTATION_CHUNK: usize = 1 << 16;
/// Replicate slot reserved for weight expectations so their streams never
/// coincide with those of a simulation sharing the seed.
const EXPECTATION_STREAM: u64 = u32::MAX as u64;
/// Gauss–Legendre nodes per active coordinate.
pub const QUADRATURE_NODES: usize = 32;
pub const MIN_EXPECTATION_DRAWS: usize = 10_000;

/// Closed interval `[lo, hi]` with `0 < lo ≤ hi < ∞`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo > 0.0 && lo.is_finite()) {
            return Err(config(format!("weight interval lower bound must be > 0, got {lo}")));
        }
        if !(hi >= lo && hi.is_finite()) {
            return Err(config(format!("weight interval [{lo}, {hi}] must have finite upper bound >= lower bound")));
        }
        Ok(Self { lo, hi })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn mean(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    #[inline]
    fn at(&self, u: f64) -> f64 {
        self.lo + (self.hi - self.lo) * u
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }
}

impl TryFrom<[f64; 2]> for Interval {
    type Error = Error;
    fn try_from(v: [f64; 2]) -> Result<Self> {
        Interval::new(v[0], v[1])
    }
}

impl From<Interval> for [f64; 2] {
    fn from(i: Interval) -> Self {
        [i.lo, i.hi]
    }
}

/// Global envelope of the weights: `θ_i ∈ [a1, b1]`, `Θ_j ∈ [a2, b2]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeightBox {
    pub a1: f64,
    pub b1: f64,
    pub a2: f64,
    pub b2: f64,
}

/// Joint law of the weight vector.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum WeightLaw {
    /// Every coordinate independent and uniform on its family's interval.
    IidUniform { theta: Interval, big_theta: Interval },
    /// All coordinates driven by one uniform: `θ_i = a1 + (b1−a1)U`,
    /// `Θ_j = a2 + (b2−a2)U`.
    Comonotone { theta: Interval, big_theta: Interval },
    /// Accumulated discount factors `θ_i = ∏_{k≤i} R_k`,
    /// `Θ_j = ∏_{k≤j} R̃_k`, with all factors independent and uniform.
    DiscountProduct { factor: Interval, second_factor: Interval },
}

/// A weight law together with the vector lengths `n` and `m`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawModel", into = "RawModel")]
pub struct WeightModel {
    law: WeightLaw,
    n: usize,
    m: usize,
}

#[derive(Serialize, Deserialize)]
struct RawModel {
    n: usize,
    m: usize,
    #[serde(flatten)]
    law: WeightLaw,
}

impl TryFrom<RawModel> for WeightModel {
    type Error = Error;
    fn try_from(raw: RawModel) -> Result<Self> {
        WeightModel::new(raw.law, raw.n, raw.m)
    }
}

impl From<WeightModel> for RawModel {
    fn from(w: WeightModel) -> Self {
        RawModel { n: w.n, m: w.m, law: w.law }
    }
}

/// One draw of the weight vector.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightSample {
    pub theta: Vec<f64>,
    pub big_theta: Vec<f64>,
}

/// A single weight coordinate, zero-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Coord {
    Theta(usize),
    BigTheta(usize),
}

/// Monte Carlo mean with its standard error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Expectation {
    pub value: f64,
    pub stderr: f64,
}

impl WeightModel {
    pub fn new(law: WeightLaw, n: usize, m: usize) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(config(format!("weight counts must be positive, got n={n}, m={m}")));
        }
        Ok(Self { law, n, m })
    }

    pub fn iid_uniform(theta: (f64, f64), big_theta: (f64, f64), n: usize, m: usize) -> Result<Self> {
        let law = WeightLaw::IidUniform {
            theta: Interval::new(theta.0, theta.1)?,
            big_theta: Interval::new(big_theta.0, big_theta.1)?,
        };
        Self::new(law, n, m)
    }

    pub fn comonotone(theta: (f64, f64), big_theta: (f64, f64), n: usize, m: usize) -> Result<Self> {
        let law = WeightLaw::Comonotone {
            theta: Interval::new(theta.0, theta.1)?,
            big_theta: Interval::new(big_theta.0, big_theta.1)?,
        };
        Self::new(law, n, m)
    }

    pub fn discount_product(factor: (f64, f64), second_factor: (f64, f64), n: usize, m: usize) -> Result<Self> {
        let law = WeightLaw::DiscountProduct {
            factor: Interval::new(factor.0, factor.1)?,
            second_factor: Interval::new(second_factor.0, second_factor.1)?,
        };
        Self::new(law, n, m)
    }

    /// Unit weights, i.e. unweighted sums.
    pub fn unit(n: usize, m: usize) -> Self {
        Self::iid_uniform((1.0, 1.0), (1.0, 1.0), n, m).expect("unit interval is valid")
    }

    pub fn law(&self) -> &WeightLaw {
        &self.law
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Same law with different vector lengths.
    pub fn with_counts(&self, n: usize, m: usize) -> Result<Self> {
        Self::new(self.law.clone(), n, m)
    }

    /// Bounds of `θ_i` (zero-based `i`).
    pub fn theta_bounds(&self, i: usize) -> (f64, f64) {
        match &self.law {
            WeightLaw::IidUniform { theta, .. } | WeightLaw::Comonotone { theta, .. } => (theta.lo, theta.hi),
            WeightLaw::DiscountProduct { factor, .. } => power_bounds(factor, i + 1),
        }
    }

    /// Bounds of `Θ_j` (zero-based `j`).
    pub fn big_theta_bounds(&self, j: usize) -> (f64, f64) {
        match &self.law {
            WeightLaw::IidUniform { big_theta, .. } | WeightLaw::Comonotone { big_theta, .. } => {
                (big_theta.lo, big_theta.hi)
            }
            WeightLaw::DiscountProduct { second_factor, .. } => power_bounds(second_factor, j + 1),
        }
    }

    pub fn bounds(&self, c: Coord) -> (f64, f64) {
        match c {
            Coord::Theta(i) => self.theta_bounds(i),
            Coord::BigTheta(j) => self.big_theta_bounds(j),
        }
    }

    /// Envelope over all indices.
    pub fn weight_box(&self) -> WeightBox {
        let (mut a1, mut b1) = (f64::INFINITY, 0.0f64);
        for i in 0..self.n {
            let (lo, hi) = self.theta_bounds(i);
            a1 = a1.min(lo);
            b1 = b1.max(hi);
        }
        let (mut a2, mut b2) = (f64::INFINITY, 0.0f64);
        for j in 0..self.m {
            let (lo, hi) = self.big_theta_bounds(j);
            a2 = a2.min(lo);
            b2 = b2.max(hi);
        }
        WeightBox { a1, b1, a2, b2 }
    }

    /// `E[θ_i]` (zero-based).
    pub fn theta_mean(&self, i: usize) -> f64 {
        match &self.law {
            WeightLaw::IidUniform { theta, .. } | WeightLaw::Comonotone { theta, .. } => theta.mean(),
            WeightLaw::DiscountProduct { factor, .. } => factor.mean().powi(i as i32 + 1),
        }
    }

    /// `E[Θ_j]` (zero-based).
    pub fn big_theta_mean(&self, j: usize) -> f64 {
        match &self.law {
            WeightLaw::IidUniform { big_theta, .. } | WeightLaw::Comonotone { big_theta, .. } => big_theta.mean(),
            WeightLaw::DiscountProduct { second_factor, .. } => second_factor.mean().powi(j as i32 + 1),
        }
    }

    pub fn is_iid_uniform(&self) -> bool {
        matches!(self.law, WeightLaw::IidUniform { .. })
    }

    /// A zeroed sample of the right shape, for reuse with [`sample_into`].
    pub fn empty_sample(&self) -> WeightSample {
        WeightSample { theta: vec![0.0; self.n], big_theta: vec![0.0; self.m] }
    }

    /// Whether every coordinate lies within its per-index bounds.
    pub fn contains(&self, w: &WeightSample) -> bool {
        w.theta.len() == self.n
            && w.big_theta.len() == self.m
            && w.theta.iter().enumerate().all(|(i, &t)| {
                let (lo, hi) = self.theta_bounds(i);
                lo <= t && t <= hi
            })
            && w.big_theta.iter().enumerate().all(|(j, &t)| {
                let (lo, hi) = self.big_theta_bounds(j);
                lo <= t && t <= hi
            })
    }
}

fn power_bounds(f: &Interval, k: usize) -> (f64, f64) {
    (f.lo.powi(k as i32), f.hi.powi(k as i32))
}

impl WeightSample {
    pub fn get(&self, c: Coord) -> f64 {
        match c {
            Coord::Theta(i) => self.theta[i],
            Coord::BigTheta(j) => self.big_theta[j],
        }
    }

    fn set(&mut self, c: Coord, v: f64) {
        match c {
            Coord::Theta(i) => self.theta[i] = v,
            Coord::BigTheta(j) => self.big_theta[j] = v,
        }
    }
}

/// Fills `out` with one draw; `out` must have the model's shape.
#[inline]
pub fn sample_into<R: RngCore + ?Sized>(wm: &WeightModel, rng: &mut R, out: &mut WeightSample) {
    match &wm.law {
        WeightLaw::IidUniform { theta, big_theta } => {
            for t in out.theta.iter_mut() {
                *t = theta.at(open_unit(rng));
            }
            for t in out.big_theta.iter_mut() {
                *t = big_theta.at(open_unit(rng));
            }
        }
        WeightLaw::Comonotone { theta, big_theta } => {
            let u = open_unit(rng);
            out.theta.fill(theta.at(u));
            out.big_theta.fill(big_theta.at(u));
        }
        WeightLaw::DiscountProduct { factor, second_factor } => {
            let mut acc = 1.0;
            for t in out.theta.iter_mut() {
                acc *= factor.at(open_unit(rng));
                *t = acc;
            }
            let mut acc = 1.0;
            for t in out.big_theta.iter_mut() {
                acc *= second_factor.at(open_unit(rng));
                *t = acc;
            }
        }
    }
}

pub fn sample_weights<R: RngCore + ?Sized>(wm: &WeightModel, rng: &mut R) -> WeightSample {
    let mut out = wm.empty_sample();
    sample_into(wm, rng, &mut out);
    out
}

/// Running mean and sum of squared deviations.
#[derive(Clone, Copy, Debug, Default)]
struct Moments {
    count: f64,
    mean: f64,
    m2: f64,
}

impl Moments {
    #[inline]
    fn push(&mut self, v: f64) {
        self.count += 1.0;
        let d = v - self.mean;
        self.mean += d / self.count;
        self.m2 += d * (v - self.mean);
    }

    fn merge(&mut self, o: &Moments) {
        if o.count == 0.0 {
            return;
        }
        let count = self.count + o.count;
        let d = o.mean - self.mean;
        self.mean += d * o.count / count;
        self.m2 += o.m2 + d * d * self.count * o.count / count;
        self.count = count;
    }

    fn expectation(&self) -> Expectation {
        let var = if self.count > 1.0 { (self.m2 / (self.count - 1.0)).max(0.0) } else { 0.0 };
        Expectation { value: self.mean, stderr: (var / self.count).sqrt() }
    }
}

/// Plain Monte Carlo means of `k` functionals evaluated on shared draws.
///
/// `f(w, out)` writes the `k` functional values for the draw `w`. Draws are
/// split into fixed chunks with their own streams and merged in chunk order,
/// so the result depends only on `(seed, n_mc)`.
pub fn weight_expectations<F>(wm: &WeightModel, k: usize, f: F, n_mc: usize, seed: u64) -> Result<Vec<Expectation>>
where
    F: Fn(&WeightSample, &mut [f64]) + Sync,
{
    if n_mc < MIN_EXPECTATION_DRAWS {
        return Err(config(format!("weight expectations need at least {MIN_EXPECTATION_DRAWS} draws, got {n_mc}")));
    }
    let chunks = n_mc.div_ceil(EXPECTATION_CHUNK);
    let partial: Vec<Vec<Moments>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let len = EXPECTATION_CHUNK.min(n_mc - c * EXPECTATION_CHUNK);
            let mut rng = chunk_rng(seed, EXPECTATION_STREAM, c as u64);
            let mut w = wm.empty_sample();
            let mut vals = vec![0.0; k];
            let mut acc = vec![Moments::default(); k];
            for _ in 0..len {
                sample_into(wm, &mut rng, &mut w);
                f(&w, &mut vals);
                for (a, &v) in acc.iter_mut().zip(&vals) {
                    a.push(v);
                }
            }
            acc
        })
        .collect();
    let mut total = vec![Moments::default(); k];
    for chunk in &partial {
        for (t, c) in total.iter_mut().zip(chunk) {
            t.merge(c);
        }
    }
    Ok(total.iter().map(Moments::expectation).collect())
}

/// Plain Monte Carlo mean of one functional of the weights.
pub fn weight_expectation<F>(wm: &WeightModel, f: F, n_mc: usize, seed: u64) -> Result<Expectation>
where
    F: Fn(&WeightSample) -> f64 + Sync,
{
    let v = weight_expectations(wm, 1, |w, out| out[0] = f(w), n_mc, seed)?;
    Ok(v[0])
}

/// Tensor Gauss–Legendre expectation for independent uniform weights.
///
/// Only the coordinates in `coords` are integrated; the integrand must not
/// read any other coordinate (those are left as NaN, which would surface in
/// the result).
pub fn weight_expectation_quadrature<F>(wm: &WeightModel, coords: &[Coord], f: F) -> Result<f64>
where
    F: Fn(&WeightSample) -> f64,
{
    if !wm.is_iid_uniform() {
        return Err(Error::Unsupported("quadrature over weights requires the iid_uniform law".into()));
    }
    if coords.len() > 3 {
        return Err(Error::Unsupported(format!(
            "quadrature over weights supports at most 3 coordinates, got {}",
            coords.len()
        )));
    }
    for (p, c) in coords.iter().enumerate() {
        let in_range = match *c {
            Coord::Theta(i) => i < wm.n,
            Coord::BigTheta(j) => j < wm.m,
        };
        if !in_range || coords[..p].contains(c) {
            return Err(config(format!("invalid or repeated weight coordinate {c:?}")));
        }
    }
    let gl = GaussLegendre::new(QUADRATURE_NODES);
    let rules: Vec<Vec<(f64, f64)>> = coords
        .iter()
        .map(|&c| {
            let (lo, hi) = wm.bounds(c);
            if lo == hi {
                vec![(lo, 1.0)]
            } else {
                gl.uniform_expectation_rule(lo, hi)
            }
        })
        .collect();
    let mut w = WeightSample { theta: vec![f64::NAN; wm.n], big_theta: vec![f64::NAN; wm.m] };
    Ok(tensor_sum(&rules, coords, 0, 1.0, &mut w, &f))
}

fn tensor_sum<F: Fn(&WeightSample) -> f64>(
    rules: &[Vec<(f64, f64)>],
    coords: &[Coord],
    depth: usize,
    weight: f64,
    w: &mut WeightSample,
    f: &F,
) -> f64 {
    if depth == coords.len() {
        return weight * f(w);
    }
    let mut s = 0.0;
    for &(node, wt) in &rules[depth] {
        w.set(coords[depth], node);
        s += tensor_sum(rules, coords, depth + 1, weight * wt, w, f);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn models() -> Vec<WeightModel> {
        vec![
            WeightModel::iid_uniform((1.0, 2.0), (0.5, 3.0), 3, 2).unwrap(),
            WeightModel::comonotone((1.0, 2.0), (1.0, 2.0), 2, 2).unwrap(),
            WeightModel::discount_product((0.9, 1.1), (1.0, 2.0), 3, 4).unwrap(),
        ]
    }

    #[test]
    fn degenerate_interval_gives_unit_weights() {
        let wm = WeightModel::unit(2, 3);
        let mut rng = chunk_rng(1, 0, 0);
        let w = sample_weights(&wm, &mut rng);
        assert!(w.theta.iter().chain(&w.big_theta).all(|&t| t == 1.0));
    }

    #[test]
    fn discount_product_bounds_grow_per_index() {
        let wm = WeightModel::discount_product((1.0, 2.0), (1.0, 2.0), 2, 2).unwrap();
        assert_eq!(wm.theta_bounds(1), (1.0, 4.0));
        let mut rng = chunk_rng(2, 0, 0);
        for _ in 0..10_000 {
            let w = sample_weights(&wm, &mut rng);
            assert!((1.0..=4.0).contains(&w.theta[1]));
            assert!(w.theta[1] >= w.theta[0]);
        }
        let b = wm.weight_box();
        assert_eq!((b.a1, b.b1, b.a2, b.b2), (1.0, 4.0, 1.0, 4.0));
    }

    #[test]
    fn comonotone_coordinates_coincide() {
        let wm = WeightModel::comonotone((1.0, 2.0), (1.0, 2.0), 2, 2).unwrap();
        let mut rng = chunk_rng(3, 0, 0);
        for _ in 0..1000 {
            let w = sample_weights(&wm, &mut rng);
            assert_eq!(w.theta[0], w.theta[1]);
            assert_eq!(w.theta[0], w.big_theta[0]);
            assert_eq!(w.big_theta[0], w.big_theta[1]);
        }
    }

    #[test]
    fn nonpositive_bounds_rejected() {
        assert!(WeightModel::iid_uniform((0.0, 1.0), (1.0, 2.0), 1, 1).is_err());
        assert!(WeightModel::discount_product((-1.0, 1.0), (1.0, 2.0), 1, 1).is_err());
        assert!(WeightModel::iid_uniform((2.0, 1.0), (1.0, 2.0), 1, 1).is_err());
        assert!(WeightModel::iid_uniform((1.0, 2.0), (1.0, 2.0), 0, 1).is_err());
    }

    #[test]
    fn every_draw_within_bounds() {
        for wm in models() {
            let mut rng = chunk_rng(4, 0, 0);
            let mut w = wm.empty_sample();
            for _ in 0..100_000 {
                sample_into(&wm, &mut rng, &mut w);
                assert!(wm.contains(&w), "{wm:?} {w:?}");
            }
        }
    }

    #[test]
    fn mc_means() {
        let wm = WeightModel::iid_uniform((1.0, 2.0), (1.0, 2.0), 2, 2).unwrap();
        let e = weight_expectation(&wm, |w| w.theta[0], 100_000, 7).unwrap();
        assert!((e.value - 1.5).abs() < 3.0 * e.stderr, "{e:?}");

        let dp = WeightModel::discount_product((1.0, 2.0), (1.0, 2.0), 2, 2).unwrap();
        let e = weight_expectation(&dp, |w| w.big_theta[1], 100_000, 7).unwrap();
        assert!((e.value - 2.25).abs() < 3.0 * e.stderr, "{e:?}");
        assert_eq!(dp.big_theta_mean(1), 2.25);

        let e = weight_expectation(&dp, |_| 1.0, 10_000, 7).unwrap();
        assert_eq!(e.value, 1.0);
        assert_eq!(e.stderr, 0.0);
    }

    #[test]
    fn mc_needs_enough_draws() {
        let wm = WeightModel::unit(1, 1);
        assert!(weight_expectation(&wm, |_| 1.0, 9_999, 0).is_err());
    }

    #[test]
    fn mc_is_independent_of_worker_count() {
        let wm = models().remove(2);
        let f = |w: &WeightSample| (w.theta[2] * w.big_theta[3]).sin();
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| weight_expectation(&wm, f, 300_000, 11).unwrap())
        };
        let (a, b) = (run(1), run(3));
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a.stderr.to_bits(), b.stderr.to_bits());
    }

    #[test]
    fn quadrature_polynomials() {
        let wm = WeightModel::iid_uniform((1.0, 2.0), (1.0, 2.0), 2, 2).unwrap();
        let sq = weight_expectation_quadrature(&wm, &[Coord::Theta(0)], |w| w.theta[0].powi(2)).unwrap();
        assert!((sq - 7.0 / 3.0).abs() < 1e-14);
        let prod = weight_expectation_quadrature(&wm, &[Coord::Theta(0), Coord::Theta(1)], |w| w.theta[0] * w.theta[1])
            .unwrap();
        assert!((prod - 2.25).abs() < 1e-14);
    }

    #[test]
    fn quadrature_rejects_other_laws_and_shapes() {
        let dp = WeightModel::discount_product((1.0, 2.0), (1.0, 2.0), 2, 2).unwrap();
        assert!(matches!(
            weight_expectation_quadrature(&dp, &[Coord::Theta(0)], |w| w.theta[0]),
            Err(Error::Unsupported(_))
        ));
        let wm = WeightModel::iid_uniform((1.0, 2.0), (1.0, 2.0), 2, 2).unwrap();
        let four = [Coord::Theta(0), Coord::Theta(1), Coord::BigTheta(0), Coord::BigTheta(1)];
        assert!(weight_expectation_quadrature(&wm, &four, |_| 1.0).is_err());
        assert!(weight_expectation_quadrature(&wm, &[Coord::Theta(0), Coord::Theta(0)], |_| 1.0).is_err());
        assert!(weight_expectation_quadrature(&wm, &[Coord::Theta(5)], |_| 1.0).is_err());
    }

    #[test]
    fn quadrature_matches_mc_for_weighted_tail() {
        let p = crate::distributions::Marginal::pareto(2.01, 2.0).unwrap();
        let wm = WeightModel::iid_uniform((1.0, 2.0), (1.0, 2.0), 2, 2).unwrap();
        let q = weight_expectation_quadrature(&wm, &[Coord::Theta(0)], |w| p.sf(20.0 / w.theta[0])).unwrap();
        let e = weight_expectation(&wm, |w| p.sf(20.0 / w.theta[0]), 1_000_000, 5).unwrap();
        assert!((q - e.value).abs() < 3.0 * e.stderr, "{q} {e:?}");
        // Moment used by the density-form corrections.
        let alpha = 2.01;
        let q = weight_expectation_quadrature(&wm, &[Coord::Theta(0)], |w| w.theta[0].powf(alpha)).unwrap();
        let exact = (2f64.powf(alpha + 1.0) - 1.0) / (alpha + 1.0);
        assert!((q - exact).abs() < 1e-13);
        let e = weight_expectation(&wm, |w| w.theta[0].powf(alpha), 1_000_000, 6).unwrap();
        assert!((q - e.value).abs() < 3.0 * e.stderr);
    }

    #[test]
    fn serde_roundtrip() {
        for wm in models() {
            let s = toml::to_string(&wm).unwrap();
            let back: WeightModel = toml::from_str(&s).unwrap();
            assert_eq!(back, wm, "{s}");
        }
        let bad = "law = \"iid_uniform\"\nn = 2\nm = 2\ntheta = [0.0, 1.0]\nbig_theta = [1.0, 2.0]\n";
        assert!(toml::from_str::<WeightModel>(bad).is_err());
    }

    proptest! {
        #[test]
        fn iid_draws_in_box(lo in 0.01f64..5.0, width in 0.0f64..5.0, seed in any::<u64>()) {
            let wm = WeightModel::iid_uniform((lo, lo + width), (lo, lo + width), 3, 3).unwrap();
            let mut rng = chunk_rng(seed, 0, 0);
            for _ in 0..200 {
                let w = sample_weights(&wm, &mut rng);
                prop_assert!(wm.contains(&w));
            }
        }
    }
}
