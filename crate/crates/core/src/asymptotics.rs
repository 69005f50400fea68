//! First- and second-order tail asymptotics for randomly weighted sums of
//! FGM-dependent pairs.
//!
//! Every retained term is an expectation over the weight law of a closed-form
//! FGM probability. Terms are kept individually in the breakdown so the
//! truncation can be inspected; all remainders are dropped.

use serde::{Deserialize, Serialize};

use crate::distributions::Marginal;
use crate::error::{domain, Error, Result};
use crate::fgm::{rect_from_tails, survival_from_tails, FgmPair};
use crate::weights::{weight_expectation_quadrature, weight_expectations, Coord, WeightLaw, WeightModel, WeightSample};

pub const DEFAULT_EXPECTATION_DRAWS: usize = 1_000_000;
pub const DEFAULT_EXPECTATION_SEED: u64 = 0x5eed_a5f1;
/// Local-mass ratio band outside which the sum expansion is flagged.
pub const LOCAL_MASS_RATIO_BAND: (f64, f64) = (0.1, 10.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Order {
    First,
    Second,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TermGroup {
    /// Leading tail probabilities.
    FirstOrder,
    /// Mean-shift corrections from the other summands.
    CrossIndex,
    /// Corrections multiplied by the FGM parameter.
    Dependence,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub label: String,
    pub group: TermGroup,
    pub value: f64,
}

impl Term {
    pub fn new(label: impl Into<String>, group: TermGroup, value: f64) -> Self {
        Self { label: label.into(), group, value }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AsymptoticEstimate {
    pub first_order: f64,
    pub second_order_correction: f64,
    pub order: Order,
    /// Monte Carlo error of [`value`](Self::value) from the weight expectations;
    /// zero under quadrature.
    pub stderr: f64,
    pub warnings: Vec<String>,
    terms: Vec<Term>,
}

impl AsymptoticEstimate {
    pub fn from_terms(order: Order, terms: Vec<Term>) -> Self {
        let first_order = terms.iter().filter(|t| t.group == TermGroup::FirstOrder).map(|t| t.value).sum();
        let second_order_correction = terms.iter().filter(|t| t.group != TermGroup::FirstOrder).map(|t| t.value).sum();
        Self { first_order, second_order_correction, order, stderr: 0.0, warnings: Vec::new(), terms }
    }

    pub fn value(&self) -> f64 {
        match self.order {
            Order::First => self.first_order,
            Order::Second => self.first_order + self.second_order_correction,
        }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn term(&self, label: &str) -> Option<&Term> {
        self.terms.iter().find(|t| t.label == label)
    }
}

/// An FGM pair law for `(X_i, Y_i)` together with the weight model.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub pair: FgmPair,
    pub weights: WeightModel,
}

impl ModelSpec {
    pub fn new(pair: FgmPair, weights: WeightModel) -> Self {
        Self { pair, weights }
    }

    pub fn n(&self) -> usize {
        self.weights.n()
    }

    pub fn m(&self) -> usize {
        self.weights.m()
    }
}

/// How expectations over the weight law are computed.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum ExpectationMethod {
    Quadrature,
    MonteCarlo { n_mc: usize, seed: u64 },
}

impl ExpectationMethod {
    /// Quadrature for independent uniform weights, seeded Monte Carlo otherwise.
    pub fn default_for(wm: &WeightModel) -> Self {
        if wm.is_iid_uniform() {
            Self::Quadrature
        } else {
            Self::MonteCarlo { n_mc: DEFAULT_EXPECTATION_DRAWS, seed: DEFAULT_EXPECTATION_SEED }
        }
    }
}

/// Weighted marginal tails for one weight draw:
/// `F̄(x/θ_i)`, `F̄((x+1)/θ_i)`, `Ḡ(y/Θ_j)`, `Ḡ((y+1)/Θ_j)`.
struct Ctx<'a> {
    w: &'a WeightSample,
    fx: Vec<f64>,
    fx1: Vec<f64>,
    gy: Vec<f64>,
    gy1: Vec<f64>,
}

impl<'a> Ctx<'a> {
    fn new(f: &Marginal, g: &Marginal, w: &'a WeightSample, x: f64, y: f64) -> Self {
        let tails = |m: &Marginal, ws: &[f64], t: f64| -> Vec<f64> {
            ws.iter().map(|&c| if c.is_nan() { f64::NAN } else { m.sf(t / c) }).collect()
        };
        Self {
            w,
            fx: tails(f, &w.theta, x),
            fx1: tails(f, &w.theta, x + 1.0),
            gy: tails(g, &w.big_theta, y),
            gy1: tails(g, &w.big_theta, y + 1.0),
        }
    }

    #[inline]
    fn theta(&self, i: usize) -> f64 {
        self.w.theta[i]
    }

    #[inline]
    fn big_theta(&self, j: usize) -> f64 {
        self.w.big_theta[j]
    }

    /// `F(x/θ_i, (x+1)/θ_i]`
    #[inline]
    fn f_strip(&self, i: usize) -> f64 {
        self.fx[i] - self.fx1[i]
    }

    /// `G(y/Θ_j, (y+1)/Θ_j]`
    #[inline]
    fn g_strip(&self, j: usize) -> f64 {
        self.gy[j] - self.gy1[j]
    }
}

type TermFn = Box<dyn Fn(&Ctx) -> f64 + Send + Sync>;

struct TermSpec {
    label: String,
    group: TermGroup,
    coords: Vec<Coord>,
    eval: TermFn,
}

impl TermSpec {
    fn new(
        label: String,
        group: TermGroup,
        coords: Vec<Coord>,
        eval: impl Fn(&Ctx) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self { label, group, coords, eval: Box::new(eval) }
    }
}

use Coord::{BigTheta as Bt, Theta as Th};

/// Evaluates the asymptotic formulas for one model with a fixed expectation
/// method.
#[derive(Clone, Debug)]
pub struct Evaluator<'a> {
    ms: &'a ModelSpec,
    method: ExpectationMethod,
}

impl<'a> Evaluator<'a> {
    pub fn new(ms: &'a ModelSpec) -> Self {
        Self { ms, method: ExpectationMethod::default_for(&ms.weights) }
    }

    pub fn with_method(ms: &'a ModelSpec, method: ExpectationMethod) -> Self {
        Self { ms, method }
    }

    pub fn method(&self) -> ExpectationMethod {
        self.method
    }

    fn means(&self) -> Means {
        Means::of(&self.ms.pair)
    }

    /// `Σ_i Σ_j P(θ_i X_i > x, Θ_j Y_j > y)`.
    pub fn joint_asy1(&self, x: f64, y: f64) -> Result<AsymptoticEstimate> {
        check_positive(&[x, y])?;
        self.evaluate(Order::First, self.joint_first_order_terms(), x, y)
    }

    /// First order plus the mean-shift and dependence corrections.
    pub fn joint_asy2(&self, x: f64, y: f64) -> Result<AsymptoticEstimate> {
        check_positive(&[x, y])?;
        let (n, m) = (self.ms.n(), self.ms.m());
        let k = n.min(m);
        let r = self.ms.pair.r();
        let mu = self.means();
        let mut terms = self.joint_first_order_terms();

        for i in 0..n {
            for j in 0..m {
                for l in (0..m).filter(|&l| l != j) {
                    let label = format!("shift_second[{},{};{}]", i + 1, j + 1, l + 1);
                    let coef = mu.g;
                    terms.push(TermSpec::new(label, TermGroup::CrossIndex, vec![Th(i), Bt(j), Bt(l)], move |c| {
                        let p = if i == j {
                            rect_from_tails(r, c.fx[i], c.gy[j], c.gy1[j])
                        } else {
                            c.fx[i] * c.g_strip(j)
                        };
                        coef * c.big_theta(l) * p
                    }));
                }
                for l in (0..n).filter(|&l| l != i) {
                    let label = format!("shift_first[{},{};{}]", i + 1, j + 1, l + 1);
                    let coef = mu.f;
                    terms.push(TermSpec::new(label, TermGroup::CrossIndex, vec![Th(i), Bt(j), Th(l)], move |c| {
                        let p = if i == j {
                            rect_from_tails(r, c.gy[j], c.fx[i], c.fx1[i])
                        } else {
                            c.f_strip(i) * c.gy[j]
                        };
                        coef * c.theta(l) * p
                    }));
                }
            }
        }

        for i in 0..k {
            for j in (0..k).filter(|&j| j != i) {
                let coef = r * (mu.g_sq - mu.g);
                let label = format!("dependence_second[{},{}]", i + 1, j + 1);
                terms.push(TermSpec::new(label, TermGroup::Dependence, vec![Th(j), Bt(j), Bt(i)], move |c| {
                    coef * c.big_theta(j) * c.fx[j] * c.g_strip(i)
                }));
                let coef = r * (mu.f_sq - mu.f);
                let label = format!("dependence_first[{},{}]", i + 1, j + 1);
                terms.push(TermSpec::new(label, TermGroup::Dependence, vec![Th(j), Th(i), Bt(j)], move |c| {
                    coef * c.theta(j) * c.f_strip(i) * c.gy[j]
                }));
            }
        }
        self.evaluate(Order::Second, terms, x, y)
    }

    fn joint_first_order_terms(&self) -> Vec<TermSpec> {
        let r = self.ms.pair.r();
        let mut terms = Vec::new();
        for i in 0..self.ms.n() {
            for j in 0..self.ms.m() {
                let label = format!("joint_tail[{},{}]", i + 1, j + 1);
                terms.push(TermSpec::new(label, TermGroup::FirstOrder, vec![Th(i), Bt(j)], move |c| {
                    if i == j {
                        survival_from_tails(r, c.fx[i], c.gy[j])
                    } else {
                        c.fx[i] * c.gy[j]
                    }
                }));
            }
        }
        terms
    }

    /// `Σ_i P(θ_i X_i > z) + Σ_j P(Θ_j Y_j > z)`.
    pub fn sum_asy1(&self, z: f64) -> Result<AsymptoticEstimate> {
        check_positive(&[z])?;
        self.evaluate(Order::First, self.sum_first_order_terms(), z, z)
    }

    /// First order plus within-family, cross-family and dependence
    /// corrections. Flags a warning when the two local masses at `z` are far
    /// apart, since the expansion assumes they are of the same order.
    pub fn sum_asy2(&self, z: f64) -> Result<AsymptoticEstimate> {
        check_positive(&[z])?;
        let (n, m) = (self.ms.n(), self.ms.m());
        let r = self.ms.pair.r();
        let mu = self.means();
        let mut terms = self.sum_first_order_terms();

        for i in 0..n {
            for l in (0..n).filter(|&l| l != i) {
                let label = format!("within_first[{};{}]", l + 1, i + 1);
                terms.push(TermSpec::new(label, TermGroup::CrossIndex, vec![Th(i), Th(l)], move |c| {
                    mu.f * c.theta(i) * c.f_strip(l)
                }));
            }
        }
        for j in 0..m {
            for l in (0..m).filter(|&l| l != j) {
                let label = format!("within_second[{};{}]", l + 1, j + 1);
                terms.push(TermSpec::new(label, TermGroup::CrossIndex, vec![Bt(j), Bt(l)], move |c| {
                    mu.g * c.big_theta(j) * c.g_strip(l)
                }));
            }
        }
        for i in 0..n {
            for j in 0..m {
                let label = format!("across_second[{};{}]", j + 1, i + 1);
                terms.push(TermSpec::new(label, TermGroup::CrossIndex, vec![Th(i), Bt(j)], move |c| {
                    mu.f * c.theta(i) * c.g_strip(j)
                }));
                let label = format!("across_first[{};{}]", i + 1, j + 1);
                terms.push(TermSpec::new(label, TermGroup::CrossIndex, vec![Th(i), Bt(j)], move |c| {
                    mu.g * c.big_theta(j) * c.f_strip(i)
                }));
            }
        }
        for i in 0..n.min(m) {
            let coef = r * (mu.f_sq - mu.f);
            let label = format!("dependence_second[{}]", i + 1);
            terms.push(TermSpec::new(label, TermGroup::Dependence, vec![Th(i), Bt(i)], move |c| {
                coef * c.theta(i) * c.g_strip(i)
            }));
            let coef = r * (mu.g_sq - mu.g);
            let label = format!("dependence_first[{}]", i + 1);
            terms.push(TermSpec::new(label, TermGroup::Dependence, vec![Th(i), Bt(i)], move |c| {
                coef * c.big_theta(i) * c.f_strip(i)
            }));
        }

        let mut est = self.evaluate(Order::Second, terms, z, z)?;
        if let Some(w) = local_mass_warning(&self.ms.pair, z) {
            log::warn!("{w}");
            est.warnings.push(w);
        }
        Ok(est)
    }

    fn sum_first_order_terms(&self) -> Vec<TermSpec> {
        let mut terms = Vec::new();
        for i in 0..self.ms.n() {
            terms.push(TermSpec::new(format!("tail_first[{}]", i + 1), TermGroup::FirstOrder, vec![Th(i)], move |c| {
                c.fx[i]
            }));
        }
        for j in 0..self.ms.m() {
            let label = format!("tail_second[{}]", j + 1);
            terms.push(TermSpec::new(label, TermGroup::FirstOrder, vec![Bt(j)], move |c| c.gy[j]));
        }
        terms
    }

    /// Density form of the joint expansion for Pareto margins with tail
    /// indices above 2: local masses are replaced by `E[Θ^β] g(y)` and
    /// `E[θ^α] f(x)`.
    pub fn joint_asy2_rv(&self, x: f64, y: f64) -> Result<AsymptoticEstimate> {
        check_positive(&[x, y])?;
        let (alpha, beta) = pareto_indices(&self.ms.pair)?;
        if !(alpha > 2.0 && beta > 2.0) {
            return Err(Error::Unsupported(format!("density form needs tail indices above 2, got {alpha} and {beta}")));
        }
        let (n, m) = (self.ms.n(), self.ms.m());
        let k = n.min(m);
        let r = self.ms.pair.r();
        let mu = self.means();
        let fd = self.ms.pair.first().rv_density(x)?;
        let gd = self.ms.pair.second().rv_density(y)?;
        let mut terms = self.joint_first_order_terms();

        for i in 0..n {
            for j in 0..m {
                for l in (0..m).filter(|&l| l != j) {
                    let label = format!("shift_second[{},{};{}]", i + 1, j + 1, l + 1);
                    let coef = mu.g * gd;
                    terms.push(TermSpec::new(label, TermGroup::CrossIndex, vec![Th(i), Bt(j), Bt(l)], move |c| {
                        coef * c.big_theta(l) * c.big_theta(j).powf(beta) * c.fx[i]
                    }));
                }
                for l in (0..n).filter(|&l| l != i) {
                    let label = format!("shift_first[{},{};{}]", i + 1, j + 1, l + 1);
                    let coef = mu.f * fd;
                    terms.push(TermSpec::new(label, TermGroup::CrossIndex, vec![Th(i), Bt(j), Th(l)], move |c| {
                        coef * c.theta(l) * c.theta(i).powf(alpha) * c.gy[j]
                    }));
                }
            }
        }
        for i in 0..k {
            for j in (0..k).filter(|&j| j != i) {
                // Same-pair strip: the FGM rectangle carries an extra factor r.
                let coef = r * mu.g * gd;
                let label = format!("pair_shift_second[{},{}]", j + 1, i + 1);
                terms.push(TermSpec::new(label, TermGroup::Dependence, vec![Th(j), Bt(j), Bt(i)], move |c| {
                    coef * c.big_theta(i) * c.big_theta(j).powf(beta) * c.fx[j]
                }));
                let coef = r * mu.f * fd;
                let label = format!("pair_shift_first[{},{}]", i + 1, j + 1);
                terms.push(TermSpec::new(label, TermGroup::Dependence, vec![Th(i), Bt(i), Th(j)], move |c| {
                    coef * c.theta(j) * c.theta(i).powf(alpha) * c.gy[i]
                }));

                let coef = r * (mu.g_sq - mu.g) * gd;
                let label = format!("dependence_second[{},{}]", i + 1, j + 1);
                terms.push(TermSpec::new(label, TermGroup::Dependence, vec![Th(i), Bt(i), Bt(j)], move |c| {
                    coef * c.big_theta(i) * c.big_theta(j).powf(beta) * c.fx[i]
                }));
                let coef = r * (mu.f_sq - mu.f) * fd;
                let label = format!("dependence_first[{},{}]", i + 1, j + 1);
                terms.push(TermSpec::new(label, TermGroup::Dependence, vec![Th(i), Th(j), Bt(j)], move |c| {
                    coef * c.theta(j) * c.theta(i).powf(alpha) * c.gy[j]
                }));
            }
        }
        self.evaluate(Order::Second, terms, x, y)
    }

    /// Density form of the sum expansion; both margins must be Pareto with
    /// the same tail index above 2.
    pub fn sum_asy2_rv(&self, z: f64) -> Result<AsymptoticEstimate> {
        check_positive(&[z])?;
        let (alpha, beta) = pareto_indices(&self.ms.pair)?;
        if alpha != beta || !(alpha > 2.0) {
            return Err(Error::Unsupported(format!(
                "density form of the sum needs equal tail indices above 2, got {alpha} and {beta}"
            )));
        }
        let (n, m) = (self.ms.n(), self.ms.m());
        let r = self.ms.pair.r();
        let mu = self.means();
        let fd = self.ms.pair.first().rv_density(z)?;
        let gd = self.ms.pair.second().rv_density(z)?;
        let mut terms = self.sum_first_order_terms();

        for i in 0..n {
            for l in (0..n).filter(|&l| l != i) {
                let label = format!("within_first[{};{}]", l + 1, i + 1);
                terms.push(TermSpec::new(label, TermGroup::CrossIndex, vec![Th(i), Th(l)], move |c| {
                    mu.f * fd * c.theta(i) * c.theta(l).powf(alpha)
                }));
            }
        }
        for j in 0..m {
            for l in (0..m).filter(|&l| l != j) {
                let label = format!("within_second[{};{}]", l + 1, j + 1);
                terms.push(TermSpec::new(label, TermGroup::CrossIndex, vec![Bt(j), Bt(l)], move |c| {
                    mu.g * gd * c.big_theta(j) * c.big_theta(l).powf(alpha)
                }));
            }
        }
        for i in 0..n {
            for j in 0..m {
                let label = format!("across_second[{};{}]", j + 1, i + 1);
                terms.push(TermSpec::new(label, TermGroup::CrossIndex, vec![Th(i), Bt(j)], move |c| {
                    mu.f * gd * c.theta(i) * c.big_theta(j).powf(alpha)
                }));
                let label = format!("across_first[{};{}]", i + 1, j + 1);
                terms.push(TermSpec::new(label, TermGroup::CrossIndex, vec![Th(i), Bt(j)], move |c| {
                    mu.g * fd * c.theta(i).powf(alpha) * c.big_theta(j)
                }));
            }
        }
        for i in 0..n.min(m) {
            let coef = r * (mu.f_sq - mu.f) * gd;
            let label = format!("dependence_second[{}]", i + 1);
            terms.push(TermSpec::new(label, TermGroup::Dependence, vec![Th(i), Bt(i)], move |c| {
                coef * c.theta(i) * c.big_theta(i).powf(alpha)
            }));
            let coef = r * (mu.g_sq - mu.g) * fd;
            let label = format!("dependence_first[{}]", i + 1);
            terms.push(TermSpec::new(label, TermGroup::Dependence, vec![Th(i), Bt(i)], move |c| {
                coef * c.theta(i).powf(alpha) * c.big_theta(i)
            }));
        }
        self.evaluate(Order::Second, terms, z, z)
    }

    fn evaluate(&self, order: Order, specs: Vec<TermSpec>, x: f64, y: f64) -> Result<AsymptoticEstimate> {
        let (f, g) = (self.ms.pair.first(), self.ms.pair.second());
        let wm = &self.ms.weights;
        match self.method {
            ExpectationMethod::Quadrature => {
                let mut terms = Vec::with_capacity(specs.len());
                for s in &specs {
                    let v = weight_expectation_quadrature(wm, &s.coords, |w| (s.eval)(&Ctx::new(f, g, w, x, y)))?;
                    terms.push(Term::new(s.label.clone(), s.group, v));
                }
                Ok(AsymptoticEstimate::from_terms(order, terms))
            }
            ExpectationMethod::MonteCarlo { n_mc, seed } => {
                let k = specs.len();
                // Two extra functionals: the per-draw first-order total and
                // the full total, whose spreads give the reported stderr.
                let ex = weight_expectations(
                    wm,
                    k + 2,
                    |w, out| {
                        let c = Ctx::new(f, g, w, x, y);
                        let (mut first, mut all) = (0.0, 0.0);
                        for (o, s) in out.iter_mut().zip(&specs) {
                            let v = (s.eval)(&c);
                            *o = v;
                            all += v;
                            if s.group == TermGroup::FirstOrder {
                                first += v;
                            }
                        }
                        out[k] = first;
                        out[k + 1] = all;
                    },
                    n_mc,
                    seed,
                )?;
                let terms = specs.iter().zip(&ex).map(|(s, e)| Term::new(s.label.clone(), s.group, e.value)).collect();
                let mut est = AsymptoticEstimate::from_terms(order, terms);
                est.stderr = match order {
                    Order::First => ex[k].stderr,
                    Order::Second => ex[k + 1].stderr,
                };
                Ok(est)
            }
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Means {
    f: f64,
    f_sq: f64,
    g: f64,
    g_sq: f64,
}

impl Means {
    fn of(pair: &FgmPair) -> Self {
        Self {
            f: pair.first().mean(),
            f_sq: pair.first().mean_of_square_dist(),
            g: pair.second().mean(),
            g_sq: pair.second().mean_of_square_dist(),
        }
    }
}

fn check_positive(t: &[f64]) -> Result<()> {
    if t.iter().all(|&v| v > 0.0 && v.is_finite()) {
        Ok(())
    } else {
        Err(domain(format!("thresholds must be positive and finite, got {t:?}")))
    }
}

fn pareto_indices(pair: &FgmPair) -> Result<(f64, f64)> {
    match (pair.first().tail_index(), pair.second().tail_index()) {
        (Some(a), Some(b)) => Ok((a, b)),
        _ => Err(Error::Unsupported(format!(
            "density form needs Pareto margins, got {} and {}",
            pair.first(),
            pair.second()
        ))),
    }
}

/// Warning text when `F(z, z+1] / G(z, z+1]` leaves the accepted band.
pub fn local_mass_warning(pair: &FgmPair, z: f64) -> Option<String> {
    let lf = pair.first().mass_between(z, z + 1.0);
    let lg = pair.second().mass_between(z, z + 1.0);
    let ratio = lf / lg;
    let (lo, hi) = LOCAL_MASS_RATIO_BAND;
    if ratio >= lo && ratio <= hi {
        None
    } else {
        Some(format!(
            "local masses at z={z} are not comparable (F/G ratio {ratio:.3e}); the sum expansion may be unreliable"
        ))
    }
}

pub fn joint_asy1(ms: &ModelSpec, x: f64, y: f64) -> Result<AsymptoticEstimate> {
    Evaluator::new(ms).joint_asy1(x, y)
}

pub fn joint_asy2(ms: &ModelSpec, x: f64, y: f64) -> Result<AsymptoticEstimate> {
    Evaluator::new(ms).joint_asy2(x, y)
}

pub fn sum_asy1(ms: &ModelSpec, z: f64) -> Result<AsymptoticEstimate> {
    Evaluator::new(ms).sum_asy1(z)
}

pub fn sum_asy2(ms: &ModelSpec, z: f64) -> Result<AsymptoticEstimate> {
    Evaluator::new(ms).sum_asy2(z)
}

pub fn joint_asy2_rv(ms: &ModelSpec, x: f64, y: f64) -> Result<AsymptoticEstimate> {
    Evaluator::new(ms).joint_asy2_rv(x, y)
}

pub fn sum_asy2_rv(ms: &ModelSpec, z: f64) -> Result<AsymptoticEstimate> {
    Evaluator::new(ms).sum_asy2_rv(z)
}

/// Two-line discrete-time risk model: losses `(X_k, Y_k)` in period `k`
/// discounted by accumulated factors `∏R` and `∏R̃`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RiskConfig {
    pub pair: FgmPair,
    /// A discount-product weight law; its counts are replaced by the horizon.
    pub discount: WeightModel,
}

impl RiskConfig {
    pub fn new(pair: FgmPair, discount: WeightModel) -> Result<Self> {
        if !matches!(discount.law(), WeightLaw::DiscountProduct { .. }) {
            return Err(crate::error::config("risk model needs the discount_product weight law"));
        }
        Ok(Self { pair, discount })
    }

    /// The weighted-sum model over `horizon` periods.
    pub fn model(&self, horizon: usize) -> Result<ModelSpec> {
        if horizon == 0 {
            return Err(domain("risk horizon must be at least 1"));
        }
        Ok(ModelSpec::new(self.pair.clone(), self.discount.with_counts(horizon, horizon)?))
    }
}

/// Probability that both lines' discounted losses exceed their surpluses
/// `x` and `y` within `horizon` periods.
pub fn risk_joint_asy2(cfg: &RiskConfig, x: f64, y: f64, horizon: usize) -> Result<AsymptoticEstimate> {
    joint_asy2(&cfg.model(horizon)?, x, y)
}

/// Probability that the total discounted loss exceeds `x + y`.
pub fn risk_sum_asy2(cfg: &RiskConfig, x: f64, y: f64, horizon: usize) -> Result<AsymptoticEstimate> {
    sum_asy2(&cfg.model(horizon)?, x + y)
}
