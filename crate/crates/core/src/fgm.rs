//! Farlie–Gumbel–Morgenstern dependence between two marginals.
//!
//! `Π(x, y) = F(x) G(y) (1 + r F̄(x) Ḡ(y))` with `|r| ≤ 1`. Joint tail and
//! rectangle probabilities are closed form; sampling inverts the conditional
//! copula exactly.

use serde::{Deserialize, Serialize};

use crate::asymptotics::{AsymptoticEstimate, Order, Term, TermGroup};
use crate::distributions::Marginal;
use crate::error::{config, domain, Error, Result};

/// `P(X > x, Y > y)` from the marginal tails `F̄(x)` and `Ḡ(y)`.
#[inline]
pub fn survival_from_tails(r: f64, fbar: f64, gbar: f64) -> f64 {
    fbar * gbar * (1.0 + r * (1.0 - fbar) * (1.0 - gbar))
}

/// `P(X > x, Y ∈ (y1, y2])` from `F̄(x)`, `Ḡ(y1)` and `Ḡ(y2)`.
///
/// Equal to `survival(x, y1) − survival(x, y2)` but evaluated as
/// `F̄ ΔG (1 + r F (1 − Ḡ₁ − Ḡ₂))`, which has no cancellation.
#[inline]
pub fn rect_from_tails(r: f64, fbar: f64, gbar_lo: f64, gbar_hi: f64) -> f64 {
    fbar * (gbar_lo - gbar_hi) * (1.0 + r * (1.0 - fbar) * (1.0 - gbar_lo - gbar_hi))
}

/// Solves the conditional copula equation `(1+A)v − Av² = w` with
/// `A = r(1 − 2u)`; the root in `(0, 1)` written in its cancellation-free form.
#[inline]
pub fn conditional_inverse(r: f64, u: f64, w: f64) -> f64 {
    let a = r * (1.0 - 2.0 * u);
    let b = 1.0 + a;
    2.0 * w / (b + (b * b - 4.0 * a * w).sqrt())
}

/// A bivariate FGM law with marginals `F` (first) and `G` (second).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPair", into = "RawPair")]
pub struct FgmPair {
    r: f64,
    first: Marginal,
    second: Marginal,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPair {
    r: f64,
    first: Marginal,
    second: Marginal,
}

impl TryFrom<RawPair> for FgmPair {
    type Error = Error;
    fn try_from(raw: RawPair) -> Result<Self> {
        FgmPair::new(raw.r, raw.first, raw.second)
    }
}

impl From<FgmPair> for RawPair {
    fn from(p: FgmPair) -> Self {
        RawPair { r: p.r, first: p.first, second: p.second }
    }
}

/// Survival and the two strip masses at one corner `(x, y)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JointTailTerms {
    /// `P(X > x, Y > y)`
    pub survival: f64,
    /// `P(X > x, Y ∈ (y, y+1])`
    pub strip_second: f64,
    /// `P(X ∈ (x, x+1], Y > y)`
    pub strip_first: f64,
}

impl FgmPair {
    pub fn new(r: f64, first: Marginal, second: Marginal) -> Result<Self> {
        if !(r.abs() <= 1.0) {
            return Err(config(format!("FGM parameter r must lie in [-1, 1], got {r}")));
        }
        Ok(Self { r, first, second })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn first(&self) -> &Marginal {
        &self.first
    }

    pub fn second(&self) -> &Marginal {
        &self.second
    }

    /// `Π(x, y)`.
    pub fn joint_cdf(&self, x: f64, y: f64) -> f64 {
        let (f, g) = (self.first.cdf(x), self.second.cdf(y));
        f * g * (1.0 + self.r * (1.0 - f) * (1.0 - g))
    }

    /// `P(X > x, Y > y) = F̄(x)Ḡ(y)(1 + r F(x) G(y))`.
    pub fn joint_tail(&self, x: f64, y: f64) -> Result<f64> {
        check_corner(x, y)?;
        Ok(survival_from_tails(self.r, self.first.sf(x), self.second.sf(y)))
    }

    /// `P(X > x, Y ∈ (y1, y2])`; `y2` may be `+∞`.
    pub fn joint_rect(&self, x: f64, y1: f64, y2: f64) -> Result<f64> {
        check_corner(x, y1)?;
        if !(y1 < y2) {
            return Err(domain(format!("joint_rect needs y1 < y2, got ({y1}, {y2}]")));
        }
        let hi = if y2.is_infinite() { 0.0 } else { self.second.sf(y2) };
        Ok(rect_from_tails(self.r, self.first.sf(x), self.second.sf(y1), hi))
    }

    /// `P(X ∈ (x1, x2], Y > y)`; the rectangle with coordinate roles swapped.
    pub fn joint_rect_first(&self, x1: f64, x2: f64, y: f64) -> Result<f64> {
        check_corner(x1, y)?;
        if !(x1 < x2) {
            return Err(domain(format!("joint_rect_first needs x1 < x2, got ({x1}, {x2}]")));
        }
        let hi = if x2.is_infinite() { 0.0 } else { self.first.sf(x2) };
        Ok(rect_from_tails(self.r, self.second.sf(y), self.first.sf(x1), hi))
    }

    pub fn tail_terms(&self, x: f64, y: f64) -> Result<JointTailTerms> {
        Ok(JointTailTerms {
            survival: self.joint_tail(x, y)?,
            strip_second: self.joint_rect(x, y, y + 1.0)?,
            strip_first: self.joint_rect_first(x, x + 1.0, y)?,
        })
    }

    /// Copula coordinates `(u, v)` from two independent uniforms.
    #[inline]
    pub fn sample_copula(&self, u: f64, w: f64) -> (f64, f64) {
        (u, conditional_inverse(self.r, u, w))
    }

    /// `(F⁻¹(u), G⁻¹(v))` where `v` solves the conditional copula equation.
    #[inline]
    pub fn sample_pair(&self, u: f64, w: f64) -> (f64, f64) {
        let (u, v) = self.sample_copula(u, w);
        (self.first.quantile(u), self.second.quantile(v))
    }

    /// `(F̄⁻¹(u), Ḡ⁻¹(v))`. The FGM copula is radially symmetric, so this has
    /// the same law as [`sample_pair`](Self::sample_pair) while keeping full
    /// relative precision deep in both tails.
    #[inline]
    pub fn sample_tail_pair(&self, u: f64, w: f64) -> (f64, f64) {
        let (u, v) = self.sample_copula(u, w);
        (self.first.tail_quantile(u), self.second.tail_quantile(v))
    }

    /// Kendall's tau of the FGM copula, `2r/9`.
    pub fn kendall_tau(&self) -> f64 {
        2.0 * self.r / 9.0
    }

    /// Two-term expansion of `P(cX + dY > x)`:
    ///
    /// `F̄(x/c) + Ḡ(x/d) + d(rμ_{G²} + (1−r)μ_G) F(x/c, (x+1)/c]
    ///  + c(rμ_{F²} + (1−r)μ_F) G(x/d, (x+1)/d]`.
    ///
    /// Each second-order coefficient is split into its independence part
    /// (`μ_G`, `μ_F`) and its `r`-multiplied part so that the breakdown
    /// reduces term by term to the independent expansion at `r = 0`.
    pub fn pair_sum_tail_expansion(&self, c: f64, d: f64, x: f64) -> Result<AsymptoticEstimate> {
        if !(c > 0.0 && d > 0.0) {
            return Err(domain(format!("weights must be positive, got c={c}, d={d}")));
        }
        if !(x > 0.0) {
            return Err(domain(format!("threshold must be positive, got {x}")));
        }
        let (f, g) = (&self.first, &self.second);
        let local_f = f.mass_between(x / c, (x + 1.0) / c);
        let local_g = g.mass_between(x / d, (x + 1.0) / d);
        let terms = vec![
            Term::new("tail_first", TermGroup::FirstOrder, f.sf(x / c)),
            Term::new("tail_second", TermGroup::FirstOrder, g.sf(x / d)),
            Term::new("mean_shift_first", TermGroup::CrossIndex, d * g.mean() * local_f),
            Term::new("mean_shift_second", TermGroup::CrossIndex, c * f.mean() * local_g),
            Term::new(
                "dependence_first",
                TermGroup::Dependence,
                self.r * d * (g.mean_of_square_dist() - g.mean()) * local_f,
            ),
            Term::new(
                "dependence_second",
                TermGroup::Dependence,
                self.r * c * (f.mean_of_square_dist() - f.mean()) * local_g,
            ),
        ];
        Ok(AsymptoticEstimate::from_terms(Order::Second, terms))
    }
}

fn check_corner(x: f64, y: f64) -> Result<()> {
    if x >= 0.0 && y >= 0.0 {
        Ok(())
    } else {
        Err(domain(format!("joint probabilities need x, y >= 0, got ({x}, {y})")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{chunk_rng, open_unit};
    use proptest::prelude::*;

    fn table1_pair(r: f64) -> FgmPair {
        FgmPair::new(r, Marginal::pareto(2.01, 2.0).unwrap(), Marginal::pareto(2.2, 4.0).unwrap()).unwrap()
    }

    #[test]
    fn survival_examples() {
        assert!((survival_from_tails(0.0, 0.1, 0.2) - 0.02).abs() < 1e-17);
        assert!((survival_from_tails(0.5, 0.1, 0.2) - 0.0272).abs() < 1e-16);
        assert_eq!(survival_from_tails(-1.0, 0.0, 0.0), 0.0);
        assert!(survival_from_tails(-1.0, 1e-12, 1e-12) < 1e-23);
    }

    #[test]
    fn joint_tail_matches_inclusion_exclusion() {
        for r in [-1.0, -0.3, 0.0, 0.5, 1.0] {
            let p = table1_pair(r);
            for x in [0.0, 0.5, 2.0, 10.0, 40.0] {
                for y in [0.0, 1.0, 4.0, 25.0, 80.0] {
                    let direct = p.joint_tail(x, y).unwrap();
                    let ie = 1.0 - p.first().cdf(x) - p.second().cdf(y) + p.joint_cdf(x, y);
                    assert!((direct - ie).abs() < 1e-14, "r={r} ({x},{y})");
                }
            }
        }
    }

    #[test]
    fn joint_cdf_marginal_consistency() {
        let p = table1_pair(0.7);
        for y in [0.5, 3.0, 30.0] {
            assert!((p.joint_cdf(f64::INFINITY, y) - p.second().cdf(y)).abs() < 1e-15);
            assert!((p.joint_cdf(y, f64::INFINITY) - p.first().cdf(y)).abs() < 1e-15);
        }
    }

    #[test]
    fn rect_special_cases_and_additivity() {
        let p = table1_pair(0.0);
        let (x, y1, y2) = (5.0, 3.0, 9.0);
        let indep = p.first().sf(x) * (p.second().cdf(y2) - p.second().cdf(y1));
        assert!((p.joint_rect(x, y1, y2).unwrap() - indep).abs() < 1e-15);

        let p = table1_pair(0.5);
        let strip = p.joint_rect(x, y1, f64::INFINITY).unwrap();
        assert!((strip - p.joint_tail(x, y1).unwrap()).abs() < 1e-16);
        for (a, b, c) in [(1.0, 2.0, 3.0), (20.0, 25.0, 26.0), (0.0, 0.5, 100.0)] {
            let lhs = p.joint_rect(x, a, b).unwrap() + p.joint_rect(x, b, c).unwrap();
            assert!((lhs - p.joint_rect(x, a, c).unwrap()).abs() < 1e-14);
            let lhs = p.joint_rect_first(a, b, x).unwrap() + p.joint_rect_first(b, c, x).unwrap();
            assert!((lhs - p.joint_rect_first(a, c, x).unwrap()).abs() < 1e-14);
            let diff = p.joint_tail(x, a).unwrap() - p.joint_tail(x, b).unwrap();
            assert!((p.joint_rect(x, a, b).unwrap() - diff).abs() < 1e-15);
        }
        assert!(matches!(p.joint_rect(1.0, 3.0, 3.0), Err(Error::Domain(_))));
        assert!(p.joint_rect_first(4.0, 2.0, 1.0).is_err());
        assert!(p.joint_tail(-1.0, 2.0).is_err());
    }

    #[test]
    fn tail_terms_bounded_by_survival() {
        let p = table1_pair(-0.8);
        let t = p.tail_terms(20.0, 25.0).unwrap();
        assert!(t.strip_first <= t.survival && t.strip_second <= t.survival);
        assert!(t.strip_first >= 0.0 && t.strip_second >= 0.0 && t.survival <= 1.0);
    }

    #[test]
    fn rejects_out_of_range_r() {
        let m = Marginal::pareto(2.5, 1.0).unwrap();
        assert!(FgmPair::new(1.01, m.clone(), m.clone()).is_err());
        assert!(FgmPair::new(f64::NAN, m.clone(), m).is_err());
    }

    #[test]
    fn sampler_branches() {
        let p = table1_pair(0.9);
        for w in [1e-9, 0.2, 0.7, 1.0 - 1e-9] {
            assert_eq!(p.sample_copula(0.5, w).1, w);
        }
        let indep = table1_pair(0.0);
        for (u, w) in [(0.1, 0.3), (0.99, 0.01)] {
            assert_eq!(indep.sample_copula(u, w).1, w);
        }
    }

    #[test]
    fn conditional_inverse_solves_quadratic() {
        for r in [-1.0, -0.4, 0.3, 1.0] {
            for u in [1e-12, 0.2, 0.5 + 1e-12, 0.8, 1.0 - 1e-12] {
                for w in [1e-15, 0.3, 0.9, 1.0 - 1e-15] {
                    let v = conditional_inverse(r, u, w);
                    let a = r * (1.0 - 2.0 * u);
                    assert!(v > 0.0 && v < 1.0);
                    assert!(((1.0 + a) * v - a * v * v - w).abs() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn pair_expansion_independent_specialisation() {
        let m = Marginal::pareto(2.01, 1.0).unwrap();
        let g = Marginal::weibull(0.5).unwrap();
        let p = FgmPair::new(0.0, m.clone(), g.clone()).unwrap();
        let x = 30.0;
        let est = p.pair_sum_tail_expansion(1.0, 1.0, x).unwrap();
        let want =
            [m.sf(x), g.sf(x), g.mean() * m.mass_between(x, x + 1.0), m.mean() * g.mass_between(x, x + 1.0), 0.0, 0.0];
        for (t, w) in est.terms().iter().zip(want) {
            assert_eq!(t.value, w, "{}", t.label);
        }
    }

    #[test]
    fn pair_expansion_coefficients_combine() {
        let p = FgmPair::new(0.6, Marginal::pareto(2.01, 1.0).unwrap(), Marginal::pareto(2.01, 1.0).unwrap()).unwrap();
        let (c, d, x) = (1.3, 1.7, 40.0);
        let est = p.pair_sum_tail_expansion(c, d, x).unwrap();
        let f = p.first();
        let coef = 0.6 * f.mean_of_square_dist() + 0.4 * f.mean();
        let want = f.sf(x / c)
            + f.sf(x / d)
            + d * coef * f.mass_between(x / c, (x + 1.0) / c)
            + c * coef * f.mass_between(x / d, (x + 1.0) / d);
        assert!(((est.value() - want) / want).abs() < 1e-14);
        assert!(p.pair_sum_tail_expansion(0.0, 1.0, 1.0).is_err());
    }

    // For Pareto tails F̄(x/c) = (1 + x/(ck))^{-α}: doubling c and x leaves the
    // first-order terms exactly unchanged.
    #[test]
    fn pair_expansion_first_order_scaling() {
        let p = table1_pair(0.5);
        let a = p.pair_sum_tail_expansion(1.2, 1.5, 60.0).unwrap();
        let b = p.pair_sum_tail_expansion(2.4, 3.0, 120.0).unwrap();
        assert!((a.first_order - b.first_order).abs() < 1e-15 * a.first_order.max(1.0));
        // Doubling x alone scales each tail by roughly 2^{-α}.
        let c = p.pair_sum_tail_expansion(1.2, 1.5, 6000.0).unwrap();
        let d = p.pair_sum_tail_expansion(1.2, 1.5, 12000.0).unwrap();
        let ratio = d.terms()[0].value / c.terms()[0].value;
        assert!((ratio / 2f64.powf(-2.01) - 1.0).abs() < 1e-3);
    }

    #[test]
    fn empirical_joint_tail_on_grid() {
        let p = table1_pair(0.5);
        let n = 1_000_000usize;
        let mut rng = chunk_rng(11, 0, 0);
        let xs = [0.5, 2.0, 6.0, 15.0];
        let ys = [1.0, 4.0, 10.0, 30.0];
        let mut hits = [[0u64; 4]; 4];
        for _ in 0..n {
            let (x, y) = p.sample_pair(open_unit(&mut rng), open_unit(&mut rng));
            for (i, &a) in xs.iter().enumerate() {
                for (j, &b) in ys.iter().enumerate() {
                    hits[i][j] += (x > a && y > b) as u64;
                }
            }
        }
        for (i, &a) in xs.iter().enumerate() {
            for (j, &b) in ys.iter().enumerate() {
                let exact = p.joint_tail(a, b).unwrap();
                let emp = hits[i][j] as f64 / n as f64;
                let se = (exact * (1.0 - exact) / n as f64).sqrt();
                // Sixteen correlated cells share one sample; 4 sigma family-wise.
                assert!((emp - exact).abs() < 4.0 * se, "({a},{b}): {emp} vs {exact}");
            }
        }
    }

    proptest! {
        #[test]
        fn joint_cdf_in_unit_interval_and_monotone(
            r in -1.0f64..=1.0, x in 0.0f64..200.0, y in 0.0f64..200.0, dx in 0.0f64..50.0
        ) {
            let p = table1_pair(r);
            let c0 = p.joint_cdf(x, y);
            prop_assert!((0.0..=1.0).contains(&c0));
            prop_assert!(p.joint_cdf(x + dx, y) >= c0 - 1e-15);
            prop_assert!(p.joint_cdf(x, y + dx) >= c0 - 1e-15);
        }
    }
}
