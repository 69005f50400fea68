//! Numerical integration: adaptive Gauss–Kronrod (7/15) on finite intervals
//! and fixed Gauss–Legendre rules for tensor-product expectations.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

// Positive half of the 15-point Kronrod abscissae; index 0 is the centre.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.0,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.991_455_371_120_812_639_206_854_697_526_329,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.209_482_141_084_727_828_012_999_174_891_714,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.022_935_322_010_529_224_963_732_008_058_970,
];
// Gauss weights for Kronrod nodes 0, 2, 4, 6.
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.417_959_183_673_469_387_755_102_040_816_327,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.129_484_966_168_869_693_270_611_432_679_082,
];

const MAX_SEGMENTS: usize = 4000;

/// Value and absolute error estimate of a quadrature.
#[derive(Clone, Copy, Debug)]
pub struct Integral {
    pub value: f64,
    pub abs_error: f64,
}

/// One G7/K15 panel on `[a, b]`; the error is |K15 − G7|.
pub fn gauss_kronrod_15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Integral {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut kronrod = WGK[0] * fc;
    let mut gauss = WG[0] * fc;
    for k in 1..8 {
        let dx = half * XGK[k];
        let pair = f(centre - dx) + f(centre + dx);
        kronrod += WGK[k] * pair;
        if k % 2 == 0 {
            gauss += WG[k / 2] * pair;
        }
    }
    Integral { value: kronrod * half, abs_error: ((kronrod - gauss) * half).abs() }
}

struct Panel {
    a: f64,
    b: f64,
    est: Integral,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.est.abs_error == other.est.abs_error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.est.abs_error.total_cmp(&other.est.abs_error)
    }
}

/// Globally adaptive bisection of `[a, b]`, always splitting the panel with
/// the largest error, until the total error is below
/// `max(abs_tol, rel_tol * |value|)`.
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, rel_tol: f64, abs_tol: f64) -> Result<Integral> {
    if a == b {
        return Ok(Integral { value: 0.0, abs_error: 0.0 });
    }
    let first = gauss_kronrod_15(f, a, b);
    let mut value = first.value;
    let mut error = first.abs_error;
    let mut heap = BinaryHeap::new();
    heap.push(Panel { a, b, est: first });

    while error > abs_tol.max(rel_tol * value.abs()) {
        if heap.len() >= MAX_SEGMENTS {
            return Err(Error::Quadrature(format!(
                "[{a}, {b}]: error {error:.3e} after {MAX_SEGMENTS} panels (value {value:.6e})"
            )));
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Panel cannot be split further in floating point; accept it.
            heap.push(Panel { est: Integral { value: worst.est.value, abs_error: 0.0 }, ..worst });
            error -= worst.est.abs_error;
            continue;
        }
        let left = gauss_kronrod_15(f, worst.a, mid);
        let right = gauss_kronrod_15(f, mid, worst.b);
        value += left.value + right.value - worst.est.value;
        error += left.abs_error + right.abs_error - worst.est.abs_error;
        heap.push(Panel { a: worst.a, b: mid, est: left });
        heap.push(Panel { a: mid, b: worst.b, est: right });
    }

    // Re-sum to shed the drift of the running updates.
    let (value, abs_error) = heap.iter().fold((0.0, 0.0), |(v, e), p| (v + p.est.value, e + p.est.abs_error));
    Ok(Integral { value, abs_error })
}

/// Integrates over consecutive segments `[p0, p1], [p1, p2], ...`, giving each
/// segment its own adaptive run. Useful when the integrand varies over many
/// orders of magnitude and breakpoints are known.
pub fn integrate_segments<F: Fn(f64) -> f64>(f: &F, breakpoints: &[f64], rel_tol: f64) -> Result<Integral> {
    let mut total = Integral { value: 0.0, abs_error: 0.0 };
    // Segments are visited largest-contribution-last is not known a priori;
    // a coarse first pass sets the absolute scale for the rest.
    let scale: f64 = breakpoints.windows(2).map(|w| gauss_kronrod_15(f, w[0], w[1]).value.abs()).sum();
    let abs_tol = rel_tol * scale / breakpoints.len().max(1) as f64;
    for w in breakpoints.windows(2) {
        let part = integrate(f, w[0], w[1], rel_tol, abs_tol)?;
        total.value += part.value;
        total.abs_error += part.abs_error;
    }
    Ok(total)
}

/// Geometric breakpoints `0, h, 2h, 4h, ..., upper` used for integrands on
/// `[0, upper]` whose mass concentrates near the origin.
pub fn geometric_breakpoints(first: f64, upper: f64) -> Vec<f64> {
    let mut points = vec![0.0];
    let mut p = first;
    while p < upper {
        points.push(p);
        p *= 2.0;
    }
    points.push(upper);
    points
}

/// An n-point Gauss–Legendre rule on `[-1, 1]`.
#[derive(Clone, Debug)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Nodes by Newton iteration on P_n from the Chebyshev initial guess.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, z);
                for k in 2..=n {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                let pn = if n == 1 { z } else { p1 };
                let pn1 = if n == 1 { 1.0 } else { p0 };
                dp = nf * (z * pn - pn1) / (z * z - 1.0);
                let dz = pn / dp;
                z -= dz;
                if dz.abs() < 1e-16 {
                    break;
                }
            }
            if n == 1 {
                z = 0.0;
                dp = 1.0;
            }
            nodes[i] = -z;
            nodes[n - 1 - i] = z;
            let w = 2.0 / ((1.0 - z * z) * dp * dp);
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n == 1 {
            weights[0] = 2.0;
        }
        Self { nodes, weights }
    }

    /// Nodes mapped to `[a, b]` with weights normalised to sum to one, so the
    /// rule computes the mean of a function under U[a, b].
    pub fn uniform_expectation_rule(&self, a: f64, b: f64) -> Vec<(f64, f64)> {
        let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
        self.nodes.iter().zip(&self.weights).map(|(&t, &w)| (mid + half * t, 0.5 * w)).collect()
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64) -> f64 {
        let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
        half * self.nodes.iter().zip(&self.weights).map(|(&t, &w)| w * f(mid + half * t)).sum::<f64>()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronrod_exact_on_low_degree_polynomials() {
        let f = |x: f64| 3.0 * x.powi(5) - x * x + 2.0;
        let got = gauss_kronrod_15(&f, -1.0, 2.0).value;
        let exact = 0.5 * (64.0 - 1.0) - (8.0 + 1.0) / 3.0 + 6.0;
        assert!((got - exact).abs() < 1e-12);
    }

    #[test]
    fn adaptive_handles_endpoint_singularity() {
        // ∫_0^1 x^{-1/2} dx = 2
        let f = |x: f64| x.powf(-0.5);
        let got = integrate(&f, 0.0, 1.0, 1e-10, 0.0).unwrap();
        assert!((got.value - 2.0).abs() < 1e-8, "{}", got.value);
    }

    #[test]
    fn segments_over_heavy_tail() {
        // ∫_0^∞ (1+x)^{-3} dx = 1/2, truncated at 1e6 (remainder 5e-13).
        let f = |x: f64| (1.0 + x).powi(-3);
        let bp = geometric_breakpoints(1.0, 1e6);
        let got = integrate_segments(&f, &bp, 1e-12).unwrap();
        assert!((got.value - 0.5).abs() < 1e-11);
    }

    #[test]
    fn legendre_weights_and_exactness() {
        for n in [1, 2, 5, 32] {
            let rule = GaussLegendre::new(n);
            let wsum: f64 = rule.weights.iter().sum();
            assert!((wsum - 2.0).abs() < 1e-13, "n={n}");
            // exact for degree 2n-1
            let deg = 2 * n - 1;
            let got = rule.integrate(|x| x.powi(deg as i32) + 1.0, 0.0, 1.0);
            let exact = 1.0 / (deg as f64 + 1.0) + 1.0;
            assert!((got - exact).abs() < 1e-13, "n={n}");
        }
    }

    #[test]
    fn legendre_nodes_sorted_and_symmetric() {
        let rule = GaussLegendre::new(32);
        assert!(rule.nodes.windows(2).all(|w| w[0] < w[1]));
        for i in 0..32 {
            assert!((rule.nodes[i] + rule.nodes[31 - i]).abs() < 1e-15);
        }
    }
}
