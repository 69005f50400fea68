use rwsum::asymptotics::{joint_asy1, sum_asy1};
use rwsum::montecarlo::{
    estimate_asy_paper_joint, estimate_asy_paper_sum, simulate_joint_tail, simulate_sum_tail, McSettings,
};
use rwsum::{FgmPair, Marginal, ModelSpec, WeightModel};

fn independent_single() -> ModelSpec {
    let pair = FgmPair::new(0.0, Marginal::pareto(2.01, 1.0).unwrap(), Marginal::pareto(2.2, 2.0).unwrap()).unwrap();
    ModelSpec::new(pair, WeightModel::unit(1, 1))
}

fn table2() -> ModelSpec {
    let pair = FgmPair::new(0.6, Marginal::pareto(2.01, 1.0).unwrap(), Marginal::pareto(2.01, 1.0).unwrap()).unwrap();
    ModelSpec::new(pair, WeightModel::iid_uniform((1.0, 2.0), (1.0, 2.0), 2, 2).unwrap())
}

fn table1() -> ModelSpec {
    let pair = FgmPair::new(0.5, Marginal::pareto(2.01, 2.0).unwrap(), Marginal::pareto(2.2, 4.0).unwrap()).unwrap();
    ModelSpec::new(pair, WeightModel::iid_uniform((1.0, 2.0), (1.0, 2.0), 2, 2).unwrap())
}

#[test]
fn unbiased_against_independence_product() {
    let ms = independent_single();
    let (x, y) = (2.0, 3.0);
    let exact = ms.pair.first().sf(x) * ms.pair.second().sf(y);
    let covered = (0..100u64)
        .filter(|&seed| {
            let s = McSettings::new(10_000, 10, 1_000 + seed).unwrap();
            let e = simulate_joint_tail(&ms, x, y, &s).unwrap();
            (e.mean - exact).abs() < 3.0 * e.stderr
        })
        .count();
    assert!(covered >= 95, "covered {covered} of 100");
}

#[test]
fn stderr_halves_when_samples_quadruple() {
    let ms = table2();
    let small = simulate_sum_tail(&ms, 10.0, &McSettings::new(10_000, 200, 5).unwrap()).unwrap();
    let large = simulate_sum_tail(&ms, 10.0, &McSettings::new(40_000, 200, 6).unwrap()).unwrap();
    let ratio = large.stderr / small.stderr;
    assert!((ratio - 0.5).abs() < 0.125, "ratio {ratio}");
}

#[test]
fn mean_is_average_of_replicates() {
    let e = simulate_sum_tail(&table2(), 20.0, &McSettings::new(5_000, 7, 9).unwrap()).unwrap();
    assert_eq!(e.per_rep.len(), 7);
    let avg = e.per_rep.iter().sum::<f64>() / 7.0;
    assert!((e.mean - avg).abs() < 1e-15);
    assert!(e.stderr >= 0.0);
}

#[test]
fn indicator_estimator_counts_all_four_summands_near_zero() {
    let s = McSettings::new(2_000, 2, 3).unwrap();
    let (a1, a2) = estimate_asy_paper_sum(&table2(), 1e-9, &s).unwrap();
    assert_eq!(a1.mean, 4.0);
    assert!(a2.mean.is_finite());
}

#[test]
fn indicator_estimators_agree_with_closed_forms() {
    let s = McSettings::new(500_000, 4, 11).unwrap();
    let ms = table2();
    for z in [10.0, 40.0, 80.0] {
        let (a1, _) = estimate_asy_paper_sum(&ms, z, &s).unwrap();
        let exact = sum_asy1(&ms, z).unwrap().value();
        assert!((a1.mean - exact).abs() < 3.0 * a1.stderr, "z={z}: {} vs {exact}", a1.mean);
    }
    let ms = table1();
    for (x, y) in [(20.0, 25.0), (40.0, 45.0)] {
        let (a1, _) = estimate_asy_paper_joint(&ms, x, y, &s).unwrap();
        let exact = joint_asy1(&ms, x, y).unwrap().value();
        assert!((a1.mean - exact).abs() < 3.0 * a1.stderr, "({x},{y}): {} vs {exact}", a1.mean);
    }
}
