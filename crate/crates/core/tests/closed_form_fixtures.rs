//! Closed-form first- and second-order values on the two published grids,
//! frozen from an independent numpy evaluation (32-node Gauss-Legendre over
//! the weight interval, formulas re-derived separately).
#![allow(clippy::excessive_precision)]

use rwsum::asymptotics::{joint_asy1, joint_asy2, sum_asy1, sum_asy2};
use rwsum::{FgmPair, Marginal, ModelSpec, WeightModel};

const JOINT: [((f64, f64), f64, f64); 8] = [
    ((20.0, 25.0), 2.31460207995678145e-03, 3.81683226388159413e-03),
    ((25.0, 30.0), 1.13196264914124491e-03, 1.75881207361209407e-03),
    ((30.0, 35.0), 6.15134475560630192e-04, 9.12354587752352091e-04),
    ((35.0, 40.0), 3.61408781803219568e-04, 5.16341124820977578e-04),
    ((40.0, 45.0), 2.25507812114136472e-04, 3.12401151939062805e-04),
    ((45.0, 50.0), 1.47607409770042887e-04, 1.99265544726721721e-04),
    ((50.0, 55.0), 1.00458561119140389e-04, 1.32664277607733353e-04),
    ((55.0, 60.0), 7.06205425004647285e-05, 9.15082894590428135e-05),
];

const SUM: [(f64, f64, f64); 8] = [
    (10.0, 6.80188880343409741e-02, 1.20648504701500348e-01),
    (20.0, 1.94840862609719362e-02, 2.80380502556915288e-02),
    (30.0, 9.06872753937090770e-03, 1.18478091422085634e-02),
    (40.0, 5.21853900833774663e-03, 6.44682006841172228e-03),
    (50.0, 3.38463513731342104e-03, 4.03128579934199614e-03),
    (60.0, 2.37077602454498432e-03, 2.75195702760352642e-03),
    (70.0, 1.75218918119996901e-03, 1.99537957243436882e-03),
    (80.0, 1.34730514391190087e-03, 1.51180189029093441e-03),
];

fn model(r: f64, first: (f64, f64), second: (f64, f64)) -> ModelSpec {
    let pair =
        FgmPair::new(r, Marginal::pareto(first.0, first.1).unwrap(), Marginal::pareto(second.0, second.1).unwrap())
            .unwrap();
    ModelSpec::new(pair, WeightModel::iid_uniform((1.0, 2.0), (1.0, 2.0), 2, 2).unwrap())
}

fn close(got: f64, want: f64) {
    assert!(((got - want) / want).abs() < 1e-9, "got {got:e}, want {want:e}");
}

#[test]
fn joint_grid_matches_oracle() {
    let ms = model(0.5, (2.01, 2.0), (2.2, 4.0));
    for ((x, y), a1, a2) in JOINT {
        close(joint_asy1(&ms, x, y).unwrap().value(), a1);
        close(joint_asy2(&ms, x, y).unwrap().value(), a2);
    }
}

#[test]
fn sum_grid_matches_oracle() {
    let ms = model(0.6, (2.01, 1.0), (2.01, 1.0));
    for (z, a1, a2) in SUM {
        close(sum_asy1(&ms, z).unwrap().value(), a1);
        close(sum_asy2(&ms, z).unwrap().value(), a2);
    }
}
