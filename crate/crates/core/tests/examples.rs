//! Each example compiled in as a module and checked through its `run_example`.
#![allow(dead_code)]

mod coefficients {
    include!("../examples/coefficients.rs");
}
mod closed_form_evolution {
    include!("../examples/closed_form_evolution.rs");
}
mod sudden_death {
    include!("../examples/sudden_death.rs");
}
mod frozen_dynamics {
    include!("../examples/frozen_dynamics.rs");
}
mod generation_map {
    include!("../examples/generation_map.rs");
}
mod thermal_threshold {
    include!("../examples/thermal_threshold.rs");
}
mod scaling_relations {
    include!("../examples/scaling_relations.rs");
}
mod verification {
    include!("../examples/verification.rs");
}

#[test]
fn coefficients_example() {
    let rows = coefficients::run_example().unwrap();
    assert_eq!(rows[0].1, 0.25);
    let coth1 = 1.0 / 1.0f64.tanh();
    assert!((rows[0].2 - coth1).abs() < 1e-14);
    assert!(rows.iter().filter(|r| r.0 >= 1.0).all(|r| r.1 == 0.0));
}

#[test]
fn closed_form_example_agrees_with_ode() {
    assert!(closed_form_evolution::run_example().unwrap() < 1e-10);
}

#[test]
fn sudden_death_example() {
    let rows = sudden_death::run_example().unwrap();
    for (analytic, found) in &rows {
        assert!((analytic - found).abs() < 1e-9);
    }
    assert!((rows[1].0 / rows[0].0 - 1.0 / 0.6).abs() < 1e-12);
}

#[test]
fn frozen_example() {
    assert!(frozen_dynamics::run_example().unwrap());
}

#[test]
fn generation_map_example() {
    let (above, factor) = generation_map::run_example().unwrap();
    assert!(above > 0);
    assert!((factor - 1.0 / 0.099_874_921_777_190_7).abs() < 0.02 * factor);
}

#[test]
fn thermal_threshold_example() {
    let t = thermal_threshold::run_example().unwrap();
    assert!((0.21..=0.25).contains(&t));
}

#[test]
fn scaling_example() {
    assert!(scaling_relations::run_example().unwrap() < 1e-10);
}

#[test]
fn verification_example() {
    assert!(verification::run_example().unwrap());
}
