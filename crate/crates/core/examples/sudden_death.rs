// Entanglement sudden death for independent baths: the analytic lifetime
// against the death time located on a sampled trajectory, for two masses.

use massent::dynamics::Evolver;
use massent::entanglement::{detect_events, lifetime, sudden_death_condition, Measure};
use massent::field_bath::FieldBathConfig;
use massent::xstate::XState;

pub fn run_example() -> massent::Result<Vec<(f64, f64)>> {
    let (e, g, a, s) = (0.5, 0.0, 0.5, 0.0);
    println!(
        "sudden death expected: {}",
        sudden_death_condition(e, g, a, s)
    );
    let initial = XState::diagonal(g, a, s, e)?;
    let mut out = Vec::new();
    for mass in [0.0, 0.8] {
        // a huge separation makes the two baths independent
        let bath = FieldBathConfig::dimensionless(mass, 1e12, None)?;
        let analytic = lifetime(e, g, a, s, bath.gray_factor(), 1.0)?
            .finite()
            .unwrap();
        let evolver = Evolver::new(&bath.coefficients())?;
        let taus: Vec<f64> = (0..=200).map(|i| i as f64 * 0.01).collect();
        let traj = evolver.trajectory(&initial, &taus)?;
        let events = detect_events(&traj, Some(&evolver), Measure::Concurrence, 0.0)?;
        let found = events.deaths[0];
        println!("m/omega = {mass}: lifetime {analytic:.10}, trajectory death {found:.10}");
        out.push((analytic, found));
    }
    Ok(out)
}

fn main() -> massent::Result<()> {
    run_example()?;
    Ok(())
}
