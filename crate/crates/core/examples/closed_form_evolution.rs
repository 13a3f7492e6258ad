// Evolves |E> in the massless vacuum at a short separation and prints the
// populations with both entanglement measures. The analytic propagator is
// cross-checked against the adaptive integrator.

use massent::dynamics::{integrate_ode, Evolver};
use massent::entanglement::EntanglementValue;
use massent::field_bath::FieldBathConfig;
use massent::xstate::XState;

pub fn run_example() -> massent::Result<f64> {
    let bath = FieldBathConfig::dimensionless(0.0, 0.5, None)?;
    let evolver = Evolver::new(&bath.coefficients())?;
    println!("method: {}", evolver.method().as_str());

    let initial = XState::excited();
    let taus: Vec<f64> = (0..=12).map(|i| i as f64 * 2.5).collect();
    let traj = evolver.trajectory(&initial, &taus)?;
    println!(
        "{:>5} {:>8} {:>8} {:>8} {:>8} {:>8} {:>8}",
        "tau", "G", "A", "S", "E", "C", "N"
    );
    for s in &traj.samples {
        let m = EntanglementValue::of(&s.state)?;
        let [g, a, sym, e] = s.state.populations();
        println!(
            "{:>5.2} {g:>8.5} {a:>8.5} {sym:>8.5} {e:>8.5} {:>8.5} {:>8.5}",
            s.tau, m.concurrence, m.negativity
        );
    }

    let ode = integrate_ode(&initial, evolver.rates(), 30.0, 1e-12)?;
    let diff = ode
        .last()
        .unwrap()
        .state
        .max_abs_diff(&traj.last().unwrap().state);
    println!("closed form vs ODE at tau = 30: {diff:.2e}");
    Ok(diff)
}

fn main() -> massent::Result<()> {
    run_example()?;
    Ok(())
}
