// A massive field at (omega L, gamma0 tau) reproduces the massless field at
// (Omega omega L, Omega gamma0 tau), in vacuum and in a thermal bath.

use massent::experiments::{scaling_check, Axis};
use massent::xstate::XState;

pub fn run_example() -> massent::Result<f64> {
    let seps = Axis::linear(0.05, 10.0, 20)?;
    let taus = Axis::linear(0.0, 10.0, 20)?;
    let mut worst = 0.0f64;
    for mass in [0.3, 0.8, 0.995] {
        for temp in [None, Some(0.1)] {
            let dev = scaling_check(mass, &XState::excited(), temp, &seps, &taus)?;
            println!(
                "m/omega = {mass:<5} T/omega = {:<4}: max |dC| = {:.2e}, max |dN| = {:.2e}",
                temp.map_or("0".to_string(), |t| t.to_string()),
                dev.concurrence,
                dev.negativity
            );
            worst = worst.max(dev.max());
        }
    }
    Ok(worst)
}

fn main() -> massent::Result<()> {
    run_example()?;
    Ok(())
}
