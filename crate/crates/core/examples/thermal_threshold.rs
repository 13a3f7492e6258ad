// Peak concurrence over time and separation as the bath heats up, and the
// temperature above which no entanglement beyond 1e-3 is generated.

use massent::entanglement::Measure;
use massent::experiments::{generation_threshold_temperature, peak_over_separation};
use massent::xstate::XState;

pub fn run_example() -> massent::Result<f64> {
    let initial = XState::excited();
    for t in [0.0, 0.1, 0.2, 0.3] {
        let peak = peak_over_separation(0.0, t, &initial, Measure::Concurrence)?;
        println!("T/omega = {t:.2}: peak concurrence {peak:.5}");
    }
    let threshold = generation_threshold_temperature(0.0, &initial, 1e-3, (0.1, 0.5))?;
    println!("generation stops above T/omega = {threshold:.4}");
    let massive = generation_threshold_temperature(0.9, &initial, 1e-3, (0.1, 0.5))?;
    println!("with m/omega = 0.9: T/omega = {massive:.4}");
    Ok(threshold)
}

fn main() -> massent::Result<()> {
    run_example()?;
    Ok(())
}
