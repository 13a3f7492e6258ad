// Instantaneous concurrence of an initially excited pair on a
// (gamma0 tau, omega L) grid, and how far apart the qubits may be while still
// getting entangled. A field mass close to omega stretches that range by 1/Omega.

use massent::entanglement::Measure;
use massent::experiments::{
    enlargement_factor, evolve_scan, generation_range, Axis, MeasureSelection, Reduction,
    SweepConfig,
};
use massent::xstate::XState;

pub fn run_example() -> massent::Result<(usize, f64)> {
    let config = SweepConfig {
        mass_ratio: 0.0,
        temp_ratio: None,
        initial: XState::excited(),
        axis1: Axis::linear(0.0, 20.0, 41)?,
        axis2: Axis::linear(0.05, 4.0, 40)?,
        measure: MeasureSelection::Both,
        reduction: Reduction::Instantaneous,
    };
    let map = evolve_scan(&config)?;
    let above = map.count_above_cutoff(Measure::Concurrence);
    println!(
        "massless map: {above} of {} cells with C > {}; peak C = {:.4}",
        map.cells.len(),
        map.metadata.cutoff_c,
        map.max_value(Measure::Concurrence).unwrap_or(0.0)
    );

    let range = generation_range(0.0, &XState::excited(), Measure::Concurrence, 1e-3, None)?;
    println!("massless generation range: omega L < {range:.4}");
    let factor = enlargement_factor(0.995, &XState::excited(), 1e-3)?;
    println!("m/omega = 0.995 enlarges it by {factor:.4}");
    Ok((above, factor))
}

fn main() -> massent::Result<()> {
    run_example()?;
    Ok(())
}
