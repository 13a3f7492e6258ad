// Above the mass gap the rates vanish: an entangled state keeps its
// entanglement at any temperature, and a separable one never becomes entangled.

use massent::dynamics::{Evolver, Method};
use massent::entanglement::EntanglementValue;
use massent::field_bath::FieldBathConfig;
use massent::xstate::XState;

pub fn run_example() -> massent::Result<bool> {
    let mut frozen = true;
    for temp in [None, Some(0.1), Some(5.0)] {
        let bath = FieldBathConfig::dimensionless(1.2, 0.7, temp)?;
        let evolver = Evolver::new(&bath.coefficients())?;
        frozen &= evolver.method() == Method::Frozen;
        let bell = EntanglementValue::of(&evolver.evolve(&XState::bell_ge(), 1e6)?)?;
        let excited = EntanglementValue::of(&evolver.evolve(&XState::excited(), 1e6)?)?;
        println!(
            "T/omega = {}: bell-GE C = {}, N = {}; |E> C = {}",
            temp.map_or("0".to_string(), |t| t.to_string()),
            bell.concurrence,
            bell.negativity,
            excited.concurrence
        );
        frozen &= bell.concurrence == 1.0 && excited.concurrence == 0.0;
    }
    Ok(frozen)
}

fn main() -> massent::Result<()> {
    run_example()?;
    Ok(())
}
