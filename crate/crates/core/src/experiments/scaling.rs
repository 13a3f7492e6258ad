//! Mass rescaling: a massive field at `(omega L, gamma0 tau)` behaves like the
//! massless field at `(Omega omega L, Omega gamma0 tau)`.

use serde::{Deserialize, Serialize};

use crate::dynamics::Evolver;
use crate::entanglement::EntanglementValue;
use crate::error::{non_negative, Error, Result};
use crate::experiments::grid::Axis;
use crate::experiments::sweep::bath_at;
use crate::field_bath::gray_factor;
use crate::xstate::XState;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalingDeviation {
    pub concurrence: f64,
    pub negativity: f64,
}

impl ScalingDeviation {
    pub fn max(&self) -> f64 {
        self.concurrence.max(self.negativity)
    }
}

/// Largest absolute deviation between the massive measures and the massless
/// ones at rescaled arguments, over `seps x taus`. `temp_ratio` of `None` or 0
/// is the vacuum.
pub fn scaling_check(
    mass_ratio: f64,
    initial: &XState,
    temp_ratio: Option<f64>,
    seps: &Axis,
    taus: &Axis,
) -> Result<ScalingDeviation> {
    non_negative("mass_ratio", mass_ratio)?;
    if mass_ratio >= 1.0 {
        return Err(Error::InvalidParameter {
            name: "mass_ratio",
            value: mass_ratio,
            reason: "rescaling needs m < omega",
        });
    }
    let omega_gray = gray_factor(mass_ratio, 1.0)?;
    let t = temp_ratio.unwrap_or(0.0);
    let taus = taus.values();
    let mut dev = ScalingDeviation {
        concurrence: 0.0,
        negativity: 0.0,
    };
    for sep in seps.values() {
        let massive = Evolver::new(&bath_at(mass_ratio, sep, t)?.coefficients())?;
        let massless = Evolver::new(&bath_at(0.0, omega_gray * sep, t)?.coefficients())?;
        for &tau in &taus {
            let a = EntanglementValue::of(&massive.evolve(initial, tau)?)?;
            let b = EntanglementValue::of(&massless.evolve(initial, omega_gray * tau)?)?;
            dev.concurrence = dev.concurrence.max((a.concurrence - b.concurrence).abs());
            dev.negativity = dev.negativity.max((a.negativity - b.negativity).abs());
        }
    }
    Ok(dev)
}
