//! Where entanglement can be generated: the largest separation with
//! generation above a cutoff, and the temperature at which generation stops.

use rayon::prelude::*;

use crate::dynamics::Evolver;
use crate::entanglement::Measure;
use crate::error::{non_negative, positive, Error, Result};
use crate::experiments::maxtime::golden_max;
use crate::experiments::sweep::{bath_at, max_over_time_with};
use crate::field_bath::gray_factor;
use crate::xstate::XState;

/// Separation scan for the generation range covers `omega L` up to
/// `SCAN_EXTENT / Omega`.
pub const SCAN_EXTENT: f64 = 40.0;
const SCAN_POINTS: usize = 400;
const RANGE_RTOL: f64 = 1e-7;
const THRESHOLD_SCAN_EXTENT: f64 = 6.0;
const THRESHOLD_SCAN_POINTS: usize = 60;
const TEMPERATURE_TOL: f64 = 1e-5;

/// Maximum over time of `measure` at separation `sep` and temperature ratio `t`.
pub fn peak_measure(
    mass_ratio: f64,
    sep: f64,
    t: f64,
    initial: &XState,
    measure: Measure,
) -> Result<f64> {
    let bath = bath_at(mass_ratio, sep, t)?;
    let evolver = Evolver::new(&bath.coefficients())?;
    Ok(max_over_time_with(&evolver, bath.gray_factor(), initial, measure)?.value)
}

fn check_mass(mass_ratio: f64) -> Result<f64> {
    non_negative("mass_ratio", mass_ratio)?;
    let g = gray_factor(mass_ratio, 1.0)?;
    if g == 0.0 {
        return Err(Error::FrozenDynamics);
    }
    Ok(g)
}

/// Largest `omega L` at which the peak of `measure` over time exceeds `cutoff`.
pub fn generation_range(
    mass_ratio: f64,
    initial: &XState,
    measure: Measure,
    cutoff: f64,
    temp_ratio: Option<f64>,
) -> Result<f64> {
    let gray = check_mass(mass_ratio)?;
    positive("cutoff", cutoff)?;
    let t = temp_ratio.unwrap_or(0.0);
    let peak = |sep: f64| peak_measure(mass_ratio, sep, t, initial, measure);

    let step = SCAN_EXTENT / gray / SCAN_POINTS as f64;
    let seps: Vec<f64> = (1..=SCAN_POINTS).map(|i| step * i as f64).collect();
    let values = seps.par_iter().map(|&l| peak(l)).collect::<Vec<_>>();
    let values = values.into_iter().collect::<Result<Vec<_>>>()?;

    let last = values
        .iter()
        .rposition(|&v| v > cutoff)
        .ok_or(Error::NoGeneration { cutoff })?;
    if last + 1 == seps.len() {
        return Err(Error::NonConvergedMax(format!(
            "generation extends past the scanned separation {}",
            seps[last]
        )));
    }
    let (mut lo, mut hi) = (seps[last], seps[last + 1]);
    while hi - lo > RANGE_RTOL * lo {
        let mid = 0.5 * (lo + hi);
        if peak(mid)? > cutoff {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Ratio of the massive to the massless generation range.
pub fn enlargement_factor(mass_ratio: f64, initial: &XState, cutoff: f64) -> Result<f64> {
    let massless = generation_range(0.0, initial, Measure::Concurrence, cutoff, None)?;
    let massive = generation_range(mass_ratio, initial, Measure::Concurrence, cutoff, None)?;
    Ok(massive / massless)
}

/// Peak of `measure` over both time and separation at temperature ratio `t`.
pub fn peak_over_separation(
    mass_ratio: f64,
    t: f64,
    initial: &XState,
    measure: Measure,
) -> Result<f64> {
    let gray = check_mass(mass_ratio)?;
    let step = THRESHOLD_SCAN_EXTENT / gray / THRESHOLD_SCAN_POINTS as f64;
    let seps: Vec<f64> = (1..=THRESHOLD_SCAN_POINTS)
        .map(|i| step * i as f64)
        .collect();
    let values = seps
        .par_iter()
        .map(|&l| peak_measure(mass_ratio, l, t, initial, measure))
        .collect::<Vec<_>>()
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let best = (0..values.len())
        .max_by(|&a, &b| values[a].total_cmp(&values[b]).then(b.cmp(&a)))
        .expect("non-empty scan");
    let lo = if best == 0 {
        0.5 * seps[0]
    } else {
        seps[best - 1]
    };
    let hi = seps[(best + 1).min(seps.len() - 1)];
    let (_, polished) = golden_max(
        &|l| peak_measure(mass_ratio, l, t, initial, measure),
        lo,
        hi,
    )?;
    Ok(polished.max(values[best]))
}

/// Temperature ratio at which the peak concurrence over time and separation
/// drops to `cutoff`, by bisection inside `bracket`.
pub fn generation_threshold_temperature(
    mass_ratio: f64,
    initial: &XState,
    cutoff: f64,
    bracket: (f64, f64),
) -> Result<f64> {
    positive("cutoff", cutoff)?;
    let (mut lo, mut hi) = bracket;
    non_negative("bracket low", lo)?;
    positive("bracket high", hi)?;
    let g = |t: f64| peak_over_separation(mass_ratio, t, initial, Measure::Concurrence);
    if g(lo)? <= cutoff {
        return Err(Error::NoGeneration { cutoff });
    }
    if g(hi)? > cutoff {
        return Err(Error::InvalidParameter {
            name: "bracket high",
            value: hi,
            reason: "generation persists at the upper temperature",
        });
    }
    while hi - lo > TEMPERATURE_TOL {
        let mid = 0.5 * (lo + hi);
        if g(mid)? > cutoff {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
