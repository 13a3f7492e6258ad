use serde::{Deserialize, Serialize};

use crate::dynamics::{Evolver, Trajectory};
use crate::entanglement::measures::Measure;
use crate::error::{non_negative, Error, Result};
use crate::xstate::XState;

const TIME_TOL: f64 = 1e-11;

/// Times at which the measure rises above (birth) or falls to (death) the
/// threshold, in units of `1/gamma0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntanglementEvents {
    pub births: Vec<f64>,
    pub deaths: Vec<f64>,
    pub final_value: f64,
}

/// Locates threshold crossings of `measure` along a sampled trajectory.
///
/// Sign changes between consecutive samples are refined by bisection: with an
/// `evolver` the state is re-propagated exactly from the left sample,
/// otherwise the signed excess is interpolated linearly.
pub fn detect_events(
    trajectory: &Trajectory,
    evolver: Option<&Evolver>,
    measure: Measure,
    threshold: f64,
) -> Result<EntanglementEvents> {
    non_negative("threshold", threshold)?;
    let last = trajectory
        .samples
        .last()
        .ok_or_else(|| Error::Parse("empty trajectory".into()))?;
    let excess = trajectory
        .samples
        .iter()
        .map(|s| measure.signed_excess(&s.state, threshold))
        .collect::<Result<Vec<_>>>()?;

    let mut births = Vec::new();
    let mut deaths = Vec::new();
    for (i, w) in trajectory.samples.windows(2).enumerate() {
        let (before, after) = (excess[i] > 0.0, excess[i + 1] > 0.0);
        if before == after {
            continue;
        }
        let t = match evolver {
            Some(ev) => refine_exact(
                ev,
                &w[0].state,
                w[0].tau,
                w[1].tau,
                measure,
                threshold,
                before,
            )?,
            None => {
                let (f0, f1) = (excess[i], excess[i + 1]);
                w[0].tau + (w[1].tau - w[0].tau) * f0 / (f0 - f1)
            }
        };
        if after {
            births.push(t);
        } else {
            deaths.push(t);
        }
    }
    Ok(EntanglementEvents {
        births,
        deaths,
        final_value: measure.value(&last.state)?,
    })
}

fn refine_exact(
    evolver: &Evolver,
    left: &XState,
    mut lo: f64,
    mut hi: f64,
    measure: Measure,
    threshold: f64,
    left_positive: bool,
) -> Result<f64> {
    let origin = lo;
    while hi - lo > TIME_TOL * hi.max(1.0) {
        let mid = 0.5 * (lo + hi);
        let state = evolver.evolve(left, mid - origin)?;
        if (measure.signed_excess(&state, threshold)? > 0.0) == left_positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entanglement::lifetime::lifetime;
    use crate::field_bath::FieldBathConfig;

    fn grid(n: usize, end: f64) -> Vec<f64> {
        (0..=n).map(|i| end * i as f64 / n as f64).collect()
    }

    #[test]
    fn frozen_has_no_events() {
        let ev = Evolver::new(
            &FieldBathConfig::dimensionless(1.2, 1.0, None)
                .unwrap()
                .coefficients(),
        )
        .unwrap();
        let traj = ev.trajectory(&XState::bell_ge(), &grid(50, 100.0)).unwrap();
        let events = detect_events(&traj, Some(&ev), Measure::Concurrence, 0.0).unwrap();
        assert!(events.births.is_empty() && events.deaths.is_empty());
        assert_eq!(events.final_value, 1.0);
    }

    #[test]
    fn single_death_matches_lifetime() {
        let ev = Evolver::new(
            &FieldBathConfig::dimensionless(0.0, 1e12, None)
                .unwrap()
                .coefficients(),
        )
        .unwrap();
        let init = XState::diagonal(0.0, 0.5, 0.0, 0.5).unwrap();
        let traj = ev.trajectory(&init, &grid(200, 2.0)).unwrap();
        for measure in [Measure::Concurrence, Measure::Negativity] {
            let events = detect_events(&traj, Some(&ev), measure, 0.0).unwrap();
            assert!(events.births.is_empty());
            assert_eq!(events.deaths.len(), 1);
            let expected = lifetime(0.5, 0.0, 0.5, 0.0, 1.0, 1.0)
                .unwrap()
                .finite()
                .unwrap();
            assert!((events.deaths[0] - expected).abs() < 1e-8, "{measure:?}");
            assert!((events.deaths[0] - 0.232_066_72).abs() < 1e-8);
        }
    }

    #[test]
    fn generation_at_short_separation() {
        let ev = Evolver::new(
            &FieldBathConfig::dimensionless(0.0, 0.5, None)
                .unwrap()
                .coefficients(),
        )
        .unwrap();
        let traj = ev.trajectory(&XState::excited(), &grid(400, 40.0)).unwrap();
        let events = detect_events(&traj, Some(&ev), Measure::Concurrence, 0.0).unwrap();
        assert!(!events.births.is_empty());
        for (b, d) in events.births.iter().zip(&events.deaths) {
            assert!(b < d);
        }
        let interpolated = detect_events(&traj, None, Measure::Concurrence, 0.0).unwrap();
        assert_eq!(interpolated.births.len(), events.births.len());
    }
}
