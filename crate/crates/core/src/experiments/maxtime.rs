//! Maximum of a time signal over `[0, inf)`, found on a refined grid with
//! golden-section polishing and a doubling horizon.

use crate::error::{Error, Result};

/// Change in the running maximum treated as converged.
pub const MAX_STABILITY: f64 = 1e-6;

const INITIAL_POINTS: usize = 200;
const MAX_REFINEMENTS: usize = 6;
const MAX_DOUBLINGS: usize = 12;
const POLISHED_CANDIDATES: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeMax {
    pub value: f64,
    pub tau: f64,
    /// Horizon at which the maximum stabilised.
    pub horizon: f64,
}

/// Maximises `f` over `[0, horizon]`, doubling `horizon` until the running
/// maximum changes by less than [`MAX_STABILITY`].
pub fn max_over_time<F>(f: F, horizon: f64) -> Result<TimeMax>
where
    F: Fn(f64) -> Result<f64>,
{
    if !(horizon > 0.0 && horizon.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "horizon",
            value: horizon,
            reason: "must be positive and finite",
        });
    }
    let mut horizon = horizon;
    let mut best = max_on_interval(&f, horizon)?;
    for _ in 0..MAX_DOUBLINGS {
        horizon *= 2.0;
        let next = max_on_interval(&f, horizon)?;
        let previous = best.value;
        if next.value > best.value {
            best = next;
        }
        if best.value - previous < MAX_STABILITY {
            return Ok(TimeMax { horizon, ..best });
        }
    }
    Err(Error::NonConvergedMax(format!("horizon grew to {horizon}")))
}

fn max_on_interval<F>(f: &F, horizon: f64) -> Result<TimeMax>
where
    F: Fn(f64) -> Result<f64>,
{
    let mut n = INITIAL_POINTS;
    let mut best = grid_max(f, horizon, n)?;
    for _ in 0..MAX_REFINEMENTS {
        n *= 2;
        let next = grid_max(f, horizon, n)?;
        let previous = best.value;
        if next.value > best.value {
            best = next;
        }
        if best.value - previous < MAX_STABILITY {
            return Ok(best);
        }
    }
    Err(Error::NonConvergedMax(format!(
        "grid refinement stalled on [0, {horizon}]"
    )))
}

fn grid_max<F>(f: &F, horizon: f64, n: usize) -> Result<TimeMax>
where
    F: Fn(f64) -> Result<f64>,
{
    let taus: Vec<f64> = (0..=n).map(|i| horizon * i as f64 / n as f64).collect();
    let values = taus.iter().map(|&t| f(t)).collect::<Result<Vec<_>>>()?;

    let mut peaks: Vec<usize> = (0..=n)
        .filter(|&i| {
            let left = i == 0 || values[i] >= values[i - 1];
            let right = i == n || values[i] >= values[i + 1];
            left && right
        })
        .collect();
    peaks.sort_by(|&a, &b| values[b].total_cmp(&values[a]).then(a.cmp(&b)));
    peaks.truncate(POLISHED_CANDIDATES);

    let mut best = TimeMax {
        value: values[peaks[0]],
        tau: taus[peaks[0]],
        horizon,
    };
    for &i in &peaks {
        let lo = taus[i.saturating_sub(1)];
        let hi = taus[(i + 1).min(n)];
        let (tau, value) = golden_max(f, lo, hi)?;
        if value > best.value {
            best = TimeMax {
                value,
                tau,
                horizon,
            };
        }
    }
    Ok(best)
}

/// Golden-section search for the maximum of a unimodal function on `[lo, hi]`.
pub(crate) fn golden_max<F>(f: &F, mut lo: f64, mut hi: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let tol = 1e-10 * hi.abs().max(1.0);
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while hi - lo > tol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2)?;
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1)?;
        }
    }
    Ok(if f1 >= f2 { (x1, f1) } else { (x2, f2) })
}
