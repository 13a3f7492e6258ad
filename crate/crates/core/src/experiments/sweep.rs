use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::{Evolver, Method};
use crate::entanglement::{Measure, CONCURRENCE_CUTOFF, NEGATIVITY_CUTOFF};
use crate::error::{non_negative, Error, Result};
use crate::experiments::grid::Axis;
use crate::experiments::maxtime::{max_over_time, TimeMax};
use crate::field_bath::FieldBathConfig;
use crate::xstate::XState;

/// Horizon (in units of `1/(Omega gamma0)`) the max-over-time search starts from.
pub const INITIAL_HORIZON: f64 = 20.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MeasureSelection {
    Concurrence,
    Negativity,
    Both,
}

impl MeasureSelection {
    pub fn includes(&self, measure: Measure) -> bool {
        matches!(
            (self, measure),
            (MeasureSelection::Both, _)
                | (MeasureSelection::Concurrence, Measure::Concurrence)
                | (MeasureSelection::Negativity, Measure::Negativity)
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reduction {
    Instantaneous,
    MaxOverTime,
}

/// A two-axis parameter scan. `axis2` is always the separation `omega L`;
/// `axis1` is `gamma0 tau` for instantaneous scans and `T / omega` for
/// max-over-time scans.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub mass_ratio: f64,
    pub temp_ratio: Option<f64>,
    pub initial: XState,
    pub axis1: Axis,
    pub axis2: Axis,
    pub measure: MeasureSelection,
    pub reduction: Reduction,
}

impl SweepConfig {
    pub fn check(&self) -> Result<()> {
        non_negative("mass_ratio", self.mass_ratio)?;
        if let Some(t) = self.temp_ratio {
            non_negative("temp_ratio", t)?;
        }
        self.axis1.check()?;
        self.axis2.check()?;
        if self.axis2.min < 0.0 {
            return Err(Error::InvalidParameter {
                name: "separation",
                value: self.axis2.min,
                reason: "must be >= 0",
            });
        }
        if self.axis1.min < 0.0 {
            return Err(Error::InvalidParameter {
                name: "axis1",
                value: self.axis1.min,
                reason: "times and temperatures must be >= 0",
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepCell {
    pub axis1: f64,
    pub axis2: f64,
    pub concurrence: Option<f64>,
    pub negativity: Option<f64>,
    pub method: Method,
}

impl SweepCell {
    pub fn value(&self, measure: Measure) -> Option<f64> {
        match measure {
            Measure::Concurrence => self.concurrence,
            Measure::Negativity => self.negativity,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepMetadata {
    pub cutoff_c: f64,
    pub cutoff_n: f64,
}

impl Default for SweepMetadata {
    fn default() -> Self {
        Self {
            cutoff_c: CONCURRENCE_CUTOFF,
            cutoff_n: NEGATIVITY_CUTOFF,
        }
    }
}

/// Raw (uncut) values, row-major with `axis1` outermost.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub config: SweepConfig,
    pub cells: Vec<SweepCell>,
    pub metadata: SweepMetadata,
}

impl SweepResult {
    pub fn dims(&self) -> (usize, usize) {
        (self.config.axis1.count, self.config.axis2.count)
    }

    pub fn cell(&self, i1: usize, i2: usize) -> &SweepCell {
        &self.cells[i1 * self.config.axis2.count + i2]
    }

    pub fn cutoff(&self, measure: Measure) -> f64 {
        match measure {
            Measure::Concurrence => self.metadata.cutoff_c,
            Measure::Negativity => self.metadata.cutoff_n,
        }
    }

    /// Number of cells whose `measure` exceeds its cutoff.
    pub fn count_above_cutoff(&self, measure: Measure) -> usize {
        let cut = self.cutoff(measure);
        self.cells
            .iter()
            .filter(|c| c.value(measure).is_some_and(|v| v > cut))
            .count()
    }

    /// Largest value of `measure` in the grid.
    pub fn max_value(&self, measure: Measure) -> Option<f64> {
        self.cells
            .iter()
            .filter_map(|c| c.value(measure))
            .reduce(f64::max)
    }
}

fn measures(selection: MeasureSelection) -> impl Iterator<Item = Measure> {
    [Measure::Concurrence, Measure::Negativity]
        .into_iter()
        .filter(move |m| selection.includes(*m))
}

fn cell_error(axis1: f64, axis2: f64) -> impl FnOnce(Error) -> Error {
    move |e| Error::CellFailed {
        axis1,
        axis2,
        source: Box::new(e),
    }
}

fn evaluate(state: &XState, selection: MeasureSelection) -> Result<(Option<f64>, Option<f64>)> {
    let c = selection
        .includes(Measure::Concurrence)
        .then(|| Measure::Concurrence.value(state))
        .transpose()?;
    let n = selection
        .includes(Measure::Negativity)
        .then(|| Measure::Negativity.value(state))
        .transpose()?;
    Ok((c, n))
}

/// Instantaneous measures on a `(gamma0 tau, omega L)` grid.
pub fn evolve_scan(config: &SweepConfig) -> Result<SweepResult> {
    config.check()?;
    if config.reduction != Reduction::Instantaneous {
        return Err(Error::InvalidParameter {
            name: "reduction",
            value: f64::NAN,
            reason: "evolve_scan needs an instantaneous reduction",
        });
    }
    config.initial.check(crate::xstate::STATE_TOL)?;
    let taus = config.axis1.values();
    let seps = config.axis2.values();

    let columns: Vec<Result<Vec<SweepCell>>> = seps
        .par_iter()
        .map(|&sep| {
            let bath = FieldBathConfig::dimensionless(config.mass_ratio, sep, config.temp_ratio)
                .map_err(cell_error(taus[0], sep))?;
            let evolver = Evolver::new(&bath.coefficients()).map_err(cell_error(taus[0], sep))?;
            taus.iter()
                .map(|&tau| {
                    let state = evolver
                        .evolve(&config.initial, tau)
                        .map_err(cell_error(tau, sep))?;
                    let (concurrence, negativity) =
                        evaluate(&state, config.measure).map_err(cell_error(tau, sep))?;
                    Ok(SweepCell {
                        axis1: tau,
                        axis2: sep,
                        concurrence,
                        negativity,
                        method: evolver.method(),
                    })
                })
                .collect()
        })
        .collect();
    let columns = columns.into_iter().collect::<Result<Vec<_>>>()?;

    let cells = (0..taus.len())
        .flat_map(|i| columns.iter().map(move |col| col[i]))
        .collect();
    Ok(SweepResult {
        config: config.clone(),
        cells,
        metadata: SweepMetadata::default(),
    })
}

/// Maximum of `measure` over all `gamma0 tau >= 0` for one bath configuration.
pub fn max_over_time_for(
    bath: &FieldBathConfig,
    initial: &XState,
    measure: Measure,
) -> Result<TimeMax> {
    let evolver = Evolver::new(&bath.coefficients())?;
    max_over_time_with(&evolver, bath.gray_factor(), initial, measure)
}

pub(crate) fn max_over_time_with(
    evolver: &Evolver,
    gray: f64,
    initial: &XState,
    measure: Measure,
) -> Result<TimeMax> {
    if evolver.method() == Method::Frozen {
        return Ok(TimeMax {
            value: measure.value(initial)?,
            tau: 0.0,
            horizon: 0.0,
        });
    }
    max_over_time(
        |tau| measure.value(&evolver.evolve(initial, tau)?),
        INITIAL_HORIZON / gray,
    )
}

/// Bath at temperature ratio `t`; zero temperature is the vacuum.
pub(crate) fn bath_at(mass_ratio: f64, sep: f64, t: f64) -> Result<FieldBathConfig> {
    let temp = if t == 0.0 { None } else { Some(t) };
    FieldBathConfig::dimensionless(mass_ratio, sep, temp)
}

/// Max-over-time measures on a `(T / omega, omega L)` grid.
pub fn thermal_scan(config: &SweepConfig) -> Result<SweepResult> {
    config.check()?;
    if config.reduction != Reduction::MaxOverTime {
        return Err(Error::InvalidParameter {
            name: "reduction",
            value: f64::NAN,
            reason: "thermal_scan needs a max-over-time reduction",
        });
    }
    config.initial.check(crate::xstate::STATE_TOL)?;
    let temps = config.axis1.values();
    let seps = config.axis2.values();
    let coords: Vec<(f64, f64)> = temps
        .iter()
        .flat_map(|&t| seps.iter().map(move |&l| (t, l)))
        .collect();

    let cells = coords
        .par_iter()
        .map(|&(t, sep)| {
            let fail = || cell_error(t, sep);
            let bath = bath_at(config.mass_ratio, sep, t).map_err(fail())?;
            let evolver = Evolver::new(&bath.coefficients()).map_err(fail())?;
            let mut values = [None, None];
            for m in measures(config.measure) {
                let max = max_over_time_with(&evolver, bath.gray_factor(), &config.initial, m)
                    .map_err(fail())?;
                values[m as usize] = Some(max.value);
            }
            Ok(SweepCell {
                axis1: t,
                axis2: sep,
                concurrence: values[Measure::Concurrence as usize],
                negativity: values[Measure::Negativity as usize],
                method: evolver.method(),
            })
        })
        .collect::<Vec<Result<SweepCell>>>()
        .into_iter()
        .collect::<Result<Vec<_>>>()?;

    Ok(SweepResult {
        config: config.clone(),
        cells,
        metadata: SweepMetadata::default(),
    })
}
