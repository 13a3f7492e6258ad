//! Parameter sweeps, rescaling checks, generation thresholds and verification suites.

pub mod generation;
pub mod grid;
pub mod maxtime;
pub mod scaling;
pub mod sweep;
pub mod verify;

pub use generation::{
    enlargement_factor, generation_range, generation_threshold_temperature, peak_measure,
    peak_over_separation,
};
pub use grid::{Axis, Scale};
pub use maxtime::{max_over_time, TimeMax};
pub use scaling::{scaling_check, ScalingDeviation};
pub use sweep::{
    evolve_scan, max_over_time_for, thermal_scan, MeasureSelection, Reduction, SweepCell,
    SweepConfig, SweepMetadata, SweepResult,
};
pub use verify::{
    lifetime_by_bisection, run_verification, verify_coefficients, CoefficientReport, SuiteResult,
    VerificationReport, VerifyOptions,
};
