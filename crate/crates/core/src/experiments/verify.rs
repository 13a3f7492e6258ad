//! Self-verification suites comparing each fast path against an independent route.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dynamics::{integrate_ode, Evolver};
use crate::entanglement::{closed_form_k, lifetime};
use crate::error::{Error, Result};
use crate::experiments::grid::Axis;
use crate::experiments::scaling::scaling_check;
use crate::field_bath::{
    coefficients_from_spectral_density, Bath, FieldBathConfig, GklsCoefficients,
};
use crate::sampling::{random_sudden_death_populations, random_x_state};
use crate::xstate::XState;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoefficientReport {
    /// Largest coefficient deviation relative to the oracle's `a1`.
    pub max_rel_deviation: f64,
    /// Relative deviation of `a1 / b1` from `coth(omega beta / 2)`; `None` in
    /// vacuum or when the rates vanish.
    pub kms_deviation: Option<f64>,
}

/// Compares the closed-form coefficients of `config` with the spectral-density route.
pub fn verify_coefficients(config: &FieldBathConfig) -> Result<CoefficientReport> {
    coefficient_report(config, 0.0)
}

fn coefficient_report(config: &FieldBathConfig, perturbation: f64) -> Result<CoefficientReport> {
    let c = scale(config.coefficients(), 1.0 + perturbation);
    let o = coefficients_from_spectral_density(config)?;
    let diffs = [c.a1 - o.a1, c.b1 - o.b1, c.a2 - o.a2, c.b2 - o.b2];
    let max_diff = diffs.iter().fold(0.0f64, |m, d| m.max(d.abs()));
    let max_rel_deviation = if o.a1 == 0.0 {
        max_diff
    } else {
        max_diff / o.a1
    };
    let kms_deviation = match config.bath {
        Bath::Thermal { temperature } if o.b1 != 0.0 => {
            let x = 0.5 * config.omega / temperature;
            let expected = x.cosh() / x.sinh();
            Some((o.a1 / o.b1 / expected - 1.0).abs())
        }
        _ => None,
    };
    Ok(CoefficientReport {
        max_rel_deviation,
        kms_deviation,
    })
}

fn scale(c: GklsCoefficients, f: f64) -> GklsCoefficients {
    GklsCoefficients {
        a1: c.a1 * f,
        b1: c.b1 * f,
        a2: c.a2 * f,
        b2: c.b2 * f,
    }
}

/// Entanglement lifetime of a `lambda = 0` diagonal state from bisection on
/// the closed-form concurrence coefficients, in units of `1/gamma0`.
pub fn lifetime_by_bisection(e: f64, g: f64, a: f64, s: f64) -> Result<f64> {
    let state = XState::diagonal(g, a, s, e)?;
    let alive = |tau: f64| -> Result<bool> {
        let (k1, k2) = closed_form_k(&state, 0.0, (-tau).exp())?;
        Ok(k1.max(k2) > 0.0)
    };
    if !alive(0.0)? {
        return Ok(0.0);
    }
    let mut hi = 1.0;
    while alive(hi)? {
        hi *= 2.0;
        if hi > 1e6 {
            return Err(Error::NonConvergedMax(
                "entanglement outlives the bracket".into(),
            ));
        }
    }
    let mut lo = 0.0;
    while hi - lo > 1e-15 * hi {
        let mid = 0.5 * (lo + hi);
        if alive(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Relative error injected into the closed-form coefficients, to exercise
    /// the failure path.
    pub coefficient_perturbation: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            coefficient_perturbation: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub name: String,
    pub cases: usize,
    pub max_deviation: f64,
    pub threshold: f64,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.max_deviation < self.threshold
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteResult::passed)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed {}", self.seed)?;
        writeln!(
            f,
            "{:<22} {:>6} {:>13} {:>10}  status",
            "suite", "cases", "max_dev", "threshold"
        )?;
        for s in &self.suites {
            writeln!(
                f,
                "{:<22} {:>6} {:>13.3e} {:>10.0e}  {}",
                s.name,
                s.cases,
                s.max_deviation,
                s.threshold,
                if s.passed() { "PASS" } else { "FAIL" }
            )?;
        }
        write!(
            f,
            "{}",
            if self.passed() {
                "all suites passed"
            } else {
                "verification FAILED"
            }
        )
    }
}

pub const MASS_GRID: [f64; 5] = [0.0, 0.3, 0.8, 0.995, 1.5];
pub const SEPARATION_GRID: [f64; 4] = [0.1, 1.0, 5.0, 1e3];
/// `T / omega` values giving `omega beta` of 0.5, 2 and 10.
pub const KMS_TEMPERATURES: [f64; 3] = [2.0, 0.5, 0.1];

fn coefficient_suite(perturbation: f64) -> Result<SuiteResult> {
    let mut dev = 0.0f64;
    let mut cases = 0;
    let temps = std::iter::once(None).chain(KMS_TEMPERATURES.map(Some));
    for t in temps {
        for m in MASS_GRID {
            for l in SEPARATION_GRID {
                let r =
                    coefficient_report(&FieldBathConfig::dimensionless(m, l, t)?, perturbation)?;
                dev = dev
                    .max(r.max_rel_deviation)
                    .max(r.kms_deviation.unwrap_or(0.0));
                cases += 1;
            }
        }
    }
    Ok(SuiteResult {
        name: "coefficient-oracle".into(),
        cases,
        max_deviation: dev,
        threshold: 1e-12,
    })
}

fn scaling_suite(temp_ratio: Option<f64>) -> Result<SuiteResult> {
    let seps = Axis::linear(0.05, 10.0, 20)?;
    let taus = Axis::linear(0.0, 10.0, 20)?;
    let states = [
        XState::excited(),
        XState::antisymmetric(),
        XState::bell_ge(),
    ];
    let mut dev = 0.0f64;
    let mut cases = 0;
    for m in [0.3, 0.8, 0.995] {
        for st in &states {
            dev = dev.max(scaling_check(m, st, temp_ratio, &seps, &taus)?.max());
            cases += 1;
        }
    }
    Ok(SuiteResult {
        name: format!(
            "scaling-{}",
            temp_ratio.map_or("vacuum".into(), |t| format!("T{t}"))
        ),
        cases,
        max_deviation: dev,
        threshold: if temp_ratio.is_some() { 1e-9 } else { 1e-10 },
    })
}

fn lifetime_suite(rng: &mut ChaCha8Rng, cases: usize) -> Result<SuiteResult> {
    let mut dev = 0.0f64;
    for _ in 0..cases {
        let [e, g, a, s] = random_sudden_death_populations(rng);
        let formula = lifetime(e, g, a, s, 1.0, 1.0)?
            .finite()
            .expect("sudden death");
        let oracle = lifetime_by_bisection(e, g, a, s)?;
        dev = dev.max((formula - oracle).abs() / oracle);
        let half = lifetime(e, g, a, s, 0.5, 1.0)?
            .finite()
            .expect("sudden death");
        dev = dev.max((half - 2.0 * formula).abs() / formula);
    }
    Ok(SuiteResult {
        name: "lifetime-bisection".into(),
        cases,
        max_deviation: dev,
        threshold: 1e-8,
    })
}

fn ode_final(initial: &XState, evolver: &Evolver, tau: f64) -> Result<XState> {
    if tau == 0.0 {
        return Ok(*initial);
    }
    let traj = integrate_ode(initial, evolver.rates(), tau, 1e-12)?;
    Ok(traj.last().expect("non-empty").state)
}

fn agreement_suite(rng: &mut ChaCha8Rng, cases: usize, thermal: bool) -> Result<SuiteResult> {
    let mut dev = 0.0f64;
    for _ in 0..cases {
        let initial = random_x_state(rng);
        let m = rng.gen_range(0.0..0.99);
        let l = rng.gen_range(0.05..10.0);
        let tau = rng.gen_range(0.0..5.0);
        let t = thermal.then(|| rng.gen_range(0.05..2.0));
        let coeffs = FieldBathConfig::dimensionless(m, l, t)?.coefficients();
        let exact = Evolver::exact_linear(&coeffs)?;
        let eigen = exact.evolve(&initial, tau)?;
        let ode = ode_final(&initial, &exact, tau)?;
        dev = dev.max(eigen.max_abs_diff(&ode));
        if !thermal {
            let closed = Evolver::new(&coeffs)?.evolve(&initial, tau)?;
            dev = dev
                .max(closed.max_abs_diff(&eigen))
                .max(closed.max_abs_diff(&ode));
        }
    }
    Ok(SuiteResult {
        name: if thermal {
            "methods-thermal"
        } else {
            "methods-vacuum"
        }
        .into(),
        cases,
        max_deviation: dev,
        threshold: 1e-8,
    })
}

/// Runs every suite. Randomized suites draw from a ChaCha stream seeded with
/// `options.seed`, so equal seeds give equal reports.
pub fn run_verification(options: &VerifyOptions) -> Result<VerificationReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let suites = vec![
        coefficient_suite(options.coefficient_perturbation)?,
        scaling_suite(None)?,
        scaling_suite(Some(0.05))?,
        scaling_suite(Some(0.1))?,
        scaling_suite(Some(0.2))?,
        lifetime_suite(&mut rng, 1000)?,
        agreement_suite(&mut rng, 100, false)?,
        agreement_suite(&mut rng, 100, true)?,
    ];
    Ok(VerificationReport {
        seed: options.seed,
        suites,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vacuum_and_thermal_coefficients_verify() {
        for m in MASS_GRID {
            for l in SEPARATION_GRID {
                let r = verify_coefficients(&FieldBathConfig::dimensionless(m, l, None).unwrap())
                    .unwrap();
                assert!(r.max_rel_deviation < 1e-12, "m {m} L {l}: {r:?}");
                assert!(r.kms_deviation.is_none());
            }
        }
        for t in KMS_TEMPERATURES {
            let r =
                verify_coefficients(&FieldBathConfig::dimensionless(0.3, 1.0, Some(t)).unwrap())
                    .unwrap();
            assert!(r.kms_deviation.unwrap() < 1e-12, "{r:?}");
        }
    }

    #[test]
    fn frozen_coefficients_agree_at_zero() {
        let cfg = FieldBathConfig::dimensionless(1.5, 1.0, Some(0.5)).unwrap();
        let r = verify_coefficients(&cfg).unwrap();
        assert_eq!(r.max_rel_deviation, 0.0);
        assert_eq!(r.kms_deviation, None);
    }

    #[test]
    fn bisection_oracle_matches_exact_root() {
        let t = lifetime_by_bisection(0.5, 0.0, 0.5, 0.0).unwrap();
        let expected = -((3.0 - 2.0f64.sqrt()) / 2.0).ln();
        assert!((t - expected).abs() < 1e-13);
    }

    #[test]
    fn default_run_passes_and_perturbation_fails() {
        let report = run_verification(&VerifyOptions::default()).unwrap();
        assert!(report.passed(), "{report}");
        let again = run_verification(&VerifyOptions::default()).unwrap();
        assert_eq!(report.to_string(), again.to_string());
        let bad = coefficient_suite(1e-6).unwrap();
        assert!(!bad.passed());
    }
}
