use serde::{Deserialize, Serialize};

use crate::dynamics::closed_form::{closed_form_state, LAMBDA_LIMIT};
use crate::dynamics::eigen::{propagate_expm, EigenPropagator};
use crate::dynamics::rates::{build_rate_matrix, RateMatrix};
use crate::error::{non_negative, Error, Result};
use crate::field_bath::GklsCoefficients;
use crate::xstate::XState;

/// How a state (or a sweep cell) was propagated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// All rates vanish; the initial state is returned untouched.
    Frozen,
    ClosedForm,
    Eigen,
    /// Eigen route with a degenerate spectrum, done by matrix exponential.
    MatrixExp,
    OdeOracle,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Frozen => "frozen",
            Method::ClosedForm => "closed-form",
            Method::Eigen => "eigen",
            Method::MatrixExp => "matrix-exp",
            Method::OdeOracle => "ode",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub tau: f64,
    pub state: XState,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub samples: Vec<Sample>,
    pub method: Method,
}

impl Trajectory {
    pub fn taus(&self) -> impl Iterator<Item = f64> + '_ {
        self.samples.iter().map(|s| s.tau)
    }

    pub fn last(&self) -> Option<&Sample> {
        self.samples.last()
    }

    /// Strictly increasing times and valid states at tolerance `tol`.
    pub fn check(&self, tol: f64) -> Result<()> {
        for w in self.samples.windows(2) {
            if w[1].tau <= w[0].tau {
                return Err(Error::Parse(format!(
                    "trajectory times not increasing at tau = {}",
                    w[1].tau
                )));
            }
        }
        for s in &self.samples {
            s.state.check(tol)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
enum Route {
    Frozen,
    ClosedForm { lambda: f64, rate: f64 },
    Eigen(Box<EigenPropagator>),
    MatrixExp,
}

/// Propagator bound to one set of coefficients, picking the cheapest exact
/// route: frozen, vacuum closed form, eigendecomposition, or matrix exponential.
#[derive(Debug, Clone)]
pub struct Evolver {
    coefficients: GklsCoefficients,
    rates: RateMatrix,
    route: Route,
}

impl Evolver {
    pub fn new(coefficients: &GklsCoefficients) -> Result<Self> {
        let rates = build_rate_matrix(coefficients);
        let lambda = coefficients.lambda();
        let route = if rates.is_zero() {
            Route::Frozen
        } else if coefficients.is_vacuum_like() && lambda.abs() <= LAMBDA_LIMIT {
            Route::ClosedForm {
                lambda,
                rate: 4.0 * coefficients.a1,
            }
        } else {
            Self::matrix_route(&rates)?
        };
        Ok(Self {
            coefficients: *coefficients,
            rates,
            route,
        })
    }

    /// Always uses the generator (eigen or matrix exponential), never the closed form.
    pub fn exact_linear(coefficients: &GklsCoefficients) -> Result<Self> {
        let rates = build_rate_matrix(coefficients);
        let route = if rates.is_zero() {
            Route::Frozen
        } else {
            Self::matrix_route(&rates)?
        };
        Ok(Self {
            coefficients: *coefficients,
            rates,
            route,
        })
    }

    fn matrix_route(rates: &RateMatrix) -> Result<Route> {
        match EigenPropagator::new(rates) {
            Ok(p) => Ok(Route::Eigen(Box::new(p))),
            Err(Error::DegenerateSpectrum) => Ok(Route::MatrixExp),
            Err(e) => Err(e),
        }
    }

    pub fn method(&self) -> Method {
        match self.route {
            Route::Frozen => Method::Frozen,
            Route::ClosedForm { .. } => Method::ClosedForm,
            Route::Eigen(_) => Method::Eigen,
            Route::MatrixExp => Method::MatrixExp,
        }
    }

    pub fn coefficients(&self) -> &GklsCoefficients {
        &self.coefficients
    }

    pub fn rates(&self) -> &RateMatrix {
        &self.rates
    }

    pub fn evolve(&self, initial: &XState, tau: f64) -> Result<XState> {
        non_negative("tau", tau)?;
        match &self.route {
            Route::Frozen => Ok(*initial),
            Route::ClosedForm { lambda, rate } => {
                let xi = (-rate * tau).exp();
                if xi == 0.0 {
                    Ok(XState::ground())
                } else {
                    closed_form_state(initial, *lambda, xi)
                }
            }
            Route::Eigen(p) => Ok(p.propagate(initial, tau)),
            Route::MatrixExp => propagate_expm(initial, &self.rates, tau),
        }
    }

    /// Samples the evolution at the given (strictly increasing) times.
    pub fn trajectory(&self, initial: &XState, taus: &[f64]) -> Result<Trajectory> {
        let samples = taus
            .iter()
            .map(|&tau| {
                Ok(Sample {
                    tau,
                    state: self.evolve(initial, tau)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let t = Trajectory {
            samples,
            method: self.method(),
        };
        for w in t.samples.windows(2) {
            if w[1].tau <= w[0].tau {
                return Err(Error::InvalidParameter {
                    name: "tau",
                    value: w[1].tau,
                    reason: "sample times must be strictly increasing",
                });
            }
        }
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field_bath::FieldBathConfig;

    #[test]
    fn route_selection() {
        let frozen = FieldBathConfig::dimensionless(1.0, 1.0, Some(3.0)).unwrap();
        assert_eq!(
            Evolver::new(&frozen.coefficients()).unwrap().method(),
            Method::Frozen
        );
        let vac = FieldBathConfig::dimensionless(0.5, 1.0, None).unwrap();
        assert_eq!(
            Evolver::new(&vac.coefficients()).unwrap().method(),
            Method::ClosedForm
        );
        let near = FieldBathConfig::dimensionless(0.0, 1e-4, None).unwrap();
        assert_ne!(
            Evolver::new(&near.coefficients()).unwrap().method(),
            Method::ClosedForm
        );
        let th = FieldBathConfig::dimensionless(0.5, 1.0, Some(0.2)).unwrap();
        assert_eq!(
            Evolver::new(&th.coefficients()).unwrap().method(),
            Method::Eigen
        );
    }

    #[test]
    fn frozen_is_exact() {
        let c = FieldBathConfig::dimensionless(1.5, 0.3, Some(10.0))
            .unwrap()
            .coefficients();
        let ev = Evolver::new(&c).unwrap();
        let s = XState::bell_ge();
        assert_eq!(ev.evolve(&s, 1e3).unwrap(), s);
    }

    #[test]
    fn trajectory_requires_increasing_times() {
        let c = FieldBathConfig::dimensionless(0.0, 1.0, None)
            .unwrap()
            .coefficients();
        let ev = Evolver::new(&c).unwrap();
        assert!(ev.trajectory(&XState::excited(), &[0.0, 1.0, 1.0]).is_err());
        let t = ev.trajectory(&XState::excited(), &[0.0, 0.5, 1.0]).unwrap();
        t.check(1e-10).unwrap();
    }
}
