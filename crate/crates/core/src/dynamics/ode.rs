//! Adaptive Dormand-Prince 5(4) integration of the X-state equations.
//!
//! Used as an oracle for the exact propagators; it only ever evaluates the
//! right-hand side and never touches the spectrum of the generator.

use crate::dynamics::rates::RateMatrix;
use crate::dynamics::trajectory::{Method, Sample, Trajectory};
use crate::error::{Error, Result};
use crate::xstate::XState;

const MIN_STEP: f64 = 1e-14;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// fifth-order minus embedded fourth-order weights
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

type Vec8 = [f64; 8];

fn rhs(rates: &RateMatrix, y: &Vec8) -> Vec8 {
    rates.derivative(&XState::from_array(*y)).to_array()
}

fn axpy(y: &Vec8, h: f64, terms: &[(f64, &Vec8)]) -> Vec8 {
    let mut out = *y;
    for (c, k) in terms {
        for i in 0..8 {
            out[i] += h * c * k[i];
        }
    }
    out
}

/// Integrates from `tau = 0` to `tau_end` keeping the estimated local error of
/// every accepted step below `tol` (max norm). Every accepted step is sampled.
pub fn integrate_ode(
    initial: &XState,
    rates: &RateMatrix,
    tau_end: f64,
    tol: f64,
) -> Result<Trajectory> {
    if !(tau_end > 0.0 && tau_end.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "tau_end",
            value: tau_end,
            reason: "must be positive and finite",
        });
    }
    if !(1e-13..=1e-6).contains(&tol) {
        return Err(Error::InvalidParameter {
            name: "tol",
            value: tol,
            reason: "must lie in [1e-13, 1e-6]",
        });
    }

    let mut samples = vec![Sample {
        tau: 0.0,
        state: *initial,
    }];
    let mut t = 0.0;
    let mut y = initial.to_array();
    let rate = rates.max_rate();
    let mut h = if rate > 0.0 {
        (0.1 * tol.powf(0.2) / rate).min(tau_end)
    } else {
        tau_end
    };
    let mut k1 = rhs(rates, &y);

    while t < tau_end {
        if tau_end - (t + h) < 1e-12 * tau_end {
            h = tau_end - t;
        }
        let k2 = rhs(rates, &axpy(&y, h, &[(A21, &k1)]));
        let k3 = rhs(rates, &axpy(&y, h, &[(A31, &k1), (A32, &k2)]));
        let k4 = rhs(rates, &axpy(&y, h, &[(A41, &k1), (A42, &k2), (A43, &k3)]));
        let k5 = rhs(
            rates,
            &axpy(&y, h, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]),
        );
        let k6 = rhs(
            rates,
            &axpy(
                &y,
                h,
                &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
            ),
        );
        let y_new = axpy(
            &y,
            h,
            &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)],
        );
        let k7 = rhs(rates, &y_new);

        let mut err: f64 = 0.0;
        for i in 0..8 {
            let e =
                h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
            err = err.max(e.abs());
        }

        let factor = if err == 0.0 {
            5.0
        } else {
            (0.9 * (tol / err).powf(0.2)).clamp(0.2, 5.0)
        };
        if err <= tol {
            t = if tau_end - (t + h) < 1e-12 * tau_end {
                tau_end
            } else {
                t + h
            };
            y = y_new;
            k1 = k7; // first-same-as-last
            samples.push(Sample {
                tau: t,
                state: XState::from_array(y),
            });
            h *= factor.min(5.0);
        } else {
            h *= factor.min(1.0);
        }
        if h < MIN_STEP && t < tau_end {
            return Err(Error::StepUnderflow { tau: t, step: h });
        }
    }

    Ok(Trajectory {
        samples,
        method: Method::OdeOracle,
    })
}
