//! Analytic solution of the vacuum dynamics (`A1 = B1`, `A2 = B2 = lambda A1`).

use crate::error::{finite, non_negative, Error, Result};
use crate::xstate::XState;

/// Largest `|lambda|` accepted by the closed-form expressions. They carry
/// `1/(1 - lambda^2)` factors that cancel analytically but not numerically.
pub const LAMBDA_LIMIT: f64 = 1.0 - 1e-6;

/// Decay function `exp(-gray * gamma0 * tau)`.
pub fn xi(tau: f64, gray: f64, gamma0: f64) -> Result<f64> {
    non_negative("tau", tau)?;
    non_negative("gray_factor", gray)?;
    non_negative("gamma0", gamma0)?;
    Ok((-gray * gamma0 * tau).exp())
}

pub(crate) fn check_lambda_xi(lambda: f64, xi_val: f64) -> Result<()> {
    finite("lambda", lambda)?;
    finite("xi", xi_val)?;
    if lambda.abs() > LAMBDA_LIMIT {
        return Err(Error::LambdaSingular(lambda));
    }
    if !(xi_val > 0.0 && xi_val <= 1.0) {
        return Err(Error::InvalidParameter {
            name: "xi",
            value: xi_val,
            reason: "must lie in (0, 1]",
        });
    }
    Ok(())
}

/// `f_I(l, xi) = ((1+l)/(1-l) rho_E(0) + rho_I(0)) xi^l`.
pub(crate) fn f_i(l: f64, xi_val: f64, rho_e0: f64, rho_i0: f64) -> f64 {
    ((1.0 + l) / (1.0 - l) * rho_e0 + rho_i0) * xi_val.powf(l)
}

/// `f_A(-lambda) - f_S(lambda)`.
pub(crate) fn g_fn(initial: &XState, lambda: f64, xi_val: f64) -> f64 {
    f_i(-lambda, xi_val, initial.pop_e, initial.pop_a)
        - f_i(lambda, xi_val, initial.pop_e, initial.pop_s)
}

/// `f_A(-lambda) + f_S(lambda)`.
pub(crate) fn h_fn(initial: &XState, lambda: f64, xi_val: f64) -> f64 {
    f_i(-lambda, xi_val, initial.pop_e, initial.pop_a)
        + f_i(lambda, xi_val, initial.pop_e, initial.pop_s)
}

/// State at the time for which the decay function equals `xi_val`.
pub fn closed_form_state(initial: &XState, lambda: f64, xi_val: f64) -> Result<XState> {
    check_lambda_xi(lambda, xi_val)?;
    let e0 = initial.pop_e;
    let ln_xi = xi_val.ln();
    // xi^(1-l) - xi^2 = -xi^(1-l) expm1((1+l) ln xi), free of the cancellation
    // that the 1/(1-l) prefactor would otherwise amplify
    let pop_a = xi_val.powf(1.0 - lambda)
        * (initial.pop_a
            - (1.0 - lambda) / (1.0 + lambda) * e0 * ((1.0 + lambda) * ln_xi).exp_m1());
    let pop_s = xi_val.powf(1.0 + lambda)
        * (initial.pop_s
            - (1.0 + lambda) / (1.0 - lambda) * e0 * ((1.0 - lambda) * ln_xi).exp_m1());
    let pop_e = xi_val * xi_val * e0;
    let pop_g = 1.0 - (pop_a + pop_s + pop_e);
    Ok(XState {
        pop_g,
        pop_a,
        pop_s,
        pop_e,
        coh_ge: xi_val * initial.coh_ge,
        coh_as: xi_val * initial.coh_as,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::xstate::C64;

    #[test]
    fn xi_values() {
        assert_eq!(xi(0.0, 0.7, 1.0).unwrap(), 1.0);
        assert_eq!(xi(123.0, 0.0, 1.0).unwrap(), 1.0);
        assert!((xi(std::f64::consts::LN_2, 1.0, 1.0).unwrap() - 0.5).abs() < 1e-16);
        assert!(xi(-1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn identity_at_xi_one() {
        let s = XState::new(
            0.1,
            0.2,
            0.3,
            0.4,
            C64::new(0.1, 0.05),
            C64::new(0.05, -0.1),
        )
        .unwrap();
        let out = closed_form_state(&s, 0.37, 1.0).unwrap();
        assert!(out.max_abs_diff(&s) < 1e-15);
    }

    #[test]
    fn excited_independent_baths() {
        for &x in &[0.9, 0.5, 0.1, 1e-3] {
            let out = closed_form_state(&XState::excited(), 0.0, x).unwrap();
            assert!((out.pop_e - x * x).abs() < 1e-15);
            assert!((out.pop_a - x * (1.0 - x)).abs() < 1e-15);
            assert!((out.pop_s - x * (1.0 - x)).abs() < 1e-15);
            assert!((out.pop_g - (1.0 - x) * (1.0 - x)).abs() < 1e-15);
        }
    }

    #[test]
    fn long_time_limit_is_ground() {
        let s = XState::diagonal(0.1, 0.2, 0.3, 0.4).unwrap();
        let out = closed_form_state(&s, 0.5, 1e-200).unwrap();
        assert!(out.max_abs_diff(&XState::ground()) < 1e-90);
    }

    #[test]
    fn singular_lambda_rejected() {
        let s = XState::excited();
        assert!(matches!(
            closed_form_state(&s, 1.0, 0.5),
            Err(Error::LambdaSingular(_))
        ));
        assert!(matches!(
            closed_form_state(&s, -1.0 + 1e-8, 0.5),
            Err(Error::LambdaSingular(_))
        ));
        assert!(closed_form_state(&s, LAMBDA_LIMIT, 0.5).is_ok());
        assert!(closed_form_state(&s, 0.2, 0.0).is_err());
    }
}
