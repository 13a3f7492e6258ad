//! Concurrence and negativity coefficients straight from the initial
//! populations, without propagating the state. Valid in vacuum for initial
//! states with `rho_AS(0) = 0`.

use crate::dynamics::closed_form::{check_lambda_xi, g_fn, h_fn};
use crate::entanglement::measures::sqrt_clipped;
use crate::error::{Error, Result};
use crate::xstate::{XState, STATE_TOL};

fn check_assumptions(initial: &XState, lambda: f64, xi: f64) -> Result<()> {
    initial.check(STATE_TOL)?;
    check_lambda_xi(lambda, xi)?;
    if initial.coh_as.re != 0.0 || initial.coh_as.im != 0.0 {
        return Err(Error::AssumptionViolated("initial rho_AS must vanish"));
    }
    Ok(())
}

/// `(K1, K2)` at decay value `xi`.
pub fn closed_form_k(initial: &XState, lambda: f64, xi: f64) -> Result<(f64, f64)> {
    check_assumptions(initial, lambda, xi)?;
    let e = initial.pop_e;
    let ge = initial.coh_ge.norm();
    if lambda == 0.0 {
        let g = initial.pop_g;
        let k1 = xi * (initial.pop_a - initial.pop_s).abs()
            - 2.0 * xi * sqrt_clipped(xi * xi * e * e - xi * (1.0 + e - g) * e + e)?;
        let k2 = xi * (2.0 * ge + (2.0 * xi - 1.0) * e - 1.0 + g);
        return Ok((k1, k2));
    }
    let l2 = lambda * lambda;
    let g = g_fn(initial, lambda, xi);
    let h = h_fn(initial, lambda, xi);
    let k1 = xi * (xi * 4.0 * lambda / (1.0 - l2) * e + g).abs()
        - 2.0
            * xi
            * sqrt_clipped(xi * xi * (1.0 + 3.0 * l2) / (1.0 - l2) * e * e + (1.0 - xi * h) * e)?;
    let k2 = xi * (2.0 * ge + 2.0 * xi * (1.0 + l2) / (1.0 - l2) * e - h);
    Ok((k1, k2))
}

/// `(N1, N2)` at decay value `xi`.
pub fn closed_form_n(initial: &XState, lambda: f64, xi: f64) -> Result<(f64, f64)> {
    check_assumptions(initial, lambda, xi)?;
    let e = initial.pop_e;
    let ge = initial.coh_ge.norm();
    if lambda == 0.0 {
        let g = initial.pop_g;
        let d = initial.pop_a - initial.pop_s;
        let inner = 1.0 - xi - xi * (e - g);
        let n1 = xi * xi * e + 0.5 * (1.0 - xi)
            - 0.5 * xi * (e - g)
            - 0.5 * sqrt_clipped(xi * xi * d * d + inner * inner)?;
        let n2 = 0.5 * xi * (1.0 - g - (2.0 * xi - 1.0) * e - 2.0 * ge);
        return Ok((n1, n2));
    }
    let l2 = lambda * lambda;
    let g = g_fn(initial, lambda, xi);
    let h = h_fn(initial, lambda, xi);
    let u = xi * xi * 4.0 * lambda / (1.0 - l2) * e + xi * g;
    let v = xi * xi * 4.0 * l2 / (1.0 - l2) * e + 1.0 - xi * h;
    let n1 = xi * xi * (1.0 + l2) / (1.0 - l2) * e + 0.5 * (1.0 - xi * h)
        - 0.5 * sqrt_clipped(u * u + v * v)?;
    let n2 = 0.5 * xi * (h - 2.0 * xi * (1.0 + l2) / (1.0 - l2) * e - 2.0 * ge);
    Ok((n1, n2))
}
