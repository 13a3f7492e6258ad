//! Random X-states for randomized checks. All samplers take an explicit RNG
//! so seeded runs are reproducible.

use nalgebra::Matrix4;
use rand::Rng;

use crate::entanglement::sudden_death_condition;
use crate::xstate::{XState, C64};

fn dirichlet4<R: Rng + ?Sized>(rng: &mut R) -> [f64; 4] {
    let w: [f64; 4] = std::array::from_fn(|_| -(1.0 - rng.gen::<f64>()).ln());
    let t: f64 = w.iter().sum();
    w.map(|x| x / t)
}

fn coherence<R: Rng + ?Sized>(rng: &mut R, bound: f64) -> C64 {
    let r = rng.gen::<f64>() * bound;
    C64::from_polar(r, rng.gen::<f64>() * std::f64::consts::TAU)
}

/// Diagonal state with populations uniform on the simplex.
pub fn random_diagonal<R: Rng + ?Sized>(rng: &mut R) -> XState {
    let [g, a, s, e] = dirichlet4(rng);
    XState::from_array([g, a, s, e, 0.0, 0.0, 0.0, 0.0])
}

/// General X-state: uniform populations and coherences inside the positivity bounds.
pub fn random_x_state<R: Rng + ?Sized>(rng: &mut R) -> XState {
    let mut st = random_diagonal(rng);
    st.coh_ge = coherence(rng, (st.pop_g * st.pop_e).sqrt());
    st.coh_as = coherence(rng, (st.pop_a * st.pop_s).sqrt());
    st
}

/// X-state with `rho_AS = 0`.
pub fn random_x_state_no_as<R: Rng + ?Sized>(rng: &mut R) -> XState {
    let mut st = random_x_state(rng);
    st.coh_as = C64::new(0.0, 0.0);
    st
}

/// Pure X-state: `a|00> + b|11>` or `a|01> + b|10>` with random weights and phases.
pub fn random_pure_x_state<R: Rng + ?Sized>(rng: &mut R) -> XState {
    let theta = rng.gen::<f64>() * std::f64::consts::FRAC_PI_2;
    let a = C64::from_polar(theta.cos(), rng.gen::<f64>() * std::f64::consts::TAU);
    let b = C64::from_polar(theta.sin(), rng.gen::<f64>() * std::f64::consts::TAU);
    let (i, j) = if rng.gen::<bool>() { (0, 3) } else { (1, 2) };
    let mut psi = [C64::new(0.0, 0.0); 4];
    psi[i] = a;
    psi[j] = b;
    let rho = Matrix4::from_fn(|r, c| psi[r] * psi[c].conj());
    XState::from_product_basis(&rho).expect("pure X-state")
}

/// Diagonal state `(e, g, a, s)` with `4 e g < (a - s)^2 < 4 e`.
pub fn random_sudden_death_populations<R: Rng + ?Sized>(rng: &mut R) -> [f64; 4] {
    loop {
        let [g, a, s, e] = dirichlet4(rng);
        if sudden_death_condition(e, g, a, s) {
            return [e, g, a, s];
        }
    }
}
