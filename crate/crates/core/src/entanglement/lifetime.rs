//! Finite-time disentanglement of diagonal initial states in independent
//! baths (`lambda = 0`), with populations `e, g, a, s` of `E, G, A, S`.

use serde::{Deserialize, Serialize};

use crate::error::{non_negative, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Lifetime {
    Finite(f64),
    Infinite,
}

impl Lifetime {
    pub fn finite(&self) -> Option<f64> {
        match self {
            Lifetime::Finite(t) => Some(*t),
            Lifetime::Infinite => None,
        }
    }
}

fn check_populations(e: f64, g: f64, a: f64, s: f64) -> Result<()> {
    for (name, v) in [("e", e), ("g", g), ("a", a), ("s", s)] {
        non_negative(name, v)?;
    }
    let total = e + g + a + s;
    if (total - 1.0).abs() > 1e-10 {
        return Err(Error::NotAState(format!("populations sum to {total}")));
    }
    Ok(())
}

/// `4 e g < (a - s)^2 < 4 e`: entangled at the start and dead in finite time.
pub fn sudden_death_condition(e: f64, g: f64, a: f64, s: f64) -> bool {
    let d2 = (a - s) * (a - s);
    4.0 * e * g < d2 && d2 < 4.0 * e
}

/// Time at which the concurrence first reaches zero. `Finite(0)` for states
/// that start separable, `Infinite` for asymptotic decay.
pub fn lifetime(e: f64, g: f64, a: f64, s: f64, gray: f64, gamma0: f64) -> Result<Lifetime> {
    check_populations(e, g, a, s)?;
    non_negative("gray_factor", gray)?;
    non_negative("gamma0", gamma0)?;
    let d2 = (a - s) * (a - s);
    if d2 <= 4.0 * e * g {
        return Ok(Lifetime::Finite(0.0));
    }
    if gray == 0.0 || gamma0 == 0.0 {
        return Err(Error::FrozenDynamics);
    }
    if !sudden_death_condition(e, g, a, s) {
        return Ok(Lifetime::Infinite);
    }
    let root = (2.0 * (a + e).powi(2) + 2.0 * (e + s).powi(2) - 4.0 * e)
        .max(0.0)
        .sqrt();
    let num = 2.0 * e * (root + a + 2.0 * e + s);
    let den = 4.0 * e - d2;
    // ln(num/den) via ln_1p keeps precision for short lifetimes
    let tau0 = ((num - den) / den).ln_1p();
    Ok(Lifetime::Finite(tau0 / (gray * gamma0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn condition_examples() {
        assert!(sudden_death_condition(0.5, 0.0, 0.5, 0.0));
        assert!(!sudden_death_condition(0.0, 0.0, 1.0, 0.0));
        assert!(!sudden_death_condition(1.0, 0.0, 0.0, 0.0));
    }

    #[test]
    fn lifetime_examples() {
        // bisection root of the closed-form K1: xi^2 - 3 xi + 7/4 = 0
        let xi_root: f64 = (3.0 - 2.0f64.sqrt()) / 2.0;
        let expected = -xi_root.ln();
        let t1 = lifetime(0.5, 0.0, 0.5, 0.0, 1.0, 1.0)
            .unwrap()
            .finite()
            .unwrap();
        assert!((t1 - expected).abs() < 1e-14);
        assert!((t1 - 0.232_066_721_125_962).abs() < 1e-13);
        let t_half = lifetime(0.5, 0.0, 0.5, 0.0, 0.5, 1.0)
            .unwrap()
            .finite()
            .unwrap();
        assert_eq!(t_half, 2.0 * t1);

        assert_eq!(
            lifetime(0.0, 0.0, 1.0, 0.0, 1.0, 1.0).unwrap(),
            Lifetime::Infinite
        );
        assert_eq!(
            lifetime(1.0, 0.0, 0.0, 0.0, 1.0, 1.0).unwrap(),
            Lifetime::Finite(0.0)
        );
        assert!(matches!(
            lifetime(0.5, 0.0, 0.5, 0.0, 0.0, 1.0),
            Err(Error::FrozenDynamics)
        ));
        assert!(lifetime(0.5, 0.1, 0.5, 0.0, 1.0, 1.0).is_err());
    }
}
