use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::xstate::{XState, STATE_TOL};

/// Contour cutoff below which concurrence maps are left blank.
pub const CONCURRENCE_CUTOFF: f64 = 1e-3;
/// Contour cutoff below which negativity maps are left blank.
pub const NEGATIVITY_CUTOFF: f64 = 1e-5;

const RADICAND_CLIP: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Measure {
    Concurrence,
    Negativity,
}

impl Measure {
    pub fn value(&self, state: &XState) -> Result<f64> {
        match self {
            Measure::Concurrence => concurrence(state),
            Measure::Negativity => negativity(state),
        }
    }

    /// Continuous function whose sign tells whether the measure is above
    /// `threshold`. At threshold 0 the signed coefficients are used so that
    /// zero crossings are transversal instead of flat.
    pub fn signed_excess(&self, state: &XState, threshold: f64) -> Result<f64> {
        if threshold > 0.0 {
            return Ok(self.value(state)? - threshold);
        }
        match self {
            Measure::Concurrence => {
                let (k1, k2) = concurrence_terms(state)?;
                Ok(k1.max(k2))
            }
            Measure::Negativity => {
                let (n1, n2) = negativity_terms(state)?;
                Ok((-2.0 * n1).max(-2.0 * n2))
            }
        }
    }

    pub fn default_cutoff(&self) -> f64 {
        match self {
            Measure::Concurrence => CONCURRENCE_CUTOFF,
            Measure::Negativity => NEGATIVITY_CUTOFF,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Measure::Concurrence => "concurrence",
            Measure::Negativity => "negativity",
        }
    }
}

/// Both measures together with the coefficients they are built from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntanglementValue {
    pub concurrence: f64,
    pub negativity: f64,
    pub k1: f64,
    pub k2: f64,
    pub n1: f64,
    pub n2: f64,
}

impl EntanglementValue {
    pub fn of(state: &XState) -> Result<Self> {
        let (k1, k2) = concurrence_terms(state)?;
        let (n1, n2) = negativity_terms(state)?;
        Ok(Self {
            concurrence: concurrence_from(k1, k2),
            negativity: negativity_from(n1, n2),
            k1,
            k2,
            n1,
            n2,
        })
    }
}

pub(crate) fn sqrt_clipped(x: f64) -> Result<f64> {
    if x >= 0.0 {
        Ok(x.sqrt())
    } else if x >= -RADICAND_CLIP {
        Ok(0.0)
    } else {
        Err(Error::UnphysicalRadicand(x))
    }
}

pub(crate) fn concurrence_from(k1: f64, k2: f64) -> f64 {
    0.0f64.max(k1).max(k2)
}

pub(crate) fn negativity_from(n1: f64, n2: f64) -> f64 {
    0.0f64.max(-2.0 * n1) + 0.0f64.max(-2.0 * n2)
}

/// `(K1, K2)` with the coherence terms read Hermitian:
/// `[rho_AS - rho_SA]^2 = -4 Im(rho_AS)^2`, `[rho_AS + rho_SA]^2 = 4 Re(rho_AS)^2`.
pub fn concurrence_terms(state: &XState) -> Result<(f64, f64)> {
    state.check(STATE_TOL)?;
    let d = state.pop_a - state.pop_s;
    let t = state.pop_a + state.pop_s;
    let im = state.coh_as.im;
    let re = state.coh_as.re;
    let k1 = sqrt_clipped(d * d + 4.0 * im * im)? - 2.0 * sqrt_clipped(state.pop_g * state.pop_e)?;
    let k2 = 2.0 * state.coh_ge.norm() - sqrt_clipped(t * t - 4.0 * re * re)?;
    Ok((k1, k2))
}

/// `(N1, N2)`: the two potentially negative eigenvalues of the partial transpose.
pub fn negativity_terms(state: &XState) -> Result<(f64, f64)> {
    state.check(STATE_TOL)?;
    let d = state.pop_a - state.pop_s;
    let ge = state.pop_g - state.pop_e;
    let im = state.coh_as.im;
    let re = state.coh_as.re;
    let n1 = 0.5 * (state.pop_g + state.pop_e - sqrt_clipped(d * d + 4.0 * im * im + ge * ge)?);
    let n2 = 0.5
        * (state.pop_a + state.pop_s
            - sqrt_clipped(4.0 * state.coh_ge.norm_sqr() + 4.0 * re * re)?);
    Ok((n1, n2))
}

pub fn concurrence(state: &XState) -> Result<f64> {
    let (k1, k2) = concurrence_terms(state)?;
    Ok(concurrence_from(k1, k2))
}

pub fn negativity(state: &XState) -> Result<f64> {
    let (n1, n2) = negativity_terms(state)?;
    Ok(negativity_from(n1, n2))
}
