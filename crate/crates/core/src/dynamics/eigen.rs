//! Exact propagation of the linear population equations.
//!
//! The generator is diagonalised once (`G = V diag(mu) V^-1`) so that many
//! times can be evaluated cheaply. Near-degenerate or ill-conditioned spectra
//! are rejected and handled by a scaling-and-squaring matrix exponential.

use nalgebra::{Matrix4, Vector4, SVD};

use crate::dynamics::rates::RateMatrix;
use crate::error::{non_negative, Error, Result};
use crate::xstate::XState;

/// Relative eigenvalue gap below which the spectrum counts as degenerate.
const DEGENERACY_GAP: f64 = 1e-4;
/// Relative reconstruction residual accepted for the decomposition.
const RESIDUAL_TOL: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct EigenPropagator {
    rates: RateMatrix,
    eigenvalues: Vector4<f64>,
    vectors: Matrix4<f64>,
    inverse: Matrix4<f64>,
}

impl EigenPropagator {
    pub fn new(rates: &RateMatrix) -> Result<Self> {
        let g = rates.generator;
        let scale = g.amax();
        if scale == 0.0 {
            return Err(Error::DegenerateSpectrum);
        }
        let spectrum = g.complex_eigenvalues();
        let mut eigenvalues = Vector4::zeros();
        for (i, z) in spectrum.iter().enumerate() {
            if z.im.abs() > 1e-10 * scale {
                return Err(Error::DegenerateSpectrum);
            }
            eigenvalues[i] = z.re;
        }
        for i in 0..4 {
            for j in i + 1..4 {
                if (eigenvalues[i] - eigenvalues[j]).abs() < DEGENERACY_GAP * scale {
                    return Err(Error::DegenerateSpectrum);
                }
            }
        }

        let mut vectors = Matrix4::zeros();
        for (i, &mu) in eigenvalues.iter().enumerate() {
            let shifted = g - Matrix4::identity() * mu;
            let svd = SVD::new(shifted, false, true);
            let v_t = svd.v_t.ok_or(Error::DegenerateSpectrum)?;
            let k = svd.singular_values.imin();
            let v = v_t.row(k).transpose();
            vectors.set_column(i, &(v / v.norm()));
        }
        let inverse = vectors.try_inverse().ok_or(Error::DegenerateSpectrum)?;

        let rebuilt = vectors * Matrix4::from_diagonal(&eigenvalues) * inverse;
        if (rebuilt - g).amax() > RESIDUAL_TOL * scale.max(1.0) {
            return Err(Error::DegenerateSpectrum);
        }
        Ok(Self {
            rates: *rates,
            eigenvalues,
            vectors,
            inverse,
        })
    }

    pub fn eigenvalues(&self) -> Vector4<f64> {
        self.eigenvalues
    }

    pub fn propagate(&self, initial: &XState, tau: f64) -> XState {
        let modes = self.inverse * Vector4::from(initial.populations());
        let evolved = modes.zip_map(&self.eigenvalues, |c, mu| c * (mu * tau).exp());
        let p = self.vectors * evolved;
        decay_coherences(initial, [p[0], p[1], p[2], p[3]], &self.rates, tau)
    }
}

fn decay_coherences(initial: &XState, pops: [f64; 4], rates: &RateMatrix, tau: f64) -> XState {
    XState {
        coh_ge: initial.coh_ge * (-rates.decay_ge * tau).exp(),
        coh_as: initial.coh_as * (-rates.decay_as * tau).exp(),
        ..initial.with_populations(pops)
    }
}

/// Propagation through `exp(tau G)` computed by scaling and squaring.
pub fn propagate_expm(initial: &XState, rates: &RateMatrix, tau: f64) -> Result<XState> {
    non_negative("tau", tau)?;
    if rates.is_zero() {
        return Ok(*initial);
    }
    let p = (rates.generator * tau).exp() * Vector4::from(initial.populations());
    Ok(decay_coherences(
        initial,
        [p[0], p[1], p[2], p[3]],
        rates,
        tau,
    ))
}

/// Exact propagation by eigendecomposition, falling back to the matrix
/// exponential for degenerate spectra.
pub fn propagate_eigen(initial: &XState, rates: &RateMatrix, tau: f64) -> Result<XState> {
    non_negative("tau", tau)?;
    if rates.is_zero() {
        return Ok(*initial);
    }
    match EigenPropagator::new(rates) {
        Ok(p) => Ok(p.propagate(initial, tau)),
        Err(Error::DegenerateSpectrum) => propagate_expm(initial, rates, tau),
        Err(e) => Err(e),
    }
}
