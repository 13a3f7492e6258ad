//! X-form two-qubit states in the coupled basis
//! `{|G> = |00>, |A> = (|10> - |01>)/sqrt2, |S> = (|10> + |01>)/sqrt2, |E> = |11>}`.
//!
//! Only the upper coherences `rho_GE` and `rho_AS` are stored; their conjugates
//! are implied, so every `XState` is Hermitian by construction.

use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::{Complex, Matrix4};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;

/// Tolerance for the trace and positivity checks on states.
pub const STATE_TOL: f64 = 1e-10;
/// Largest off-X entry tolerated when importing a product-basis matrix.
pub const OFF_X_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct XState {
    pub pop_g: f64,
    pub pop_a: f64,
    pub pop_s: f64,
    pub pop_e: f64,
    pub coh_ge: C64,
    pub coh_as: C64,
}

impl XState {
    /// Builds a state and checks trace and positivity at [`STATE_TOL`].
    pub fn new(
        pop_g: f64,
        pop_a: f64,
        pop_s: f64,
        pop_e: f64,
        coh_ge: C64,
        coh_as: C64,
    ) -> Result<Self> {
        let s = Self {
            pop_g,
            pop_a,
            pop_s,
            pop_e,
            coh_ge,
            coh_as,
        };
        s.check(STATE_TOL)?;
        Ok(s)
    }

    /// Diagonal state with the given populations of `G, A, S, E`.
    pub fn diagonal(g: f64, a: f64, s: f64, e: f64) -> Result<Self> {
        Self::new(g, a, s, e, C64::new(0.0, 0.0), C64::new(0.0, 0.0))
    }

    pub fn ground() -> Self {
        Self::basis(0)
    }

    pub fn antisymmetric() -> Self {
        Self::basis(1)
    }

    pub fn symmetric() -> Self {
        Self::basis(2)
    }

    pub fn excited() -> Self {
        Self::basis(3)
    }

    /// `(|00> + |11>)/sqrt2`.
    pub fn bell_ge() -> Self {
        Self {
            pop_g: 0.5,
            pop_a: 0.0,
            pop_s: 0.0,
            pop_e: 0.5,
            coh_ge: C64::new(0.5, 0.0),
            coh_as: C64::new(0.0, 0.0),
        }
    }

    fn basis(i: usize) -> Self {
        let mut p = [0.0; 4];
        p[i] = 1.0;
        Self {
            pop_g: p[0],
            pop_a: p[1],
            pop_s: p[2],
            pop_e: p[3],
            coh_ge: C64::new(0.0, 0.0),
            coh_as: C64::new(0.0, 0.0),
        }
    }

    /// Populations in the order `G, A, S, E`.
    pub fn populations(&self) -> [f64; 4] {
        [self.pop_g, self.pop_a, self.pop_s, self.pop_e]
    }

    pub fn with_populations(&self, p: [f64; 4]) -> Self {
        Self {
            pop_g: p[0],
            pop_a: p[1],
            pop_s: p[2],
            pop_e: p[3],
            ..*self
        }
    }

    pub fn trace(&self) -> f64 {
        self.pop_g + self.pop_a + self.pop_s + self.pop_e
    }

    /// Flat representation `[G, A, S, E, re GE, im GE, re AS, im AS]`.
    pub fn to_array(&self) -> [f64; 8] {
        [
            self.pop_g,
            self.pop_a,
            self.pop_s,
            self.pop_e,
            self.coh_ge.re,
            self.coh_ge.im,
            self.coh_as.re,
            self.coh_as.im,
        ]
    }

    pub fn from_array(v: [f64; 8]) -> Self {
        Self {
            pop_g: v[0],
            pop_a: v[1],
            pop_s: v[2],
            pop_e: v[3],
            coh_ge: C64::new(v[4], v[5]),
            coh_as: C64::new(v[6], v[7]),
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.to_array()
            .iter()
            .zip(other.to_array())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Trace, population sign and block positivity at tolerance `tol`.
    pub fn check(&self, tol: f64) -> Result<()> {
        let v = self.to_array();
        if v.iter().any(|x| !x.is_finite()) {
            return Err(Error::NotAState("non-finite entry".into()));
        }
        let pops = self.populations();
        if let Some(p) = pops.iter().find(|&&p| p < -tol) {
            return Err(Error::NotAState(format!("negative population {p:e}")));
        }
        let tr = self.trace();
        if (tr - 1.0).abs() > tol {
            return Err(Error::NotAState(format!("trace {tr} != 1")));
        }
        if self.coh_ge.norm_sqr() > self.pop_g * self.pop_e + tol {
            return Err(Error::NotAState("|rho_GE|^2 exceeds rho_G rho_E".into()));
        }
        if self.coh_as.norm_sqr() > self.pop_a * self.pop_s + tol {
            return Err(Error::NotAState("|rho_AS|^2 exceeds rho_A rho_S".into()));
        }
        Ok(())
    }

    /// Converts a product-basis density matrix (`|00>, |01>, |10>, |11>`,
    /// first label for qubit 1) into the coupled basis.
    pub fn from_product_basis(rho: &Matrix4<C64>) -> Result<Self> {
        let mut max_off_x: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                if i != j && i + j != 3 {
                    max_off_x = max_off_x.max(rho[(i, j)].norm());
                }
            }
        }
        if max_off_x > OFF_X_TOL {
            return Err(Error::NonXForm { max_off_x });
        }
        let herm = (rho - rho.adjoint())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if herm > STATE_TOL {
            return Err(Error::NotAState(format!(
                "not Hermitian (deviation {herm:e})"
            )));
        }
        let p00 = rho[(0, 0)].re;
        let p01 = rho[(1, 1)].re;
        let p10 = rho[(2, 2)].re;
        let p11 = rho[(3, 3)].re;
        let z = rho[(2, 1)];
        let mean = 0.5 * (p01 + p10);
        Self::new(
            p00,
            mean - z.re,
            mean + z.re,
            p11,
            rho[(0, 3)],
            C64::new(0.5 * (p10 - p01), z.im),
        )
    }

    /// The product-basis density matrix of this state.
    pub fn to_product_basis(&self) -> Matrix4<C64> {
        let mut rho = Matrix4::<C64>::zeros();
        let mean = 0.5 * (self.pop_a + self.pop_s);
        rho[(0, 0)] = C64::new(self.pop_g, 0.0);
        rho[(3, 3)] = C64::new(self.pop_e, 0.0);
        rho[(0, 3)] = self.coh_ge;
        rho[(3, 0)] = self.coh_ge.conj();
        rho[(1, 1)] = C64::new(mean - self.coh_as.re, 0.0);
        rho[(2, 2)] = C64::new(mean + self.coh_as.re, 0.0);
        let z = C64::new(0.5 * (self.pop_s - self.pop_a), self.coh_as.im);
        rho[(2, 1)] = z;
        rho[(1, 2)] = z.conj();
        rho
    }

    /// The coupled-basis density matrix (`G, A, S, E` ordering).
    pub fn to_coupled_matrix(&self) -> Matrix4<C64> {
        let mut rho = Matrix4::<C64>::zeros();
        for (i, p) in self.populations().into_iter().enumerate() {
            rho[(i, i)] = C64::new(p, 0.0);
        }
        rho[(0, 3)] = self.coh_ge;
        rho[(3, 0)] = self.coh_ge.conj();
        rho[(1, 2)] = self.coh_as;
        rho[(2, 1)] = self.coh_as.conj();
        rho
    }
}

/// Change of basis from product to coupled basis: columns are the coupled
/// vectors `G, A, S, E` written in the product basis.
pub fn coupled_basis() -> Matrix4<f64> {
    let r = FRAC_1_SQRT_2;
    Matrix4::new(
        1.0, 0.0, 0.0, 0.0, //
        0.0, -r, r, 0.0, //
        0.0, r, r, 0.0, //
        0.0, 0.0, 0.0, 1.0,
    )
}
