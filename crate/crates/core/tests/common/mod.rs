//! Independent reference implementations used by the integration tests.
#![allow(dead_code)]

use massent::entanglement::closed_form_k;
use massent::field_bath::GklsCoefficients;
use massent::xstate::{XState, C64};
use nalgebra::{Matrix2, Matrix4, SMatrix, SVector};

pub type M16 = SMatrix<C64, 16, 16>;

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

fn on_qubit(q: usize, s: Matrix2<C64>) -> Matrix4<C64> {
    let id = Matrix2::<C64>::identity();
    if q == 0 {
        s.kronecker(&id)
    } else {
        id.kronecker(&s)
    }
}

/// Full GKLS generator on vec(rho) (column-major) in the product basis, built
/// from collective lowering and raising operators with emission rate
/// `2(a + b)` and absorption rate `2(a - b)`.
pub fn lindblad_generator(k: &GklsCoefficients) -> M16 {
    let lower = Matrix2::new(c(0.0), c(1.0), c(0.0), c(0.0));
    let raise = lower.adjoint();
    let id4 = Matrix4::<C64>::identity();
    let mut gen = M16::zeros();
    for alpha in 0..2 {
        for beta in 0..2 {
            let (a, b) = if alpha == beta {
                (k.a1, k.b1)
            } else {
                (k.a2, k.b2)
            };
            for (rate, op) in [(2.0 * (a + b), lower), (2.0 * (a - b), raise)] {
                let lb = on_qubit(beta, op);
                let la_dag = on_qubit(alpha, op).adjoint();
                let prod = la_dag * lb;
                // vec(X rho Y) = (Y^T kron X) vec(rho)
                let jump = la_dag.transpose().kronecker(&lb);
                let left = id4.kronecker(&prod);
                let right = prod.transpose().kronecker(&id4);
                gen += (jump - (left + right) * c(0.5)) * c(rate);
            }
        }
    }
    gen
}

pub fn vec16(rho: &Matrix4<C64>) -> SVector<C64, 16> {
    SVector::from_iterator(rho.iter().copied())
}

pub fn unvec16(v: &SVector<C64, 16>) -> Matrix4<C64> {
    Matrix4::from_iterator(v.iter().copied())
}

/// Propagates a product-basis density matrix with the full generator.
pub fn propagate_full(k: &GklsCoefficients, rho: &Matrix4<C64>, tau: f64) -> Matrix4<C64> {
    let prop = (lindblad_generator(k) * c(tau)).exp();
    unvec16(&(prop * vec16(rho)))
}

/// Largest magnitude outside the diagonal and anti-diagonal.
pub fn max_off_x(rho: &Matrix4<C64>) -> f64 {
    let mut m = 0.0f64;
    for i in 0..4 {
        for j in 0..4 {
            if i != j && i + j != 3 {
                m = m.max(rho[(i, j)].norm());
            }
        }
    }
    m
}

fn hermitian_eigenvalues(m: &Matrix4<C64>) -> [f64; 4] {
    let h = (m + m.adjoint()) * c(0.5);
    let ev = h.symmetric_eigen().eigenvalues;
    let mut v = [ev[0], ev[1], ev[2], ev[3]];
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

fn psd_sqrt(m: &Matrix4<C64>) -> Matrix4<C64> {
    let h = (m + m.adjoint()) * c(0.5);
    let eig = h.symmetric_eigen();
    let d = Matrix4::from_diagonal(&eig.eigenvalues.map(|x| c(x.max(0.0).sqrt())));
    eig.eigenvectors * d * eig.eigenvectors.adjoint()
}

/// Wootters concurrence: square roots of the eigenvalues of
/// `sqrt(rho) rho~ sqrt(rho)` with `rho~ = (sy x sy) rho* (sy x sy)`.
pub fn wootters_concurrence(rho: &Matrix4<C64>) -> f64 {
    let sy = Matrix2::new(c(0.0), C64::new(0.0, -1.0), C64::new(0.0, 1.0), c(0.0));
    let yy = sy.kronecker(&sy);
    let tilde = yy * rho.conjugate() * yy;
    let s = psd_sqrt(rho);
    let l = hermitian_eigenvalues(&(s * tilde * s)).map(|x| x.max(0.0).sqrt());
    (l[0] - l[1] - l[2] - l[3]).max(0.0)
}

/// Negativity `||rho^T_B||_1 - 1` from the eigenvalues of the partial transpose.
pub fn partial_transpose_negativity(rho: &Matrix4<C64>) -> f64 {
    let mut pt = Matrix4::<C64>::zeros();
    for i in 0..4 {
        for j in 0..4 {
            let (a, b) = (i / 2, i % 2);
            let (a2, b2) = (j / 2, j % 2);
            pt[(a * 2 + b2, a2 * 2 + b)] = rho[(i, j)];
        }
    }
    hermitian_eigenvalues(&pt)
        .iter()
        .filter(|&&x| x < 0.0)
        .map(|x| -2.0 * x)
        .sum()
}

/// Lifetime of a `lambda = 0` diagonal state by bisection on the closed-form
/// concurrence, in units of `1/gamma0`.
pub fn bisect_lifetime(e: f64, g: f64, a: f64, s: f64) -> f64 {
    let st = XState::diagonal(g, a, s, e).unwrap();
    let alive = |tau: f64| {
        let (k1, k2) = closed_form_k(&st, 0.0, (-tau).exp()).unwrap();
        k1.max(k2) > 0.0
    };
    let mut hi = 1.0;
    while alive(hi) {
        hi *= 2.0;
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if alive(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
