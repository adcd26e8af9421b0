//! Random matrices and states for property tests and sampling studies.

use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::matfun::{ComplexMatrix, C64};

fn normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

/// Complex Gaussian matrix with independent standard normal real and
/// imaginary parts.
pub fn ginibre<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| C64::new(normal(rng), normal(rng)))
}

pub fn hermitian<R: Rng + ?Sized>(rng: &mut R, d: usize) -> ComplexMatrix {
    let g = ginibre(rng, d, d);
    (&g + g.adjoint()).scale(0.5)
}

pub fn traceless_hermitian<R: Rng + ?Sized>(rng: &mut R, d: usize) -> ComplexMatrix {
    let mut h = hermitian(rng, d);
    let shift = h.trace() / C64::new(d as f64, 0.0);
    for i in 0..d {
        h[(i, i)] -= shift;
    }
    h
}

/// Random density matrix of the given rank, G G† / tr(G G†) with G a d×rank
/// Ginibre matrix. Rank d gives the Hilbert–Schmidt ensemble.
pub fn density_matrix<R: Rng + ?Sized>(rng: &mut R, d: usize, rank: usize) -> ComplexMatrix {
    let g = ginibre(rng, d, rank.max(1));
    let rho = &g * g.adjoint();
    let tr = rho.trace().re;
    let rho = rho.unscale(tr);
    (&rho + rho.adjoint()).scale(0.5)
}

pub fn pure_state<R: Rng + ?Sized>(rng: &mut R, d: usize) -> ComplexMatrix {
    density_matrix(rng, d, 1)
}

/// Random real symmetric density matrix.
pub fn real_density_matrix<R: Rng + ?Sized>(rng: &mut R, d: usize, rank: usize) -> ComplexMatrix {
    let g = DMatrix::<f64>::from_fn(d, rank.max(1), |_, _| normal(rng));
    let rho = &g * g.transpose();
    let tr = rho.trace();
    rho.unscale(tr).map(|x| C64::new(x, 0.0))
}

/// Haar-distributed unitary via QR with the phases of R's diagonal removed.
pub fn unitary<R: Rng + ?Sized>(rng: &mut R, d: usize) -> ComplexMatrix {
    let qr = ginibre(rng, d, d).qr();
    let (mut q, r) = qr.unpack();
    for j in 0..d {
        let rjj = r[(j, j)];
        if rjj.norm() > 0.0 {
            let phase = rjj / rjj.norm();
            for z in q.column_mut(j).iter_mut() {
                *z *= phase;
            }
        }
    }
    q
}

/// Haar-distributed real orthogonal matrix.
pub fn orthogonal<R: Rng + ?Sized>(rng: &mut R, d: usize) -> DMatrix<f64> {
    let g = DMatrix::<f64>::from_fn(d, d, |_, _| normal(rng));
    let (mut q, r) = g.qr().unpack();
    for j in 0..d {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    q
}

/// Uniform draw from [lo, hi).
pub fn uniform<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    rng.random_range(lo..hi)
}
