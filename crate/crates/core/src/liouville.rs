//! Liouville space: operators as column-stacked vectors, generators as
//! d²×d² superoperator matrices.
//!
//! Entry ρ_ij sits at index j·d + i, so vec(AXB) = (Bᵀ ⊗ A) vec(X) and the
//! Euclidean inner product of two vectors is tr(X†Y).

use nalgebra::DVector;

use crate::dynamics::Generator;
use crate::error::{Error, Result};
use crate::matfun::{self, ComplexMatrix, C64};
use crate::states::DensityMatrix;

/// Purity below which a matrix cannot be normalized in Liouville space.
pub const MIN_PURITY: f64 = 1e-14;

pub fn vec_operator(x: &ComplexMatrix) -> DVector<C64> {
    DVector::from_column_slice(x.as_slice())
}

pub fn devectorize(v: &DVector<C64>, d: usize) -> Result<ComplexMatrix> {
    if v.len() != d * d {
        return Err(Error::DimensionMismatch { expected: d * d, found: v.len() });
    }
    Ok(ComplexMatrix::from_column_slice(d, d, v.as_slice()))
}

/// |ρ) together with its norm √tr ρ².
#[derive(Debug, Clone, PartialEq)]
pub struct VectorizedState {
    pub dim: usize,
    pub vector: DVector<C64>,
    pub norm: f64,
}

impl VectorizedState {
    /// |ρ̃) = |ρ)/√tr ρ²
    pub fn normalized(&self) -> DVector<C64> {
        self.vector.unscale(self.norm)
    }

    pub fn devectorize(&self) -> ComplexMatrix {
        ComplexMatrix::from_column_slice(self.dim, self.dim, self.vector.as_slice())
    }
}

pub fn vectorize(rho: &DensityMatrix) -> VectorizedState {
    let vector = vec_operator(rho.matrix());
    let norm = vector.norm();
    VectorizedState { dim: rho.dim(), vector, norm }
}

/// (X|Y) = tr(X†Y)
pub fn hs_inner(x: &ComplexMatrix, y: &ComplexMatrix) -> C64 {
    x.iter().zip(y.iter()).map(|(a, b)| a.conj() * b).sum()
}

/// A generator frozen at one instant, acting on vectorized operators.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperOperator {
    pub dim: usize,
    pub matrix: ComplexMatrix,
}

impl SuperOperator {
    pub fn apply(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        if x.shape() != (self.dim, self.dim) {
            return Err(Error::DimensionMismatch { expected: self.dim, found: x.nrows() });
        }
        devectorize(&(&self.matrix * vec_operator(x)), self.dim)
    }

    /// Largest singular value, from the top eigenvalue of L†L.
    pub fn norm(&self) -> Result<f64> {
        let gram = matfun::hermitian_part(&(self.matrix.adjoint() * &self.matrix));
        let eig = matfun::eig_hermitian(&gram)?;
        Ok(eig.max().max(0.0).sqrt())
    }
}

/// L = −i(I⊗H − Hᵀ⊗I) + Σ_k γ_k (L̄_k⊗L_k − ½ I⊗L_k†L_k − ½ (L_k†L_k)ᵀ⊗I)
pub fn superoperator_matrix(g: &Generator, t: f64) -> Result<SuperOperator> {
    let d = g.dim();
    let (h, jumps) = g.lindblad_form(t)?;
    let id = matfun::identity(d);
    let mut l = (id.kronecker(&h) - h.transpose().kronecker(&id)) * C64::new(0.0, -1.0);
    for (op, rate) in jumps {
        if rate == 0.0 {
            continue;
        }
        let ldl = op.adjoint() * &op;
        let term = op.conjugate().kronecker(&op) - id.kronecker(&ldl).scale(0.5) - ldl.transpose().kronecker(&id).scale(0.5);
        l += term.scale(rate);
    }
    Ok(SuperOperator { dim: d, matrix: l })
}

/// Δ𝓛_t = √(‖L ρ̃‖² − |(ρ̃|L|ρ̃)|²) with ρ̃ the normalized vectorized state.
pub fn liouvillian_fluctuation(g: &Generator, t: f64, rho: &DensityMatrix) -> Result<f64> {
    let l = superoperator_matrix(g, t)?;
    fluctuation(&l, rho.matrix())
}

/// Δ𝓛 of a fixed superoperator on an arbitrary nonzero operator.
pub fn fluctuation(l: &SuperOperator, x: &ComplexMatrix) -> Result<f64> {
    let v = vec_operator(x);
    let purity = v.norm_squared();
    if purity <= MIN_PURITY {
        return Err(Error::DegenerateState { purity });
    }
    let tilde = v.unscale(purity.sqrt());
    let lv = &l.matrix * &tilde;
    let second = lv.norm_squared();
    let first = tilde.dotc(&lv).norm_sqr();
    let variance = second - first;
    if variance < -1e-12 * second.max(1.0) {
        return Err(Error::Internal(format!("negative Liouvillian variance {variance}")));
    }
    Ok(variance.max(0.0).sqrt())
}

/// ‖𝓛_t‖, the operator norm induced by the Hilbert–Schmidt inner product.
pub fn superop_norm(g: &Generator, t: f64) -> Result<f64> {
    superoperator_matrix(g, t)?.norm()
}

/// arccos(ρ̃|σ̃) = arccos(tr ρσ / √(tr ρ² tr σ²)).
pub fn liouville_angle(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch { expected: rho.dim(), found: sigma.dim() });
    }
    Ok(normalized_overlap(rho, sigma).clamp(-1.0, 1.0).acos())
}

/// (ρ̃|σ̃)
pub fn normalized_overlap(rho: &DensityMatrix, sigma: &DensityMatrix) -> f64 {
    hs_inner(rho.matrix(), sigma.matrix()).re / (rho.purity() * sigma.purity()).sqrt()
}
