//! Dense complex kernels: Hermitian eigendecomposition and the spectral
//! functions built on it (square root, logarithm on the support), Schatten
//! norms, and the Sylvester solve that yields the derivative of a square root.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type ComplexMatrix = DMatrix<C64>;

/// Largest ‖A − A†‖_HS accepted as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Eigenvalues in [−PSD_TOL, 0) are roundoff and get clamped to zero.
pub const PSD_TOL: f64 = 1e-10;
/// Eigenvalues at or below this are outside the support (ln, Sylvester).
pub const SUPPORT_TOL: f64 = 1e-12;
/// Relative floor under which an eigenvalue is treated as an exact zero
/// before taking a square root. √(1e-16) noise would otherwise show up as
/// 1e-8 errors in fidelities of orthogonal pure states.
pub const ROUNDOFF_FLOOR: f64 = 1e-14;

const PHASE_EPS: f64 = 1e-10;

/// Eigenpairs of a Hermitian matrix, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct HermitianEig {
    pub values: DVector<f64>,
    /// Unitary matrix whose columns are the eigenvectors.
    pub vectors: ComplexMatrix,
}

impl HermitianEig {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// V diag(f(λ)) V†.
    pub fn map<F: Fn(f64) -> f64>(&self, f: F) -> ComplexMatrix {
        let d = self.dim();
        let mut scaled = self.vectors.clone();
        for j in 0..d {
            let fj = f(self.values[j]);
            scaled.column_mut(j).scale_mut(fj);
        }
        &scaled * self.vectors.adjoint()
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map(|x| x)
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

pub fn ensure_square(a: &ComplexMatrix) -> Result<usize> {
    if a.nrows() != a.ncols() {
        return Err(Error::NotSquare { rows: a.nrows(), cols: a.ncols() });
    }
    Ok(a.nrows())
}

pub fn hermiticity_residual(a: &ComplexMatrix) -> f64 {
    (a - a.adjoint()).norm()
}

/// (A + A†)/2
pub fn hermitian_part(a: &ComplexMatrix) -> ComplexMatrix {
    (a + a.adjoint()).scale(0.5)
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Eigenvalues come back ascending. Each eigenvector is phase-fixed so its
/// first component with modulus above 1e-10 is real and positive, which
/// makes the output reproducible bit for bit.
pub fn eig_hermitian(a: &ComplexMatrix) -> Result<HermitianEig> {
    ensure_square(a)?;
    if a.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NotFinite);
    }
    let residual = hermiticity_residual(a);
    if residual > HERMITIAN_TOL {
        return Err(Error::NotHermitian { residual });
    }
    Ok(eig_hermitian_unchecked(&hermitian_part(a)))
}

fn eig_hermitian_unchecked(a: &ComplexMatrix) -> HermitianEig {
    let d = a.nrows();
    let eig = SymmetricEigen::new(a.clone());
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));

    let values = DVector::from_iterator(d, order.iter().map(|&i| eig.eigenvalues[i]));
    let mut vectors = ComplexMatrix::zeros(d, d);
    for (col, &i) in order.iter().enumerate() {
        let mut v = eig.eigenvectors.column(i).into_owned();
        let norm = v.norm();
        if norm > 0.0 {
            v.unscale_mut(norm);
        }
        if let Some(pivot) = v.iter().find(|z| z.norm() > PHASE_EPS) {
            let phase = pivot.conj() / pivot.norm();
            for z in v.iter_mut() {
                *z *= phase;
            }
        }
        vectors.set_column(col, &v);
    }
    HermitianEig { values, vectors }
}

/// Eigendecomposition of a PSD matrix with roundoff negatives clamped.
fn eig_psd(a: &ComplexMatrix) -> Result<HermitianEig> {
    let mut eig = eig_hermitian(a)?;
    let min = eig.min();
    if min < -PSD_TOL {
        return Err(Error::NotPsd { min_eigenvalue: min });
    }
    for v in eig.values.iter_mut() {
        if *v < 0.0 {
            *v = 0.0;
        }
    }
    Ok(eig)
}

/// Principal square root of a PSD Hermitian matrix.
pub fn mat_sqrt_psd(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = eig_psd(a)?;
    let floor = ROUNDOFF_FLOOR * eig.max().max(1.0);
    Ok(eig.map(|x| if x <= floor { 0.0 } else { x.sqrt() }))
}

/// Spectral logarithm restricted to the support: eigenvalues ≤ `tol`
/// contribute zero, so a pure state maps to the zero matrix.
pub fn mat_ln_on_support(a: &ComplexMatrix, tol: f64) -> Result<ComplexMatrix> {
    let eig = eig_psd(a)?;
    Ok(eig.map(|x| if x > tol { x.ln() } else { 0.0 }))
}

/// Sum of singular values.
pub fn trace_norm(a: &ComplexMatrix) -> f64 {
    if a.iter().all(|z| *z == C64::new(0.0, 0.0)) {
        return 0.0;
    }
    a.clone().svd(false, false).singular_values.sum()
}

/// Frobenius norm √tr(A†A).
pub fn hs_norm(a: &ComplexMatrix) -> f64 {
    a.norm()
}

/// Solution X of √ρ X + X √ρ = dρ/dt, i.e. the time derivative of √ρ.
#[derive(Debug, Clone)]
pub struct SqrtDerivative {
    pub value: ComplexMatrix,
    /// Set when a kernel block (s_i + s_j ≤ tol) carried a nonzero drive.
    pub kernel_warning: bool,
}

impl SqrtDerivative {
    /// tr X², real and nonnegative for Hermitian X.
    pub fn trace_square(&self) -> f64 {
        self.value.norm_squared()
    }
}

/// Derivative of √ρ along dρ/dt via the Sylvester identity, solved in the
/// eigenbasis of √ρ. Kernel blocks are zeroed and flagged.
pub fn dsqrt_dt(sqrt_rho: &ComplexMatrix, drho: &ComplexMatrix, tol: f64) -> Result<SqrtDerivative> {
    let d = ensure_square(sqrt_rho)?;
    if drho.shape() != (d, d) {
        return Err(Error::DimensionMismatch { expected: d, found: drho.nrows() });
    }
    let residual = hermiticity_residual(drho);
    if residual > HERMITIAN_TOL * (1.0 + drho.norm()) {
        return Err(Error::NotHermitian { residual });
    }
    let eig = eig_psd(sqrt_rho)?;
    let v = &eig.vectors;
    let drive = v.adjoint() * drho * v;
    let mut kernel_warning = false;
    let x = ComplexMatrix::from_fn(d, d, |i, j| {
        let denom = eig.values[i] + eig.values[j];
        if denom > tol {
            drive[(i, j)] / denom
        } else {
            if drive[(i, j)].norm() > tol {
                kernel_warning = true;
            }
            C64::new(0.0, 0.0)
        }
    });
    let value = hermitian_part(&(v * x * v.adjoint()));
    Ok(SqrtDerivative { value, kernel_warning })
}

pub fn identity(d: usize) -> ComplexMatrix {
    ComplexMatrix::identity(d, d)
}

pub fn sigma_x() -> ComplexMatrix {
    let o = C64::new(0.0, 0.0);
    let l = C64::new(1.0, 0.0);
    ComplexMatrix::from_row_slice(2, 2, &[o, l, l, o])
}

pub fn sigma_y() -> ComplexMatrix {
    let o = C64::new(0.0, 0.0);
    let i = C64::new(0.0, 1.0);
    ComplexMatrix::from_row_slice(2, 2, &[o, -i, i, o])
}

pub fn sigma_z() -> ComplexMatrix {
    let o = C64::new(0.0, 0.0);
    let l = C64::new(1.0, 0.0);
    ComplexMatrix::from_row_slice(2, 2, &[l, o, o, -l])
}

/// σ₊ = |0⟩⟨1|
pub fn sigma_plus() -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(2, 2);
    m[(0, 1)] = C64::new(1.0, 0.0);
    m
}

/// σ₋ = |1⟩⟨0|
pub fn sigma_minus() -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(2, 2);
    m[(1, 0)] = C64::new(1.0, 0.0);
    m
}

pub fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a * b - b * a
}

pub fn anticommutator(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a * b + b * a
}

/// Real-valued matrix lifted to complex entries.
pub fn from_real(a: &DMatrix<f64>) -> ComplexMatrix {
    a.map(|x| C64::new(x, 0.0))
}
