//! Validated density matrices, their real/imaginary split, fidelity and the
//! Bures angle. The reference basis is the computational basis of the stored
//! matrix; nothing about the basis itself is serialized.

use std::fmt;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matfun::{self, ComplexMatrix, C64};

pub const TRACE_TOL: f64 = 1e-10;
/// Largest excursion of a fidelity outside [0, 1] that is silently clamped.
pub const FIDELITY_CLAMP_TOL: f64 = 1e-10;

/// A d×d complex matrix that is Hermitian, unit-trace and PSD within 1e−10.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Checks shape, finiteness, hermiticity, trace and positivity in that
    /// order. The stored matrix is the Hermitian part of the input.
    pub fn validate(matrix: ComplexMatrix) -> Result<Self> {
        matfun::ensure_square(&matrix)?;
        if matrix.nrows() == 0 {
            return Err(Error::NotSquare { rows: 0, cols: 0 });
        }
        let eig = matfun::eig_hermitian(&matrix)?;
        let residual = (matrix.trace() - C64::new(1.0, 0.0)).norm();
        if residual > TRACE_TOL {
            return Err(Error::TraceNotOne { residual });
        }
        let min = eig.min();
        if min < -matfun::PSD_TOL {
            return Err(Error::NotPsd { min_eigenvalue: min });
        }
        Ok(Self { matrix: matfun::hermitian_part(&matrix) })
    }

    /// Wraps a matrix already known to be a state, e.g. the output of a
    /// closed-form solution. Only hermiticity is enforced.
    pub(crate) fn from_trusted(matrix: ComplexMatrix) -> Self {
        Self { matrix: matfun::hermitian_part(&matrix) }
    }

    pub fn from_real(matrix: &DMatrix<f64>) -> Result<Self> {
        Self::validate(matfun::from_real(matrix))
    }

    pub fn maximally_mixed(d: usize) -> Self {
        Self::from_trusted(matfun::identity(d).unscale(d as f64))
    }

    /// |k⟩⟨k| in dimension d.
    pub fn basis(d: usize, k: usize) -> Self {
        let mut m = ComplexMatrix::zeros(d, d);
        m[(k, k)] = C64::new(1.0, 0.0);
        Self::from_trusted(m)
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// ρᵀ in the reference basis, which for a Hermitian ρ is its complex
    /// conjugate.
    pub fn transpose(&self) -> Self {
        Self { matrix: self.matrix.transpose() }
    }

    pub fn purity(&self) -> f64 {
        self.matrix.norm_squared()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        matfun::eig_hermitian(&self.matrix)
            .map(|e| e.values.iter().copied().collect())
            .unwrap_or_default()
    }

    /// Entrywise real part, which equals (ρ + ρᵀ)/2 for Hermitian ρ.
    pub fn real_part(&self) -> DMatrix<f64> {
        let re = self.matrix.map(|z| z.re);
        (&re + re.transpose()).scale(0.5)
    }

    /// Entrywise imaginary part, which equals (ρ − ρᵀ)/(2i) for Hermitian ρ.
    pub fn imag_part(&self) -> DMatrix<f64> {
        let im = self.matrix.map(|z| z.im);
        (&im - im.transpose()).scale(0.5)
    }

    pub fn decompose(&self) -> RealImDecomposition {
        RealImDecomposition {
            re: Self::from_trusted(matfun::from_real(&self.real_part())),
            im: self.imag_part(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: StateJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::try_from(raw)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&StateJson::from(self)).expect("state serialization cannot fail")
    }
}

impl fmt::Display for DensityMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.matrix)
    }
}

/// ρ = re + i·im with re a real symmetric state and im real antisymmetric.
#[derive(Debug, Clone)]
pub struct RealImDecomposition {
    pub re: DensityMatrix,
    pub im: DMatrix<f64>,
}

impl RealImDecomposition {
    pub fn reconstruct(&self) -> ComplexMatrix {
        let d = self.re.dim();
        ComplexMatrix::from_fn(d, d, |i, j| C64::new(self.re.matrix[(i, j)].re, self.im[(i, j)]))
    }
}

pub fn decompose(rho: &DensityMatrix) -> RealImDecomposition {
    rho.decompose()
}

/// Pure state cos(θ/2)|0⟩ + i sin(θ/2)|1⟩.
pub fn theta_state(theta: f64) -> Result<DensityMatrix> {
    if !theta.is_finite() || !(0.0..=std::f64::consts::PI).contains(&theta) {
        return Err(Error::InvalidArgument(format!("theta must lie in [0, pi], got {theta}")));
    }
    let (s, c) = (theta / 2.0).sin_cos();
    let m = ComplexMatrix::from_row_slice(
        2,
        2,
        &[C64::new(c * c, 0.0), C64::new(0.0, -c * s), C64::new(0.0, c * s), C64::new(s * s, 0.0)],
    );
    Ok(DensityMatrix::from_trusted(m))
}

/// The maximally imaginary qubit state (|0⟩ + i|1⟩)/√2, i.e. (I + σ_y)/2.
pub fn mis_state() -> DensityMatrix {
    let h = C64::new(0.5, 0.0);
    let i = C64::new(0.0, 0.5);
    DensityMatrix::from_trusted(ComplexMatrix::from_row_slice(2, 2, &[h, -i, i, h]))
}

fn same_dim(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<()> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch { expected: rho.dim(), found: sigma.dim() });
    }
    Ok(())
}

pub(crate) fn clamp_unit(x: f64, what: &str) -> Result<f64> {
    if x < -FIDELITY_CLAMP_TOL || x > 1.0 + FIDELITY_CLAMP_TOL || !x.is_finite() {
        return Err(Error::Internal(format!("{what} {x} outside [0, 1]")));
    }
    Ok(x.clamp(0.0, 1.0))
}

/// tr√(√ρ σ √ρ), the square root of the Uhlmann fidelity.
pub fn root_fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    same_dim(rho, sigma)?;
    let sr = matfun::mat_sqrt_psd(rho.matrix())?;
    let inner = matfun::hermitian_part(&(&sr * sigma.matrix() * &sr));
    let raw = matfun::mat_sqrt_psd(&inner)?.trace().re;
    clamp_unit(raw, "root fidelity")
}

/// arccos of the root fidelity, in [0, π/2].
pub fn bures_angle(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    Ok(root_fidelity(rho, sigma)?.acos())
}

/// Wire format: row-major real and imaginary parts.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateJson {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl From<&DensityMatrix> for StateJson {
    fn from(rho: &DensityMatrix) -> Self {
        let d = rho.dim();
        let rows = |f: fn(&C64) -> f64| (0..d).map(|i| (0..d).map(|j| f(&rho.matrix[(i, j)])).collect()).collect();
        StateJson { dim: d, re: rows(|z| z.re), im: rows(|z| z.im) }
    }
}

impl TryFrom<StateJson> for DensityMatrix {
    type Error = Error;

    fn try_from(raw: StateJson) -> Result<Self> {
        let d = raw.dim;
        if d == 0 {
            return Err(Error::Parse("dim must be positive".into()));
        }
        for (name, part) in [("re", &raw.re), ("im", &raw.im)] {
            if part.len() != d || part.iter().any(|row| row.len() != d) {
                return Err(Error::Parse(format!("{name} must be a {d}x{d} array")));
            }
        }
        let m = ComplexMatrix::from_fn(d, d, |i, j| C64::new(raw.re[i][j], raw.im[i][j]));
        DensityMatrix::validate(m)
    }
}

impl Serialize for DensityMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        StateJson::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DensityMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = StateJson::deserialize(deserializer)?;
        DensityMatrix::try_from(raw).map_err(serde::de::Error::custom)
    }
}
