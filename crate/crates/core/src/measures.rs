//! The three imaginarity quantifiers and the von Neumann entropy.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matfun::{self, SUPPORT_TOL};
use crate::states::{self, DensityMatrix};

/// ‖Im ρ‖_HS at or below this counts as a real state.
pub const REAL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MeasureKind {
    #[serde(rename = "tr")]
    TraceDistance,
    #[serde(rename = "rel")]
    RelativeEntropy,
    #[serde(rename = "geom")]
    Geometric,
}

impl MeasureKind {
    pub const ALL: [MeasureKind; 3] = [Self::TraceDistance, Self::RelativeEntropy, Self::Geometric];

    pub fn tag(self) -> &'static str {
        match self {
            Self::TraceDistance => "tr",
            Self::RelativeEntropy => "rel",
            Self::Geometric => "geom",
        }
    }

    pub fn evaluate(self, rho: &DensityMatrix) -> Result<f64> {
        match self {
            Self::TraceDistance => Ok(m_tr(rho)),
            Self::RelativeEntropy => m_r(rho),
            Self::Geometric => m_g(rho),
        }
    }
}

impl fmt::Display for MeasureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for MeasureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tr" | "trace" => Ok(Self::TraceDistance),
            "rel" | "relative" => Ok(Self::RelativeEntropy),
            "geom" | "geometric" => Ok(Self::Geometric),
            other => Err(Error::InvalidArgument(format!("unknown measure '{other}' (expected tr, rel or geom)"))),
        }
    }
}

fn is_real(rho: &DensityMatrix) -> bool {
    rho.imag_part().norm() <= REAL_TOL
}

/// S(ρ) = −tr ρ ln ρ in nats.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    let s: f64 = rho
        .eigenvalues()
        .into_iter()
        .filter(|&p| p > SUPPORT_TOL)
        .map(|p| -p * p.ln())
        .sum();
    s.max(0.0)
}

/// ‖Im ρ‖₁
pub fn m_tr(rho: &DensityMatrix) -> f64 {
    if is_real(rho) {
        return 0.0;
    }
    matfun::trace_norm(&matfun::from_real(&rho.imag_part()))
}

/// S(Re ρ) − S(ρ)
pub fn m_r(rho: &DensityMatrix) -> Result<f64> {
    if is_real(rho) {
        return Ok(0.0);
    }
    let re = rho.decompose().re;
    Ok((von_neumann_entropy(&re) - von_neumann_entropy(rho)).max(0.0))
}

/// (1 − √F(ρ, ρᵀ))/2
pub fn m_g(rho: &DensityMatrix) -> Result<f64> {
    if is_real(rho) {
        return Ok(0.0);
    }
    let f = states::root_fidelity(rho, &rho.transpose())?;
    Ok((1.0 - f) / 2.0)
}

/// Bures angle to the nearest real state, arccos√(1 − M_g), in [0, π/4].
pub fn imaginarity_angle(rho: &DensityMatrix) -> Result<f64> {
    Ok(angle_from_geometric(m_g(rho)?))
}

pub fn angle_from_geometric(mg: f64) -> f64 {
    (1.0 - mg).max(0.0).sqrt().min(1.0).acos()
}
