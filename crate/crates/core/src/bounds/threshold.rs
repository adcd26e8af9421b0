use serde::{Serialize, Serializer};

use crate::dynamics::{self, Generator};
use crate::error::{Error, Result};
use crate::measures::MeasureKind;
use crate::states::DensityMatrix;

/// Width of the bracket left by the bisection refinement.
pub const BISECTION_TOL: f64 = 1e-8;

/// First time a measure drops to a threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ThresholdTime {
    Reached(f64),
    NotReached,
}

impl ThresholdTime {
    pub fn time(self) -> Option<f64> {
        match self {
            Self::Reached(t) => Some(t),
            Self::NotReached => None,
        }
    }
}

impl Serialize for ThresholdTime {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Self::Reached(t) => serializer.serialize_f64(*t),
            Self::NotReached => serializer.serialize_str("not-reached"),
        }
    }
}

/// inf{t ∈ [0, t_max] : M(ρ_t) ≤ ε} along the RK4 trajectory from ρ₀.
///
/// The first grid sample at or below ε is located, then the crossing is
/// bisected inside the bracketing step to within 1e−8, each trial state being
/// a single RK4 step of the trial size from the previous grid sample.
pub fn t_epsilon(
    g: &Generator,
    rho0: &DensityMatrix,
    measure: MeasureKind,
    epsilon: f64,
    t_max: f64,
    dt: f64,
) -> Result<ThresholdTime> {
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(Error::InvalidArgument(format!("epsilon must be positive, got {epsilon}")));
    }
    if measure.evaluate(rho0)? <= epsilon {
        return Ok(ThresholdTime::Reached(0.0));
    }
    let traj = dynamics::propagate_until(g, rho0, t_max, dt, |_, rho| Ok(measure.evaluate(rho)? <= epsilon))?;
    if measure.evaluate(traj.last())? > epsilon {
        return Ok(ThresholdTime::NotReached);
    }
    let n = traj.len();
    let (t_prev, prev) = (traj.times()[n - 2], traj.states()[n - 2].matrix());
    let below = |tau: f64| -> Result<bool> {
        let raw = dynamics::rk4_step(g, t_prev, tau, prev)?;
        let state = DensityMatrix::validate(crate::matfun::hermitian_part(&raw).unscale(raw.trace().re))?;
        Ok(measure.evaluate(&state)? <= epsilon)
    };
    let (mut lo, mut hi) = (0.0, traj.times()[n - 1] - t_prev);
    while hi - lo > BISECTION_TOL {
        let mid = 0.5 * (lo + hi);
        if below(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(ThresholdTime::Reached(t_prev + hi))
}
