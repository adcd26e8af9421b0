//! Imaginarity speed limits evaluated on sampled trajectories.
//!
//! Every evaluator returns a [`BoundReport`] holding the change in
//! imaginarity Δ_I, the averaged speed Λ, and the resulting minimal time
//! |Δ_I|/Λ.

pub mod quadrature;
mod threshold;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use threshold::{t_epsilon, ThresholdTime};

use crate::dynamics::{Generator, Trajectory};
use crate::error::{Error, Result};
use crate::liouville;
use crate::matfun::{self, SUPPORT_TOL};
use crate::measures;
use crate::states::DensityMatrix;

/// |Δ_I| at or below this counts as no change in imaginarity.
pub const ZERO_DELTA: f64 = 1e-13;
/// A speed at or below this counts as zero.
pub const ZERO_SPEED: f64 = 1e-14;
/// Slack allowed in t_isl ≤ t_actual.
pub const VALIDITY_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Theorem {
    /// Relative-entropy measure, RMS speeds of ρ and Re ρ.
    T1,
    /// Trace-distance measure, mean speed of the antisymmetric part.
    T2,
    /// Geometric measure, mean Wigner–Yanase-type speed ‖d√ρ/dt‖_HS.
    T3,
    /// Geometric measure, mean Liouvillian fluctuation.
    T4,
    /// Geometric measure, superoperator norm of a static generator.
    Cor1,
    /// Fidelity-ball transformation with the T3 speed.
    StochApprox,
}

impl Theorem {
    pub const ALL: [Theorem; 6] = [Self::T1, Self::T2, Self::T3, Self::T4, Self::Cor1, Self::StochApprox];

    pub fn name(self) -> &'static str {
        match self {
            Self::T1 => "T1",
            Self::T2 => "T2",
            Self::T3 => "T3",
            Self::T4 => "T4",
            Self::Cor1 => "Cor1",
            Self::StochApprox => "StochApprox",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown theorem '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Diagnostic {
    Flag(bool),
    Scalar(f64),
    Series(Vec<f64>),
}

/// One evaluated bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub theorem: Theorem,
    #[serde(rename = "delta_I")]
    pub delta_i: f64,
    pub lambda: f64,
    pub t_isl: f64,
    /// Duration of the evolution the bound is compared against, when known.
    pub t_actual: Option<f64>,
    pub diagnostics: BTreeMap<String, Diagnostic>,
}

impl BoundReport {
    fn new(theorem: Theorem, delta_i: f64, lambda: f64, t_actual: Option<f64>) -> Result<Self> {
        let mut diagnostics = BTreeMap::new();
        let t_isl = if delta_i.abs() <= ZERO_DELTA {
            if lambda <= ZERO_SPEED {
                diagnostics.insert("vacuous".to_string(), Diagnostic::Flag(true));
            }
            0.0
        } else if lambda <= ZERO_SPEED {
            return Err(Error::DegenerateBound { delta: delta_i });
        } else {
            delta_i.abs() / lambda
        };
        let mut report = Self { theorem, delta_i, lambda, t_isl, t_actual: None, diagnostics };
        report.set_t_actual(t_actual);
        Ok(report)
    }

    /// Records the actual duration and refreshes the `bound_valid` flag.
    pub fn set_t_actual(&mut self, t_actual: Option<f64>) {
        self.t_actual = t_actual;
        match t_actual {
            Some(t) => {
                self.diagnostics.insert("bound_valid".to_string(), Diagnostic::Flag(self.t_isl <= t + VALIDITY_TOL));
            }
            None => {
                self.diagnostics.remove("bound_valid");
            }
        }
    }

    pub fn with_t_actual(mut self, t_actual: f64) -> Self {
        self.set_t_actual(Some(t_actual));
        self
    }

    pub fn is_valid(&self) -> bool {
        self.t_actual.is_none_or(|t| self.t_isl <= t + VALIDITY_TOL)
    }

    pub fn is_vacuous(&self) -> bool {
        self.flag("vacuous")
    }

    pub fn flag(&self, name: &str) -> bool {
        matches!(self.diagnostics.get(name), Some(Diagnostic::Flag(true)))
    }

    pub fn scalar(&self, name: &str) -> Option<f64> {
        match self.diagnostics.get(name) {
            Some(Diagnostic::Scalar(x)) => Some(*x),
            _ => None,
        }
    }

    fn put(&mut self, name: &str, value: Diagnostic) {
        self.diagnostics.insert(name.to_string(), value);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization cannot fail")
    }
}

/// How to integrate speeds whose integrand blows up like t^{−1/2} at t = 0,
/// as ‖d√ρ/dt‖ does when the initial state is rank deficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SingularStart {
    /// Use the singular rule when ρ₀ has lower rank than the next sample.
    #[default]
    Auto,
    On,
    Off,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BoundOptions {
    pub singular_start: SingularStart,
    /// Keep the sampled integrands in the diagnostics.
    pub keep_series: bool,
}

fn require_samples(traj: &Trajectory) -> Result<()> {
    if traj.len() < 3 {
        return Err(Error::InvalidArgument(format!("bounds need at least 3 samples, got {}", traj.len())));
    }
    Ok(())
}

fn require_linear(g: &Generator) -> Result<()> {
    if !g.is_linear() {
        return Err(Error::NotLinear);
    }
    Ok(())
}

fn spectrum(m: &matfun::ComplexMatrix) -> Result<Vec<f64>> {
    Ok(matfun::eig_hermitian(m)?.values.iter().copied().collect())
}

fn rank(rho: &DensityMatrix) -> usize {
    rho.eigenvalues().into_iter().filter(|&x| x > SUPPORT_TOL).count()
}

/// Relative-entropy bound:
/// T ≥ |ΔM_r| / (Λ_T·RMS‖ln ρ_t‖ + Λ_T^Re·RMS‖ln Re ρ_t‖), where
/// Λ_T = RMS‖𝓛_t(ρ_t)‖ and Λ_T^Re = RMS‖𝓛_t(Re ρ_t)‖ (HS norms,
/// logarithms on the support).
pub fn isl_relative_entropy(traj: &Trajectory) -> Result<BoundReport> {
    isl_relative_entropy_with(traj, BoundOptions::default())
}

pub fn isl_relative_entropy_with(traj: &Trajectory, options: BoundOptions) -> Result<BoundReport> {
    require_samples(traj)?;
    let g = traj.generator();
    require_linear(g)?;
    let times = traj.times();
    let n = traj.len();
    let mut speed = Vec::with_capacity(n);
    let mut speed_re = Vec::with_capacity(n);
    let mut spectra = Vec::with_capacity(n);
    let mut spectra_re = Vec::with_capacity(n);
    for (&t, rho) in times.iter().zip(traj.states()) {
        let re = matfun::from_real(&rho.real_part());
        speed.push(g.apply(t, rho.matrix())?.norm());
        speed_re.push(g.apply(t, &re)?.norm());
        spectra.push(spectrum(rho.matrix())?);
        spectra_re.push(spectrum(&re)?);
    }
    let horizon = quadrature::span(times);
    let lambda_t = quadrature::rms(times, &speed);
    let lambda_re = quadrature::rms(times, &speed_re);
    let ln_rho = (quadrature::log_square_integral(times, &spectra, SUPPORT_TOL) / horizon).max(0.0).sqrt();
    let ln_re = (quadrature::log_square_integral(times, &spectra_re, SUPPORT_TOL) / horizon).max(0.0).sqrt();

    let delta = (measures::m_r(traj.last())? - measures::m_r(traj.initial())?).abs();
    let lambda = lambda_t * ln_rho + lambda_re * ln_re;
    let mut report = BoundReport::new(Theorem::T1, delta, lambda, Some(traj.horizon()))?;
    report.put("lambda_T", Diagnostic::Scalar(lambda_t));
    report.put("lambda_T_re", Diagnostic::Scalar(lambda_re));
    report.put("rms_ln_rho", Diagnostic::Scalar(ln_rho));
    report.put("rms_ln_re_rho", Diagnostic::Scalar(ln_re));
    if options.keep_series {
        report.put("speed", Diagnostic::Series(speed));
        report.put("speed_re", Diagnostic::Series(speed_re));
    }
    Ok(report)
}

/// Trace-distance bound: T ≥ |ΔM_tr| / Λ_tr with
/// Λ_tr = (1/T)∫ ½‖ρ̇_t − ρ̇_tᵀ‖₁ dt.
pub fn isl_trace(traj: &Trajectory) -> Result<BoundReport> {
    isl_trace_with(traj, BoundOptions::default())
}

pub fn isl_trace_with(traj: &Trajectory, options: BoundOptions) -> Result<BoundReport> {
    require_samples(traj)?;
    let speed: Vec<f64> = traj
        .derivatives()?
        .iter()
        .map(|d| 0.5 * matfun::trace_norm(&(d - d.transpose())))
        .collect();
    let lambda = quadrature::mean(traj.times(), &speed);
    let delta = measures::m_tr(traj.last()) - measures::m_tr(traj.initial());
    let mut report = BoundReport::new(Theorem::T2, delta, lambda, Some(traj.horizon()))?;
    if options.keep_series {
        report.put("speed", Diagnostic::Series(speed));
    }
    Ok(report)
}

/// Change in the Bures angle to the nearest real state,
/// |arccos√(1 − M_g(ρ_T)) − arccos√(1 − M_g(ρ₀))|.
pub fn geometric_delta(initial: &DensityMatrix, last: &DensityMatrix) -> Result<f64> {
    Ok((measures::imaginarity_angle(last)? - measures::imaginarity_angle(initial)?).abs())
}

struct GeometricSpeed {
    mean: f64,
    singular_start: bool,
    kernel_warning: bool,
    series: Vec<f64>,
}

/// (1/T)∫ √tr(d√ρ_t/dt)² dt
fn geometric_speed(traj: &Trajectory, options: BoundOptions) -> Result<GeometricSpeed> {
    let times = traj.times();
    let mut series = Vec::with_capacity(traj.len());
    let mut warnings = Vec::with_capacity(traj.len());
    for (rho, drho) in traj.states().iter().zip(traj.derivatives()?) {
        let sqrt_rho = matfun::mat_sqrt_psd(rho.matrix())?;
        let x = matfun::dsqrt_dt(&sqrt_rho, &drho, SUPPORT_TOL)?;
        series.push(x.trace_square().sqrt());
        warnings.push(x.kernel_warning);
    }
    let singular_start = match options.singular_start {
        SingularStart::On => true,
        SingularStart::Off => false,
        SingularStart::Auto => traj.len() >= 4 && rank(traj.initial()) < rank(&traj.states()[1]),
    };
    let (integral, kernel_warning) = if singular_start {
        (quadrature::inverse_sqrt_start(times, &series), warnings[1..].iter().any(|&w| w))
    } else {
        (quadrature::trapezoid(times, &series), warnings.iter().any(|&w| w))
    };
    Ok(GeometricSpeed { mean: integral / quadrature::span(times), singular_start, kernel_warning, series })
}

/// Geometric bound: T ≥ Δ_I / Λ_g with Λ_g = (1/T)∫ √tr(d√ρ_t/dt)² dt and
/// d√ρ/dt obtained from the Sylvester equation.
pub fn isl_geometric(traj: &Trajectory) -> Result<BoundReport> {
    isl_geometric_with(traj, BoundOptions::default())
}

pub fn isl_geometric_with(traj: &Trajectory, options: BoundOptions) -> Result<BoundReport> {
    require_samples(traj)?;
    let speed = geometric_speed(traj, options)?;
    let delta = geometric_delta(traj.initial(), traj.last())?;
    let mut report = BoundReport::new(Theorem::T3, delta, speed.mean, Some(traj.horizon()))?;
    report.put("singular_start", Diagnostic::Flag(speed.singular_start));
    report.put("kernel_warning", Diagnostic::Flag(speed.kernel_warning));
    if options.keep_series {
        report.put("speed", Diagnostic::Series(speed.series));
    }
    Ok(report)
}

/// Liouville-space bound: T ≥ Δ_I / Λ with Λ = (1/T)∫ Δ𝓛_t dt, the
/// Liouvillian fluctuation on the normalized vectorized state.
pub fn isl_liouville(traj: &Trajectory) -> Result<BoundReport> {
    isl_liouville_with(traj, BoundOptions::default())
}

pub fn isl_liouville_with(traj: &Trajectory, options: BoundOptions) -> Result<BoundReport> {
    require_samples(traj)?;
    let g = traj.generator();
    require_linear(g)?;
    let series = traj
        .times()
        .iter()
        .zip(traj.states())
        .map(|(&t, rho)| liouville::liouvillian_fluctuation(g, t, rho))
        .collect::<Result<Vec<_>>>()?;
    let lambda = quadrature::mean(traj.times(), &series);
    let delta = geometric_delta(traj.initial(), traj.last())?;
    let mut report = BoundReport::new(Theorem::T4, delta, lambda, Some(traj.horizon()))?;
    if options.keep_series {
        report.put("fluctuation", Diagnostic::Series(series));
    }
    Ok(report)
}

/// Static-generator bound T ≥ Δ_I / ‖𝓛‖, needing only the endpoints. The
/// duration is unknown here; attach it with [`BoundReport::with_t_actual`].
pub fn isl_liouville_static(initial: &DensityMatrix, last: &DensityMatrix, g: &Generator) -> Result<BoundReport> {
    require_linear(g)?;
    if !g.is_time_independent() {
        return Err(Error::TimeDependentGenerator);
    }
    if initial.dim() != g.dim() || last.dim() != g.dim() {
        let found = if initial.dim() != g.dim() { initial.dim() } else { last.dim() };
        return Err(Error::DimensionMismatch { expected: g.dim(), found });
    }
    let norm = liouville::superop_norm(g, 0.0)?;
    let delta = geometric_delta(initial, last)?;
    BoundReport::new(Theorem::Cor1, delta, norm, None)
}

/// Fidelity-target bound T ≥ arccos√f / Λ_g for reaching some state with
/// F(ρ₀, ρ′) ≥ f, with Λ_g the geometric speed along the trajectory. The
/// diagnostic `min_imaginarity` is the least M_g attainable inside that
/// fidelity ball, sin²(max{arcsin√M_g(ρ₀) − arccos√f, 0}).
pub fn stochastic_approx_bound(traj: &Trajectory, fidelity: f64) -> Result<BoundReport> {
    stochastic_approx_bound_with(traj, fidelity, BoundOptions::default())
}

pub fn stochastic_approx_bound_with(traj: &Trajectory, fidelity: f64, options: BoundOptions) -> Result<BoundReport> {
    if !(0.0..=1.0).contains(&fidelity) {
        return Err(Error::InvalidFidelity(fidelity));
    }
    require_samples(traj)?;
    let numerator = fidelity.sqrt().acos();
    let speed = geometric_speed(traj, options)?;
    let mut report = BoundReport::new(Theorem::StochApprox, numerator, speed.mean, Some(traj.horizon()))?;
    let mg = measures::m_g(traj.initial())?;
    let min_imaginarity = (mg.sqrt().asin() - numerator).max(0.0).sin().powi(2);
    report.put("min_imaginarity", Diagnostic::Scalar(min_imaginarity));
    report.put("singular_start", Diagnostic::Flag(speed.singular_start));
    report.put("kernel_warning", Diagnostic::Flag(speed.kernel_warning));
    Ok(report)
}

/// Runs the evaluator for `theorem` on a trajectory. Cor1 uses the
/// trajectory endpoints and its duration; StochApprox needs `fidelity`.
pub fn evaluate(theorem: Theorem, traj: &Trajectory, fidelity: Option<f64>, options: BoundOptions) -> Result<BoundReport> {
    match theorem {
        Theorem::T1 => isl_relative_entropy_with(traj, options),
        Theorem::T2 => isl_trace_with(traj, options),
        Theorem::T3 => isl_geometric_with(traj, options),
        Theorem::T4 => isl_liouville_with(traj, options),
        Theorem::Cor1 => {
            Ok(isl_liouville_static(traj.initial(), traj.last(), traj.generator())?.with_t_actual(traj.horizon()))
        }
        Theorem::StochApprox => {
            let f = fidelity.ok_or_else(|| Error::InvalidArgument("StochApprox needs a fidelity target".into()))?;
            stochastic_approx_bound_with(traj, f, options)
        }
    }
}
