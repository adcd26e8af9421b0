//! Generators of qubit and qudit open-system dynamics, their action on
//! states, fixed-step RK4 propagation, and closed-form solutions of the
//! dephasing, amplitude-damping and σ_x-rotation models.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::matfun::{self, ComplexMatrix, C64};
use crate::states::DensityMatrix;

pub const DEFAULT_DT: f64 = 1e-3;
/// Cumulative re-symmetrization / renormalization allowed over one run.
pub const CORRECTION_BUDGET: f64 = 1e-6;
/// A post-step eigenvalue below this aborts propagation.
pub const STEP_PSD_TOL: f64 = 1e-6;

/// A nonnegative decay rate, constant or tabulated with linear
/// interpolation and flat extrapolation past either end of the table.
#[derive(Debug, Clone, PartialEq)]
pub enum RateFunction {
    Constant(f64),
    Tabulated { times: Vec<f64>, values: Vec<f64>, allow_negative: bool },
}

impl RateFunction {
    pub fn constant(value: f64) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::NotFinite);
        }
        if value < 0.0 {
            return Err(Error::NegativeRate { time: 0.0, value });
        }
        Ok(Self::Constant(value))
    }

    /// Negative entries are rejected unless `allow_negative` is set, which is
    /// how non-Markovian rate revivals are opted into.
    pub fn tabulated(times: Vec<f64>, values: Vec<f64>, allow_negative: bool) -> Result<Self> {
        if times.is_empty() || times.len() != values.len() {
            return Err(Error::InvalidArgument(format!(
                "rate table needs matching non-empty columns, got {} times and {} values",
                times.len(),
                values.len()
            )));
        }
        if times.iter().chain(&values).any(|x| !x.is_finite()) {
            return Err(Error::NotFinite);
        }
        if times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidArgument("rate table times must be strictly increasing".into()));
        }
        if !allow_negative {
            if let Some((t, v)) = times.iter().zip(&values).find(|(_, v)| **v < 0.0) {
                return Err(Error::NegativeRate { time: *t, value: *v });
            }
        }
        Ok(Self::Tabulated { times, values, allow_negative })
    }

    pub fn is_constant(&self) -> bool {
        matches!(self, Self::Constant(_))
    }

    pub fn at(&self, t: f64) -> f64 {
        match self {
            Self::Constant(g) => *g,
            Self::Tabulated { times, values, .. } => {
                let n = times.len();
                if t <= times[0] {
                    return values[0];
                }
                if t >= times[n - 1] {
                    return values[n - 1];
                }
                let k = times.partition_point(|&x| x <= t) - 1;
                let w = (t - times[k]) / (times[k + 1] - times[k]);
                values[k] + w * (values[k + 1] - values[k])
            }
        }
    }

    /// ∫₀ᵗ γ(s) ds, exact for the piecewise-linear representation.
    pub fn integral(&self, t: f64) -> f64 {
        match self {
            Self::Constant(g) => g * t,
            Self::Tabulated { .. } => self.antiderivative(t) - self.antiderivative(0.0),
        }
    }

    fn antiderivative(&self, x: f64) -> f64 {
        let Self::Tabulated { times, values, .. } = self else {
            unreachable!()
        };
        let n = times.len();
        if x <= times[0] {
            return values[0] * (x - times[0]);
        }
        let mut acc = 0.0;
        for k in 0..n - 1 {
            let (a, b) = (times[k], times[k + 1]);
            if x <= a {
                break;
            }
            let hi = x.min(b);
            let mid = 0.5 * (self.at(a) + self.at(hi));
            acc += mid * (hi - a);
        }
        if x > times[n - 1] {
            acc += values[n - 1] * (x - times[n - 1]);
        }
        acc
    }
}

/// A jump operator with its rate.
#[derive(Debug, Clone, PartialEq)]
pub struct Jump {
    pub operator: ComplexMatrix,
    pub rate: RateFunction,
}

/// The dynamics ρ̇ = 𝓛_t(ρ).
#[derive(Debug, Clone, PartialEq)]
pub enum Generator {
    /// −i[H, ρ]
    Unitary { hamiltonian: ComplexMatrix },
    /// −i[ω₀σ_z/2, ρ] + (γ_t/2)(σ_z ρ σ_z − ρ)
    Dephasing { rate: RateFunction, omega0: f64 },
    /// (γ_t/2)(σ₋ρσ₊ − ½{σ₊σ₋, ρ}) with σ₊ = |0⟩⟨1|, σ₋ = |1⟩⟨0|
    Dissipative { rate: RateFunction },
    /// −i[H, ρ] + Σ_k γ_k(L_k ρ L_k† − ½{L_k†L_k, ρ})
    CustomLindblad { hamiltonian: ComplexMatrix, jumps: Vec<Jump> },
    /// Straight-line removal of the imaginary part at fixed real part,
    /// ρ(t) = Re ρ₀ + i(1 − t/τ) Im ρ₀. Affine rather than linear, so it has
    /// no superoperator.
    Geodesic { initial: DensityMatrix, duration: f64 },
}

impl Generator {
    pub fn unitary(hamiltonian: ComplexMatrix) -> Result<Self> {
        check_hamiltonian(&hamiltonian)?;
        Ok(Self::Unitary { hamiltonian })
    }

    pub fn dephasing(rate: RateFunction, omega0: f64) -> Result<Self> {
        if !omega0.is_finite() {
            return Err(Error::NotFinite);
        }
        Ok(Self::Dephasing { rate, omega0 })
    }

    pub fn dissipative(rate: RateFunction) -> Self {
        Self::Dissipative { rate }
    }

    pub fn custom_lindblad(hamiltonian: ComplexMatrix, jumps: Vec<Jump>) -> Result<Self> {
        let d = check_hamiltonian(&hamiltonian)?;
        for jump in &jumps {
            if jump.operator.shape() != (d, d) {
                return Err(Error::DimensionMismatch { expected: d, found: jump.operator.nrows() });
            }
            if jump.operator.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(Error::NotFinite);
            }
        }
        Ok(Self::CustomLindblad { hamiltonian, jumps })
    }

    pub fn geodesic(initial: DensityMatrix, duration: f64) -> Result<Self> {
        if !(duration.is_finite() && duration > 0.0) {
            return Err(Error::InvalidArgument(format!("geodesic duration must be positive, got {duration}")));
        }
        Ok(Self::Geodesic { initial, duration })
    }

    /// The zero generator in dimension d.
    pub fn zero(d: usize) -> Self {
        Self::Unitary { hamiltonian: ComplexMatrix::zeros(d, d) }
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::Unitary { hamiltonian } | Self::CustomLindblad { hamiltonian, .. } => hamiltonian.nrows(),
            Self::Dephasing { .. } | Self::Dissipative { .. } => 2,
            Self::Geodesic { initial, .. } => initial.dim(),
        }
    }

    pub fn is_time_independent(&self) -> bool {
        match self {
            Self::Unitary { .. } | Self::Geodesic { .. } => true,
            Self::Dephasing { rate, .. } | Self::Dissipative { rate } => rate.is_constant(),
            Self::CustomLindblad { jumps, .. } => jumps.iter().all(|j| j.rate.is_constant()),
        }
    }

    pub fn is_linear(&self) -> bool {
        !matches!(self, Self::Geodesic { .. })
    }

    /// Hamiltonian and (operator, rate) jump list at time t.
    pub fn lindblad_form(&self, t: f64) -> Result<(ComplexMatrix, Vec<(ComplexMatrix, f64)>)> {
        Ok(match self {
            Self::Unitary { hamiltonian } => (hamiltonian.clone(), Vec::new()),
            Self::Dephasing { rate, omega0 } => {
                (matfun::sigma_z().scale(omega0 / 2.0), vec![(matfun::sigma_z(), rate.at(t) / 2.0)])
            }
            Self::Dissipative { rate } => (ComplexMatrix::zeros(2, 2), vec![(matfun::sigma_minus(), rate.at(t) / 2.0)]),
            Self::CustomLindblad { hamiltonian, jumps } => (
                hamiltonian.clone(),
                jumps.iter().map(|j| (j.operator.clone(), j.rate.at(t))).collect(),
            ),
            Self::Geodesic { .. } => return Err(Error::NotLinear),
        })
    }

    /// 𝓛_t applied to an arbitrary d×d matrix.
    pub fn apply(&self, t: f64, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        let d = self.dim();
        if x.shape() != (d, d) {
            return Err(Error::DimensionMismatch { expected: d, found: x.nrows() });
        }
        if let Self::Geodesic { initial, duration } = self {
            return Ok(matfun::from_real(&initial.imag_part()).scale(-1.0 / duration) * C64::new(0.0, 1.0));
        }
        let (h, jumps) = self.lindblad_form(t)?;
        let mut out = matfun::commutator(&h, x) * C64::new(0.0, -1.0);
        for (l, r) in jumps {
            if r == 0.0 {
                continue;
            }
            let ld = l.adjoint();
            let ldl = &ld * &l;
            out += (&l * x * &ld - matfun::anticommutator(&ldl, x).scale(0.5)).scale(r);
        }
        Ok(out)
    }
}

fn check_hamiltonian(h: &ComplexMatrix) -> Result<usize> {
    let d = matfun::ensure_square(h)?;
    if h.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NotFinite);
    }
    let residual = matfun::hermiticity_residual(h);
    if residual > matfun::HERMITIAN_TOL {
        return Err(Error::NotHermitian { residual });
    }
    Ok(d)
}

/// dρ/dt = 𝓛_t(ρ).
pub fn apply_generator(g: &Generator, t: f64, rho: &DensityMatrix) -> Result<ComplexMatrix> {
    g.apply(t, rho.matrix())
}

/// Uniform grid on [0, T] whose step does not exceed dt and whose last point
/// is exactly T.
pub fn time_grid(horizon: f64, dt: f64) -> Result<Vec<f64>> {
    if !(horizon.is_finite() && horizon > 0.0) {
        return Err(Error::InvalidArgument(format!("horizon must be positive, got {horizon}")));
    }
    if !(dt.is_finite() && dt > 0.0 && dt <= horizon) {
        return Err(Error::InvalidArgument(format!("step must lie in (0, T], got {dt}")));
    }
    let n = ((horizon / dt) * (1.0 - 1e-12)).ceil().max(1.0) as usize;
    let h = horizon / n as f64;
    let mut grid: Vec<f64> = (0..n).map(|k| k as f64 * h).collect();
    grid.push(horizon);
    Ok(grid)
}

/// Per-run record of the projections applied after each RK4 step.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CorrectionLog {
    /// |tr ρ − 1| of each raw step.
    pub trace_drift: Vec<f64>,
    /// ‖ρ − ρ†‖_HS of each raw step.
    pub hermiticity_drift: Vec<f64>,
    /// ‖ρ_raw − ρ_stored‖_HS of each step.
    pub correction: Vec<f64>,
    pub total: f64,
}

impl CorrectionLog {
    pub fn max_trace_drift(&self) -> f64 {
        self.trace_drift.iter().copied().fold(0.0, f64::max)
    }

    pub fn max_hermiticity_drift(&self) -> f64 {
        self.hermiticity_drift.iter().copied().fold(0.0, f64::max)
    }
}

/// Time-ordered samples of a trajectory together with its generator.
#[derive(Debug, Clone)]
pub struct Trajectory {
    times: Vec<f64>,
    states: Vec<DensityMatrix>,
    generator: Generator,
    corrections: CorrectionLog,
}

impl Trajectory {
    pub fn new(times: Vec<f64>, states: Vec<DensityMatrix>, generator: Generator) -> Result<Self> {
        if times.is_empty() || times.len() != states.len() {
            return Err(Error::InvalidArgument(format!(
                "trajectory needs matching non-empty columns, got {} times and {} states",
                times.len(),
                states.len()
            )));
        }
        if times[0] != 0.0 {
            return Err(Error::InvalidArgument(format!("trajectory must start at t = 0, got {}", times[0])));
        }
        if times.iter().any(|t| !t.is_finite()) {
            return Err(Error::NotFinite);
        }
        if times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidArgument("trajectory times must be strictly increasing".into()));
        }
        let d = generator.dim();
        if let Some(bad) = states.iter().find(|s| s.dim() != d) {
            return Err(Error::DimensionMismatch { expected: d, found: bad.dim() });
        }
        Ok(Self { times, states, generator, corrections: CorrectionLog::default() })
    }

    /// Samples a known solution t ↦ ρ(t) on the propagation grid.
    pub fn sample<F>(generator: Generator, horizon: f64, dt: f64, solution: F) -> Result<Self>
    where
        F: Fn(f64) -> Result<DensityMatrix>,
    {
        let times = time_grid(horizon, dt)?;
        let states = times.iter().map(|&t| solution(t)).collect::<Result<Vec<_>>>()?;
        Self::new(times, states, generator)
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn states(&self) -> &[DensityMatrix] {
        &self.states
    }

    pub fn generator(&self) -> &Generator {
        &self.generator
    }

    pub fn corrections(&self) -> &CorrectionLog {
        &self.corrections
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn horizon(&self) -> f64 {
        *self.times.last().expect("trajectory is non-empty")
    }

    pub fn initial(&self) -> &DensityMatrix {
        &self.states[0]
    }

    pub fn last(&self) -> &DensityMatrix {
        self.states.last().expect("trajectory is non-empty")
    }

    /// dρ/dt at every sample.
    pub fn derivatives(&self) -> Result<Vec<ComplexMatrix>> {
        self.times
            .iter()
            .zip(&self.states)
            .map(|(&t, rho)| apply_generator(&self.generator, t, rho))
            .collect()
    }

    /// CSV with header `t,re_00,im_00,re_01,im_01,...`, row-major entries,
    /// 17 significant digits, `\n` line endings. A comment, if given, is
    /// written first as lines starting with `#`.
    pub fn to_csv(&self, comment: Option<&str>) -> String {
        let d = self.generator.dim();
        let mut out = String::new();
        if let Some(c) = comment {
            for line in c.lines() {
                let _ = writeln!(out, "# {line}");
            }
        }
        out.push('t');
        for i in 0..d {
            for j in 0..d {
                let _ = write!(out, ",re_{i}{j},im_{i}{j}");
            }
        }
        out.push('\n');
        for (t, rho) in self.times.iter().zip(&self.states) {
            let _ = write!(out, "{t:.16e}");
            for i in 0..d {
                for j in 0..d {
                    let z = rho.matrix()[(i, j)];
                    let _ = write!(out, ",{:.16e},{:.16e}", z.re, z.im);
                }
            }
            out.push('\n');
        }
        out
    }
}

/// One classical RK4 step of size h from (t, ρ), without any projection.
pub fn rk4_step(g: &Generator, t: f64, h: f64, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    let k1 = g.apply(t, rho)?;
    let k2 = g.apply(t + h / 2.0, &(rho + k1.scale(h / 2.0)))?;
    let k3 = g.apply(t + h / 2.0, &(rho + k2.scale(h / 2.0)))?;
    let k4 = g.apply(t + h, &(rho + k3.scale(h)))?;
    Ok(rho + (k1 + k2.scale(2.0) + k3.scale(2.0) + k4).scale(h / 6.0))
}

impl CorrectionLog {
    /// Re-symmetrizes and renormalizes a raw step ending at `time`, projects
    /// small negative eigenvalues away, and books the correction.
    pub fn correct(&mut self, time: f64, raw: &ComplexMatrix) -> Result<DensityMatrix> {
        if raw.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::StepTooLarge { time, violation: f64::INFINITY });
        }
        let trace = raw.trace();
        self.trace_drift.push((trace - C64::new(1.0, 0.0)).norm());
        self.hermiticity_drift.push(matfun::hermiticity_residual(raw));

        let mut fixed = matfun::hermitian_part(raw).unscale(trace.re);
        let eig = matfun::eig_hermitian(&fixed)?;
        let min = eig.min();
        if min < -STEP_PSD_TOL {
            return Err(Error::StepTooLarge { time, violation: -min });
        }
        if min < -matfun::PSD_TOL {
            let projected = eig.map(|x| x.max(0.0));
            let tr = projected.trace().re;
            fixed = projected.unscale(tr);
        }
        let correction = (raw - &fixed).norm();
        self.correction.push(correction);
        self.total += correction;
        if self.total > CORRECTION_BUDGET {
            return Err(Error::CorrectionBudgetExceeded { total: self.total, budget: CORRECTION_BUDGET });
        }
        Ok(DensityMatrix::from_trusted(fixed))
    }
}

/// Fixed-step classical RK4 from ρ₀ over [0, T].
///
/// Every step is followed by re-symmetrization and trace renormalization,
/// and by a projection onto the PSD cone when an eigenvalue dips below
/// −1e−10. The size of each correction is logged; the run fails with
/// `CorrectionBudgetExceeded` once their sum passes 1e−6 and with
/// `StepTooLarge` if an eigenvalue drops below −1e−6.
pub fn propagate(g: &Generator, rho0: &DensityMatrix, horizon: f64, dt: f64) -> Result<Trajectory> {
    propagate_until(g, rho0, horizon, dt, |_, _| Ok(false))
}

/// As `propagate`, but stops after the first sample for which `stop`
/// returns true. The returned trajectory ends at that sample.
pub fn propagate_until<F>(g: &Generator, rho0: &DensityMatrix, horizon: f64, dt: f64, mut stop: F) -> Result<Trajectory>
where
    F: FnMut(f64, &DensityMatrix) -> Result<bool>,
{
    if rho0.dim() != g.dim() {
        return Err(Error::DimensionMismatch { expected: g.dim(), found: rho0.dim() });
    }
    let mut times = time_grid(horizon, dt)?;
    let mut states = Vec::with_capacity(times.len());
    let mut log = CorrectionLog::default();
    states.push(rho0.clone());
    if !stop(0.0, rho0)? {
        for k in 1..times.len() {
            let (t, h) = (times[k - 1], times[k] - times[k - 1]);
            let raw = rk4_step(g, t, h, states[k - 1].matrix())?;
            let next = log.correct(times[k], &raw)?;
            let done = stop(times[k], &next)?;
            states.push(next);
            if done {
                break;
            }
        }
    }
    times.truncate(states.len());
    let mut traj = Trajectory::new(times, states, g.clone())?;
    traj.corrections = log;
    Ok(traj)
}

fn half_angle(theta: f64) -> Result<(f64, f64)> {
    if !theta.is_finite() || !(0.0..=std::f64::consts::PI).contains(&theta) {
        return Err(Error::InvalidArgument(format!("theta must lie in [0, pi], got {theta}")));
    }
    Ok((theta / 2.0).sin_cos())
}

fn check_time(t: f64) -> Result<()> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::InvalidArgument(format!("time must be nonnegative, got {t}")));
    }
    Ok(())
}

/// Exact dephasing solution from the θ-state: populations frozen, coherence
/// ρ₀₁(t) = −i cos(θ/2) sin(θ/2) e^{−∫γ − iω₀t}.
pub fn dephasing_analytic(theta: f64, rate: &RateFunction, omega0: f64, t: f64) -> Result<DensityMatrix> {
    check_time(t)?;
    let (s, c) = half_angle(theta)?;
    let decay = (-rate.integral(t)).exp();
    let coherence = C64::new(0.0, -c * s) * C64::from_polar(decay, -omega0 * t);
    let m = ComplexMatrix::from_row_slice(2, 2, &[C64::new(c * c, 0.0), coherence, coherence.conj(), C64::new(s * s, 0.0)]);
    Ok(DensityMatrix::from_trusted(m))
}

/// Exact amplitude-damping solution from the θ-state: the |0⟩ population
/// decays as e^{−∫γ/2} and the coherence as e^{−∫γ/4}.
pub fn dissipative_analytic(theta: f64, rate: &RateFunction, t: f64) -> Result<DensityMatrix> {
    check_time(t)?;
    let (s, c) = half_angle(theta)?;
    let g = rate.integral(t);
    let p0 = (-g / 2.0).exp() * c * c;
    let coherence = C64::new(0.0, -(-g / 4.0).exp() * c * s);
    let m = ComplexMatrix::from_row_slice(2, 2, &[C64::new(p0, 0.0), coherence, coherence.conj(), C64::new(1.0 - p0, 0.0)]);
    Ok(DensityMatrix::from_trusted(m))
}

/// e^{−iωtσ_x}|0⟩⟨0|e^{iωtσ_x} = [[cos², i·cos·sin], [−i·cos·sin, sin²]] at ωt.
pub fn x_rotation_analytic(omega: f64, t: f64) -> Result<DensityMatrix> {
    check_time(t)?;
    let (s, c) = (omega * t).sin_cos();
    let m = ComplexMatrix::from_row_slice(
        2,
        2,
        &[C64::new(c * c, 0.0), C64::new(0.0, c * s), C64::new(0.0, -c * s), C64::new(s * s, 0.0)],
    );
    Ok(DensityMatrix::from_trusted(m))
}

/// Re ρ₀ + i(1 − t/τ) Im ρ₀.
pub fn geodesic_analytic(initial: &DensityMatrix, duration: f64, t: f64) -> Result<DensityMatrix> {
    check_time(t)?;
    let dec = initial.decompose();
    let scale = 1.0 - t / duration;
    let d = initial.dim();
    let m = ComplexMatrix::from_fn(d, d, |i, j| C64::new(dec.re.matrix()[(i, j)].re, scale * dec.im[(i, j)]));
    DensityMatrix::validate(m)
}
