//! Speed-limit-time datasets for the dephasing and dissipative qubit models.
//!
//! Each dataset sweeps the horizon T over 60 evenly spaced points in
//! (0, π/3] for θ ∈ {π/2, π/3, π/4} at γ = 2, ω₀ = 0.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4};
use std::fmt::{self, Write as _};

use rayon::prelude::*;

use crate::bounds::{self, BoundOptions, Theorem, VALIDITY_TOL};
use crate::dynamics::{self, Generator, RateFunction, Trajectory};
use crate::error::{Error, Result};

pub const FIGURE_IDS: [u32; 4] = [2, 3, 4, 5];
pub const THETAS: [f64; 3] = [FRAC_PI_2, FRAC_PI_3, FRAC_PI_4];
pub const GAMMA: f64 = 2.0;
pub const POINTS: usize = 60;
pub const MAX_HORIZON: f64 = FRAC_PI_3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    Dephasing,
    Dissipative,
}

impl Model {
    pub fn name(self) -> &'static str {
        match self {
            Self::Dephasing => "dephasing",
            Self::Dissipative => "dissipative",
        }
    }

    fn trajectory(self, theta: f64, horizon: f64, dt: f64) -> Result<Trajectory> {
        let rate = RateFunction::constant(GAMMA)?;
        match self {
            Self::Dephasing => {
                let g = Generator::dephasing(rate.clone(), 0.0)?;
                Trajectory::sample(g, horizon, dt, |t| dynamics::dephasing_analytic(theta, &rate, 0.0, t))
            }
            Self::Dissipative => {
                let g = Generator::dissipative(rate.clone());
                Trajectory::sample(g, horizon, dt, |t| dynamics::dissipative_analytic(theta, &rate, t))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FigureSpec {
    pub id: u32,
    pub theorem: Theorem,
    pub model: Model,
}

impl FigureSpec {
    pub fn new(id: u32) -> Result<Self> {
        let (theorem, model) = match id {
            2 => (Theorem::T1, Model::Dephasing),
            3 => (Theorem::T1, Model::Dissipative),
            4 => (Theorem::T3, Model::Dephasing),
            5 => (Theorem::T3, Model::Dissipative),
            _ => return Err(Error::InvalidArgument(format!("unknown figure id {id}, expected one of 2, 3, 4, 5"))),
        };
        Ok(Self { id, theorem, model })
    }
}

/// Horizons T_k = k·(π/3)/60 for k = 1..=60.
pub fn horizons() -> Vec<f64> {
    (1..=POINTS).map(|k| k as f64 * MAX_HORIZON / POINTS as f64).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct FigureRow {
    pub horizon: f64,
    /// Ordered like [`THETAS`].
    pub t_isl: [f64; 3],
}

#[derive(Debug, Clone, PartialEq)]
pub struct FigureData {
    pub spec: FigureSpec,
    pub rows: Vec<FigureRow>,
}

pub fn figure(id: u32, dt: f64) -> Result<FigureData> {
    let spec = FigureSpec::new(id)?;
    let rows = horizons()
        .into_par_iter()
        .map(|horizon| {
            let mut t_isl = [0.0; 3];
            for (slot, &theta) in t_isl.iter_mut().zip(&THETAS) {
                let traj = spec.model.trajectory(theta, horizon, dt)?;
                *slot = bounds::evaluate(spec.theorem, &traj, None, BoundOptions::default())?.t_isl;
            }
            Ok(FigureRow { horizon, t_isl })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FigureData { spec, rows })
}

#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    ExceedsHorizon { horizon: f64, column: usize, t_isl: f64 },
    Ordering { horizon: f64, t_isl: [f64; 3] },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::ExceedsHorizon { horizon, column, t_isl } => {
                write!(f, "T = {horizon:.6}: column {} has t_isl = {t_isl:.9} > T", COLUMNS[*column])
            }
            Self::Ordering { horizon, t_isl } => {
                write!(f, "T = {horizon:.6}: θ-ordering broken, t_isl = [{:.9}, {:.9}, {:.9}]", t_isl[0], t_isl[1], t_isl[2])
            }
        }
    }
}

const COLUMNS: [&str; 3] = ["t_isl_theta_pi2", "t_isl_theta_pi3", "t_isl_theta_pi4"];

impl FigureData {
    /// Rows breaking t_isl ≤ T + 1e-6 or t_isl(π/2) ≥ t_isl(π/3) ≥ t_isl(π/4).
    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for row in &self.rows {
            for (column, &t) in row.t_isl.iter().enumerate() {
                if t > row.horizon + VALIDITY_TOL {
                    out.push(Violation::ExceedsHorizon { horizon: row.horizon, column, t_isl: t });
                }
            }
            if row.t_isl[0] < row.t_isl[1] || row.t_isl[1] < row.t_isl[2] {
                out.push(Violation::Ordering { horizon: row.horizon, t_isl: row.t_isl });
            }
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "# figure {}: {} bound, {} model, gamma = {GAMMA}, omega0 = 0; times in units of 1/gamma",
            self.spec.id,
            self.spec.theorem,
            self.spec.model.name()
        );
        let _ = writeln!(out, "T,{}", COLUMNS.join(","));
        for row in &self.rows {
            let _ = writeln!(out, "{:.16e},{:.16e},{:.16e},{:.16e}", row.horizon, row.t_isl[0], row.t_isl[1], row.t_isl[2]);
        }
        out
    }
}
