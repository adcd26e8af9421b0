//! Strict JSON run configuration.

use std::fs;
use std::path::{Path, PathBuf};

use islkit::dynamics::{Generator, RateFunction};
use islkit::matfun::{self, ComplexMatrix, C64};
use islkit::states::theta_state;
use islkit::{DensityMatrix, MeasureKind};
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Dephasing,
    Dissipative,
    Unitary,
    Geodesic,
    Static,
}

impl Model {
    pub fn name(self) -> &'static str {
        match self {
            Self::Dephasing => "dephasing",
            Self::Dissipative => "dissipative",
            Self::Unitary => "unitary",
            Self::Geodesic => "geodesic",
            Self::Static => "static",
        }
    }
}

/// A constant rate or the path of a two-column `t,gamma` table.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum GammaSpec {
    Constant(f64),
    Table(PathBuf),
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub re: Vec<Vec<f64>>,
    #[serde(default)]
    pub im: Option<Vec<Vec<f64>>>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub model: Model,
    /// Initial θ-state angle; exclusive with `state`.
    #[serde(default)]
    pub theta: Option<f64>,
    /// Path of an initial state JSON file; exclusive with `theta`.
    #[serde(default)]
    pub state: Option<PathBuf>,
    #[serde(default)]
    pub gamma: Option<GammaSpec>,
    #[serde(default)]
    pub allow_negative_rate: bool,
    #[serde(default)]
    pub omega0: f64,
    /// Strength of H = ωσ_x for the unitary model when no Hamiltonian is given.
    #[serde(default)]
    pub omega: Option<f64>,
    #[serde(default)]
    pub hamiltonian: Option<MatrixJson>,
    #[serde(rename = "T")]
    pub horizon: f64,
    #[serde(default)]
    pub dt: Option<f64>,
    #[serde(default)]
    pub theorems: Option<Vec<String>>,
    #[serde(default)]
    pub fidelity: Option<f64>,
    #[serde(default)]
    pub measure: Option<MeasureKind>,
    #[serde(default)]
    pub epsilon: Option<f64>,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub format: Option<Format>,
    #[serde(skip)]
    base_dir: PathBuf,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::input(format!("cannot read config {}: {e}", path.display())))?;
        let mut config = Self::parse(&text)?;
        config.base_dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok(config)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let config: Self = serde_json::from_str(text).map_err(|e| CliError::input(format!("invalid config: {e}")))?;
        config.check()?;
        Ok(config)
    }

    fn check(&self) -> Result<(), CliError> {
        if !(self.horizon.is_finite() && self.horizon > 0.0) {
            return Err(CliError::input(format!("T must be positive, got {}", self.horizon)));
        }
        if let Some(dt) = self.dt {
            if !(dt.is_finite() && dt > 0.0) {
                return Err(CliError::input(format!("dt must be positive, got {dt}")));
            }
        }
        if self.theta.is_some() == self.state.is_some() {
            return Err(CliError::input("exactly one of theta and state must be given"));
        }
        if matches!(self.model, Model::Dephasing | Model::Dissipative) && self.gamma.is_none() {
            return Err(CliError::input("the dephasing and dissipative models need gamma"));
        }
        if !self.omega0.is_finite() {
            return Err(CliError::input("omega0 must be finite"));
        }
        Ok(())
    }

    fn resolve(&self, path: &Path) -> PathBuf {
        if path.is_absolute() {
            path.to_path_buf()
        } else {
            self.base_dir.join(path)
        }
    }

    /// Config value, else `ISLKIT_DT`, else the library default.
    pub fn step(&self) -> Result<f64, CliError> {
        match self.dt {
            Some(dt) => Ok(dt),
            None => env_step(),
        }
    }

    pub fn initial_state(&self) -> Result<DensityMatrix, CliError> {
        match (&self.theta, &self.state) {
            (Some(theta), _) => Ok(theta_state(*theta)?),
            (None, Some(path)) => read_state(&self.resolve(path)),
            (None, None) => Err(CliError::input("no initial state")),
        }
    }

    pub fn rate(&self) -> Result<RateFunction, CliError> {
        match &self.gamma {
            None => Err(CliError::input("gamma is missing")),
            Some(GammaSpec::Constant(g)) => Ok(RateFunction::constant(*g)?),
            Some(GammaSpec::Table(path)) => {
                let (times, values) = read_rate_table(&self.resolve(path))?;
                Ok(RateFunction::tabulated(times, values, self.allow_negative_rate)?)
            }
        }
    }

    pub fn generator(&self, initial: &DensityMatrix) -> Result<Generator, CliError> {
        let g = match self.model {
            Model::Dephasing => Generator::dephasing(self.rate()?, self.omega0)?,
            Model::Dissipative => Generator::dissipative(self.rate()?),
            Model::Unitary => {
                let h = match &self.hamiltonian {
                    Some(m) => matrix_from_json(m)?,
                    None => matfun::sigma_x().scale(self.omega.unwrap_or(1.0)),
                };
                Generator::unitary(h)?
            }
            Model::Geodesic => Generator::geodesic(initial.clone(), self.horizon)?,
            Model::Static => Generator::zero(initial.dim()),
        };
        if g.dim() != initial.dim() {
            return Err(CliError::input(format!(
                "initial state has dimension {} but the generator acts on dimension {}",
                initial.dim(),
                g.dim()
            )));
        }
        Ok(g)
    }
}

pub fn env_step() -> Result<f64, CliError> {
    match std::env::var("ISLKIT_DT") {
        Err(_) => Ok(islkit::dynamics::DEFAULT_DT),
        Ok(raw) => match raw.trim().parse::<f64>() {
            Ok(dt) if dt.is_finite() && dt > 0.0 => Ok(dt),
            _ => Err(CliError::input(format!("ISLKIT_DT must be a positive number, got {raw:?}"))),
        },
    }
}

pub fn read_state(path: &Path) -> Result<DensityMatrix, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::input(format!("cannot read state {}: {e}", path.display())))?;
    Ok(DensityMatrix::from_json(&text)?)
}

fn matrix_from_json(m: &MatrixJson) -> Result<ComplexMatrix, CliError> {
    let d = m.re.len();
    let im = m.im.clone().unwrap_or_else(|| vec![vec![0.0; d]; d]);
    if d == 0 || im.len() != d || m.re.iter().chain(&im).any(|row| row.len() != d) {
        return Err(CliError::input("hamiltonian must be a non-empty square matrix"));
    }
    Ok(ComplexMatrix::from_fn(d, d, |i, j| C64::new(m.re[i][j], im[i][j])))
}

/// Two columns `t,gamma` separated by commas or whitespace. `#` starts a
/// comment and a non-numeric first line is taken as a header.
fn read_rate_table(path: &Path) -> Result<(Vec<f64>, Vec<f64>), CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::input(format!("cannot read rate table {}: {e}", path.display())))?;
    let mut times = Vec::new();
    let mut values = Vec::new();
    let mut first = true;
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).collect();
        let parsed: Option<Vec<f64>> = fields.iter().map(|s| s.parse().ok()).collect();
        match parsed {
            Some(v) if v.len() == 2 => {
                times.push(v[0]);
                values.push(v[1]);
            }
            None if first => {}
            _ => return Err(CliError::input(format!("{}:{}: expected two numbers", path.display(), n + 1))),
        }
        first = false;
    }
    Ok((times, values))
}
