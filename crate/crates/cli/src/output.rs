//! Text rendering of command results. Everything here is deterministic.

use std::fmt::Write as _;

use islkit::bounds::{BoundReport, ThresholdTime};
use islkit::dynamics::Trajectory;
use islkit::figures::FigureData;
use islkit::states::StateJson;
use islkit::MeasureKind;
use serde::Serialize;

use crate::config::{Format, RunConfig};

/// Twelve significant digits, fixed-point unless the magnitude is extreme.
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let mag = x.abs().log10().floor() as i32;
    if (-4..12).contains(&mag) {
        let decimals = (11 - mag).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.11e}")
    }
}

fn json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

pub fn measures(values: &[(MeasureKind, f64)], format: Format) -> String {
    match format {
        Format::Json => {
            let map: serde_json::Map<String, serde_json::Value> =
                values.iter().map(|(k, v)| (k.tag().to_string(), serde_json::Value::from(*v))).collect();
            json(&map)
        }
        Format::Csv if values.len() == 1 => format!("{}\n", sig12(values[0].1)),
        Format::Csv => values.iter().map(|(k, v)| format!("{},{}\n", k.tag(), sig12(*v))).collect(),
    }
}

#[derive(Serialize)]
struct TrajectoryJson<'a> {
    times: &'a [f64],
    states: Vec<StateJson>,
}

pub fn trajectory(traj: &Trajectory, config: &RunConfig, dt: f64, format: Format) -> String {
    match format {
        Format::Csv => {
            let comment = format!(
                "model = {}, T = {}, dt = {dt}; dimensionless time (units of 1/gamma or 1/omega)",
                config.model.name(),
                config.horizon
            );
            traj.to_csv(Some(&comment))
        }
        Format::Json => json(&TrajectoryJson { times: traj.times(), states: traj.states().iter().map(StateJson::from).collect() }),
    }
}

fn optional(x: Option<f64>) -> String {
    x.map(|v| format!("{v:.16e}")).unwrap_or_default()
}

pub fn reports(reports: &[BoundReport], format: Format) -> String {
    match format {
        Format::Json => json(reports),
        Format::Csv => {
            let mut out = String::from("theorem,delta_I,lambda,t_isl,t_actual,bound_valid,vacuous\n");
            for r in reports {
                let _ = writeln!(
                    out,
                    "{},{:.16e},{:.16e},{:.16e},{},{},{}",
                    r.theorem,
                    r.delta_i,
                    r.lambda,
                    r.t_isl,
                    optional(r.t_actual),
                    r.is_valid(),
                    r.is_vacuous()
                );
            }
            out
        }
    }
}

#[derive(Serialize)]
struct FigureJson<'a> {
    id: u32,
    theorem: String,
    model: &'a str,
    thetas: [f64; 3],
    rows: Vec<FigureRowJson>,
}

#[derive(Serialize)]
struct FigureRowJson {
    #[serde(rename = "T")]
    horizon: f64,
    t_isl: [f64; 3],
}

pub fn figure(data: &FigureData, format: Format) -> String {
    match format {
        Format::Csv => data.to_csv(),
        Format::Json => json(&FigureJson {
            id: data.spec.id,
            theorem: data.spec.theorem.to_string(),
            model: data.spec.model.name(),
            thetas: islkit::figures::THETAS,
            rows: data.rows.iter().map(|r| FigureRowJson { horizon: r.horizon, t_isl: r.t_isl }).collect(),
        }),
    }
}

#[derive(Serialize)]
struct ThresholdJson {
    measure: MeasureKind,
    epsilon: f64,
    t_epsilon: ThresholdTime,
}

pub fn threshold(kind: MeasureKind, epsilon: f64, t: ThresholdTime, format: Format) -> String {
    match format {
        Format::Json => json(&ThresholdJson { measure: kind, epsilon, t_epsilon: t }),
        Format::Csv => match t {
            ThresholdTime::Reached(t) => format!("{}\n", sig12(t)),
            ThresholdTime::NotReached => "not-reached\n".into(),
        },
    }
}
