//! Parameter sweeps producing the data grids behind every figure family:
//! tongue maps over (detuning, coupling) and (detuning, width), time series
//! of the synchronization measure, and Husimi snapshots.

use serde::{Deserialize, Serialize};

use crate::decay::decay_function;
use crate::ensemble::EnsembleConfig;
use crate::error::{Error, Result};
use crate::phase::{q_surface, sync_measure_closed, sync_peak, QSurface, SphereGrid};
use crate::qubit::{density_matrix, InitialCondition};

/// Which ensemble parameter an axis varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AxisName {
    Delta,
    Coupling,
    Lambda,
    Time,
    NQubits,
}

impl AxisName {
    pub fn as_str(&self) -> &'static str {
        match self {
            AxisName::Delta => "delta",
            AxisName::Coupling => "coupling",
            AxisName::Lambda => "lambda",
            AxisName::Time => "time",
            AxisName::NQubits => "n_qubits",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "delta" => Ok(AxisName::Delta),
            "coupling" | "gamma" => Ok(AxisName::Coupling),
            "lambda" => Ok(AxisName::Lambda),
            "time" => Ok(AxisName::Time),
            "n_qubits" | "n" => Ok(AxisName::NQubits),
            other => Err(Error::Config(format!("unknown axis name '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AxisScale {
    Linear,
    Log,
}

/// Rectangular axis: `count` nodes from `min` to `max` inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxisSpec {
    pub name: AxisName,
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub scale: AxisScale,
}

impl AxisSpec {
    pub fn new(name: AxisName, min: f64, max: f64, count: usize, scale: AxisScale) -> Result<Self> {
        if !min.is_finite() || !max.is_finite() || min >= max {
            return Err(Error::Config(format!(
                "axis {}: min {min} must be below max {max}",
                name.as_str()
            )));
        }
        if count < 2 {
            return Err(Error::Config(format!(
                "axis {}: count {count} must be at least 2",
                name.as_str()
            )));
        }
        if scale == AxisScale::Log && min <= 0.0 {
            return Err(Error::Config(format!(
                "axis {}: log scale requires min > 0, got {min}",
                name.as_str()
            )));
        }
        Ok(AxisSpec {
            name,
            min,
            max,
            count,
            scale,
        })
    }

    pub fn linear(name: AxisName, min: f64, max: f64, count: usize) -> Result<Self> {
        Self::new(name, min, max, count, AxisScale::Linear)
    }

    /// Node coordinates. Endpoints are exact; interior nodes are affine in
    /// the index so that refining by doubling reproduces shared nodes.
    pub fn values(&self) -> Vec<f64> {
        let n = self.count;
        (0..n)
            .map(|i| {
                if i == 0 {
                    return self.min;
                }
                if i == n - 1 {
                    return self.max;
                }
                let frac = i as f64 / (n - 1) as f64;
                match self.scale {
                    AxisScale::Linear => self.min + frac * (self.max - self.min),
                    AxisScale::Log => {
                        (self.min.ln() + frac * (self.max.ln() - self.min.ln())).exp()
                    }
                }
            })
            .collect()
    }
}

/// Row-major grid of sweep values with its axes and the fixed parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub quantity: String,
    pub x_axis: AxisSpec,
    /// Absent for one-dimensional sweeps such as time series.
    pub y_axis: Option<AxisSpec>,
    pub fixed: EnsembleConfig,
    /// Row-major: y outer, x inner.
    pub values: Vec<f64>,
}

impl SweepResult {
    pub fn rows(&self) -> usize {
        self.y_axis.as_ref().map_or(1, |a| a.count)
    }

    pub fn cols(&self) -> usize {
        self.x_axis.count
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }
}

fn apply_axis(cfg: &EnsembleConfig, name: AxisName, value: f64) -> EnsembleConfig {
    let mut out = *cfg;
    match name {
        AxisName::Delta => out.detuning = value,
        AxisName::Coupling => out.coupling = value,
        AxisName::Lambda => out.spectral_width = value,
        AxisName::NQubits => out.n_qubits = value.round().max(1.0) as u32,
        AxisName::Time => {}
    }
    out
}

/// s_max of the equatorial initial condition at one time for one config.
pub fn s_max_at(cfg: &EnsembleConfig, t: f64) -> f64 {
    sync_peak(
        &InitialCondition::equatorial(),
        decay_function(cfg, t).h,
    )
    .s_max
}

fn tongue(
    base: &EnsembleConfig,
    x_axis: AxisSpec,
    y_axis: AxisSpec,
    t_snapshot: f64,
) -> Result<SweepResult> {
    if t_snapshot <= 0.0 {
        return Err(Error::Config("snapshot time must be positive".into()));
    }
    let xs = x_axis.values();
    let ys = y_axis.values();
    let mut values = Vec::with_capacity(xs.len() * ys.len());
    for &y in &ys {
        let row_cfg = apply_axis(base, y_axis.name, y);
        for &x in &xs {
            let cfg = apply_axis(&row_cfg, x_axis.name, x);
            cfg.validate()?;
            values.push(s_max_at(&cfg, t_snapshot));
        }
    }
    Ok(SweepResult {
        quantity: "s_max".into(),
        x_axis,
        y_axis: Some(y_axis),
        fixed: *base,
        values,
    })
}

/// Tongue map over (detuning, coupling) at a fixed snapshot time.
pub fn tongue_delta_coupling(
    base: &EnsembleConfig,
    delta_axis: AxisSpec,
    gamma_axis: AxisSpec,
    t_snapshot: f64,
) -> Result<SweepResult> {
    tongue(base, delta_axis, gamma_axis, t_snapshot)
}

/// Tongue map over (detuning, spectral width) at a fixed snapshot time.
pub fn tongue_delta_lambda(
    base: &EnsembleConfig,
    delta_axis: AxisSpec,
    lambda_axis: AxisSpec,
    t_snapshot: f64,
) -> Result<SweepResult> {
    tongue(base, delta_axis, lambda_axis, t_snapshot)
}

/// Time series of S(phi, t) for a fixed phase (default 0).
pub fn time_series_s(base: &EnsembleConfig, times: AxisSpec, phi: f64) -> Result<SweepResult> {
    base.validate()?;
    let init = InitialCondition::equatorial();
    let values = times
        .values()
        .iter()
        .map(|&t| sync_measure_closed(&init, decay_function(base, t).h, phi))
        .collect();
    Ok(SweepResult {
        quantity: "sync_measure".into(),
        x_axis: times,
        y_axis: None,
        fixed: *base,
        values,
    })
}

/// One normalized Husimi surface per snapshot time.
pub fn husimi_snapshots(
    base: &EnsembleConfig,
    times: &[f64],
    grid: &SphereGrid,
) -> Result<Vec<QSurface>> {
    base.validate()?;
    let init = InitialCondition::equatorial();
    times
        .iter()
        .map(|&t| {
            if t < 0.0 {
                return Err(Error::Config(format!("snapshot time {t} is negative")));
            }
            let dm = density_matrix(&init, decay_function(base, t).h)?;
            Ok(q_surface(&dm, grid))
        })
        .collect()
}
