//! Run configuration: the key-value config file format, defaults, and the
//! echo form that round-trips through the parser.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::ensemble::EnsembleConfig;
use crate::error::{Error, Result};
use crate::sweep::{AxisName, AxisScale, AxisSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Husimi,
    Sync,
    TongueGamma,
    TongueLambda,
    Bloch,
    Verify,
}

impl Command {
    pub fn as_str(&self) -> &'static str {
        match self {
            Command::Husimi => "husimi",
            Command::Sync => "sync",
            Command::TongueGamma => "tongue-gamma",
            Command::TongueLambda => "tongue-lambda",
            Command::Bloch => "bloch",
            Command::Verify => "verify",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "husimi" => Ok(Command::Husimi),
            "sync" => Ok(Command::Sync),
            "tongue-gamma" => Ok(Command::TongueGamma),
            "tongue-lambda" => Ok(Command::TongueLambda),
            "bloch" => Ok(Command::Bloch),
            "verify" => Ok(Command::Verify),
            other => Err(Error::Config(format!("unknown command '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
    Svg,
}

impl OutputFormat {
    pub fn as_str(&self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
            OutputFormat::Svg => "svg",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            "svg" => Ok(OutputFormat::Svg),
            other => Err(Error::Config(format!("unknown format '{other}'"))),
        }
    }
}

/// Fully validated run description. Batch lists over qubit number and
/// detuning expand into one output per combination.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    pub n_qubits: Vec<u32>,
    pub coupling: f64,
    pub spectral_width: f64,
    pub detuning: Vec<f64>,
    pub x_axis: Option<AxisSpec>,
    pub y_axis: Option<AxisSpec>,
    pub t_max: f64,
    pub time_points: usize,
    pub snapshot_time: f64,
    pub snapshot_times: Vec<f64>,
    pub theta_points: usize,
    pub phi_points: usize,
    pub phi: f64,
    pub dt: f64,
    pub tolerance: f64,
    pub output: PathBuf,
    pub format: OutputFormat,
}

impl RunConfig {
    /// Defaults: the non-Markovian baseline, the [0, 50] x 2001 time grid
    /// (Bloch trajectories default to horizon 1200 instead), 201 x 201
    /// tongue grids, and snapshot time 1000.
    pub fn defaults(command: Command) -> Self {
        let (t_max, time_points) = match command {
            Command::Bloch => (1200.0, 12001),
            _ => (50.0, 2001),
        };
        RunConfig {
            command,
            n_qubits: vec![1],
            coupling: 1.0,
            spectral_width: 0.01,
            detuning: vec![0.0],
            x_axis: None,
            y_axis: None,
            t_max,
            time_points,
            snapshot_time: 1000.0,
            snapshot_times: vec![0.0, 100.0, 1000.0],
            theta_points: 181,
            phi_points: 360,
            phi: 0.0,
            dt: 1e-3,
            tolerance: 1e-5,
            output: PathBuf::from("out"),
            format: OutputFormat::Csv,
        }
    }

    /// The base ensemble for one (n, delta) combination of the batch.
    pub fn ensemble(&self, n: u32, delta: f64) -> Result<EnsembleConfig> {
        EnsembleConfig::new(n, self.coupling, self.spectral_width, delta)
    }

    /// Tongue axes with per-command defaults filled in.
    pub fn tongue_axes(&self) -> Result<(AxisSpec, AxisSpec)> {
        let x = match self.x_axis {
            Some(a) => a,
            None => AxisSpec::linear(AxisName::Delta, -2.0, 2.0, 201)?,
        };
        let y = match self.y_axis {
            Some(a) => a,
            None => match self.command {
                Command::TongueGamma => AxisSpec::linear(AxisName::Coupling, 0.05, 2.0, 201)?,
                Command::TongueLambda => AxisSpec::linear(AxisName::Lambda, 0.001, 0.1, 201)?,
                _ => {
                    return Err(Error::Config(
                        "tongue axes requested for a non-tongue command".into(),
                    ))
                }
            },
        };
        Ok((x, y))
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_qubits.is_empty() || self.detuning.is_empty() {
            return Err(Error::Config("batch lists must be non-empty".into()));
        }
        for (&n, &d) in self
            .n_qubits
            .iter()
            .flat_map(|n| self.detuning.iter().map(move |d| (n, d)))
        {
            self.ensemble(n, d)?;
        }
        match self.command {
            Command::TongueGamma | Command::TongueLambda => {
                if self.x_axis.is_some() != self.y_axis.is_some() {
                    return Err(Error::Config(
                        "tongue commands require two axes (or neither, for defaults)".into(),
                    ));
                }
            }
            _ => {
                if self.y_axis.is_some() {
                    return Err(Error::Config(format!(
                        "command {} takes no y axis",
                        self.command.as_str()
                    )));
                }
            }
        }
        if self.time_points < 2 {
            return Err(Error::Config("time_points must be at least 2".into()));
        }
        if !self.t_max.is_finite() || self.t_max <= 0.0 {
            return Err(Error::Config("t_max must be positive".into()));
        }
        if !self.snapshot_time.is_finite() || self.snapshot_time <= 0.0 {
            return Err(Error::Config("snapshot_time must be positive".into()));
        }
        if !self.dt.is_finite()
            || self.dt <= 0.0
            || !self.tolerance.is_finite()
            || self.tolerance <= 0.0
        {
            return Err(Error::Config("dt and tolerance must be positive".into()));
        }
        if self.theta_points < 3 || self.phi_points < 4 {
            return Err(Error::Config("sphere grid too coarse".into()));
        }
        Ok(())
    }

    /// Canonical key-value echo. Feeding this back through `parse_config`
    /// reproduces an identical RunConfig.
    pub fn echo(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "command = {}", self.command.as_str());
        let _ = writeln!(s, "n_qubits = {}", join_ints(&self.n_qubits));
        let _ = writeln!(s, "coupling = {}", fmt_f64(self.coupling));
        let _ = writeln!(s, "spectral_width = {}", fmt_f64(self.spectral_width));
        let _ = writeln!(s, "detuning = {}", join_floats(&self.detuning));
        if let Some(a) = &self.x_axis {
            let _ = writeln!(s, "x_axis = {}", fmt_axis(a));
        }
        if let Some(a) = &self.y_axis {
            let _ = writeln!(s, "y_axis = {}", fmt_axis(a));
        }
        let _ = writeln!(s, "t_max = {}", fmt_f64(self.t_max));
        let _ = writeln!(s, "time_points = {}", self.time_points);
        let _ = writeln!(s, "snapshot_time = {}", fmt_f64(self.snapshot_time));
        let _ = writeln!(s, "snapshot_times = {}", join_floats(&self.snapshot_times));
        let _ = writeln!(s, "theta_points = {}", self.theta_points);
        let _ = writeln!(s, "phi_points = {}", self.phi_points);
        let _ = writeln!(s, "phi = {}", fmt_f64(self.phi));
        let _ = writeln!(s, "dt = {}", fmt_f64(self.dt));
        let _ = writeln!(s, "tolerance = {}", fmt_f64(self.tolerance));
        let _ = writeln!(s, "output = {}", self.output.display());
        let _ = writeln!(s, "format = {}", self.format.as_str());
        s
    }
}

/// Shortest f64 representation that parses back exactly.
pub fn fmt_f64(x: f64) -> String {
    let mut s = format!("{x}");
    if s.parse::<f64>() != Ok(x) {
        s = format!("{x:e}");
    }
    s
}

fn join_floats(xs: &[f64]) -> String {
    xs.iter().map(|x| fmt_f64(*x)).collect::<Vec<_>>().join(",")
}

fn join_ints(xs: &[u32]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn fmt_axis(a: &AxisSpec) -> String {
    format!(
        "{}:{}:{}:{}:{}",
        a.name.as_str(),
        fmt_f64(a.min),
        fmt_f64(a.max),
        a.count,
        match a.scale {
            AxisScale::Linear => "linear",
            AxisScale::Log => "log",
        }
    )
}

/// Parse a compact axis description `name:min:max:count[:scale]`.
pub fn parse_axis(s: &str) -> Result<AxisSpec> {
    let parts: Vec<&str> = s.split(':').collect();
    if !(4..=5).contains(&parts.len()) {
        return Err(Error::Config(format!(
            "axis '{s}' must be name:min:max:count[:scale]"
        )));
    }
    let name = AxisName::parse(parts[0])?;
    let min = parse_num(parts[1], "axis min")?;
    let max = parse_num(parts[2], "axis max")?;
    let count: usize = parts[3]
        .parse()
        .map_err(|_| Error::Config(format!("axis count '{}' is not an integer", parts[3])))?;
    let scale = match parts.get(4) {
        None | Some(&"linear") => AxisScale::Linear,
        Some(&"log") => AxisScale::Log,
        Some(other) => {
            return Err(Error::Config(format!("unknown axis scale '{other}'")));
        }
    };
    AxisSpec::new(name, min, max, count, scale)
}

fn parse_num(s: &str, what: &str) -> Result<f64> {
    s.trim()
        .parse()
        .map_err(|_| Error::Config(format!("{what} '{s}' is not a number")))
}

fn parse_float_list(s: &str, what: &str) -> Result<Vec<f64>> {
    s.split(',').map(|p| parse_num(p, what)).collect()
}

fn parse_int_list(s: &str, what: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|_| Error::Config(format!("{what} '{p}' is not an integer")))
        })
        .collect()
}

/// Parse the structured key-value text format. Lines are `key = value`;
/// '#' starts a comment; unknown keys are rejected by name. An empty input
/// yields all defaults for the given command.
pub fn parse_config(text: &str, default_command: Command) -> Result<RunConfig> {
    let mut cfg = RunConfig::defaults(default_command);
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::Config(format!("line {}: expected 'key = value'", lineno + 1))
        })?;
        let key = key.trim();
        let value = value.trim();
        match key {
            "command" => cfg.command = Command::parse(value)?,
            "n_qubits" => cfg.n_qubits = parse_int_list(value, "n_qubits")?,
            "coupling" | "gamma" => cfg.coupling = parse_num(value, "coupling")?,
            "spectral_width" | "lambda" => {
                cfg.spectral_width = parse_num(value, "spectral_width")?
            }
            "detuning" | "delta" => cfg.detuning = parse_float_list(value, "detuning")?,
            "x_axis" => cfg.x_axis = Some(parse_axis(value)?),
            "y_axis" => cfg.y_axis = Some(parse_axis(value)?),
            "t_max" => cfg.t_max = parse_num(value, "t_max")?,
            "time_points" => {
                cfg.time_points = value.parse().map_err(|_| {
                    Error::Config(format!("time_points '{value}' is not an integer"))
                })?
            }
            "snapshot_time" => cfg.snapshot_time = parse_num(value, "snapshot_time")?,
            "snapshot_times" => {
                cfg.snapshot_times = parse_float_list(value, "snapshot_times")?
            }
            "theta_points" => {
                cfg.theta_points = value.parse().map_err(|_| {
                    Error::Config(format!("theta_points '{value}' is not an integer"))
                })?
            }
            "phi_points" => {
                cfg.phi_points = value.parse().map_err(|_| {
                    Error::Config(format!("phi_points '{value}' is not an integer"))
                })?
            }
            "phi" => cfg.phi = parse_num(value, "phi")?,
            "dt" => cfg.dt = parse_num(value, "dt")?,
            "tolerance" => cfg.tolerance = parse_num(value, "tolerance")?,
            "output" => cfg.output = PathBuf::from(value),
            "format" => cfg.format = OutputFormat::parse(value)?,
            other => {
                return Err(Error::Config(format!(
                    "line {}: unknown key '{other}'",
                    lineno + 1
                )));
            }
        }
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Read and parse a config file.
pub fn load_config(path: &Path, default_command: Command) -> Result<RunConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_config(&text, default_command)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_input_yields_defaults() {
        let cfg = parse_config("", Command::Sync).unwrap();
        assert_eq!(cfg, RunConfig::defaults(Command::Sync));
        assert_eq!(cfg.spectral_width, 0.01);
        assert_eq!(cfg.t_max, 50.0);
        assert_eq!(cfg.time_points, 2001);
        assert_eq!(cfg.snapshot_time, 1000.0);
    }

    #[test]
    fn unknown_keys_rejected() {
        let err = parse_config("bogus = 1", Command::Sync).unwrap_err();
        assert!(err.to_string().contains("bogus"));
    }

    #[test]
    fn tongue_requires_axis_pair() {
        let err = parse_config(
            "command = tongue-gamma\nx_axis = delta:-2:2:11",
            Command::Sync,
        )
        .unwrap_err();
        assert!(err.to_string().contains("two axes"));
    }

    #[test]
    fn fig3_panel_batch() {
        let cfg = parse_config(
            "command = sync\nn_qubits = 1,3,6,10\nlambda = 0.01\ndelta = 1",
            Command::Sync,
        )
        .unwrap();
        assert_eq!(cfg.n_qubits, vec![1, 3, 6, 10]);
        assert_eq!(cfg.detuning, vec![1.0]);
        assert_eq!(cfg.spectral_width, 0.01);
    }

    #[test]
    fn echo_round_trips() {
        let mut cfg = RunConfig::defaults(Command::TongueLambda);
        cfg.n_qubits = vec![3, 6];
        cfg.detuning = vec![0.25, -1.5];
        cfg.x_axis = Some(parse_axis("delta:-2:2:201").unwrap());
        cfg.y_axis = Some(parse_axis("lambda:0.001:0.1:201:log").unwrap());
        cfg.dt = 5e-4;
        let back = parse_config(&cfg.echo(), Command::Sync).unwrap();
        assert_eq!(back, cfg);
    }

    #[test]
    fn axis_parse_errors() {
        assert!(parse_axis("delta:-2:2").is_err());
        assert!(parse_axis("nope:-2:2:11").is_err());
        assert!(parse_axis("delta:2:-2:11").is_err());
        assert!(parse_axis("delta:-2:2:11:cubic").is_err());
    }
}
