//! Execution of a validated run configuration: expands batch lists, runs
//! the requested computation, and writes CSV/JSON/SVG outputs.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::ensemble::EnsembleConfig;
use crate::error::{Error, Result};
use crate::io::config::{fmt_f64, Command, OutputFormat, RunConfig};
use crate::io::{
    emit_json, emit_line_svg, emit_qsurface_csv, emit_qsurface_svg, emit_sweep_csv,
    emit_sweep_svg, emit_trajectory_csv, HeatmapOptions,
};
use crate::oracle::{kernel_max_error, standard_panel};
use crate::phase::SphereGrid;
use crate::qubit::{trajectory, BlochVector, InitialCondition};
use crate::sweep::{
    husimi_snapshots, time_series_s, tongue_delta_coupling, tongue_delta_lambda, AxisName,
    AxisSpec,
};

#[derive(Debug, Serialize)]
struct TrajectoryDoc {
    times: Vec<f64>,
    points: Vec<BlochVector>,
}

/// Output path `<stem><suffix>.<ext>`. An extension already matching the
/// format is stripped first so `-o out.csv` does not become `out.csv.csv`.
fn out_path(cfg: &RunConfig, suffix: &str) -> PathBuf {
    let ext = cfg.format.as_str();
    let mut stem = cfg.output.as_os_str().to_string_lossy().into_owned();
    let tail = format!(".{ext}");
    if stem.ends_with(&tail) {
        stem.truncate(stem.len() - tail.len());
    }
    PathBuf::from(format!("{stem}{suffix}.{ext}"))
}

/// Suffix identifying one batch combination; empty for singleton batches.
fn combo_suffix(cfg: &RunConfig, n: u32, delta: f64) -> String {
    let mut s = String::new();
    if cfg.n_qubits.len() > 1 {
        s.push_str(&format!("_N{n}"));
    }
    if cfg.detuning.len() > 1 {
        s.push_str(&format!("_d{}", fmt_f64(delta)));
    }
    s
}

fn time_axis(cfg: &RunConfig) -> Result<AxisSpec> {
    AxisSpec::linear(AxisName::Time, 0.0, cfg.t_max, cfg.time_points)
}

/// Run one configuration, writing output files and a short line per file to
/// `log`. Returns the process exit code (nonzero only for failed verify).
pub fn execute(cfg: &RunConfig, log: &mut dyn Write) -> Result<i32> {
    cfg.validate()?;
    match cfg.command {
        Command::Verify => run_verify(cfg, log),
        Command::Husimi => run_husimi(cfg, log).map(|_| 0),
        Command::Sync => run_sync(cfg, log).map(|_| 0),
        Command::TongueGamma | Command::TongueLambda => run_tongue(cfg, log).map(|_| 0),
        Command::Bloch => run_bloch(cfg, log).map(|_| 0),
    }
}

fn log_file(log: &mut dyn Write, path: &Path) {
    let _ = writeln!(log, "wrote {}", path.display());
}

fn run_husimi(cfg: &RunConfig, log: &mut dyn Write) -> Result<()> {
    let grid = SphereGrid::new(cfg.theta_points, cfg.phi_points)?;
    for &n in &cfg.n_qubits {
        for &delta in &cfg.detuning {
            let base = cfg.ensemble(n, delta)?;
            let surfaces = husimi_snapshots(&base, &cfg.snapshot_times, &grid)?;
            for (t, qs) in cfg.snapshot_times.iter().zip(&surfaces) {
                let suffix = format!("{}_t{}", combo_suffix(cfg, n, delta), fmt_f64(*t));
                let path = out_path(cfg, &suffix);
                match cfg.format {
                    OutputFormat::Csv => emit_qsurface_csv(qs, cfg, &path)?,
                    OutputFormat::Json => emit_json(qs, &path)?,
                    OutputFormat::Svg => {
                        let title = format!(
                            "Husimi Q, N={n}, \u{0394}={}, \u{03b3}\u{2080}t={}",
                            fmt_f64(delta),
                            fmt_f64(*t)
                        );
                        let opts =
                            HeatmapOptions::new(&title, "\u{03c6}", "\u{03b8}");
                        emit_qsurface_svg(qs, &opts, &path)?;
                    }
                }
                log_file(log, &path);
            }
        }
    }
    Ok(())
}

fn run_sync(cfg: &RunConfig, log: &mut dyn Write) -> Result<()> {
    let times = time_axis(cfg)?;
    for &n in &cfg.n_qubits {
        for &delta in &cfg.detuning {
            let base = cfg.ensemble(n, delta)?;
            let series = time_series_s(&base, times, cfg.phi)?;
            let path = out_path(cfg, &combo_suffix(cfg, n, delta));
            match cfg.format {
                OutputFormat::Csv => emit_sweep_csv(&series, cfg, &path)?,
                OutputFormat::Json => emit_json(&series, &path)?,
                OutputFormat::Svg => {
                    let title = format!(
                        "S(\u{03c6}={}, t), N={n}, \u{0394}={}",
                        fmt_f64(cfg.phi),
                        fmt_f64(delta)
                    );
                    emit_line_svg(
                        &series.x_axis.values(),
                        &[("S", series.values.as_slice())],
                        &title,
                        "\u{03b3}\u{2080}t",
                        "S",
                        &path,
                    )?;
                }
            }
            log_file(log, &path);
        }
    }
    Ok(())
}

fn run_tongue(cfg: &RunConfig, log: &mut dyn Write) -> Result<()> {
    let (x_axis, y_axis) = cfg.tongue_axes()?;
    for &n in &cfg.n_qubits {
        let base = cfg.ensemble(n, cfg.detuning[0])?;
        let result = match cfg.command {
            Command::TongueGamma => {
                tongue_delta_coupling(&base, x_axis, y_axis, cfg.snapshot_time)?
            }
            _ => tongue_delta_lambda(&base, x_axis, y_axis, cfg.snapshot_time)?,
        };
        let suffix = if cfg.n_qubits.len() > 1 {
            format!("_N{n}")
        } else {
            String::new()
        };
        let path = out_path(cfg, &suffix);
        match cfg.format {
            OutputFormat::Csv => emit_sweep_csv(&result, cfg, &path)?,
            OutputFormat::Json => emit_json(&result, &path)?,
            OutputFormat::Svg => {
                let y_label = match cfg.command {
                    Command::TongueGamma => "\u{03b3} (units of \u{03b3}\u{2080})",
                    _ => "\u{03bb} (units of \u{03b3}\u{2080})",
                };
                let title = format!(
                    "S_m at \u{03b3}\u{2080}t={}, N={n}",
                    fmt_f64(cfg.snapshot_time)
                );
                let opts = HeatmapOptions::new(
                    &title,
                    "\u{0394} (units of \u{03b3}\u{2080})",
                    y_label,
                );
                emit_sweep_svg(&result, &opts, &path)?;
            }
        }
        log_file(log, &path);
    }
    Ok(())
}

fn run_bloch(cfg: &RunConfig, log: &mut dyn Write) -> Result<()> {
    let times = time_axis(cfg)?.values();
    let init = InitialCondition::equatorial();
    for &n in &cfg.n_qubits {
        for &delta in &cfg.detuning {
            let base = cfg.ensemble(n, delta)?;
            let points = trajectory(&base, &init, &times)?;
            let path = out_path(cfg, &combo_suffix(cfg, n, delta));
            match cfg.format {
                OutputFormat::Csv => emit_trajectory_csv(&times, &points, cfg, &path)?,
                OutputFormat::Json => emit_json(
                    &TrajectoryDoc {
                        times: times.clone(),
                        points: points.clone(),
                    },
                    &path,
                )?,
                OutputFormat::Svg => {
                    let nx: Vec<f64> = points.iter().map(|p| p.x).collect();
                    let ny: Vec<f64> = points.iter().map(|p| p.y).collect();
                    let nz: Vec<f64> = points.iter().map(|p| p.z).collect();
                    let title = format!("Bloch components, N={n}, \u{0394}={}", fmt_f64(delta));
                    emit_line_svg(
                        &times,
                        &[("nx", &nx), ("ny", &ny), ("nz", &nz)],
                        &title,
                        "\u{03b3}\u{2080}t",
                        "n",
                        &path,
                    )?;
                }
            }
            log_file(log, &path);
        }
    }
    Ok(())
}

/// Verify the closed form against the kernel oracle over the standard
/// panel. Prints a table and returns exit code 0 iff every configuration
/// passes at the configured tolerance.
fn run_verify(cfg: &RunConfig, log: &mut dyn Write) -> Result<i32> {
    let panel = standard_panel();
    run_verify_panel(cfg, &panel, log)
}

/// Verify an explicit panel; exposed so callers can shrink or extend it.
pub fn run_verify_panel(
    cfg: &RunConfig,
    panel: &[EnsembleConfig],
    log: &mut dyn Write,
) -> Result<i32> {
    if panel.is_empty() {
        return Err(Error::Config("verify requires a non-empty panel".into()));
    }
    let write = |log: &mut dyn Write, line: String| {
        log.write_all(line.as_bytes())
            .and_then(|_| log.write_all(b"\n"))
            .map_err(|e| Error::io("<verify output>", e))
    };
    write(
        log,
        format!(
            "{:>3} {:>8} {:>6} {:>12} {:>9} result",
            "N", "lambda", "delta", "max_error", "tol"
        ),
    )?;
    let mut all_pass = true;
    for ensemble in panel {
        match kernel_max_error(ensemble, cfg.t_max, cfg.dt) {
            Ok(err) => {
                let pass = err < cfg.tolerance;
                all_pass &= pass;
                write(
                    log,
                    format!(
                        "{:>3} {:>8} {:>6} {:>12.3e} {:>9.1e} {}",
                        ensemble.n_qubits,
                        ensemble.spectral_width,
                        ensemble.detuning,
                        err,
                        cfg.tolerance,
                        if pass { "PASS" } else { "FAIL" }
                    ),
                )?;
            }
            Err(e) => {
                all_pass = false;
                write(
                    log,
                    format!(
                        "{:>3} {:>8} {:>6} {:>12} {:>9.1e} FAIL ({e})",
                        ensemble.n_qubits,
                        ensemble.spectral_width,
                        ensemble.detuning,
                        "-",
                        cfg.tolerance
                    ),
                )?;
            }
        }
    }
    write(
        log,
        if all_pass {
            "verify: all configurations PASS".to_string()
        } else {
            "verify: FAIL".to_string()
        },
    )?;
    Ok(if all_pass { 0 } else { 1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::config::parse_config;

    #[test]
    fn verify_small_panel_passes() {
        let mut cfg = RunConfig::defaults(Command::Verify);
        cfg.t_max = 5.0;
        let panel = vec![
            EnsembleConfig::new(1, 1.0, 5.0, 0.0).unwrap(),
            EnsembleConfig::new(3, 1.0, 0.01, 1.0).unwrap(),
        ];
        let mut out = Vec::new();
        let code = run_verify_panel(&cfg, &panel, &mut out).unwrap();
        assert_eq!(code, 0);
        let text = String::from_utf8(out).unwrap();
        assert_eq!(text.matches("PASS").count(), 3);
    }

    #[test]
    fn verify_reports_step_too_large() {
        let mut cfg = RunConfig::defaults(Command::Verify);
        cfg.dt = 0.5;
        let panel = vec![EnsembleConfig::new(1, 1.0, 5.0, 0.0).unwrap()];
        let mut out = Vec::new();
        let code = run_verify_panel(&cfg, &panel, &mut out).unwrap();
        assert_eq!(code, 1);
        let text = String::from_utf8(out).unwrap();
        assert!(text.contains("step too large"));
    }

    #[test]
    fn verify_rejects_empty_panel() {
        let cfg = RunConfig::defaults(Command::Verify);
        let mut out = Vec::new();
        assert!(run_verify_panel(&cfg, &[], &mut out).is_err());
    }

    #[test]
    fn bloch_single_output() {
        let dir = std::env::temp_dir().join("qsync_cli_bloch_test");
        std::fs::create_dir_all(&dir).unwrap();
        let text = format!(
            "command = bloch\ntime_points = 11\nt_max = 10\noutput = {}",
            dir.join("traj").display()
        );
        let cfg = parse_config(&text, Command::Bloch).unwrap();
        let mut log = Vec::new();
        assert_eq!(execute(&cfg, &mut log).unwrap(), 0);
        let data = std::fs::read_to_string(dir.join("traj.csv")).unwrap();
        let rows: Vec<&str> = data.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(rows[0], "t,nx,ny,nz");
        assert_eq!(rows.len(), 12);
    }
}
