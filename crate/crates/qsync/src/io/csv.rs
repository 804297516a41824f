//! CSV and JSON serialization. All files open with '#'-prefixed metadata
//! lines (quantity, axes, config echo, tool version, config hash) and print
//! numbers with 17 significant digits, so identical inputs produce byte
//! identical files.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::io::config::RunConfig;
use crate::phase::{QSurface, SyncProfile};
use crate::qubit::BlochVector;
use crate::sweep::SweepResult;

/// 17 significant digits: enough to round-trip any f64.
pub fn fmt_full(x: f64) -> String {
    format!("{x:.16e}")
}

/// FNV-1a hash of the canonical config echo, used as a compact fingerprint
/// in file metadata.
pub fn config_hash(cfg: &RunConfig) -> u64 {
    let mut hash: u64 = 0xcbf29ce484222325;
    for byte in cfg.echo().bytes() {
        hash ^= byte as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    hash
}

fn metadata_header(quantity: &str, cfg: &RunConfig) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# quantity: {quantity}");
    let _ = writeln!(s, "# tool: qsync {}", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(s, "# config_hash: {:016x}", config_hash(cfg));
    for line in cfg.echo().lines() {
        let _ = writeln!(s, "# config: {line}");
    }
    s
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::io(path, e))
}

/// Sweep grid as CSV. One-dimensional sweeps become (x, value) rows; grids
/// become one row per y node with the y coordinate in the first column and
/// the x coordinates echoed in a comment line.
pub fn emit_sweep_csv(result: &SweepResult, cfg: &RunConfig, path: &Path) -> Result<()> {
    if !result.is_finite() {
        return Err(Error::Config("refusing to serialize non-finite sweep".into()));
    }
    let mut s = metadata_header(&result.quantity, cfg);
    let xs = result.x_axis.values();
    match &result.y_axis {
        None => {
            let _ = writeln!(s, "{},{}", result.x_axis.name.as_str(), result.quantity);
            for (x, v) in xs.iter().zip(&result.values) {
                let _ = writeln!(s, "{},{}", fmt_full(*x), fmt_full(*v));
            }
        }
        Some(y_axis) => {
            let _ = writeln!(
                s,
                "# columns: {} then {} per {} node",
                y_axis.name.as_str(),
                result.quantity,
                result.x_axis.name.as_str()
            );
            let _ = writeln!(
                s,
                "# {}: {}",
                result.x_axis.name.as_str(),
                xs.iter().map(|x| fmt_full(*x)).collect::<Vec<_>>().join(",")
            );
            for (j, y) in y_axis.values().iter().enumerate() {
                let row = &result.values[j * xs.len()..(j + 1) * xs.len()];
                let _ = write!(s, "{}", fmt_full(*y));
                for v in row {
                    let _ = write!(s, ",{}", fmt_full(*v));
                }
                let _ = writeln!(s);
            }
        }
    }
    write_file(path, &s)
}

/// Bloch trajectory as CSV with columns (t, nx, ny, nz).
pub fn emit_trajectory_csv(
    times: &[f64],
    points: &[BlochVector],
    cfg: &RunConfig,
    path: &Path,
) -> Result<()> {
    let mut s = metadata_header("bloch_trajectory", cfg);
    let _ = writeln!(s, "t,nx,ny,nz");
    for (t, p) in times.iter().zip(points) {
        let _ = writeln!(
            s,
            "{},{},{},{}",
            fmt_full(*t),
            fmt_full(p.x),
            fmt_full(p.y),
            fmt_full(p.z)
        );
    }
    write_file(path, &s)
}

/// Synchronization profile as CSV with columns (phi, S).
pub fn emit_profile_csv(profile: &SyncProfile, cfg: &RunConfig, path: &Path) -> Result<()> {
    let mut s = metadata_header("sync_profile", cfg);
    let _ = writeln!(s, "# s_max: {}", fmt_full(profile.peak.s_max));
    let _ = writeln!(s, "# phi_star: {}", fmt_full(profile.peak.phi_star));
    let _ = writeln!(s, "phi,S");
    for (phi, v) in profile.phis.iter().zip(&profile.s_values) {
        let _ = writeln!(s, "{},{}", fmt_full(*phi), fmt_full(*v));
    }
    write_file(path, &s)
}

/// Husimi surface as CSV: one row per theta node, the theta coordinate in
/// the first column, phi nodes echoed in a comment line.
pub fn emit_qsurface_csv(qs: &QSurface, cfg: &RunConfig, path: &Path) -> Result<()> {
    let mut s = metadata_header("husimi_q", cfg);
    let _ = writeln!(
        s,
        "# phi: {}",
        qs.grid
            .phis()
            .iter()
            .map(|x| fmt_full(*x))
            .collect::<Vec<_>>()
            .join(",")
    );
    let n_phi = qs.grid.phis().len();
    for (i, theta) in qs.grid.thetas().iter().enumerate() {
        let _ = write!(s, "{}", fmt_full(*theta));
        for v in &qs.values[i * n_phi..(i + 1) * n_phi] {
            let _ = write!(s, ",{}", fmt_full(*v));
        }
        let _ = writeln!(s);
    }
    write_file(path, &s)
}

/// Any serializable result as pretty JSON.
pub fn emit_json<T: Serialize>(value: &T, path: &Path) -> Result<()> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| Error::Config(format!("json serialization failed: {e}")))?;
    write_file(path, &(text + "\n"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::config::{parse_config, Command};
    use crate::sweep::{time_series_s, tongue_delta_lambda, AxisName, AxisSpec};

    #[test]
    fn sweep_csv_shape() {
        let cfg = parse_config("", Command::TongueLambda).unwrap();
        let base = cfg.ensemble(1, 0.0).unwrap();
        let d = AxisSpec::linear(AxisName::Delta, -1.0, 1.0, 2).unwrap();
        let l = AxisSpec::linear(AxisName::Lambda, 0.01, 0.1, 2).unwrap();
        let r = tongue_delta_lambda(&base, d, l, 1000.0).unwrap();
        let dir = std::env::temp_dir().join("qsync_csv_shape_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("grid.csv");
        emit_sweep_csv(&r, &cfg, &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let data: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
        // 2 data rows, each with y coordinate plus 2 cells.
        assert_eq!(data.len(), 2);
        assert_eq!(data[0].split(',').count(), 3);
    }

    #[test]
    fn time_series_csv_columns() {
        let cfg = parse_config("", Command::Sync).unwrap();
        let base = cfg.ensemble(1, 0.0).unwrap();
        let times = AxisSpec::linear(AxisName::Time, 0.0, 10.0, 5).unwrap();
        let r = time_series_s(&base, times, 0.0).unwrap();
        let dir = std::env::temp_dir().join("qsync_csv_series_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("series.csv");
        emit_sweep_csv(&r, &cfg, &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let data: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(data[0], "time,sync_measure");
        assert_eq!(data.len(), 6);
        assert_eq!(data[1].split(',').count(), 2);
    }

    #[test]
    fn full_precision_round_trips() {
        let x = 0.1 + 0.2;
        assert_eq!(fmt_full(x).parse::<f64>().unwrap(), x);
    }
}
