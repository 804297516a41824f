use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qsync::cli::execute;
use qsync::io::config::{parse_axis, Command as RunCommand, OutputFormat, RunConfig};
use qsync::io::load_config;

/// Synchronization observables of N qubits sharing a Lorentzian reservoir.
#[derive(Parser)]
#[command(name = "qsync", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

/// Flags shared by every subcommand; each mirrors a config-file key and
/// overrides it when given.
#[derive(Args)]
struct CommonArgs {
    /// Key-value config file; flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Qubit numbers, comma separated for a batch.
    #[arg(long, short = 'n', value_delimiter = ',')]
    n_qubits: Vec<u32>,
    /// Coupling-strength parameter gamma (units of gamma_0).
    #[arg(long)]
    coupling: Option<f64>,
    /// Lorentzian spectral width lambda (units of gamma_0).
    #[arg(long, alias = "lambda")]
    spectral_width: Option<f64>,
    /// Detunings Delta, comma separated for a batch.
    #[arg(long, short = 'd', alias = "delta", value_delimiter = ',')]
    detuning: Vec<f64>,
    /// Output path stem; extension is appended per format.
    #[arg(long, short = 'o')]
    output: Option<PathBuf>,
    /// Output format: csv, json, or svg.
    #[arg(long)]
    format: Option<String>,
}

#[derive(Args)]
struct TimeGridArgs {
    /// End of the time grid (gamma_0 t).
    #[arg(long)]
    t_max: Option<f64>,
    /// Number of time-grid points.
    #[arg(long)]
    time_points: Option<usize>,
}

#[derive(Args)]
struct TongueArgs {
    /// x axis as name:min:max:count[:scale].
    #[arg(long)]
    x_axis: Option<String>,
    /// y axis as name:min:max:count[:scale].
    #[arg(long)]
    y_axis: Option<String>,
    /// Snapshot time gamma_0 t at which cells are evaluated.
    #[arg(long)]
    snapshot_time: Option<f64>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Husimi Q-function snapshots over the sphere.
    Husimi {
        #[command(flatten)]
        common: CommonArgs,
        /// Snapshot times, comma separated.
        #[arg(long, value_delimiter = ',')]
        times: Vec<f64>,
        #[arg(long)]
        theta_points: Option<usize>,
        #[arg(long)]
        phi_points: Option<usize>,
    },
    /// Synchronization measure S(phi, t) time series.
    Sync {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        grid: TimeGridArgs,
        /// Phase at which S is sampled.
        #[arg(long)]
        phi: Option<f64>,
    },
    /// Tongue map of S_m over (detuning, coupling).
    TongueGamma {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        tongue: TongueArgs,
    },
    /// Tongue map of S_m over (detuning, spectral width).
    TongueLambda {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        tongue: TongueArgs,
    },
    /// Bloch-vector trajectory of the monitored qubit.
    Bloch {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        grid: TimeGridArgs,
    },
    /// Cross-check the closed form against the kernel oracle panel.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        /// Oracle integration step.
        #[arg(long)]
        dt: Option<f64>,
        /// Pass threshold on the max deviation.
        #[arg(long)]
        tolerance: Option<f64>,
        /// Comparison horizon (gamma_0 t).
        #[arg(long)]
        t_max: Option<f64>,
    },
}

fn base_config(common: &CommonArgs, command: RunCommand) -> qsync::Result<RunConfig> {
    let mut cfg = match &common.config {
        Some(path) => load_config(path, command)?,
        None => RunConfig::defaults(command),
    };
    cfg.command = command;
    if !common.n_qubits.is_empty() {
        cfg.n_qubits = common.n_qubits.clone();
    }
    if let Some(g) = common.coupling {
        cfg.coupling = g;
    }
    if let Some(l) = common.spectral_width {
        cfg.spectral_width = l;
    }
    if !common.detuning.is_empty() {
        cfg.detuning = common.detuning.clone();
    }
    if let Some(o) = &common.output {
        cfg.output = o.clone();
    }
    if let Some(f) = &common.format {
        cfg.format = OutputFormat::parse(f)?;
    }
    Ok(cfg)
}

fn apply_time_grid(cfg: &mut RunConfig, grid: &TimeGridArgs) {
    if let Some(t) = grid.t_max {
        cfg.t_max = t;
    }
    if let Some(p) = grid.time_points {
        cfg.time_points = p;
    }
}

fn apply_tongue(cfg: &mut RunConfig, tongue: &TongueArgs) -> qsync::Result<()> {
    if let Some(x) = &tongue.x_axis {
        cfg.x_axis = Some(parse_axis(x)?);
    }
    if let Some(y) = &tongue.y_axis {
        cfg.y_axis = Some(parse_axis(y)?);
    }
    if let Some(t) = tongue.snapshot_time {
        cfg.snapshot_time = t;
    }
    Ok(())
}

fn build_config(cmd: &Cmd) -> qsync::Result<RunConfig> {
    match cmd {
        Cmd::Husimi {
            common,
            times,
            theta_points,
            phi_points,
        } => {
            let mut cfg = base_config(common, RunCommand::Husimi)?;
            if !times.is_empty() {
                cfg.snapshot_times = times.clone();
            }
            if let Some(t) = theta_points {
                cfg.theta_points = *t;
            }
            if let Some(p) = phi_points {
                cfg.phi_points = *p;
            }
            Ok(cfg)
        }
        Cmd::Sync { common, grid, phi } => {
            let mut cfg = base_config(common, RunCommand::Sync)?;
            apply_time_grid(&mut cfg, grid);
            if let Some(p) = phi {
                cfg.phi = *p;
            }
            Ok(cfg)
        }
        Cmd::TongueGamma { common, tongue } => {
            let mut cfg = base_config(common, RunCommand::TongueGamma)?;
            apply_tongue(&mut cfg, tongue)?;
            Ok(cfg)
        }
        Cmd::TongueLambda { common, tongue } => {
            let mut cfg = base_config(common, RunCommand::TongueLambda)?;
            apply_tongue(&mut cfg, tongue)?;
            Ok(cfg)
        }
        Cmd::Bloch { common, grid } => {
            let mut cfg = base_config(common, RunCommand::Bloch)?;
            apply_time_grid(&mut cfg, grid);
            Ok(cfg)
        }
        Cmd::Verify {
            common,
            dt,
            tolerance,
            t_max,
        } => {
            let mut cfg = base_config(common, RunCommand::Verify)?;
            if let Some(d) = dt {
                cfg.dt = *d;
            }
            if let Some(tol) = tolerance {
                cfg.tolerance = *tol;
            }
            if let Some(t) = t_max {
                cfg.t_max = *t;
            }
            Ok(cfg)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = build_config(&cli.command).and_then(|cfg| {
        let mut stdout = std::io::stdout();
        execute(&cfg, &mut stdout)
    });
    match run {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
