//! Brute-force integrators that validate the closed form from two
//! independent directions: the memory-kernel integro-differential equation
//! reduced to an auxiliary ODE, and direct integration against a discretized
//! Lorentzian mode set.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::decay::AmplitudeVector;
use crate::ensemble::EnsembleConfig;
use crate::error::{Error, Result};

/// Exponential memory kernel f(tau) = amplitude * e^{-rate tau}. The
/// amplitude gamma lambda / 2 is the one consistent with the closed-form
/// decay function; the literal Fourier transform of the spectral density
/// carries an extra factor of pi under the other normalization convention.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MemoryKernel {
    pub amplitude: f64,
    pub rate: Complex64,
}

impl MemoryKernel {
    pub fn from_config(cfg: &EnsembleConfig) -> Self {
        MemoryKernel {
            amplitude: cfg.coupling * cfg.spectral_width / 2.0,
            rate: cfg.rates().memory_rate,
        }
    }
}

/// Discretized reservoir: mode detunings relative to the qubit frequency
/// and real couplings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModeSet {
    pub detunings: Vec<f64>,
    pub couplings: Vec<f64>,
}

impl ModeSet {
    pub fn len(&self) -> usize {
        self.detunings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.detunings.is_empty()
    }

    /// Sum of squared couplings; approaches gamma lambda / 2 as the sampled
    /// span grows.
    pub fn total_weight(&self) -> f64 {
        self.couplings.iter().map(|g| g * g).sum()
    }

    /// Mode spacing of the uniform grid.
    pub fn spacing(&self) -> f64 {
        (self.detunings[self.detunings.len() - 1] - self.detunings[0])
            / (self.detunings.len() - 1) as f64
    }
}

/// Time series produced by an oracle integration.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleRun {
    pub config: EnsembleConfig,
    pub dt: f64,
    pub t_max: f64,
    pub samples: Vec<(f64, AmplitudeVector)>,
    /// Total reservoir population per sample; empty for kernel runs, which
    /// do not resolve individual modes.
    pub reservoir_population: Vec<f64>,
}

impl OracleRun {
    /// Ratio of the first excited amplitude to its initial value, the
    /// quantity the decay function predicts for single-excitation inputs.
    pub fn amplitude_ratios(&self) -> Vec<(f64, Complex64)> {
        let c0 = self.samples[0].1.excited[0];
        self.samples
            .iter()
            .map(|(t, amps)| (*t, amps.excited[0] / c0))
            .collect()
    }
}

/// Uniform Lorentzian mode sample of `count` modes covering the peak at
/// detuning -Delta plus/minus `span`, weighted as g_k^2 = J(omega_k) d_omega
/// with the 1/2pi normalization that integrates to gamma lambda / 2.
pub fn sample_lorentzian_modes(cfg: &EnsembleConfig, count: usize, span: f64) -> Result<ModeSet> {
    if count < 100 {
        return Err(Error::Config(format!(
            "mode count {count} below minimum of 100"
        )));
    }
    if span < 10.0 * cfg.spectral_width {
        return Err(Error::Config(format!(
            "span {span} must be at least 10 spectral widths",
        )));
    }
    let center = -cfg.detuning;
    let spacing = 2.0 * span / (count - 1) as f64;
    let lambda = cfg.spectral_width;
    let scale = cfg.coupling * lambda * lambda / (2.0 * std::f64::consts::PI);
    let mut detunings = Vec::with_capacity(count);
    let mut couplings = Vec::with_capacity(count);
    for k in 0..count {
        let delta_k = center - span + k as f64 * spacing;
        let offset = delta_k - center;
        let j = scale / (offset * offset + lambda * lambda);
        detunings.push(delta_k);
        couplings.push((j * spacing).sqrt());
    }
    Ok(ModeSet {
        detunings,
        couplings,
    })
}

fn check_step(dt: f64, fastest_rate: f64) -> Result<()> {
    if dt * fastest_rate >= 0.1 {
        return Err(Error::StepTooLarge {
            dt,
            limit: 0.1 / fastest_rate,
        });
    }
    Ok(())
}

fn steps_for(t_max: f64, dt: f64) -> usize {
    (t_max / dt).round() as usize
}

/// Integrate the memory-kernel equation through its exact auxiliary
/// reduction: the history integral of a single complex exponential obeys
/// B' = sum_j C_j - rate B with B(0) = 0, and each C_i' = -amplitude B.
/// Classical fixed-step fourth-order integration; `sample_stride` controls
/// how many steps separate stored samples.
pub fn integrate_kernel(
    cfg: &EnsembleConfig,
    init: &AmplitudeVector,
    t_max: f64,
    dt: f64,
    sample_stride: usize,
) -> Result<OracleRun> {
    cfg.validate()?;
    let kernel = MemoryKernel::from_config(cfg);
    let fastest = kernel.rate.norm().max(cfg.collective_weight().sqrt());
    check_step(dt, fastest)?;
    let stride = sample_stride.max(1);
    let n = cfg.n_qubits as usize;
    assert_eq!(init.excited.len(), n, "initial amplitudes must match N");

    // State: sum of excited amplitudes and the auxiliary history variable.
    // Individual amplitudes are recovered from the shared shift, which is
    // exact because every C_i has the identical derivative.
    let sum0: Complex64 = init.excited.iter().sum();
    let mut sum = sum0;
    let mut aux = Complex64::new(0.0, 0.0);
    let rhs = |s: Complex64, b: Complex64| {
        (
            -kernel.amplitude * b * n as f64,
            s - kernel.rate * b,
        )
    };

    let steps = steps_for(t_max, dt);
    let mut samples = Vec::with_capacity(steps / stride + 2);
    let store = |samples: &mut Vec<(f64, AmplitudeVector)>, t: f64, sum_now: Complex64| {
        let shift = (sum0 - sum_now) / n as f64;
        samples.push((
            t,
            AmplitudeVector {
                ground: init.ground,
                excited: init.excited.iter().map(|c| c - shift).collect(),
            },
        ));
    };
    store(&mut samples, 0.0, sum);
    for step in 0..steps {
        let (k1s, k1b) = rhs(sum, aux);
        let (k2s, k2b) = rhs(sum + k1s * (dt / 2.0), aux + k1b * (dt / 2.0));
        let (k3s, k3b) = rhs(sum + k2s * (dt / 2.0), aux + k2b * (dt / 2.0));
        let (k4s, k4b) = rhs(sum + k3s * dt, aux + k3b * dt);
        sum += (k1s + k2s * 2.0 + k3s * 2.0 + k4s) * (dt / 6.0);
        aux += (k1b + k2b * 2.0 + k3b * 2.0 + k4b) * (dt / 6.0);
        if (step + 1) % stride == 0 || step + 1 == steps {
            store(&mut samples, (step + 1) as f64 * dt, sum);
        }
    }
    Ok(OracleRun {
        config: *cfg,
        dt,
        t_max,
        samples,
        reservoir_population: Vec::new(),
    })
}

/// Integrate the qubit-mode amplitude equations directly. Valid only below
/// the recurrence time of the discretized mode set, roughly 2 pi over the
/// mode spacing.
pub fn integrate_modes(
    cfg: &EnsembleConfig,
    modes: &ModeSet,
    init: &AmplitudeVector,
    t_max: f64,
    dt: f64,
    sample_stride: usize,
) -> Result<OracleRun> {
    cfg.validate()?;
    let horizon = 2.0 * std::f64::consts::PI / modes.spacing();
    if t_max >= 0.8 * horizon {
        return Err(Error::RecurrenceHorizonExceeded { t_max, horizon });
    }
    let fastest = modes
        .detunings
        .iter()
        .fold(0.0_f64, |acc, d| acc.max(d.abs()));
    check_step(dt, fastest.max(1.0))?;
    let stride = sample_stride.max(1);
    let n = cfg.n_qubits as usize;
    let m = modes.len();
    assert_eq!(init.excited.len(), n, "initial amplitudes must match N");

    let mut c: Vec<Complex64> = init.excited.clone();
    let mut g: Vec<Complex64> = vec![Complex64::new(0.0, 0.0); m];

    // Mode phases e^{i delta_k t} advanced by rotation per half step, so no
    // exponentials are taken inside the stage loop.
    let mut phase: Vec<Complex64> = vec![Complex64::new(1.0, 0.0); m];
    let half_rot: Vec<Complex64> = modes
        .detunings
        .iter()
        .map(|&d| Complex64::new(0.0, d * dt / 2.0).exp())
        .collect();

    // dC_i = -i sum_k g_k conj(u_k) G_k (identical for every qubit);
    // dG_k = -i g_k u_k sum_i C_i.
    let derivative = |c: &[Complex64],
                      g: &[Complex64],
                      u: &[Complex64],
                      dc: &mut Complex64,
                      dg: &mut Vec<Complex64>| {
        let mut drive = Complex64::new(0.0, 0.0);
        for k in 0..m {
            drive += modes.couplings[k] * u[k].conj() * g[k];
        }
        *dc = Complex64::new(0.0, -1.0) * drive;
        let c_sum: Complex64 = c.iter().sum();
        let pump = Complex64::new(0.0, -1.0) * c_sum;
        for k in 0..m {
            dg[k] = pump * modes.couplings[k] * u[k];
        }
    };

    let steps = steps_for(t_max, dt);
    let mut samples = Vec::with_capacity(steps / stride + 2);
    let mut reservoir = Vec::with_capacity(steps / stride + 2);
    let store = |samples: &mut Vec<(f64, AmplitudeVector)>,
                 reservoir: &mut Vec<f64>,
                 t: f64,
                 c: &[Complex64],
                 g: &[Complex64]| {
        samples.push((
            t,
            AmplitudeVector {
                ground: init.ground,
                excited: c.to_vec(),
            },
        ));
        reservoir.push(g.iter().map(|x| x.norm_sqr()).sum());
    };
    store(&mut samples, &mut reservoir, 0.0, &c, &g);

    let mut u_half = vec![Complex64::new(0.0, 0.0); m];
    let mut u_full = vec![Complex64::new(0.0, 0.0); m];
    let mut dg1 = vec![Complex64::new(0.0, 0.0); m];
    let mut dg2 = vec![Complex64::new(0.0, 0.0); m];
    let mut dg3 = vec![Complex64::new(0.0, 0.0); m];
    let mut dg4 = vec![Complex64::new(0.0, 0.0); m];
    let mut g_tmp = vec![Complex64::new(0.0, 0.0); m];
    let mut dc1 = Complex64::new(0.0, 0.0);
    let mut dc2 = dc1;
    let mut dc3 = dc1;
    let mut dc4 = dc1;
    let mut c_tmp: Vec<Complex64> = vec![Complex64::new(0.0, 0.0); n];

    for step in 0..steps {
        for k in 0..m {
            u_half[k] = phase[k] * half_rot[k];
            u_full[k] = u_half[k] * half_rot[k];
        }
        derivative(&c, &g, &phase, &mut dc1, &mut dg1);

        for i in 0..n {
            c_tmp[i] = c[i] + dc1 * (dt / 2.0);
        }
        for k in 0..m {
            g_tmp[k] = g[k] + dg1[k] * (dt / 2.0);
        }
        derivative(&c_tmp, &g_tmp, &u_half, &mut dc2, &mut dg2);

        for i in 0..n {
            c_tmp[i] = c[i] + dc2 * (dt / 2.0);
        }
        for k in 0..m {
            g_tmp[k] = g[k] + dg2[k] * (dt / 2.0);
        }
        derivative(&c_tmp, &g_tmp, &u_half, &mut dc3, &mut dg3);

        for i in 0..n {
            c_tmp[i] = c[i] + dc3 * dt;
        }
        for k in 0..m {
            g_tmp[k] = g[k] + dg3[k] * dt;
        }
        derivative(&c_tmp, &g_tmp, &u_full, &mut dc4, &mut dg4);

        let dc = (dc1 + dc2 * 2.0 + dc3 * 2.0 + dc4) * (dt / 6.0);
        for ci in c.iter_mut() {
            *ci += dc;
        }
        for k in 0..m {
            g[k] += (dg1[k] + dg2[k] * 2.0 + dg3[k] * 2.0 + dg4[k]) * (dt / 6.0);
        }
        phase.copy_from_slice(&u_full);
        // Keep the rotating phases on the unit circle.
        if (step + 1) % 4096 == 0 {
            for p in phase.iter_mut() {
                *p /= p.norm();
            }
        }
        if (step + 1) % stride == 0 || step + 1 == steps {
            store(
                &mut samples,
                &mut reservoir,
                (step + 1) as f64 * dt,
                &c,
                &g,
            );
        }
    }
    Ok(OracleRun {
        config: *cfg,
        dt,
        t_max,
        samples,
        reservoir_population: reservoir,
    })
}

/// The fixed verification panel: twenty configurations spanning both
/// regimes, every qubit number in {1,2,3,6,8,10}, spectral widths from 0.01
/// to 5, and detunings from 0 to 2.
pub fn standard_panel() -> Vec<EnsembleConfig> {
    const PANEL: [(u32, f64, f64); 20] = [
        (1, 0.01, 0.0),
        (1, 0.01, 2.0),
        (1, 0.1, 0.5),
        (1, 1.0, 1.0),
        (1, 5.0, 0.0),
        (2, 0.01, 0.5),
        (2, 0.1, 0.0),
        (2, 1.0, 2.0),
        (2, 5.0, 1.0),
        (3, 0.01, 1.0),
        (3, 0.1, 2.0),
        (3, 1.0, 0.0),
        (3, 5.0, 0.5),
        (6, 0.01, 0.0),
        (6, 0.1, 1.0),
        (6, 1.0, 0.5),
        (8, 0.01, 2.0),
        (8, 5.0, 2.0),
        (10, 0.1, 0.0),
        (10, 1.0, 1.0),
    ];
    PANEL
        .iter()
        .map(|&(n, lambda, delta)| EnsembleConfig::new(n, 1.0, lambda, delta).unwrap())
        .collect()
}

/// Maximum deviation between the closed-form decay function and the kernel
/// oracle for a single-excitation input.
pub fn kernel_max_error(cfg: &EnsembleConfig, t_max: f64, dt: f64) -> Result<f64> {
    let init = AmplitudeVector::single_excited(
        cfg.n_qubits as usize,
        Complex64::from(1.0 / 2.0_f64.sqrt()),
        Complex64::from(1.0 / 2.0_f64.sqrt()),
    );
    let run = integrate_kernel(cfg, &init, t_max, dt, 1)?;
    let mut max_err = 0.0_f64;
    for (t, ratio) in run.amplitude_ratios() {
        let h = crate::decay::decay_function(cfg, t).h;
        max_err = max_err.max((ratio - h).norm());
    }
    Ok(max_err)
}
