//! Reduced density matrix of the monitored qubit and its Bloch-sphere
//! representation.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::decay::decay_function;
use crate::ensemble::EnsembleConfig;
use crate::error::{Error, Result};

/// Positivity slack allowed before a state is rejected as invalid.
const POSITIVITY_TOL: f64 = 1e-9;

/// Initial data of the monitored qubit: excited population and coherence.
///
/// The single-excitation derivation assumes pure states, for which
/// |coherence|^2 = population (1 - population) at most. Mixed initial data
/// inside that bound is accepted as well; the propagation formula is well
/// defined for it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InitialCondition {
    /// Initial excited population, in [0, 1].
    pub population: f64,
    /// Initial coherence (upper-right density-matrix entry).
    pub coherence: Complex64,
}

impl InitialCondition {
    pub fn new(population: f64, coherence: Complex64) -> Result<Self> {
        if !(0.0..=1.0).contains(&population) {
            return Err(Error::InvalidState(format!(
                "population {population} outside [0, 1]"
            )));
        }
        if coherence.norm_sqr() > population * (1.0 - population) + POSITIVITY_TOL {
            return Err(Error::InvalidState(format!(
                "|coherence|^2 = {} exceeds population bound {}",
                coherence.norm_sqr(),
                population * (1.0 - population)
            )));
        }
        Ok(InitialCondition {
            population,
            coherence,
        })
    }

    /// The equatorial pure state (|0> + |1>)/sqrt(2): population 1/2,
    /// coherence 1/2. This is the initial condition behind every figure
    /// family and the 1/8 prefactor of the synchronization measure.
    pub fn equatorial() -> Self {
        InitialCondition {
            population: 0.5,
            coherence: Complex64::from(0.5),
        }
    }
}

impl Default for InitialCondition {
    fn default() -> Self {
        Self::equatorial()
    }
}

/// 2x2 reduced density matrix in the {excited, ground} basis. Hermiticity
/// and unit trace hold by construction; only the independent entries are
/// stored.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensityMatrix {
    /// Excited population (real, in [0, 1]).
    pub rho11: f64,
    /// Upper-right coherence.
    pub rho10: Complex64,
}

impl DensityMatrix {
    pub fn rho00(&self) -> f64 {
        1.0 - self.rho11
    }

    pub fn rho01(&self) -> Complex64 {
        self.rho10.conj()
    }

    /// The maximally mixed state.
    pub fn maximally_mixed() -> Self {
        DensityMatrix {
            rho11: 0.5,
            rho10: Complex64::new(0.0, 0.0),
        }
    }

    /// The ground state.
    pub fn ground() -> Self {
        DensityMatrix {
            rho11: 0.0,
            rho10: Complex64::new(0.0, 0.0),
        }
    }

    /// Tr(rho^2), in [1/2, 1] for a qubit.
    pub fn purity(&self) -> f64 {
        self.rho11 * self.rho11
            + self.rho00() * self.rho00()
            + 2.0 * self.rho10.norm_sqr()
    }

    fn check(self) -> Result<Self> {
        if !(-POSITIVITY_TOL..=1.0 + POSITIVITY_TOL).contains(&self.rho11) {
            return Err(Error::InvalidState(format!(
                "population {} outside [0, 1]",
                self.rho11
            )));
        }
        if self.rho10.norm_sqr() > self.rho11 * self.rho00() + POSITIVITY_TOL {
            return Err(Error::InvalidState(format!(
                "positivity violated: |rho10|^2 = {} > rho11 rho00 = {}",
                self.rho10.norm_sqr(),
                self.rho11 * self.rho00()
            )));
        }
        Ok(self)
    }
}

/// Real Bloch vector with rho = (I + n . sigma)/2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }
}

/// Propagate the initial data with a decay-function value:
/// rho11(t) = rho11(0) |h|^2, rho10(t) = rho10(0) h.
pub fn density_matrix(init: &InitialCondition, h: Complex64) -> Result<DensityMatrix> {
    DensityMatrix {
        rho11: init.population * h.norm_sqr(),
        rho10: init.coherence * h,
    }
    .check()
}

/// Bloch components of a qubit state. The sign convention fixed here is
/// x = 2 Re(rho10), y = -2 Im(rho10), z = 2 rho11 - 1; any consistent
/// convention reproduces the trajectory geometry.
pub fn bloch_vector(dm: &DensityMatrix) -> BlochVector {
    BlochVector {
        x: 2.0 * dm.rho10.re,
        y: -2.0 * dm.rho10.im,
        z: 2.0 * dm.rho11 - 1.0,
    }
}

/// Bloch trajectory over a strictly increasing time grid starting at 0.
pub fn trajectory(
    cfg: &EnsembleConfig,
    init: &InitialCondition,
    times: &[f64],
) -> Result<Vec<BlochVector>> {
    if times.first() != Some(&0.0) {
        return Err(Error::Config("trajectory times must start at 0".into()));
    }
    if times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Config(
            "trajectory times must be strictly increasing".into(),
        ));
    }
    times
        .iter()
        .map(|&t| {
            let sample = decay_function(cfg, t);
            Ok(bloch_vector(&density_matrix(init, sample.h)?))
        })
        .collect()
}
