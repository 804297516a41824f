//! Physical parameter set and the complex rates derived from it.
//!
//! All rates are dimensionless, expressed in units of the bare relaxation
//! rate, and time always means the product of that rate with physical time.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance used to classify a configuration as sitting on the
/// Markovian/non-Markovian boundary.
pub const BOUNDARY_TOL: f64 = 1e-12;

/// N qubits collectively coupled to a common Lorentzian reservoir.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnsembleConfig {
    /// Total number of qubits sharing the reservoir (monitored qubit plus
    /// auxiliaries).
    pub n_qubits: u32,
    /// Variable coupling-strength parameter, > 0. The default of 1 recovers
    /// the bare spectral density.
    pub coupling: f64,
    /// Lorentzian half-width, > 0. Inverse of the reservoir correlation time.
    pub spectral_width: f64,
    /// Offset of the qubit transition frequency from the Lorentzian center.
    pub detuning: f64,
}

/// Complex rates entering the closed-form amplitude dynamics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedRates {
    /// Memory rate: spectral width minus i times the detuning.
    pub memory_rate: Complex64,
    /// Collective rate: principal square root of
    /// `memory_rate^2 - 2 N coupling spectral_width`. The decay function is
    /// even in this quantity, so the branch choice is immaterial.
    pub collective_rate: Complex64,
}

/// Dynamical character of the reservoir for a given ensemble.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    Markovian,
    NonMarkovian,
    Boundary,
}

impl EnsembleConfig {
    pub fn new(n_qubits: u32, coupling: f64, spectral_width: f64, detuning: f64) -> Result<Self> {
        let cfg = EnsembleConfig {
            n_qubits,
            coupling,
            spectral_width,
            detuning,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_qubits < 1 {
            return Err(Error::Config("n_qubits must be at least 1".into()));
        }
        if !self.coupling.is_finite() || self.coupling <= 0.0 {
            return Err(Error::Config(format!(
                "coupling must be a positive finite number, got {}",
                self.coupling
            )));
        }
        if !self.spectral_width.is_finite() || self.spectral_width <= 0.0 {
            return Err(Error::Config(format!(
                "spectral_width must be a positive finite number, got {}",
                self.spectral_width
            )));
        }
        if !self.detuning.is_finite() {
            return Err(Error::Config(format!(
                "detuning must be finite, got {}",
                self.detuning
            )));
        }
        Ok(())
    }

    /// d = lambda - i Delta and D = sqrt(d^2 - 2 N gamma lambda).
    pub fn rates(&self) -> DerivedRates {
        let d = Complex64::new(self.spectral_width, -self.detuning);
        let disc = d * d - Complex64::from(self.collective_weight());
        // Canonicalize the branch so that a signed zero in the discriminant's
        // imaginary part cannot flip the root: Re D >= 0, and Im D >= 0 on
        // the imaginary axis.
        let mut dd = disc.sqrt();
        if dd.re < 0.0 || (dd.re == 0.0 && dd.im < 0.0) {
            dd = -dd;
        }
        DerivedRates {
            memory_rate: d,
            collective_rate: dd,
        }
    }

    /// 2 N gamma lambda, the collective coupling weight under the square root.
    pub fn collective_weight(&self) -> f64 {
        2.0 * self.n_qubits as f64 * self.coupling * self.spectral_width
    }

    /// Markovian iff lambda > 2 N gamma, non-Markovian iff lambda < 2 N gamma.
    pub fn regime(&self) -> Regime {
        let threshold = 2.0 * self.n_qubits as f64 * self.coupling;
        let diff = self.spectral_width - threshold;
        if diff.abs() <= BOUNDARY_TOL {
            Regime::Boundary
        } else if diff > 0.0 {
            Regime::Markovian
        } else {
            Regime::NonMarkovian
        }
    }
}

impl Default for EnsembleConfig {
    /// The non-Markovian single-qubit baseline used throughout: N = 1,
    /// gamma = 1, lambda = 0.01, Delta = 0.
    fn default() -> Self {
        EnsembleConfig {
            n_qubits: 1,
            coupling: 1.0,
            spectral_width: 0.01,
            detuning: 0.0,
        }
    }
}

impl DerivedRates {
    /// The two characteristic roots (-d +- D)/2 of the amplitude dynamics.
    pub fn roots(&self) -> (Complex64, Complex64) {
        (
            (-self.memory_rate + self.collective_rate) / 2.0,
            (-self.memory_rate - self.collective_rate) / 2.0,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rates_markovian_example() {
        let cfg = EnsembleConfig::new(1, 1.0, 5.0, 0.0).unwrap();
        let r = cfg.rates();
        assert_eq!(r.memory_rate, Complex64::new(5.0, 0.0));
        assert!((r.collective_rate - Complex64::from(15.0_f64.sqrt())).norm() < 1e-12);
    }

    #[test]
    fn rates_oscillatory_example() {
        let cfg = EnsembleConfig::new(1, 1.0, 0.01, 0.0).unwrap();
        let r = cfg.rates();
        assert_eq!(r.memory_rate, Complex64::new(0.01, 0.0));
        // Imaginary collective rate signals the oscillatory regime.
        assert!((r.collective_rate - Complex64::new(0.0, 0.0199_f64.sqrt())).norm() < 1e-12);
        assert!((r.collective_rate.im - 0.14107).abs() < 1e-4);
    }

    #[test]
    fn collective_rate_squares_back() {
        for &(n, g, l, d) in &[(1u32, 1.0, 5.0, 0.0), (4, 0.5, 0.3, -1.7), (12, 3.0, 9.0, 4.2)] {
            let cfg = EnsembleConfig::new(n, g, l, d).unwrap();
            let r = cfg.rates();
            let lhs = r.collective_rate * r.collective_rate;
            let rhs = r.memory_rate * r.memory_rate - Complex64::from(cfg.collective_weight());
            assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm().max(1.0));
        }
    }

    #[test]
    fn degenerate_coupling_limit() {
        // As lambda -> 0 the collective weight vanishes and D -> d.
        let cfg = EnsembleConfig::new(1, 1e-12, 1e-9, 0.5).unwrap();
        let r = cfg.rates();
        assert!((r.collective_rate - r.memory_rate).norm() < 1e-9);
    }

    #[test]
    fn regime_classification() {
        assert_eq!(
            EnsembleConfig::new(1, 1.0, 5.0, 0.0).unwrap().regime(),
            Regime::Markovian
        );
        assert_eq!(
            EnsembleConfig::new(1, 1.0, 0.01, 0.0).unwrap().regime(),
            Regime::NonMarkovian
        );
        assert_eq!(
            EnsembleConfig::new(3, 1.0, 6.0, 0.0).unwrap().regime(),
            Regime::Boundary
        );
    }

    #[test]
    fn invalid_configs_rejected() {
        assert!(EnsembleConfig::new(0, 1.0, 1.0, 0.0).is_err());
        assert!(EnsembleConfig::new(1, 0.0, 1.0, 0.0).is_err());
        assert!(EnsembleConfig::new(1, 1.0, -2.0, 0.0).is_err());
        assert!(EnsembleConfig::new(1, 1.0, 1.0, f64::NAN).is_err());
    }
}
