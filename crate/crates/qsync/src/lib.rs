//! Exact dynamics and synchronization observables for N qubits collectively
//! coupled to a common Lorentzian reservoir.
//!
//! The library evaluates the closed-form decay function governing the
//! single-excitation dynamics, builds the monitored qubit's reduced density
//! matrix and Bloch vector from it, computes phase-space observables (Husimi
//! Q-function, synchronization measure, tongue maps), and cross-validates
//! the closed form against two independent brute-force integrators.
//!
//! See the `book/` guide for a narrative walk-through; its code snippets
//! run as doc-tests of this crate.

pub mod cli;
pub mod decay;
pub mod ensemble;
pub mod error;
pub mod io;
pub mod oracle;
pub mod phase;
pub mod qubit;
pub mod sweep;

pub use decay::{amplitudes_general, decay_function, steady_state_h, AmplitudeVector, DecaySample};
pub use ensemble::{DerivedRates, EnsembleConfig, Regime};
pub use error::{Error, Result};
pub use phase::{
    husimi_q, q_surface, sync_measure_closed, sync_measure_quadrature, sync_peak, sync_profile,
    sync_profile_checked, QSurface, SphereGrid, SyncPeak, SyncProfile,
};
pub use qubit::{bloch_vector, density_matrix, trajectory, BlochVector, DensityMatrix,
    InitialCondition};
pub use sweep::{
    husimi_snapshots, time_series_s, tongue_delta_coupling, tongue_delta_lambda, AxisName,
    AxisScale, AxisSpec, SweepResult,
};

// Book chapters double as doc-tests so the guide cannot drift from the API.
#[doc = include_str!("../../../book/src/model.md")]
mod _book_model {}
#[doc = include_str!("../../../book/src/phase-space.md")]
mod _book_phase_space {}
#[doc = include_str!("../../../book/src/sweeps.md")]
mod _book_sweeps {}
#[doc = include_str!("../../../book/src/oracles.md")]
mod _book_oracles {}
