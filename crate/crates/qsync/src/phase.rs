//! Phase-space observables: the Husimi Q-function over the sphere, the
//! synchronization measure S(phi, t), and its maximum over phase.
//!
//! The theta quadrature absorbs the sin(theta) surface element exactly into
//! hat-function weights, so the constant part of any state integrates to one
//! with no discretization error.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qubit::{DensityMatrix, InitialCondition};

/// Budget for |closed form - quadrature| in the self-check mode.
pub const QUADRATURE_TOL: f64 = 1e-5;

/// Quadrature grid over the sphere: theta in [0, pi], phi in [-pi, pi).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SphereGrid {
    thetas: Vec<f64>,
    phis: Vec<f64>,
    /// Per-node weights for integrals of the form int f(theta) sin(theta)
    /// dtheta; they sum to 2 exactly up to roundoff.
    theta_weights: Vec<f64>,
    /// Uniform phi weight, 2 pi / n_phi.
    phi_weight: f64,
}

impl SphereGrid {
    /// Grid with `n_theta` nodes in theta and `n_phi` periodic nodes in phi.
    pub fn new(n_theta: usize, n_phi: usize) -> Result<Self> {
        if n_theta < 3 || n_phi < 4 {
            return Err(Error::Config(format!(
                "sphere grid too coarse: {n_theta} x {n_phi}"
            )));
        }
        let step = PI / (n_theta - 1) as f64;
        let thetas: Vec<f64> = (0..n_theta).map(|k| k as f64 * step).collect();
        // Hat-function weights with sin(theta) folded in:
        //   right(k) = int_{t_k}^{t_{k+1}} sin(t) (t_{k+1} - t)/step dt
        //   left(k)  = int_{t_{k-1}}^{t_k} sin(t) (t - t_{k-1})/step dt
        let right = |k: usize| {
            thetas[k].cos() - (thetas[k + 1].sin() - thetas[k].sin()) / step
        };
        let left = |k: usize| {
            -thetas[k].cos() + (thetas[k].sin() - thetas[k - 1].sin()) / step
        };
        let theta_weights: Vec<f64> = (0..n_theta)
            .map(|k| {
                let mut w = 0.0;
                if k + 1 < n_theta {
                    w += right(k);
                }
                if k > 0 {
                    w += left(k);
                }
                w
            })
            .collect();
        let phis: Vec<f64> = (0..n_phi)
            .map(|j| -PI + 2.0 * PI * j as f64 / n_phi as f64)
            .collect();
        Ok(SphereGrid {
            thetas,
            phis,
            theta_weights,
            phi_weight: 2.0 * PI / n_phi as f64,
        })
    }

    /// 181 x 360, enough to resolve the figure-scale structure and meet the
    /// normalization budget.
    pub fn default_grid() -> Self {
        Self::new(181, 360).expect("default grid dimensions are valid")
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    pub fn phis(&self) -> &[f64] {
        &self.phis
    }

    pub fn theta_weights(&self) -> &[f64] {
        &self.theta_weights
    }

    pub fn phi_weight(&self) -> f64 {
        self.phi_weight
    }
}

/// Husimi Q-function sampled on a sphere grid, row-major with theta as the
/// row index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QSurface {
    pub grid: SphereGrid,
    pub values: Vec<f64>,
}

impl QSurface {
    pub fn value(&self, theta_idx: usize, phi_idx: usize) -> f64 {
        self.values[theta_idx * self.grid.phis.len() + phi_idx]
    }

    /// Integral over the sphere; one for any valid state.
    pub fn integral(&self) -> f64 {
        let n_phi = self.grid.phis.len();
        let mut total = 0.0;
        for (i, wt) in self.grid.theta_weights.iter().enumerate() {
            let row_sum: f64 = self.values[i * n_phi..(i + 1) * n_phi].iter().sum();
            total += wt * row_sum;
        }
        total * self.grid.phi_weight
    }
}

/// Pointwise Husimi Q-function,
/// (1/2pi)[rho11 cos^2(t/2) + rho00 sin^2(t/2) + sin(t) Re(rho10 e^{i phi})].
/// The conjugate pair in the coherence term is combined symmetrically, so no
/// imaginary residue ever appears.
pub fn husimi_q(dm: &DensityMatrix, theta: f64, phi: f64) -> f64 {
    let half = theta / 2.0;
    let cos2 = half.cos().powi(2);
    let sin2 = half.sin().powi(2);
    let coherence = (dm.rho10 * Complex64::new(0.0, phi).exp()).re;
    (dm.rho11 * cos2 + dm.rho00() * sin2 + theta.sin() * coherence) / (2.0 * PI)
}

/// Evaluate the Husimi function on a full grid.
pub fn q_surface(dm: &DensityMatrix, grid: &SphereGrid) -> QSurface {
    let mut values = Vec::with_capacity(grid.thetas.len() * grid.phis.len());
    for &theta in &grid.thetas {
        for &phi in &grid.phis {
            values.push(husimi_q(dm, theta, phi));
        }
    }
    QSurface {
        grid: grid.clone(),
        values,
    }
}

/// Closed-form synchronization measure S(phi, t) = Re(rho10(t) e^{i phi})/4
/// with rho10(t) = rho10(0) h(t). For the equatorial initial condition this
/// is |h| cos(phi + arg h)/8.
pub fn sync_measure_closed(init: &InitialCondition, h: Complex64, phi: f64) -> f64 {
    let rho10 = init.coherence * h;
    0.25 * (rho10 * Complex64::new(0.0, phi).exp()).re
}

/// Quadrature evaluation of the synchronization measure at one grid phi:
/// the theta-marginal of Q minus the uniform background 1/2pi.
pub fn sync_measure_quadrature(qs: &QSurface, phi_idx: usize) -> f64 {
    let n_phi = qs.grid.phis.len();
    let marginal: f64 = qs
        .grid
        .theta_weights
        .iter()
        .enumerate()
        .map(|(i, wt)| wt * qs.values[i * n_phi + phi_idx])
        .sum();
    marginal - 1.0 / (2.0 * PI)
}

/// Maximum of S over phase and the phase at which it is attained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SyncPeak {
    /// Maximum value |rho10(0)| |h| / 4.
    pub s_max: f64,
    /// Arg-max phase in [-pi, pi); 0 when degenerate.
    pub phi_star: f64,
    /// Set when the coherence vanishes and every phase is equivalent.
    pub degenerate: bool,
}

/// Peak of the phase distribution. The phase is extracted with the principal
/// complex argument; the printed arctan(Im/Re) form is off by pi whenever
/// the real part is negative, and the quadrature cross-check selects the
/// principal argument.
pub fn sync_peak(init: &InitialCondition, h: Complex64) -> SyncPeak {
    let rho10 = init.coherence * h;
    let s_max = 0.25 * rho10.norm();
    if s_max == 0.0 {
        return SyncPeak {
            s_max: 0.0,
            phi_star: 0.0,
            degenerate: true,
        };
    }
    // arg in (-pi, pi] maps to -arg in [-pi, pi).
    SyncPeak {
        s_max,
        phi_star: -rho10.arg(),
        degenerate: false,
    }
}

/// S(phi, t) profile over a phi grid, with its peak.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyncProfile {
    pub phis: Vec<f64>,
    pub s_values: Vec<f64>,
    pub peak: SyncPeak,
}

/// Closed-form profile over the phi nodes of a grid.
pub fn sync_profile(init: &InitialCondition, h: Complex64, grid: &SphereGrid) -> SyncProfile {
    let s_values = grid
        .phis
        .iter()
        .map(|&phi| sync_measure_closed(init, h, phi))
        .collect();
    SyncProfile {
        phis: grid.phis.clone(),
        s_values,
        peak: sync_peak(init, h),
    }
}

/// Profile with the quadrature cross-check of every node. Fails with
/// `QuadratureDivergence` if any node disagrees beyond the budget.
pub fn sync_profile_checked(
    init: &InitialCondition,
    h: Complex64,
    grid: &SphereGrid,
) -> Result<SyncProfile> {
    let dm = crate::qubit::density_matrix(init, h)?;
    let qs = q_surface(&dm, grid);
    let profile = sync_profile(init, h, grid);
    for (j, (&phi, &closed)) in profile.phis.iter().zip(&profile.s_values).enumerate() {
        let quadrature = sync_measure_quadrature(&qs, j);
        if (closed - quadrature).abs() > QUADRATURE_TOL {
            return Err(Error::QuadratureDivergence {
                phi,
                closed,
                quadrature,
            });
        }
    }
    Ok(profile)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qubit::density_matrix;

    #[test]
    fn grid_weights_sum_to_two() {
        for (nt, np) in [(181, 360), (51, 64), (1001, 17)] {
            let g = SphereGrid::new(nt, np).unwrap();
            let sum: f64 = g.theta_weights().iter().sum();
            assert!((sum - 2.0).abs() < 1e-13);
        }
    }

    #[test]
    fn mixed_state_is_isotropic_and_normalized() {
        let dm = DensityMatrix::maximally_mixed();
        let grid = SphereGrid::default_grid();
        let qs = q_surface(&dm, &grid);
        let expected = 1.0 / (4.0 * PI);
        for v in &qs.values {
            assert!((v - expected).abs() < 1e-15);
        }
        assert!((qs.integral() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn equatorial_peak_location_and_value() {
        let dm = density_matrix(&InitialCondition::equatorial(), Complex64::from(1.0)).unwrap();
        // Q = (1 + sin(theta) cos(phi)) / 4pi here, so the global maximum
        // sits at (pi/2, 0) with value 1/2pi.
        let peak = husimi_q(&dm, PI / 2.0, 0.0);
        assert!((peak - 1.0 / (2.0 * PI)).abs() < 1e-15);
        let grid = SphereGrid::default_grid();
        let qs = q_surface(&dm, &grid);
        let (argmax, _) = qs
            .values
            .iter()
            .enumerate()
            .fold((0, f64::MIN), |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc });
        let ti = argmax / grid.phis().len();
        let pj = argmax % grid.phis().len();
        assert!((grid.thetas()[ti] - PI / 2.0).abs() < 0.02);
        assert!(grid.phis()[pj].abs() < 0.02);
    }

    #[test]
    fn ground_state_has_no_phi_structure() {
        let dm = DensityMatrix::ground();
        for &theta in &[0.3, 1.2, 2.9] {
            let q0 = husimi_q(&dm, theta, 0.0);
            assert!((q0 - (theta / 2.0).sin().powi(2) / (2.0 * PI)).abs() < 1e-15);
            for &phi in &[-2.0, 0.5, 3.0] {
                assert!((husimi_q(&dm, theta, phi) - q0).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn closed_form_examples() {
        let init = InitialCondition::equatorial();
        let one = Complex64::from(1.0);
        assert!((sync_measure_closed(&init, one, 0.0) - 0.125).abs() < 1e-15);
        assert!((sync_measure_closed(&init, one, PI) + 0.125).abs() < 1e-15);
        // Steady-state plateau for N = 3: S(0) = 1/12.
        let h = Complex64::from(2.0 / 3.0);
        assert!((sync_measure_closed(&init, h, 0.0) - 1.0 / 12.0).abs() < 1e-15);
    }

    #[test]
    fn quadrature_matches_closed_form() {
        let init = InitialCondition::equatorial();
        let grid = SphereGrid::default_grid();
        let profile =
            sync_profile_checked(&init, Complex64::from(1.0), &grid).expect("self-check passes");
        for (j, &phi) in profile.phis.iter().enumerate() {
            assert!((profile.s_values[j] - 0.125 * phi.cos()).abs() < 1e-6);
        }
    }

    #[test]
    fn quadrature_vanishes_for_isotropic_states() {
        let grid = SphereGrid::default_grid();
        let qs = q_surface(&DensityMatrix::maximally_mixed(), &grid);
        for j in 0..grid.phis().len() {
            assert!(sync_measure_quadrature(&qs, j).abs() < 1e-8);
        }
        let qs = q_surface(&DensityMatrix::ground(), &grid);
        for j in 0..grid.phis().len() {
            assert!(sync_measure_quadrature(&qs, j).abs() < 1e-8);
        }
    }

    #[test]
    fn peak_values_and_degeneracy() {
        let init = InitialCondition::equatorial();
        let p = sync_peak(&init, Complex64::from(1.0));
        assert_eq!((p.s_max, p.phi_star, p.degenerate), (0.125, 0.0, false));
        let p = sync_peak(&init, Complex64::from(0.0));
        assert!(p.degenerate);
        assert_eq!((p.s_max, p.phi_star), (0.0, 0.0));
    }

    #[test]
    fn negative_real_part_phase_still_cross_checks() {
        // Principal-argument regime where the literal arctan form is off by
        // pi: Re(h) < 0.
        let init = InitialCondition::equatorial();
        let h = Complex64::new(-0.6, 0.3);
        let grid = SphereGrid::default_grid();
        let profile = sync_profile_checked(&init, h, &grid).expect("cross-check selects arg");
        let peak = profile.peak;
        // The grid arg-max must agree with phi_star to half a grid step.
        let (jmax, _) = profile
            .s_values
            .iter()
            .enumerate()
            .fold((0, f64::MIN), |acc, (j, &v)| if v > acc.1 { (j, v) } else { acc });
        let step = 2.0 * PI / grid.phis().len() as f64;
        assert!((profile.phis[jmax] - peak.phi_star).abs() <= step);
        assert!((profile.s_values[jmax] - peak.s_max).abs() <= peak.s_max * step * step);
    }
}
