//! Property-based tests of structural invariants that should hold for any
//! input, not just the hand-picked unit-test values.

use num_complex::Complex64;
use proptest::prelude::*;

use qsync::io::config::{fmt_f64, parse_config, Command, RunConfig};
use qsync::{
    amplitudes_general, bloch_vector, decay_function, density_matrix, sync_measure_closed,
    sync_peak, AmplitudeVector, AxisName, AxisScale, AxisSpec, EnsembleConfig, InitialCondition,
};

fn arb_config() -> impl Strategy<Value = EnsembleConfig> {
    (1u32..=12, -2.0..1.0f64, -3.0..1.0f64, -5.0..5.0f64).prop_map(|(n, lg, ll, delta)| {
        EnsembleConfig::new(n, 10f64.powf(lg), 10f64.powf(ll), delta).unwrap()
    })
}

const PI: f64 = std::f64::consts::PI;

fn arb_init() -> impl Strategy<Value = InitialCondition> {
    (0.0..=1.0f64, 0.0..1.0f64, -PI..PI).prop_map(|(p, frac, arg)| {
        let mag = (p * (1.0 - p)).sqrt() * frac;
        InitialCondition::new(p, Complex64::from_polar(mag, arg)).unwrap()
    })
}

proptest! {
    #[test]
    fn fmt_f64_round_trips_exactly(bits: u64) {
        let x = f64::from_bits(bits);
        prop_assume!(x.is_finite());
        prop_assert_eq!(fmt_f64(x).parse::<f64>().unwrap().to_bits(), x.to_bits());
    }

    #[test]
    fn propagation_stays_physical(cfg in arb_config(), init in arb_init(), t in 0.0..500.0f64) {
        let h = decay_function(&cfg, t).h;
        let dm = density_matrix(&init, h).unwrap();
        prop_assert!((0.0..=1.0 + 1e-9).contains(&dm.rho11));
        prop_assert!(dm.rho10.norm_sqr() <= dm.rho11 * dm.rho00() + 1e-9);
        prop_assert!(dm.purity() <= 1.0 + 1e-9);
        prop_assert!(bloch_vector(&dm).norm() <= 1.0 + 1e-9);
    }

    #[test]
    fn peak_dominates_profile(init in arb_init(), mag in 0.0..1.0f64, arg in -PI..PI) {
        let h = Complex64::from_polar(mag, arg);
        let peak = sync_peak(&init, h);
        for j in 0..256 {
            let phi = -PI + j as f64 * (2.0 * PI / 256.0);
            prop_assert!(sync_measure_closed(&init, h, phi) <= peak.s_max + 1e-12);
        }
        if !peak.degenerate {
            let at_peak = sync_measure_closed(&init, h, peak.phi_star);
            prop_assert!((at_peak - peak.s_max).abs() < 1e-12 * (1.0 + peak.s_max));
        }
    }

    #[test]
    fn axis_nodes_hit_endpoints_monotonically(
        min in -10.0..10.0f64,
        span in 0.1..10.0f64,
        count in 2usize..300,
        log in any::<bool>(),
    ) {
        let (min, scale) = if log {
            (min.abs().max(1e-3), AxisScale::Log)
        } else {
            (min, AxisScale::Linear)
        };
        let axis = AxisSpec::new(AxisName::Delta, min, min + span, count, scale).unwrap();
        let v = axis.values();
        prop_assert_eq!(v.len(), count);
        prop_assert_eq!(v[0], min);
        prop_assert_eq!(v[count - 1], min + span);
        prop_assert!(v.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn amplitude_differences_are_conserved(
        cfg in arb_config(),
        t in 0.0..200.0f64,
        seed_re in proptest::collection::vec(-1.0..1.0f64, 12),
        seed_im in proptest::collection::vec(-1.0..1.0f64, 12),
    ) {
        // Every excited amplitude feels the identical collective shift, so
        // pairwise differences (the decoherence-free content) never move.
        let n = cfg.n_qubits as usize;
        let init = AmplitudeVector {
            ground: Complex64::new(0.0, 0.0),
            excited: (0..n).map(|i| Complex64::new(seed_re[i], seed_im[i])).collect(),
        };
        let out = amplitudes_general(&cfg, &init, t);
        for i in 1..n {
            let before = init.excited[i] - init.excited[0];
            let after = out.excited[i] - out.excited[0];
            prop_assert!((before - after).norm() < 1e-12);
        }
    }

    #[test]
    fn config_echo_round_trips(
        n_list in proptest::collection::vec(1u32..=12, 1..4),
        deltas in proptest::collection::vec(-3.0..3.0f64, 1..4),
        coupling in 0.01..10.0f64,
        lambda in 0.001..10.0f64,
        t_max in 0.1..2000.0f64,
        points in 2usize..5000,
    ) {
        let mut cfg = RunConfig::defaults(Command::Sync);
        cfg.n_qubits = n_list;
        cfg.detuning = deltas;
        cfg.coupling = coupling;
        cfg.spectral_width = lambda;
        cfg.t_max = t_max;
        cfg.time_points = points;
        let back = parse_config(&cfg.echo(), Command::Husimi).unwrap();
        prop_assert_eq!(back, cfg);
    }
}
