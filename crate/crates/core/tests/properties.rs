use disclination_qm::infoentropy::{entropy_report, DensityConvention, MomentumGrid, BBM_BOUND};
use disclination_qm::spectrum::{energy, energy_alpha_derivative, landau_limit, wavefunction};
use disclination_qm::thermo::{
    entropy_thermo, free_energy, heat_capacity, mean_energy, ThermoInput,
};
use disclination_qm::{PotentialSpec, QuantumNumbers, SystemConfig};
use proptest::prelude::*;

fn potential() -> impl Strategy<Value = PotentialSpec> {
    prop_oneof![
        (0.05..3.0f64, 0.0..3.0f64, -2.0..2.0f64)
            .prop_map(|(a, b, c)| PotentialSpec::Anharmonic { a, b, c }),
        (0.1..3.0f64).prop_map(|omega| PotentialSpec::Harmonic { omega }),
        (0.1..3.0f64, 0.3..3.0f64)
            .prop_map(|(dissociation, r0)| PotentialSpec::Pseudoharmonic { dissociation, r0 }),
        (0.1..3.0f64, 0.3..3.0f64).prop_map(|(dissociation, r0)| {
            PotentialSpec::ShiftedPseudoharmonic { dissociation, r0 }
        }),
        (0.0..3.0f64).prop_map(|b| PotentialSpec::InverseSquare { b }),
    ]
}

fn config() -> impl Strategy<Value = SystemConfig> {
    (0.2..=1.0f64, 0.1..4.0f64, -2.0..2.0f64)
        .prop_map(|(alpha, b, phi)| SystemConfig::natural(alpha, b, phi).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn levels_are_evenly_spaced(cfg in config(), pot in potential(), ell in -3..=3i32) {
        let e: Vec<f64> = (0..5)
            .map(|n| energy(&cfg, &pot, QuantumNumbers::new(n, ell)).unwrap().energy)
            .collect();
        let gap = e[1] - e[0];
        prop_assert!(gap > 0.0);
        for w in e.windows(2) {
            prop_assert!(((w[1] - w[0]) - gap).abs() <= 1e-10 * (1.0 + gap));
        }
    }

    #[test]
    fn energy_depends_on_ell_minus_phi(cfg in config(), pot in potential(), ell in -3..=3i32, n in 0..4u32) {
        let shifted = SystemConfig { phi: cfg.phi + 1.0, ..cfg };
        let a = energy(&cfg, &pot, QuantumNumbers::new(n, ell)).unwrap().energy;
        let b = energy(&shifted, &pot, QuantumNumbers::new(n, ell + 1)).unwrap().energy;
        prop_assert!((a - b).abs() <= 1e-10 * (1.0 + a.abs()));
    }

    #[test]
    fn ground_level_sits_above_the_constant(cfg in config(), pot in potential(), ell in -3..=3i32) {
        let e = energy(&cfg, &pot, QuantumNumbers::new(0, ell)).unwrap().energy;
        let c = pot.coefficients(cfg.mass).c;
        prop_assert!(e > c);
    }

    #[test]
    fn thermo_identities(cfg in config(), pot in potential(), ell in -2..=2i32, x in 0.01..30.0f64) {
        let base = ThermoInput::new(1.0, cfg, pot, ell);
        let omega0 = base.params().unwrap().omega0;
        let t = base.with_beta(x / omega0);
        let s = entropy_thermo(&t).unwrap();
        let u = mean_energy(&t).unwrap();
        let f = free_energy(&t).unwrap();
        prop_assert!(s >= 0.0);
        prop_assert!(u >= f - 1e-12 * f.abs());
        let c = heat_capacity(&t).unwrap();
        prop_assert!((0.0..=1.0 + 1e-12).contains(&c));
        prop_assert!((s - t.beta * (u - f)).abs() <= 1e-9 * (1.0 + s));
    }

    #[test]
    fn flat_limit_is_approached_monotonically(b in 0.1..3.0f64, phi in -1.0..1.0f64, pot in potential(), ell in -2..=2i32, n in 0..3u32) {
        let qn = QuantumNumbers::new(n, ell);
        let flat = landau_limit(&pot, qn, b, phi).unwrap().energy;
        let e = |alpha: f64| energy(&SystemConfig::natural(alpha, b, phi).unwrap(), &pot, qn).unwrap().energy;
        let gaps: Vec<f64> = [0.9, 0.99, 0.999].iter().map(|&a| (e(a) - flat).abs()).collect();
        prop_assert!(gaps[0] >= gaps[1] && gaps[1] >= gaps[2]);
        let slope = energy_alpha_derivative(&SystemConfig::natural(1.0, b, phi).unwrap(), &pot, qn).unwrap();
        let predicted = -1e-3 * slope;
        let actual = e(0.999) - flat;
        if predicted.abs() > 1e-9 {
            let ratio = actual / predicted;
            prop_assert!((0.5..=2.0).contains(&ratio), "ratio {ratio}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn uncertainty_bound_holds(
        alpha in 0.25..=1.0f64,
        b in 0.2..3.0f64,
        phi in -1.0..1.0f64,
        pot in potential(),
        ell in -2..=2i32,
        n in 0..3u32,
    ) {
        let cfg = SystemConfig::natural(alpha, b, phi).unwrap();
        let st = wavefunction(&cfg, &pot, QuantumNumbers::new(n, ell)).unwrap();
        let r = entropy_report(&st, DensityConvention::STANDARD, MomentumGrid::default(), 1e-8).unwrap();
        prop_assert!(r.total >= BBM_BOUND - 1e-6, "{r:?}");
        prop_assert!((r.momentum_normalization - 1.0).abs() < 1e-8);
    }
}
