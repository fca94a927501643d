//! Randomized invariants. Signals are drawn from the fixture generator with a
//! proptest-chosen seed so every shrunk case is reproducible by seed alone.

mod common;

use common::*;
use nalgebra::DVector;
use proptest::prelude::*;
use tfloc::fixtures::FixtureRng;
use tfloc::operators::{gaussian_window, SingularSpectrum};
use tfloc::*;

/// Power-of-two sizes `2..=2^max_log`.
fn size(min_log: u32, max_log: u32) -> impl Strategy<Value = usize> {
    (min_log..=max_log).prop_map(|k| 1usize << k)
}

fn grid_strategy(max_log: u32) -> impl Strategy<Value = Grid1D> {
    (size(1, max_log), 0.01f64..1.0).prop_map(|(n, dx)| Grid1D::centered(n, dx).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fourier_round_trip(grid in grid_strategy(10), seed in any::<u64>()) {
        let f = noise_signal(&mut FixtureRng::new(seed), &grid);
        let back = inverse_fourier(&fourier(&f)).unwrap();
        prop_assert!(back.grid().approx_eq(&grid));
        prop_assert!(back.max_diff(&f).unwrap() <= 1e-12 * f.max_abs());
    }

    #[test]
    fn parseval(grid in grid_strategy(10), seed in any::<u64>()) {
        let f = noise_signal(&mut FixtureRng::new(seed), &grid);
        let (a, b) = (f.norm(), fourier(&f).norm());
        prop_assert!((a - b).abs() <= 1e-12 * a);
    }

    #[test]
    fn shifts_are_isometries(grid in grid_strategy(9), seed in any::<u64>(), j in -600i64..600, k in -600i64..600) {
        let f = noise_signal(&mut FixtureRng::new(seed), &grid);
        let a = f.norm();
        prop_assert!((translate(&f, j).norm() - a).abs() <= 1e-13 * a);
        prop_assert!((modulate(&f, k).norm() - a).abs() <= 1e-13 * a);
    }

    #[test]
    fn grt_bounded_by_norms(n in size(2, 6), seed in any::<u64>()) {
        let grid = Grid1D::centered(n, 1.0 / (n as f64).sqrt()).unwrap();
        let mut rng = FixtureRng::new(seed);
        let (f, g) = (noise_signal(&mut rng, &grid), noise_signal(&mut rng, &grid));
        let r = grossmann_royer(&f, &g).unwrap();
        prop_assert!(r.max_abs() <= f.norm() * g.norm() * (1.0 + 1e-12));
    }

    #[test]
    fn grt_conjugate_symmetry(n in size(2, 6), seed in any::<u64>()) {
        let grid = Grid1D::centered(n, 1.0 / (n as f64).sqrt()).unwrap();
        let mut rng = FixtureRng::new(seed);
        let (f, g) = (noise_signal(&mut rng, &grid), noise_signal(&mut rng, &grid));
        let a = grossmann_royer(&f, &g).unwrap();
        let b = grossmann_royer(&g, &f).unwrap().conj();
        prop_assert!(a.max_diff(&b).unwrap() <= 1e-12 * f.norm() * g.norm());
    }

    #[test]
    fn mixed_norm_is_homogeneous(
        n in size(2, 5),
        seed in any::<u64>(),
        p in prop_oneof![Just(f64::INFINITY), 1.0f64..6.0],
        q in prop_oneof![Just(f64::INFINITY), 1.0f64..6.0],
        s in -2.0f64..2.0,
        scale in 1e-3f64..1e3,
        phase in 0.0f64..6.3,
    ) {
        let grid = Grid1D::centered(n, 1.0 / (n as f64).sqrt()).unwrap();
        let pg = PhaseGrid::standard(&grid).unwrap();
        let big_f = tfr(pg, noise_vec(&mut FixtureRng::new(seed), n * n));
        let params = MixedNormParams::new(Exponent::new(p).unwrap(), Exponent::new(q).unwrap(), WeightSpec::PolyRadial { s });
        let a = mixed_norm(&big_f, &params).unwrap();
        let b = mixed_norm(&big_f.scaled(cis(phase) * scale), &params).unwrap();
        prop_assert!((b - scale * a).abs() <= 1e-13 * scale * a);
    }

    #[test]
    fn radial_weights_grow_outward(s in 0.0f64..4.0, x in -50.0f64..50.0, w in -50.0f64..50.0, stretch in 1.0f64..10.0) {
        for spec in [WeightSpec::PolyRadial { s }, WeightSpec::ExpFull { s }, WeightSpec::Bd { a: s, r: 1.0, s, b: 0.5 }] {
            let near = weight_eval(&spec, x, w).unwrap();
            let far = weight_eval(&spec, stretch * x, stretch * w).unwrap();
            prop_assert!(far >= near * (1.0 - 1e-15), "{spec:?}");
            prop_assert!(near >= 1.0 - 1e-15);
        }
    }

    #[test]
    fn schatten_norms_decrease_in_p(values in prop::collection::vec(0.0f64..10.0, 1..40), p in 1.0f64..8.0, dp in 0.0f64..8.0) {
        let s = SingularSpectrum::new(values).unwrap();
        let lo = s.schatten(Exponent::new(p).unwrap());
        let hi = s.schatten(Exponent::new(p + dp).unwrap());
        prop_assert!(hi <= lo * (1.0 + 1e-14));
        prop_assert!(s.schatten(Exponent::INF) <= hi * (1.0 + 1e-14));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn nonnegative_symbols_give_positive_operators(n in size(3, 5), seed in any::<u64>()) {
        let grid = Grid1D::centered(n, 1.0 / (n as f64).sqrt()).unwrap();
        let pg = PhaseGrid::standard(&grid).unwrap();
        let mut rng = FixtureRng::new(seed);
        let vals = (0..n * n).map(|_| c(rng.uniform(), 0.0)).collect();
        let a = Symbol2D::new(pg, vals).unwrap();
        let g = gaussian_window(&grid);
        let m = localization_matrix(&a, &g, &g).unwrap();
        prop_assert!(m.hermitian_residual() < 1e-10);
        let scale = m.entries().norm();
        for _ in 0..8 {
            let v = DVector::from_vec(noise_vec(&mut rng, n));
            let rq = v.dotc(&(m.entries() * &v)).re / v.norm_squared();
            prop_assert!(rq > -1e-12 * scale, "{rq}");
        }
    }
}
