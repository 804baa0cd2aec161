mod oracles;

use proptest::prelude::*;
use qrep_core::analytics::{
    asymmetry_effect, enumerate_logical_error, exact_logical_error, fit_gaussian, sample_band, BandConfig,
    CnotErrorDistribution, EncodedHistogram,
};
use qrep_core::codes::{logical_error_experiment, EncodingLayout};
use qrep_core::qsim::{NoiseModel, ReadoutError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn cnot_noise(layout: &EncodingLayout, rates: &[f64]) -> NoiseModel {
    let mut m = NoiseModel::new();
    for ((a, b), &p) in layout.cnot_pairs().into_iter().zip(rates) {
        m.set_cnot(a, b, p).unwrap();
    }
    m
}

fn uniform(layout: &EncodingLayout, p: f64, r: ReadoutError) -> NoiseModel {
    NoiseModel::uniform(layout.width(), layout.cnot_pairs(), p, r).unwrap()
}

#[test]
fn chain3_matches_closed_form() {
    let layout = EncodingLayout::chain(2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let (p01, p12, r) = (
            rng.random_range(0.0..0.1),
            rng.random_range(0.0..0.1),
            rng.random_range(0.0..0.1),
        );
        let e = enumerate_logical_error(&layout, &cnot_noise(&layout, &[p01, p12]), r, r, 1).unwrap();
        assert!((e.error + oracles::chain3_success(p01, p12, r) - 1.0).abs() < 1e-12);
    }
}

#[test]
fn readout_only_is_a_majority_vote() {
    for layout in [
        EncodingLayout::chain(4).unwrap(),
        EncodingLayout::split(4).unwrap(),
        EncodingLayout::split(6).unwrap(),
    ] {
        for q in [0.01, 0.1, 0.3] {
            let e = enumerate_logical_error(&layout, &cnot_noise(&layout, &[0.0; 16]), q, q, 0).unwrap();
            let want = oracles::majority_failure(layout.n_rep() + 1, q);
            assert!((e.error - want).abs() < 1e-14, "{layout} q={q}: {} vs {want}", e.error);
        }
    }
}

#[test]
fn fast_path_agrees_with_general_path() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for layout in [
        EncodingLayout::chain(4).unwrap(),
        EncodingLayout::split(4).unwrap(),
        EncodingLayout::circular(4).unwrap(),
    ] {
        for state in 0..2 {
            let rates: Vec<f64> = layout
                .cnot_pairs()
                .iter()
                .map(|_| rng.random_range(0.0..0.05))
                .collect();
            let r = ReadoutError::new(rng.random_range(0.0..0.05), rng.random_range(0.0..0.1)).unwrap();
            let mut noise = cnot_noise(&layout, &rates);
            for q in layout.qubits() {
                noise.set_readout(q, r).unwrap();
            }
            let fast = enumerate_logical_error(&layout, &noise, r.p0, r.p1, state).unwrap();
            let slow = exact_logical_error(&layout, &noise, state).unwrap();
            assert!((fast.error - slow.error).abs() < 1e-12);
            assert!((fast.discard - slow.discard).abs() < 1e-12);
            let hist = EncodedHistogram::from_rates(&layout, &rates, state)
                .unwrap()
                .logical_error(r.p0, r.p1);
            assert!((hist.error - slow.error).abs() < 1e-12);
        }
    }
}

#[test]
fn monte_carlo_agrees_with_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let layouts = [
        EncodingLayout::chain(2).unwrap(),
        EncodingLayout::chain(4).unwrap(),
        EncodingLayout::split(4).unwrap(),
        EncodingLayout::circular(4).unwrap(),
    ];
    for (i, layout) in layouts.iter().enumerate() {
        let p = rng.random_range(0.0..0.05);
        let r = ReadoutError::new(rng.random_range(0.0..0.08), rng.random_range(0.0..0.15)).unwrap();
        let noise = uniform(layout, p, r);
        let state = (i % 2) as u8;
        let shots = 200_000;
        let mc = logical_error_experiment(layout, state, &noise, shots, 40 + i as u64).unwrap();
        let ex = exact_logical_error(layout, &noise, state).unwrap();
        let sigma = (ex.error * (1.0 - ex.error) / mc.kept as f64).sqrt();
        assert!(
            (mc.error_rate - ex.error).abs() < 4.0 * sigma,
            "{layout}: {} vs {}",
            mc.error_rate,
            ex.error
        );
    }
}

#[test]
fn two_rep_split_equals_chain_middle() {
    let split = EncodingLayout::split(2).unwrap();
    let middle = EncodingLayout::chain_middle(2).unwrap();
    for p in [0.0, 0.01, 0.04] {
        for r in [0.0, 0.02, 0.1] {
            for s in 0..2 {
                let a = enumerate_logical_error(&split, &uniform(&split, p, ReadoutError::default()), r, r, s).unwrap();
                let b =
                    enumerate_logical_error(&middle, &uniform(&middle, p, ReadoutError::default()), r, r, s).unwrap();
                assert!((a.error - b.error).abs() < 1e-14);
            }
        }
    }
}

#[test]
fn symmetric_readout_gives_symmetric_states() {
    for layout in [
        EncodingLayout::chain(4).unwrap(),
        EncodingLayout::split(4).unwrap(),
        EncodingLayout::circular(4).unwrap(),
    ] {
        for (p, r) in [(0.01, 0.02), (0.03, 0.1), (0.0, 0.05)] {
            let noise = uniform(&layout, p, ReadoutError::default());
            let e0 = enumerate_logical_error(&layout, &noise, r, r, 0).unwrap();
            let e1 = enumerate_logical_error(&layout, &noise, r, r, 1).unwrap();
            assert!((e0.error - e1.error).abs() < 1e-12);
            assert!((e0.discard - e1.discard).abs() < 1e-12);
        }
    }
}

#[test]
fn chain_is_worse_than_split() {
    let chain = EncodingLayout::chain(4).unwrap();
    let split = EncodingLayout::split(4).unwrap();
    for p in [0.005, 0.01, 0.02] {
        for r in [0.0, 0.02, 0.05] {
            let c = enumerate_logical_error(&chain, &uniform(&chain, p, ReadoutError::default()), r, r, 1).unwrap();
            let s = enumerate_logical_error(&split, &uniform(&split, p, ReadoutError::default()), r, r, 1).unwrap();
            assert!(c.error > s.error);
        }
    }
}

#[test]
fn zero_sigma_band_has_zero_width() {
    let layout = EncodingLayout::split(4).unwrap();
    let grid = [0.0, 0.02, 0.05];
    let band = sample_band(
        &layout,
        CnotErrorDistribution::fixed(0.01).unwrap(),
        &grid,
        BandConfig {
            n_samples: 100,
            seed: 1,
        },
    )
    .unwrap();
    for i in 0..grid.len() {
        assert!(band.width(i).abs() < 1e-15);
    }
}

#[test]
fn band_is_deterministic_under_seed() {
    let layout = EncodingLayout::circular(4).unwrap();
    let dist = CnotErrorDistribution::new(0.0139, 0.0066).unwrap();
    let cfg = BandConfig {
        n_samples: 200,
        seed: 9,
    };
    let a = sample_band(&layout, dist, &[0.0, 0.03], cfg).unwrap();
    let b = sample_band(&layout, dist, &[0.0, 0.03], cfg).unwrap();
    assert_eq!(a, b);
}

#[test]
fn asymmetry_effect_is_small_for_typical_rates() {
    let layout = EncodingLayout::split(4).unwrap();
    let dist = CnotErrorDistribution::new(0.01393, 0.0066).unwrap();
    let e = asymmetry_effect(
        &layout,
        0.01,
        0.03,
        dist,
        BandConfig {
            n_samples: 200,
            seed: 2,
        },
    )
    .unwrap();
    assert!(e.max_abs() < 0.001, "{e:?}");
}

#[test]
fn gaussian_fit_ignores_planted_outliers() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let normal = rand_distr::Normal::new(0.0139, 0.0066).unwrap();
    let mut xs: Vec<f64> = (0..5000)
        .map(|_| rng.sample(normal))
        .filter(|x: &f64| *x > 0.0 && *x < 0.04)
        .collect();
    xs.extend([0.045, 0.046]);
    let with = fit_gaussian(&xs, None).unwrap();
    let without = fit_gaussian(&xs, Some(0.04)).unwrap();
    assert_eq!(without.n_rejected, 2);
    assert!(without.sigma < with.sigma);
    assert!((without.mu - 0.0139).abs() < 0.0005);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn logical_error_grows_with_readout(p in 0.0..0.05f64, r in 0.0..0.2f64, dr in 0.001..0.05f64, s in 0u8..2) {
        for layout in [EncodingLayout::chain(4).unwrap(), EncodingLayout::split(4).unwrap(), EncodingLayout::circular(4).unwrap()] {
            let noise = uniform(&layout, p, ReadoutError::default());
            let lo = enumerate_logical_error(&layout, &noise, r, r, s).unwrap();
            let hi = enumerate_logical_error(&layout, &noise, r + dr, r + dr, s).unwrap();
            prop_assert!(hi.error >= lo.error - 1e-15);
        }
    }

    #[test]
    fn probabilities_stay_in_range(p in 0.0..1.0f64, r0 in 0.0..1.0f64, r1 in 0.0..1.0f64, s in 0u8..2) {
        let layout = EncodingLayout::circular(4).unwrap();
        let e = enumerate_logical_error(&layout, &uniform(&layout, p, ReadoutError::default()), r0, r1, s).unwrap();
        prop_assert!((0.0..=1.0).contains(&e.error));
        prop_assert!((0.0..=1.0).contains(&e.discard));
    }
}
