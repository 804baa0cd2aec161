mod oracles;

use std::f64::consts::PI;

use qrep_core::apps::{
    bloch_scan, h2_one_qubit, h2_two_qubit, heh_circuit, heh_hamiltonian, ising_hamiltonian, ising_trotter_circuit,
    measure_energy, optimal_ry_theta, synthetic_coefficients, sz_trajectory, trotter_reference_sz, Backend,
    IsingConfig, TrotterConfig, UniformNoise, BLOCH_SHOTS,
};
use qrep_core::codes::EncodingLayout;
use qrep_core::qsim::{exact_propagator, CMatrix, Circuit, DensityState, Gate, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_h(rng: &mut ChaCha8Rng) -> [f64; 5] {
    std::array::from_fn(|_| rng.random_range(-1.0..1.0))
}

fn ry(theta: f64) -> Circuit {
    Circuit::from_gates(1, [Gate::Ry { qubit: 0, theta }]).unwrap()
}

#[test]
fn h2_energy_at_optimum_is_lowest_eigenvalue() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let circ = EncodingLayout::circular(4).unwrap();
    for _ in 0..50 {
        let c = random_h(&mut rng);
        let h = h2_one_qubit(c).unwrap();
        let (ci, cz, cx) = (c[0] - c[3], c[2] - c[1], c[4]);
        let want = oracles::min_eig_2x2(ci + cz, cx, ci - cz);
        let (theta, e_star) = optimal_ry_theta(&h).unwrap();
        assert!((e_star - want).abs() < 1e-10);
        for layout in [None, Some(&circ)] {
            let e = measure_energy(&ry(theta), &h, layout, &UniformNoise::noiseless(), Backend::Exact, 0).unwrap();
            assert!((e.energy - want).abs() < 1e-10);
        }
        // no grid angle does better
        for k in 0..720 {
            let t = 2.0 * PI * k as f64 / 720.0;
            assert!(ci + cz * t.cos() + cx * t.sin() >= want - 1e-12);
        }
    }
}

#[test]
fn reduced_h2_spectrum_lies_in_two_qubit_spectrum() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..20 {
        let c = random_h(&mut rng);
        let full = h2_two_qubit(c).unwrap().to_matrix().unwrap();
        let big: Vec<f64> = full.map(|z| z.re).symmetric_eigenvalues().iter().copied().collect();
        let small = h2_one_qubit(c).unwrap().to_matrix().unwrap();
        for e in small.map(|z| z.re).symmetric_eigenvalues().iter() {
            assert!(big.iter().any(|b| (b - e).abs() < 1e-10), "{e} not in {big:?}");
        }
    }
}

#[test]
fn trotter_circuit_matches_closed_form_product() {
    for (alpha, beta, t) in [(1.0, 1.0, 2.0), (0.3, -0.8, 1.3), (2.0, 0.5, 3.0)] {
        let cfg = TrotterConfig { alpha, beta, t, n: 5 };
        let got = ising_trotter_circuit(&cfg).unwrap().unitary().unwrap();
        let step = oracles::trotter_step_closed_form(alpha, beta, t / 5.0);
        let mut want = CMatrix::identity(4, 4);
        for _ in 0..5 {
            want = &step * want;
        }
        assert!((got - want).camax() < 1e-10);
    }
}

#[test]
fn trotter_error_shrinks_with_steps() {
    let h = ising_hamiltonian(1.0, 1.0).unwrap().to_matrix().unwrap();
    let t = 2.0;
    let u = exact_propagator(&h, t).unwrap();
    let exact_sz = (0..4)
        .map(|x: usize| u[(x, 0)].norm_sqr() * (1.0 - x.count_ones() as f64))
        .sum::<f64>();
    let errs: Vec<f64> = [2, 4, 8, 16, 32]
        .iter()
        .map(|&n| {
            (trotter_reference_sz(&TrotterConfig {
                alpha: 1.0,
                beta: 1.0,
                t,
                n,
            })
            .unwrap()
                - exact_sz)
                .abs()
        })
        .collect();
    for w in errs.windows(2) {
        assert!(w[1] < w[0], "{errs:?}");
    }
    assert!(errs[4] < 5e-3);
}

fn u3(theta: f64, phi: f64, lambda: f64) -> [[C64; 2]; 2] {
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    [
        [C64::new(c, 0.0), -C64::from_polar(s, lambda)],
        [C64::from_polar(s, phi), C64::from_polar(c, phi + lambda)],
    ]
}

fn kron(q0: [[C64; 2]; 2], q1: [[C64; 2]; 2]) -> CMatrix {
    CMatrix::from_fn(4, 4, |i, j| q0[i & 1][j & 1] * q1[i >> 1][j >> 1])
}

#[test]
fn heh_circuit_matches_matrix_product() {
    let (a, b, c) = (0.1, -0.2, 0.3);
    let cnot = CMatrix::from_fn(4, 4, |i, j| {
        let flipped = if i & 1 == 1 { i ^ 2 } else { i };
        C64::new(if flipped == j { 1.0 } else { 0.0 }, 0.0)
    });
    let l1 = kron(
        u3(PI / 2.0 - 2.0 * a, -PI / 2.0, PI),
        u3(PI / 2.0, 2.0 * b - PI / 2.0, PI / 2.0),
    );
    let l2 = kron(u3(c, 0.0, -PI / 2.0), u3(0.0, 0.0, c));
    let l3 = kron(u3(PI / 2.0, 0.0, PI), u3(PI / 2.0, PI / 2.0, -PI / 2.0));
    let want = &l3 * &cnot * &l2 * &cnot * &l1;
    let got = heh_circuit(a, b, c).unwrap().unitary().unwrap();
    assert!((got - want).camax() < 1e-12);
}

#[test]
fn heh_energy_matches_density_matrix() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let layout = EncodingLayout::circular(4).unwrap();
    for _ in 0..10 {
        let c: [f64; 9] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
        let (a, b, cc) = (
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        );
        let h = heh_hamiltonian(c).unwrap();
        let circ = heh_circuit(a, b, cc).unwrap();
        let mut rho = DensityState::zero(2).unwrap();
        rho.run(&circ, None).unwrap();
        let want = rho.expectation(&h).unwrap();
        for l in [None, Some(&layout)] {
            let e = measure_energy(&circ, &h, l, &UniformNoise::noiseless(), Backend::Exact, 0).unwrap();
            assert!((e.energy - want).abs() < 1e-10);
        }
    }
}

#[test]
fn noiseless_bloch_scan_is_exact() {
    let layout = EncodingLayout::circular(4).unwrap();
    for l in [None, Some(&layout)] {
        for p in bloch_scan(l, &UniformNoise::noiseless(), Backend::Exact, 0).unwrap() {
            assert!((p.value - p.exact).abs() < 1e-12, "{p:?}");
        }
    }
}

#[test]
fn sampled_bloch_scan_is_within_shot_noise() {
    for p in bloch_scan(
        None,
        &UniformNoise::noiseless(),
        Backend::Sampled { shots: BLOCH_SHOTS },
        17,
    )
    .unwrap()
    {
        let sigma = ((1.0 - p.exact * p.exact) / BLOCH_SHOTS as f64).sqrt();
        assert!((p.value - p.exact).abs() <= 4.0 * sigma + 1e-12, "{p:?}");
    }
}

#[test]
fn noiseless_trotter_run_tracks_reference() {
    let layout = EncodingLayout::circular(4).unwrap();
    let cfg = IsingConfig::default();
    let tr = sz_trajectory(&cfg, Some(&layout), &UniformNoise::noiseless(), Backend::Exact, 0).unwrap();
    assert!(tr.mean_abs_deviation() < 1e-10);
}

#[test]
fn circular_encoding_helps_noisy_h2_on_average() {
    let layout = EncodingLayout::circular(4).unwrap();
    let noise = UniformNoise::new(0.005, 0.02, 0.05).unwrap();
    let rows = synthetic_coefficients(8, 5, 1);
    let (mut un, mut en) = (0.0, 0.0);
    for seed in 0..10u64 {
        for row in &rows {
            let h = h2_one_qubit(row.coeffs.clone().try_into().unwrap()).unwrap();
            let (theta, exact) = optimal_ry_theta(&h).unwrap();
            let backend = Backend::Sampled { shots: 8192 };
            un += (measure_energy(&ry(theta), &h, None, &noise, backend, seed)
                .unwrap()
                .energy
                - exact)
                .abs();
            en += (measure_energy(&ry(theta), &h, Some(&layout), &noise, backend, seed)
                .unwrap()
                .energy
                - exact)
                .abs();
        }
    }
    assert!(en < un, "encoded {en} vs unencoded {un}");
}

#[test]
fn circular_encoding_helps_noisy_trotter_on_average() {
    let layout = EncodingLayout::circular(4).unwrap();
    let noise = UniformNoise::new(0.002, 0.02, 0.05).unwrap();
    let cfg = IsingConfig::default();
    let (mut un, mut en) = (0.0, 0.0);
    for seed in 0..10u64 {
        let backend = Backend::Sampled { shots: 4096 };
        un += sz_trajectory(&cfg, None, &noise, backend, seed)
            .unwrap()
            .mean_abs_deviation();
        en += sz_trajectory(&cfg, Some(&layout), &noise, backend, seed)
            .unwrap()
            .mean_abs_deviation();
    }
    assert!(en < un, "encoded {en} vs unencoded {un}");
}
