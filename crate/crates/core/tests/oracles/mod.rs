//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use qrep_core::qsim::{CMatrix, C64};

/// Closed-form success probability of the 3-qubit chain storing `|1>`, with
/// CNOT errors `p01`, `p12` and symmetric readout error `r`.
pub fn chain3_success(p01: f64, p12: f64, r: f64) -> f64 {
    let (a, b) = (p01, p12);
    32.0 / 9.0 * r.powi(3) * a * b - 8.0 / 3.0 * r.powi(3) * a - 8.0 / 3.0 * r.powi(3) * b + 2.0 * r.powi(3)
        - 16.0 / 3.0 * r * r * a * b
        + 4.0 * r * r * a
        + 4.0 * r * r * b
        - 3.0 * r * r
        + 8.0 / 9.0 * r * a * b
        - 2.0 / 3.0 * r * b
        + 4.0 / 9.0 * a * b
        - 2.0 / 3.0 * a
        - 1.0 / 3.0 * b
        + 1.0
}

/// Majority vote over `n` (odd) independent bits each flipped with probability `q`.
pub fn majority_failure(n: usize, q: f64) -> f64 {
    (n / 2 + 1..=n)
        .map(|k| binom(n, k) * q.powi(k as i32) * (1.0 - q).powi((n - k) as i32))
        .sum()
}

fn binom(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Smallest eigenvalue of the real symmetric `[[a, b], [b, d]]`.
pub fn min_eig_2x2(a: f64, b: f64, d: f64) -> f64 {
    let half_tr = 0.5 * (a + d);
    let det = a * d - b * b;
    half_tr - (half_tr * half_tr - det).sqrt()
}

/// `exp(-i H t)` by a Taylor series summed until the terms vanish.
pub fn taylor_propagator(h: &CMatrix, t: f64) -> CMatrix {
    let n = h.nrows();
    let a = h * C64::new(0.0, -t);
    let mut term = CMatrix::identity(n, n);
    let mut sum = term.clone();
    for k in 1..200 {
        term = &term * &a / C64::new(k as f64, 0.0);
        sum += &term;
        if term.iter().all(|z| z.norm() < 1e-18) {
            break;
        }
    }
    sum
}

/// One step `exp(-i dt alpha Z1Z2) exp(-i dt beta (X1 + X2))` written out in
/// closed form. Basis index bit `i` is qubit `i`.
pub fn trotter_step_closed_form(alpha: f64, beta: f64, dt: f64) -> CMatrix {
    let (c, s) = ((beta * dt).cos(), (beta * dt).sin());
    let rx = [
        [C64::new(c, 0.0), C64::new(0.0, -s)],
        [C64::new(0.0, -s), C64::new(c, 0.0)],
    ];
    let x = CMatrix::from_fn(4, 4, |i, j| rx[i & 1][j & 1] * rx[i >> 1][j >> 1]);
    let zz = CMatrix::from_fn(4, 4, |i, j| {
        if i != j {
            return C64::new(0.0, 0.0);
        }
        let parity = if (i.count_ones() % 2) == 0 { 1.0 } else { -1.0 };
        C64::from_polar(1.0, -alpha * dt * parity)
    });
    zz * x
}

/// Readout flips applied by summing over every (true, observed) pair.
pub fn brute_force_readout(probs: &[f64], flips: &[(f64, f64)]) -> Vec<f64> {
    let n = flips.len();
    let mut out = vec![0.0; probs.len()];
    for (x, &p) in probs.iter().enumerate() {
        for (y, o) in out.iter_mut().enumerate() {
            let mut w = p;
            for (q, &(p0, p1)) in flips.iter().enumerate().take(n) {
                let (tb, ob) = ((x >> q) & 1, (y >> q) & 1);
                let flip = if tb == 0 { p0 } else { p1 };
                w *= if tb == ob { 1.0 - flip } else { flip };
            }
            *o += w;
        }
    }
    out
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}
