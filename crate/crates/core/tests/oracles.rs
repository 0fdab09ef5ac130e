// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Fast paths checked against brute-force references.

mod common;

use blockperm::encoding::{block_distribution, QubitGroup};
use blockperm::fitness::{apply_swap, delta_for_swap, evaluate, ExpectedDistribution};
use blockperm::perm::Permutation;
use blockperm::simulator::{apply_symmetric_permutation, measure_group, prepare};
use common::*;

const TOL: f64 = 1e-12;

fn random_expected(rng: &mut TestRng, k: usize) -> ExpectedDistribution {
    let w: Vec<f64> = (0..1 << k).map(|_| rng.unit()).collect();
    let s: f64 = w.iter().sum();
    ExpectedDistribution::new(w.iter().map(|v| v / s).collect()).unwrap()
}

#[test]
fn block_distribution_matches_enumeration() {
    let mut rng = TestRng::new(1);
    for &size in &[2usize, 4, 8, 16, 32] {
        let n = size.trailing_zeros() as usize;
        for _ in 0..20 {
            let x = rng.weighted_matrix(size);
            let k = 1 + rng.below(2 * n);
            let qubits = rng.group(n, k);
            let g = QubitGroup::new(n as u32, qubits.clone()).unwrap();
            let fast = block_distribution(&x, &g).unwrap();
            let slow = brute_block_sums(&dense(&x), &qubits);
            for (f, s) in fast.raw().iter().zip(&slow) {
                assert!((f - s).abs() < 1e-9, "{qubits:?}");
            }
        }
    }
}

#[test]
fn delta_exhaustive_on_four() {
    let mut rng = TestRng::new(2);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let x = rng.binary_matrix(4, 0.5);
        let qubits = rng.group(2, 2);
        let g = QubitGroup::new(2, qubits.clone()).unwrap();
        let e = random_expected(&mut rng, 2);
        let state = evaluate(&x, &g, &e).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                let d = delta_for_swap(&state, &x, a, b).unwrap();
                let want = brute_fitness(&brute_swap(&dense(&x), a, b), &qubits, e.weights());
                worst = worst.max((d.fitness - want).abs());
            }
        }
    }
    assert!(worst <= TOL, "max error {worst:e}");
}

#[test]
fn delta_random_cases() {
    let mut rng = TestRng::new(3);
    for &size in &[4usize, 8, 16, 32] {
        let n = size.trailing_zeros() as usize;
        for case in 0..500 {
            let x = if case % 2 == 0 {
                rng.binary_matrix(size, 0.3)
            } else {
                rng.weighted_matrix(size)
            };
            let k = 1 + rng.below(2 * n.min(2));
            let qubits = rng.group(n, k);
            let g = QubitGroup::new(n as u32, qubits.clone()).unwrap();
            let e = random_expected(&mut rng, k);
            let state = evaluate(&x, &g, &e).unwrap();
            let (a, b) = (rng.below(size), rng.below(size));
            let d = delta_for_swap(&state, &x, a, b).unwrap();
            let swapped = brute_swap(&dense(&x), a, b);
            let want_raw = brute_block_sums(&swapped, &qubits);
            for (got, want) in d.raw.iter().zip(&want_raw) {
                assert!((got - want).abs() < 1e-9);
            }
            let want = brute_fitness(&swapped, &qubits, e.weights());
            assert!((d.fitness - want).abs() <= TOL, "size {size} case {case}");
        }
    }
}

#[test]
fn applied_swaps_track_full_evaluation() {
    let mut rng = TestRng::new(4);
    let mut x = rng.binary_matrix(16, 0.4);
    let g = QubitGroup::new(4, vec![0, 4]).unwrap();
    let e = ExpectedDistribution::new(vec![0.5, 0.0, 0.0, 0.5]).unwrap();
    let mut state = evaluate(&x, &g, &e).unwrap();
    let mut reference = dense(&x);
    for _ in 0..300 {
        let (a, b) = (rng.below(16), rng.below(16));
        apply_swap(&mut x, &mut state, a, b).unwrap();
        reference = brute_swap(&reference, a, b);
        assert_eq!(dense(&x), reference);
        let want = brute_fitness(&reference, &[0, 4], e.weights());
        assert!((state.fitness() - want).abs() <= TOL);
    }
}

#[test]
fn conjugation_matches_reference() {
    let mut rng = TestRng::new(5);
    for &size in &[4usize, 8, 16] {
        let x = rng.weighted_matrix(size);
        let p = rng.permutation(size);
        let perm = Permutation::from_map(p.clone()).unwrap();
        assert_eq!(
            dense(&x.conjugate(&perm).unwrap()),
            brute_conjugate(&dense(&x), &p)
        );
    }
}

#[test]
fn statevector_path_matches_block_path() {
    let mut rng = TestRng::new(6);
    let mut worst: f64 = 0.0;
    for case in 0..100 {
        let size = [4usize, 8, 16, 32][case % 4];
        let n = size.trailing_zeros() as usize;
        let x = rng.binary_matrix(size, 0.35);
        if x.total_sum() == 0.0 {
            continue;
        }
        let p = rng.permutation(size);
        let k = 1 + rng.below(2 * n);
        let qubits = rng.group(n, k);
        let g = QubitGroup::new(n as u32, qubits.clone()).unwrap();
        let perm = Permutation::from_map(p.clone()).unwrap();

        let state = apply_symmetric_permutation(&prepare(&x).unwrap(), &perm).unwrap();
        let probs = measure_group(&state, &g).unwrap();
        assert!((probs.iter().sum::<f64>() - 1.0).abs() < TOL);

        let conj = brute_conjugate(&dense(&x), &p);
        let raw = brute_block_sums(&conj, &qubits);
        let total: f64 = raw.iter().sum();
        for (pr, r) in probs.iter().zip(&raw) {
            worst = worst.max((pr - r / total).abs());
        }
        let crate_raw = block_distribution(&x.conjugate(&perm).unwrap(), &g).unwrap();
        for (pr, q) in probs.iter().zip(crate_raw.normalized().unwrap()) {
            worst = worst.max((pr - q).abs());
        }
    }
    assert!(worst <= TOL, "max error {worst:e}");
}

#[test]
fn prepared_state_is_normalized() {
    let mut rng = TestRng::new(7);
    for _ in 0..50 {
        let x = rng.weighted_matrix(16);
        if x.total_sum() == 0.0 {
            continue;
        }
        let s = prepare(&x).unwrap();
        assert!((s.norm() - 1.0).abs() < TOL);
    }
}

#[test]
fn swap_moves_match_statevector_relabeling() {
    let mut rng = TestRng::new(8);
    for _ in 0..40 {
        let x = rng.binary_matrix(8, 0.5);
        if x.total_sum() == 0.0 {
            continue;
        }
        let (a, b) = (rng.below(8), rng.below(8));
        let t = blockperm::perm::transposition(a, b, 8).unwrap();
        let via_state = apply_symmetric_permutation(&prepare(&x).unwrap(), &t).unwrap();
        let mut y = x.clone();
        y.swap_symmetric(a, b);
        let direct = prepare(&y).unwrap();
        for (u, v) in via_state.amplitudes().iter().zip(direct.amplitudes()) {
            assert!((u - v).abs() < TOL);
        }
    }
}
