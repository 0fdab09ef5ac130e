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

//! Brute-force references shared by the integration tests. Nothing here
//! calls into the crate's scoring or relabeling code.

#![allow(dead_code, clippy::needless_range_loop)]

use blockperm::AdjacencyMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

pub fn dense(m: &AdjacencyMatrix) -> Vec<Vec<f64>> {
    (0..m.size())
        .map(|r| (0..m.size()).map(|c| m.get(r, c)).collect())
        .collect()
}

/// Block sums by enumerating every vector index and reading qubit bits.
pub fn brute_block_sums(x: &[Vec<f64>], qubits: &[usize]) -> Vec<f64> {
    let size = x.len();
    let n = size.trailing_zeros() as usize;
    let mut raw = vec![0.0; 1 << qubits.len()];
    for index in 0..size * size {
        let bits: Vec<usize> = (0..2 * n).map(|q| (index >> (2 * n - 1 - q)) & 1).collect();
        let outcome = qubits.iter().fold(0, |acc, &q| acc * 2 + bits[q]);
        raw[outcome] += x[index / size][index % size];
    }
    raw
}

/// Matrix with rows a, b and columns a, b exchanged.
pub fn brute_swap(x: &[Vec<f64>], a: usize, b: usize) -> Vec<Vec<f64>> {
    let relabel = |i: usize| {
        if i == a {
            b
        } else if i == b {
            a
        } else {
            i
        }
    };
    (0..x.len())
        .map(|r| (0..x.len()).map(|c| x[relabel(r)][relabel(c)]).collect())
        .collect()
}

/// `y[p[r]][p[c]] = x[r][c]`.
pub fn brute_conjugate(x: &[Vec<f64>], p: &[usize]) -> Vec<Vec<f64>> {
    let mut y = vec![vec![0.0; x.len()]; x.len()];
    for r in 0..x.len() {
        for c in 0..x.len() {
            y[p[r]][p[c]] = x[r][c];
        }
    }
    y
}

pub fn brute_fitness(x: &[Vec<f64>], qubits: &[usize], expected: &[f64]) -> f64 {
    let raw = brute_block_sums(x, qubits);
    let total: f64 = raw.iter().sum();
    if total == 0.0 {
        return 0.0;
    }
    raw.iter().zip(expected).map(|(r, e)| r * e).sum::<f64>() / total
}

/// Independent generator so instances are not tied to the crate's RNG.
pub struct TestRng(ChaCha20Rng);

impl TestRng {
    pub fn new(seed: u64) -> Self {
        TestRng(ChaCha20Rng::seed_from_u64(seed))
    }

    pub fn below(&mut self, upper: usize) -> usize {
        self.0.gen_range(0..upper)
    }

    pub fn unit(&mut self) -> f64 {
        self.0.gen()
    }

    pub fn binary_matrix(&mut self, size: usize, density: f64) -> AdjacencyMatrix {
        let mut rows = vec![vec![0.0; size]; size];
        for r in 0..size {
            for c in r + 1..size {
                if self.unit() < density {
                    rows[r][c] = 1.0;
                    rows[c][r] = 1.0;
                }
            }
        }
        AdjacencyMatrix::from_rows(&rows).unwrap()
    }

    pub fn weighted_matrix(&mut self, size: usize) -> AdjacencyMatrix {
        let mut rows = vec![vec![0.0; size]; size];
        for r in 0..size {
            for c in r..size {
                let v = if self.unit() < 0.4 {
                    0.0
                } else {
                    self.unit() * 5.0
                };
                rows[r][c] = v;
                rows[c][r] = v;
            }
        }
        AdjacencyMatrix::from_rows(&rows).unwrap()
    }

    pub fn permutation(&mut self, size: usize) -> Vec<usize> {
        let mut p: Vec<usize> = (0..size).collect();
        for i in (1..size).rev() {
            p.swap(i, self.below(i + 1));
        }
        p
    }

    pub fn group(&mut self, n: usize, k: usize) -> Vec<usize> {
        let mut all: Vec<usize> = (0..2 * n).collect();
        for i in (1..all.len()).rev() {
            all.swap(i, self.below(i + 1));
        }
        all.truncate(k);
        all
    }
}
