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

//! Block-distribution fitness and its `O(N)` update under a row/column swap.
//!
//! Fitness is `sum_o expected[o] * raw[o] / total`: the inner product of the
//! expected outcome distribution with the measured one.

use crate::encoding::{block_distribution, BlockDistribution, QubitGroup};
use crate::error::{Error, Result};
use crate::graph::AdjacencyMatrix;

/// Tolerance on `sum(weights) == 1`.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct ExpectedDistribution {
    weights: Vec<f64>,
}

impl ExpectedDistribution {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() || !weights.len().is_power_of_two() {
            return Err(Error::invalid(format!(
                "expected distribution length {} is not a power of two",
                weights.len()
            )));
        }
        if let Some(w) = weights.iter().find(|w| !w.is_finite() || **w < 0.0) {
            return Err(Error::invalid(format!("expected weight {w} is negative")));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(Error::invalid(format!(
                "expected weights sum to {sum}, not 1"
            )));
        }
        Ok(ExpectedDistribution { weights })
    }

    /// Parses a comma-separated list such as `0.5,0,0,0.5`.
    pub fn parse(list: &str) -> Result<Self> {
        let weights = list
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::invalid(format!("bad weight {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        ExpectedDistribution::new(weights)
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn max_weight(&self) -> f64 {
        self.weights.iter().cloned().fold(0.0, f64::max)
    }
}

/// Uniform mass on the first `n_blocks` diagonal outcomes of a `k`-qubit
/// group whose first half are row qubits and second half column qubits.
///
/// A diagonal outcome has equal row and column halves (`00`, `11` for
/// `k = 2`), i.e. it selects a block on the matrix diagonal.
pub fn default_expected(k: usize, n_blocks: usize) -> Result<ExpectedDistribution> {
    if k == 0 || !k.is_multiple_of(2) {
        return Err(Error::invalid(format!(
            "k must be even and positive, got {k}"
        )));
    }
    let half = k / 2;
    if n_blocks == 0 || n_blocks > 1 << half {
        return Err(Error::invalid(format!(
            "n_blocks must be in 1..={} for k={k}, got {n_blocks}",
            1 << half
        )));
    }
    let mut weights = vec![0.0; 1 << k];
    for j in 0..n_blocks {
        weights[j << half | j] = 1.0 / n_blocks as f64;
    }
    ExpectedDistribution::new(weights)
}

/// How the expected and actual distributions are paired.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum FitnessKind {
    /// `sum expected[o] * p[o]` over probability vectors.
    #[default]
    Probability,
    /// `sum sqrt(expected[o]) * sqrt(p[o])`, the overlap of amplitude vectors.
    Amplitude,
}

pub fn score(kind: FitnessKind, expected: &ExpectedDistribution, raw: &[f64], total: f64) -> f64 {
    if total <= 0.0 {
        return 0.0;
    }
    let pairs = expected.weights.iter().zip(raw);
    match kind {
        FitnessKind::Probability => pairs.map(|(e, r)| e * r).sum::<f64>() / total,
        FitnessKind::Amplitude => pairs.map(|(e, r)| (e * (r / total).max(0.0)).sqrt()).sum(),
    }
}

/// Cached fitness of a matrix under a group and expected distribution.
#[derive(Clone, Debug)]
pub struct FitnessState {
    group: QubitGroup,
    expected: ExpectedDistribution,
    kind: FitnessKind,
    raw: BlockDistribution,
    fitness: f64,
    row_codes: Vec<usize>,
    col_codes: Vec<usize>,
    commits_since_sync: usize,
}

/// Distribution and fitness a swap would produce.
#[derive(Clone, Debug, PartialEq)]
pub struct SwapDelta {
    pub raw: Vec<f64>,
    pub fitness: f64,
}

impl FitnessState {
    pub fn group(&self) -> &QubitGroup {
        &self.group
    }

    pub fn expected(&self) -> &ExpectedDistribution {
        &self.expected
    }

    pub fn kind(&self) -> FitnessKind {
        self.kind
    }

    pub fn raw(&self) -> &BlockDistribution {
        &self.raw
    }

    pub fn fitness(&self) -> f64 {
        self.fitness
    }

    /// The matrix has no mass; fitness is pinned to 0.
    pub fn is_degenerate(&self) -> bool {
        self.raw.total() <= 0.0
    }

    fn check(&self, matrix: &AdjacencyMatrix, a: usize, b: usize) -> Result<()> {
        let size = self.row_codes.len();
        if matrix.size() != size {
            return Err(Error::DimensionMismatch {
                expected: size,
                found: matrix.size(),
            });
        }
        for index in [a, b] {
            if index >= size {
                return Err(Error::IndexOutOfRange { index, size });
            }
        }
        Ok(())
    }

    fn resync(&mut self, matrix: &AdjacencyMatrix) {
        let fresh = block_distribution(matrix, &self.group).expect("dimension checked");
        self.fitness = score(self.kind, &self.expected, fresh.raw(), fresh.total());
        self.raw = fresh;
        self.commits_since_sync = 0;
    }
}

pub fn evaluate(
    matrix: &AdjacencyMatrix,
    group: &QubitGroup,
    expected: &ExpectedDistribution,
) -> Result<FitnessState> {
    evaluate_with(matrix, group, expected, FitnessKind::Probability)
}

pub fn evaluate_with(
    matrix: &AdjacencyMatrix,
    group: &QubitGroup,
    expected: &ExpectedDistribution,
    kind: FitnessKind,
) -> Result<FitnessState> {
    if expected.weights.len() != group.outcome_count() {
        return Err(Error::DimensionMismatch {
            expected: group.outcome_count(),
            found: expected.weights.len(),
        });
    }
    let raw = block_distribution(matrix, group)?;
    let (row_codes, col_codes) = group.outcome_tables();
    let fitness = score(kind, expected, raw.raw(), raw.total());
    Ok(FitnessState {
        group: group.clone(),
        expected: expected.clone(),
        kind,
        raw,
        fitness,
        row_codes,
        col_codes,
        commits_since_sync: 0,
    })
}

/// Distribution and fitness after conjugating `matrix` by the transposition
/// `(a b)`, without touching the matrix.
///
/// Only cells in rows `a`, `b` or columns `a`, `b` change position, so
/// the update re-bins at most `4N` entries.
pub fn delta_for_swap(
    state: &FitnessState,
    matrix: &AdjacencyMatrix,
    a: usize,
    b: usize,
) -> Result<SwapDelta> {
    state.check(matrix, a, b)?;
    let mut raw = state.raw.raw().to_vec();
    if a == b {
        return Ok(SwapDelta {
            raw,
            fitness: state.fitness,
        });
    }
    let rows = &state.row_codes;
    let cols = &state.col_codes;
    let swap = |i: usize| {
        if i == a {
            b
        } else if i == b {
            a
        } else {
            i
        }
    };
    for r in [a, b] {
        let moved_row = rows[swap(r)];
        for (c, &v) in matrix.row(r).iter().enumerate() {
            if v != 0.0 {
                raw[rows[r] | cols[c]] -= v;
                raw[moved_row | cols[swap(c)]] += v;
            }
        }
    }
    for r in (0..matrix.size()).filter(|&r| r != a && r != b) {
        for c in [a, b] {
            let v = matrix.get(r, c);
            if v != 0.0 {
                raw[rows[r] | cols[c]] -= v;
                raw[rows[r] | cols[swap(c)]] += v;
            }
        }
    }
    let fitness = score(state.kind, &state.expected, &raw, state.raw.total());
    Ok(SwapDelta { raw, fitness })
}

/// Commits the swap of rows and columns `a`, `b` to both matrix and state.
///
/// The cached distribution is recomputed from scratch once every `N`
/// commits so rounding on weighted data cannot accumulate; the amortized
/// cost stays `O(N)` per commit.
pub fn apply_swap(
    matrix: &mut AdjacencyMatrix,
    state: &mut FitnessState,
    a: usize,
    b: usize,
) -> Result<()> {
    let delta = delta_for_swap(state, matrix, a, b)?;
    commit_swap(matrix, state, a, b, delta);
    Ok(())
}

/// Commits a delta already computed by [`delta_for_swap`] for `(a, b)`.
pub(crate) fn commit_swap(
    matrix: &mut AdjacencyMatrix,
    state: &mut FitnessState,
    a: usize,
    b: usize,
    delta: SwapDelta,
) {
    if a == b {
        return;
    }
    matrix.swap_symmetric(a, b);
    let total = state.raw.total();
    state.raw = BlockDistribution::from_parts(delta.raw, total);
    state.fitness = delta.fitness;
    state.commits_since_sync += 1;
    if state.commits_since_sync >= matrix.size() && !matrix.is_binary() {
        state.resync(matrix);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_barbell, generate_planted_blocks};

    fn group(n: u32, q: &[usize]) -> QubitGroup {
        QubitGroup::new(n, q.to_vec()).unwrap()
    }

    #[test]
    fn barbell_fitness() {
        let x = generate_barbell(15, 2).unwrap();
        let e = default_expected(2, 2).unwrap();
        let s = evaluate(&x, &group(5, &[0, 5]), &e).unwrap();
        assert_eq!(s.raw().raw(), &[212.0, 1.0, 1.0, 212.0]);
        assert!((s.fitness() - 212.0 / 426.0).abs() < 1e-12);
        assert!((s.fitness() - 0.497653).abs() < 5e-7);
        assert!(!s.is_degenerate());
    }

    #[test]
    fn zero_matrix_is_degenerate() {
        let x = AdjacencyMatrix::zeros(4);
        let s = evaluate(&x, &group(2, &[0, 2]), &default_expected(2, 2).unwrap()).unwrap();
        assert_eq!(s.fitness(), 0.0);
        assert!(s.is_degenerate());
        let d = delta_for_swap(&s, &x, 0, 3).unwrap();
        assert_eq!(d.fitness, 0.0);
    }

    #[test]
    fn uniform_expected_gives_quarter() {
        let x = generate_planted_blocks(&[5, 3], 0.7, 0.2, 9).unwrap();
        let e = ExpectedDistribution::new(vec![0.25; 4]).unwrap();
        let s = evaluate(&x, &group(3, &[0, 3]), &e).unwrap();
        assert!((s.fitness() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn default_expected_examples() {
        assert_eq!(
            default_expected(2, 2).unwrap().weights(),
            &[0.5, 0.0, 0.0, 0.5]
        );
        assert_eq!(
            default_expected(2, 1).unwrap().weights(),
            &[1.0, 0.0, 0.0, 0.0]
        );
        let w = default_expected(4, 4).unwrap();
        let mut want = vec![0.0; 16];
        for o in [0b0000, 0b0101, 0b1010, 0b1111] {
            want[o] = 0.25;
        }
        assert_eq!(w.weights(), want.as_slice());
        assert!(default_expected(3, 2).is_err());
        assert!(default_expected(2, 3).is_err());
        assert!(default_expected(2, 0).is_err());
    }

    #[test]
    fn expected_validation() {
        assert!(ExpectedDistribution::parse("0.5,0,0,0.5").is_ok());
        assert!(ExpectedDistribution::parse("0.5,0,0,0.6").is_err());
        assert!(ExpectedDistribution::parse("1.5,-0.5").is_err());
        assert!(ExpectedDistribution::parse("0.5,0.25,0.25").is_err());
        assert!(ExpectedDistribution::parse("a,b").is_err());
        let x = AdjacencyMatrix::zeros(4);
        let e = ExpectedDistribution::new(vec![0.5, 0.5]).unwrap();
        assert!(evaluate(&x, &group(2, &[0, 2]), &e).is_err());
    }

    #[test]
    fn same_index_swap_is_identity() {
        let x = generate_barbell(3, 1).unwrap();
        let s = evaluate(&x, &group(3, &[0, 3]), &default_expected(2, 2).unwrap()).unwrap();
        let d = delta_for_swap(&s, &x, 5, 5).unwrap();
        assert_eq!(d.raw, s.raw().raw());
        assert_eq!(d.fitness, s.fitness());
        assert!(delta_for_swap(&s, &x, 0, 8).is_err());
    }

    #[test]
    fn apply_twice_restores() {
        let x = generate_planted_blocks(&[6, 6], 0.8, 0.1, 4).unwrap();
        let g = group(4, &[0, 4]);
        let e = default_expected(2, 2).unwrap();
        let mut m = x.clone();
        let mut s = evaluate(&m, &g, &e).unwrap();
        let f0 = s.fitness();
        apply_swap(&mut m, &mut s, 2, 11).unwrap();
        assert!(m.is_symmetric());
        assert_eq!(m.total_sum(), x.total_sum());
        let fresh = evaluate(&m, &g, &e).unwrap();
        assert!((fresh.fitness() - s.fitness()).abs() < 1e-12);
        apply_swap(&mut m, &mut s, 2, 11).unwrap();
        assert_eq!(m, x);
        assert!((s.fitness() - f0).abs() < 1e-12);
    }

    #[test]
    fn amplitude_variant() {
        let x = generate_barbell(15, 2).unwrap();
        let e = default_expected(2, 2).unwrap();
        let s = evaluate_with(&x, &group(5, &[0, 5]), &e, FitnessKind::Amplitude).unwrap();
        let want = 2.0 * (0.5f64 * 212.0 / 426.0).sqrt();
        assert!((s.fitness() - want).abs() < 1e-12);
    }

    #[test]
    fn weighted_resync_keeps_cache_exact() {
        let mut m = AdjacencyMatrix::zeros(8);
        let mut v = 0.1;
        for u in 0..8 {
            for w in u + 1..8 {
                m.set_symmetric(u, w, v).unwrap();
                v = (v * 1.37 + 0.11) % 3.0;
            }
        }
        let g = group(3, &[0, 3]);
        let e = default_expected(2, 2).unwrap();
        let mut s = evaluate(&m, &g, &e).unwrap();
        for i in 0..200 {
            apply_swap(&mut m, &mut s, i % 8, (i * 5 + 3) % 8).unwrap();
        }
        let fresh = evaluate(&m, &g, &e).unwrap();
        assert!((fresh.fitness() - s.fitness()).abs() < 1e-12);
    }
}
