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

//! Strict-improvement permutation search.
//!
//! Every iteration proposes one or more transpositions `(a b)`, scores each
//! with [`delta_for_swap`], and commits the best one only if it beats the
//! best fitness seen so far. Three proposal schemes are provided:
//!
//! - [`Mode::RandomPab`]: `a`, `b` uniform over `0..N`.
//! - [`Mode::RestrictedMcx`]: the pair swapped by a multi-controlled X on a
//!   fixed target qubit with a uniformly drawn control pattern.
//! - [`Mode::BatchSelect`]: a batch of uniform pairs scored together, the
//!   lowest-index argmax committed.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::encoding::{BlockDistribution, QubitGroup};
use crate::error::{Error, Result};
use crate::fitness::{commit_swap, delta_for_swap, evaluate, ExpectedDistribution, SwapDelta};
use crate::graph::AdjacencyMatrix;
use crate::perm::{restricted_mcx_pair, Permutation};
use crate::rng::{self, Rng};

/// Batches at least this large are scored on the rayon pool.
const PARALLEL_BATCH: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    RandomPab,
    RestrictedMcx,
    BatchSelect,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::RandomPab => "random_pab",
            Mode::RestrictedMcx => "restricted_mcx",
            Mode::BatchSelect => "batch_select",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random_pab" => Ok(Mode::RandomPab),
            "restricted_mcx" => Ok(Mode::RestrictedMcx),
            "batch_select" => Ok(Mode::BatchSelect),
            other => Err(Error::invalid(format!("unknown mode {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OptimizerConfig {
    pub mode: Mode,
    pub max_iters: usize,
    pub seed: u64,
    /// Candidates per iteration in [`Mode::BatchSelect`]; ignored otherwise.
    pub batch_size: usize,
    /// Stop once the best fitness is at least this value.
    pub stop_fitness: Option<f64>,
    /// Stop after this many consecutive iterations without improvement.
    pub stall_window: Option<usize>,
    /// Target qubit of the restricted move. Qubit 0, the row MSB, decides
    /// which half of the matrix an index falls in.
    pub restricted_target: usize,
}

impl OptimizerConfig {
    pub fn new(mode: Mode, max_iters: usize, seed: u64) -> Self {
        OptimizerConfig {
            mode,
            max_iters,
            seed,
            batch_size: 1,
            stop_fitness: None,
            stall_window: None,
            restricted_target: 0,
        }
    }

    pub fn with_batch_size(mut self, batch_size: usize) -> Self {
        self.batch_size = batch_size;
        self
    }

    pub fn with_stop_fitness(mut self, stop: f64) -> Self {
        self.stop_fitness = Some(stop);
        self
    }

    pub fn with_stall_window(mut self, window: usize) -> Self {
        self.stall_window = Some(window);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_iters == 0 {
            return Err(Error::invalid("max_iters must be at least 1"));
        }
        if self.batch_size == 0 {
            return Err(Error::invalid("batch_size must be at least 1"));
        }
        if let Some(stop) = self.stop_fitness {
            if !(0.0..=1.0).contains(&stop) {
                return Err(Error::invalid(format!("stop_fitness {stop} not in [0, 1]")));
            }
        }
        if self.stall_window == Some(0) {
            return Err(Error::invalid("stall_window must be at least 1"));
        }
        Ok(())
    }
}

/// Default stall window, `10 N^2` non-improving iterations.
pub fn default_stall_window(size: usize) -> usize {
    10 * size * size
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StopReason {
    MaxIters,
    StopFitness,
    Stall,
}

impl StopReason {
    pub fn as_str(self) -> &'static str {
        match self {
            StopReason::MaxIters => "max_iters",
            StopReason::StopFitness => "stop_fitness",
            StopReason::Stall => "stall",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TraceRecord {
    pub iter: usize,
    pub a: usize,
    pub b: usize,
    pub candidate_fitness: f64,
    /// Best fitness after this iteration's commit decision.
    pub best_fitness: f64,
    pub accepted: bool,
}

#[derive(Clone, Debug)]
pub struct FitnessTrace {
    pub mode: Mode,
    pub seed: u64,
    pub initial_fitness: f64,
    pub records: Vec<TraceRecord>,
    /// `final_matrix == initial.conjugate(final_permutation)`.
    pub final_permutation: Permutation,
    pub final_matrix: AdjacencyMatrix,
    pub final_raw: BlockDistribution,
    pub best_fitness: f64,
    pub iters_run: usize,
    pub stop_reason: StopReason,
}

impl FitnessTrace {
    pub fn accepted(&self) -> impl Iterator<Item = &TraceRecord> {
        self.records.iter().filter(|r| r.accepted)
    }

    /// First iteration whose best fitness reaches `threshold`.
    pub fn iterations_to_reach(&self, threshold: f64) -> Option<usize> {
        if self.initial_fitness >= threshold {
            return Some(0);
        }
        self.records
            .iter()
            .find(|r| r.best_fitness >= threshold)
            .map(|r| r.iter + 1)
    }
}

fn draw_pair(mode: Mode, rng: &mut Rng, size: usize, target: usize) -> Result<(usize, usize)> {
    match mode {
        Mode::RandomPab | Mode::BatchSelect => {
            let a = rng::uniform_index(rng, size);
            let b = rng::uniform_index(rng, size);
            Ok((a, b))
        }
        Mode::RestrictedMcx => {
            let pattern = rng::uniform_index(rng, size / 2);
            restricted_mcx_pair(pattern, target, size)
        }
    }
}

/// Runs the search in `config.mode`.
pub fn run(
    matrix: &AdjacencyMatrix,
    group: &QubitGroup,
    expected: &ExpectedDistribution,
    config: &OptimizerConfig,
) -> Result<FitnessTrace> {
    config.validate()?;
    let size = matrix.size();
    let batch = match config.mode {
        Mode::BatchSelect => config.batch_size,
        _ => 1,
    };
    if config.mode == Mode::RestrictedMcx {
        // Surface a bad target before the loop starts.
        restricted_mcx_pair(0, config.restricted_target, size)?;
    }

    let mut current = matrix.clone();
    let mut state = evaluate(&current, group, expected)?;
    let initial_fitness = state.fitness();
    let mut best = initial_fitness;
    let mut permutation = Permutation::identity(size);
    let mut rng = rng::seeded(config.seed);
    let mut records = Vec::new();
    let mut stall = 0usize;
    let mut iters_run = 0usize;
    let mut stop_reason = StopReason::MaxIters;

    for iter in 0..config.max_iters {
        if config.stop_fitness.is_some_and(|stop| best >= stop) {
            stop_reason = StopReason::StopFitness;
            break;
        }
        let pairs = (0..batch)
            .map(|_| draw_pair(config.mode, &mut rng, size, config.restricted_target))
            .collect::<Result<Vec<_>>>()?;
        let score = |&(a, b): &(usize, usize)| delta_for_swap(&state, &current, a, b);
        let deltas: Vec<SwapDelta> = if pairs.len() >= PARALLEL_BATCH {
            pairs.par_iter().map(score).collect::<Result<_>>()?
        } else {
            pairs.iter().map(score).collect::<Result<_>>()?
        };

        // Lowest index wins ties.
        let winner =
            deltas.iter().enumerate().fold(
                0,
                |w, (i, d)| if d.fitness > deltas[w].fitness { i } else { w },
            );
        let improved = deltas[winner].fitness > best;
        if improved {
            best = deltas[winner].fitness;
        }
        for (i, (&(a, b), d)) in pairs.iter().zip(&deltas).enumerate() {
            records.push(TraceRecord {
                iter,
                a,
                b,
                candidate_fitness: d.fitness,
                best_fitness: best,
                accepted: improved && i == winner,
            });
        }
        iters_run = iter + 1;
        if improved {
            let (a, b) = pairs[winner];
            let delta = deltas.into_iter().nth(winner).expect("winner in range");
            commit_swap(&mut current, &mut state, a, b, delta);
            permutation.then_transpose(a, b);
            stall = 0;
        } else {
            stall += 1;
            if config.stall_window.is_some_and(|w| stall >= w) {
                stop_reason = StopReason::Stall;
                break;
            }
        }
    }
    if stop_reason == StopReason::MaxIters && config.stop_fitness.is_some_and(|s| best >= s) {
        stop_reason = StopReason::StopFitness;
    }

    Ok(FitnessTrace {
        mode: config.mode,
        seed: config.seed,
        initial_fitness,
        records,
        final_permutation: permutation,
        final_matrix: current,
        final_raw: state.raw().clone(),
        best_fitness: best,
        iters_run,
        stop_reason,
    })
}

fn with_mode(config: &OptimizerConfig, mode: Mode) -> OptimizerConfig {
    OptimizerConfig {
        mode,
        ..config.clone()
    }
}

pub fn run_random_pab(
    matrix: &AdjacencyMatrix,
    group: &QubitGroup,
    expected: &ExpectedDistribution,
    config: &OptimizerConfig,
) -> Result<FitnessTrace> {
    run(matrix, group, expected, &with_mode(config, Mode::RandomPab))
}

pub fn run_restricted_mcx(
    matrix: &AdjacencyMatrix,
    group: &QubitGroup,
    expected: &ExpectedDistribution,
    config: &OptimizerConfig,
) -> Result<FitnessTrace> {
    run(
        matrix,
        group,
        expected,
        &with_mode(config, Mode::RestrictedMcx),
    )
}

pub fn run_batch_select(
    matrix: &AdjacencyMatrix,
    group: &QubitGroup,
    expected: &ExpectedDistribution,
    config: &OptimizerConfig,
) -> Result<FitnessTrace> {
    run(
        matrix,
        group,
        expected,
        &with_mode(config, Mode::BatchSelect),
    )
}

/// Reapplies the accepted moves of `trace` to `initial`.
///
/// Fails if the trace cannot have come from `initial` or if the accepted
/// moves do not compose to the recorded final permutation.
pub fn replay(initial: &AdjacencyMatrix, trace: &FitnessTrace) -> Result<AdjacencyMatrix> {
    if initial.size() != trace.final_matrix.size() {
        return Err(Error::TraceMismatch(format!(
            "matrix dimension {} but trace dimension {}",
            initial.size(),
            trace.final_matrix.size()
        )));
    }
    if initial.total_sum() != trace.final_matrix.total_sum() {
        return Err(Error::TraceMismatch(format!(
            "matrix total {} but trace total {}",
            initial.total_sum(),
            trace.final_matrix.total_sum()
        )));
    }
    let size = initial.size();
    let mut matrix = initial.clone();
    let mut permutation = Permutation::identity(size);
    for record in trace.accepted() {
        if record.a >= size || record.b >= size {
            return Err(Error::TraceMismatch(format!(
                "move ({}, {}) out of range at iteration {}",
                record.a, record.b, record.iter
            )));
        }
        matrix.swap_symmetric(record.a, record.b);
        permutation.then_transpose(record.a, record.b);
    }
    if permutation != trace.final_permutation {
        return Err(Error::TraceMismatch(
            "accepted moves do not compose to the final permutation".into(),
        ));
    }
    Ok(matrix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fitness::default_expected;
    use crate::graph::{generate_barbell, shuffle};

    fn barbell_setup() -> (AdjacencyMatrix, QubitGroup, ExpectedDistribution) {
        (
            generate_barbell(15, 2).unwrap(),
            QubitGroup::new(5, vec![0, 5]).unwrap(),
            default_expected(2, 2).unwrap(),
        )
    }

    #[test]
    fn config_validation() {
        let (x, g, e) = barbell_setup();
        let bad = [
            OptimizerConfig::new(Mode::RandomPab, 0, 1),
            OptimizerConfig::new(Mode::BatchSelect, 5, 1).with_batch_size(0),
            OptimizerConfig::new(Mode::RandomPab, 5, 1).with_stop_fitness(1.5),
            OptimizerConfig::new(Mode::RandomPab, 5, 1).with_stall_window(0),
        ];
        for config in bad {
            assert!(run(&x, &g, &e, &config).is_err(), "{config:?}");
        }
        let mut config = OptimizerConfig::new(Mode::RestrictedMcx, 5, 1);
        config.restricted_target = 5;
        assert!(run(&x, &g, &e, &config).is_err());
    }

    #[test]
    fn mode_names_round_trip() {
        for mode in [Mode::RandomPab, Mode::RestrictedMcx, Mode::BatchSelect] {
            assert_eq!(mode.as_str().parse::<Mode>().unwrap(), mode);
        }
        assert!("anneal".parse::<Mode>().is_err());
    }

    #[test]
    fn optimal_input_accepts_nothing() {
        let (x, g, e) = barbell_setup();
        let trace =
            run_random_pab(&x, &g, &e, &OptimizerConfig::new(Mode::RandomPab, 2000, 3)).unwrap();
        assert_eq!(trace.accepted().count(), 0);
        assert_eq!(trace.best_fitness, 212.0 / 426.0);
        assert_eq!(trace.final_matrix, x);
        assert_eq!(trace.iters_run, 2000);
    }

    #[test]
    fn stop_fitness_halts_immediately_on_optimum() {
        let (x, g, e) = barbell_setup();
        let config = OptimizerConfig::new(Mode::RandomPab, 100, 3).with_stop_fitness(0.4);
        let trace = run(&x, &g, &e, &config).unwrap();
        assert_eq!(trace.iters_run, 0);
        assert_eq!(trace.stop_reason, StopReason::StopFitness);
    }

    #[test]
    fn stall_window_stops_run() {
        let (x, g, e) = barbell_setup();
        let config = OptimizerConfig::new(Mode::RandomPab, 10_000, 3).with_stall_window(50);
        let trace = run(&x, &g, &e, &config).unwrap();
        assert_eq!(trace.iters_run, 50);
        assert_eq!(trace.stop_reason, StopReason::Stall);
    }

    #[test]
    fn restricted_moves_cross_halves() {
        let (x, g, e) = barbell_setup();
        let (y, _) = shuffle(&x, 5);
        let trace = run_restricted_mcx(
            &y,
            &g,
            &e,
            &OptimizerConfig::new(Mode::RestrictedMcx, 500, 9),
        )
        .unwrap();
        assert!(trace.records.iter().all(|r| r.b == r.a + 16 && r.a < 16));
    }

    #[test]
    fn batch_of_one_matches_random_pab() {
        let (x, g, e) = barbell_setup();
        let (y, _) = shuffle(&x, 8);
        let base = OptimizerConfig::new(Mode::RandomPab, 3000, 21);
        let single = run_random_pab(&y, &g, &e, &base).unwrap();
        let batch = run_batch_select(&y, &g, &e, &base.clone().with_batch_size(1)).unwrap();
        assert_eq!(single.records, batch.records);
        assert_eq!(single.final_permutation, batch.final_permutation);
    }

    #[test]
    fn batch_commits_argmax() {
        let (x, g, e) = barbell_setup();
        let (y, _) = shuffle(&x, 8);
        let config = OptimizerConfig::new(Mode::BatchSelect, 40, 2).with_batch_size(70);
        let trace = run(&y, &g, &e, &config).unwrap();
        assert_eq!(trace.records.len(), 40 * 70);
        for chunk in trace.records.chunks(70) {
            let max = chunk
                .iter()
                .map(|r| r.candidate_fitness)
                .fold(f64::MIN, f64::max);
            if let Some(acc) = chunk.iter().find(|r| r.accepted) {
                assert_eq!(acc.candidate_fitness, max);
                let first = chunk
                    .iter()
                    .position(|r| r.candidate_fitness == max)
                    .unwrap();
                assert!(chunk[first].accepted);
            }
            assert!(chunk.iter().filter(|r| r.accepted).count() <= 1);
        }
    }

    #[test]
    fn replay_reproduces_final_matrix() {
        let (x, g, e) = barbell_setup();
        let (y, _) = shuffle(&x, 13);
        let trace = run(&y, &g, &e, &OptimizerConfig::new(Mode::RandomPab, 5000, 4)).unwrap();
        assert!(trace.accepted().count() > 0);
        assert_eq!(replay(&y, &trace).unwrap(), trace.final_matrix);
        assert_eq!(
            y.conjugate(&trace.final_permutation).unwrap(),
            trace.final_matrix
        );
        assert_eq!(
            trace
                .final_matrix
                .conjugate(&trace.final_permutation.inverse())
                .unwrap(),
            y
        );
        assert!(matches!(
            replay(&AdjacencyMatrix::zeros(32), &trace),
            Err(Error::TraceMismatch(_))
        ));
        assert!(replay(&AdjacencyMatrix::zeros(8), &trace).is_err());
    }

    #[test]
    fn empty_trace_replays_to_initial() {
        let (x, g, e) = barbell_setup();
        let config = OptimizerConfig::new(Mode::RandomPab, 1, 0).with_stop_fitness(0.0);
        let trace = run(&x, &g, &e, &config).unwrap();
        assert!(trace.records.is_empty());
        assert_eq!(replay(&x, &trace).unwrap(), x);
    }
}
