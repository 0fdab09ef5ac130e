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

//! Matrix blockmodeling by simultaneous row/column permutation search.
//!
//! An `N x N` nonnegative matrix (`N = 2^n`) is read as a `2n`-qubit state
//! whose basis index is `r * N + c`. Measuring a small group of those qubits
//! partitions the matrix cells into `2^k` regions; the summed mass in each
//! region is the [`BlockDistribution`]. A candidate ordering of the nodes is
//! scored by the inner product of that distribution with an expected one,
//! and the search applies transpositions `P_ab` to rows and columns at once,
//! keeping a move only if it strictly improves the best score.
//!
//! Modules:
//!
//! - [`graph`]: instances (barbell, planted blocks), shuffling, file formats.
//! - [`encoding`]: qubit groups, outcome extraction, block distributions.
//! - [`perm`]: permutation algebra, cycles, bit-flip and MCX move families.
//! - [`fitness`]: full and `O(N)` incremental scoring of swaps.
//! - [`optimizer`]: the search loop in three move modes, traces, replay.
//! - [`simulator`]: statevector oracle and a gate-cost model.
//! - [`io`], [`plot`], [`commands`]: trace/summary files, SVG output and the
//!   command implementations behind the `blockperm` binary.
//!
//! ```
//! use blockperm::{encoding::QubitGroup, fitness, graph};
//!
//! let x = graph::generate_barbell(15, 2).unwrap();
//! let group = QubitGroup::new(5, vec![0, 5]).unwrap();
//! let dist = blockperm::encoding::block_distribution(&x, &group).unwrap();
//! assert_eq!(dist.raw(), &[212.0, 1.0, 1.0, 212.0]);
//!
//! let expected = fitness::default_expected(2, 2).unwrap();
//! let state = fitness::evaluate(&x, &group, &expected).unwrap();
//! assert!((state.fitness() - 212.0 / 426.0).abs() < 1e-12);
//! ```

pub mod commands;
pub mod encoding;
pub mod error;
pub mod fitness;
pub mod graph;
pub mod io;
pub mod optimizer;
pub mod perm;
pub mod plot;
pub mod rng;
pub mod simulator;

pub use encoding::{BlockDistribution, QubitGroup};
pub use error::{Error, Result};
pub use fitness::{ExpectedDistribution, FitnessState};
pub use graph::AdjacencyMatrix;
pub use optimizer::{FitnessTrace, Mode, OptimizerConfig};
pub use perm::{CycleDecomposition, Permutation};
pub use simulator::{GateCostReport, Statevector};
