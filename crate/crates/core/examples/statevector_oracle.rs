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

//! Cross-checks the classical block sums against an amplitude-encoded
//! state that is permuted and measured directly.

use blockperm::encoding::{block_distribution, QubitGroup};
use blockperm::fitness::default_expected;
use blockperm::graph;
use blockperm::optimizer::{self, Mode, OptimizerConfig};
use blockperm::simulator;

fn main() -> blockperm::Result<()> {
    let x = graph::generate_barbell(15, 2)?;
    let (shuffled, _) = graph::shuffle(&x, 42);
    let group = QubitGroup::parse(5, "0,5")?;
    let expected = default_expected(2, 2)?;
    let trace = optimizer::run(
        &shuffled,
        &group,
        &expected,
        &OptimizerConfig::new(Mode::RandomPab, 20_000, 1).with_stop_fitness(212.0 / 426.0),
    )?;

    let state = simulator::prepare(&shuffled)?;
    let moved = simulator::apply_symmetric_permutation(&state, &trace.final_permutation)?;
    println!("norm after permutation {:.15}", moved.norm());
    let quantum = simulator::measure_group(&moved, &group)?;
    let classical = block_distribution(&trace.final_matrix, &group)?
        .normalized()
        .unwrap();
    let err = quantum
        .iter()
        .zip(&classical)
        .map(|(q, c)| (q - c).abs())
        .fold(0.0, f64::max);
    println!("measured  {quantum:?}");
    println!("block sum {classical:?}");
    println!("max abs error {err:.2e}");

    let cost = simulator::gate_cost(&trace.final_permutation)?;
    println!(
        "circuit: {} transpositions, {} MCX gates with {} controls",
        cost.n_transpositions, cost.n_mcx, cost.max_controls
    );
    Ok(())
}
