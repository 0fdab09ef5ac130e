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

//! Four planted communities sorted into quadrants of a 4x4 block grid
//! using two row and two column qubits.

use blockperm::encoding::QubitGroup;
use blockperm::fitness::default_expected;
use blockperm::graph;
use blockperm::optimizer::{self, Mode, OptimizerConfig};

fn main() -> blockperm::Result<()> {
    let planted = graph::generate_planted_blocks(&[8, 8, 8, 8], 0.9, 0.05, 7)?;
    let (shuffled, _) = graph::shuffle(&planted, 3);
    let group = QubitGroup::parse(5, "0,1,5,6")?;
    let expected = default_expected(4, 4)?;

    let config = OptimizerConfig::new(Mode::BatchSelect, 5_000, 11).with_batch_size(64);
    let trace = optimizer::run(&shuffled, &group, &expected, &config)?;
    println!(
        "fitness {:.4} -> {:.4} in {} iterations ({})",
        trace.initial_fitness,
        trace.best_fitness,
        trace.iters_run,
        trace.stop_reason.as_str()
    );
    let raw = trace.final_raw.raw();
    for row in 0..4 {
        let cells: Vec<String> = (0..4)
            .map(|col| format!("{:>5}", raw[row << 2 | col]))
            .collect();
        println!("  {}", cells.join(""));
    }
    Ok(())
}
