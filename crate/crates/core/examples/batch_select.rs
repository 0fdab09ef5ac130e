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

//! Compares iterations to the optimum for single proposals and batches of
//! 32 over twenty scrambles.

use blockperm::encoding::QubitGroup;
use blockperm::fitness::default_expected;
use blockperm::graph;
use blockperm::optimizer::{self, Mode, OptimizerConfig};

fn main() -> blockperm::Result<()> {
    let x = graph::generate_barbell(15, 2)?;
    let group = QubitGroup::parse(5, "0,5")?;
    let expected = default_expected(2, 2)?;
    let target = 212.0 / 426.0;

    for batch in [1, 8, 32, 128] {
        let mut iters = Vec::new();
        for seed in 0..20 {
            let (shuffled, _) = graph::shuffle(&x, 100 + seed);
            let config = OptimizerConfig::new(Mode::BatchSelect, 100_000, seed)
                .with_batch_size(batch)
                .with_stop_fitness(target);
            let trace = optimizer::run(&shuffled, &group, &expected, &config)?;
            iters.push(trace.iterations_to_reach(target).unwrap_or(trace.iters_run));
        }
        iters.sort_unstable();
        let mean = iters.iter().sum::<usize>() as f64 / iters.len() as f64;
        println!(
            "batch {batch:>3}: mean {mean:8.1} median {:>6} max {:>6} iterations, {:>8.0} evaluations",
            iters[10],
            iters[19],
            mean * batch as f64
        );
    }
    Ok(())
}
