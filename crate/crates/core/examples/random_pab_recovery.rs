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

//! Recovers the barbell blocks from a scrambled copy with unrestricted
//! random transpositions.

use blockperm::encoding::QubitGroup;
use blockperm::fitness::default_expected;
use blockperm::graph;
use blockperm::optimizer::{self, Mode, OptimizerConfig};

fn main() -> blockperm::Result<()> {
    let x = graph::generate_barbell(15, 2)?;
    let (shuffled, _) = graph::shuffle(&x, 42);
    let group = QubitGroup::parse(5, "0,5")?;
    let expected = default_expected(2, 2)?;
    let target = 212.0 / 426.0;

    for seed in 1..=5 {
        let config = OptimizerConfig::new(Mode::RandomPab, 200_000, seed).with_stop_fitness(target);
        let trace = optimizer::run(&shuffled, &group, &expected, &config)?;
        let replayed = optimizer::replay(&shuffled, &trace)?;
        assert_eq!(replayed, trace.final_matrix);
        println!(
            "seed {seed}: {:.6} -> {:.6} after {} iterations ({} accepted), raw {:?}",
            trace.initial_fitness,
            trace.best_fitness,
            trace.iters_run,
            trace.accepted().count(),
            trace.final_raw.raw()
        );
    }
    Ok(())
}
