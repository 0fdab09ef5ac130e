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

//! Shows the restricted move set stalling on a plateau that unrestricted
//! swaps escape from.

use blockperm::encoding::QubitGroup;
use blockperm::fitness::default_expected;
use blockperm::graph;
use blockperm::optimizer::{self, default_stall_window, Mode, OptimizerConfig};

fn main() -> blockperm::Result<()> {
    let x = graph::generate_barbell(15, 2)?;
    let (shuffled, _) = graph::shuffle(&x, 42);
    let group = QubitGroup::parse(5, "0,5")?;
    let expected = default_expected(2, 2)?;

    for mode in [Mode::RestrictedMcx, Mode::RandomPab] {
        let trace = optimizer::run(
            &shuffled,
            &group,
            &expected,
            &OptimizerConfig::new(mode, 100_000, 1).with_stall_window(default_stall_window(32)),
        )?;
        println!(
            "{mode}: best {:.6} raw {:?}, stopped by {} after {} iterations",
            trace.best_fitness,
            trace.final_raw.raw(),
            trace.stop_reason.as_str(),
            trace.iters_run
        );
    }
    Ok(())
}
