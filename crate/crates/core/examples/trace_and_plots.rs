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

//! Runs a search and writes the trace CSV, summary JSON and SVG figures
//! into a directory (default `target/trace_and_plots`).

use std::path::PathBuf;

use blockperm::encoding::QubitGroup;
use blockperm::fitness::default_expected;
use blockperm::optimizer::{self, Mode, OptimizerConfig};
use blockperm::{graph, io, plot};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("target/trace_and_plots"));
    std::fs::create_dir_all(&out)?;

    let x = graph::generate_barbell(15, 2)?;
    let (shuffled, _) = graph::shuffle(&x, 42);
    let group = QubitGroup::parse(5, "0,5")?;
    let expected = default_expected(2, 2)?;
    let trace = optimizer::run(
        &shuffled,
        &group,
        &expected,
        &OptimizerConfig::new(Mode::RandomPab, 3_000, 1),
    )?;

    io::write_trace_csv(&trace.records, &out.join("trace.csv"))?;
    let summary = io::RunSummary::from_trace(&trace, group.qubits(), expected.weights());
    io::write_atomic(&out.join("summary.json"), summary.to_json()?.as_bytes())?;
    let curve = plot::fitness_curve_svg(&trace.records, "random transpositions");
    io::write_atomic(&out.join("fitness.svg"), curve.as_bytes())?;
    io::write_atomic(
        &out.join("before.svg"),
        plot::heatmap_svg(&shuffled, "scrambled").as_bytes(),
    )?;
    io::write_atomic(
        &out.join("after.svg"),
        plot::heatmap_svg(&trace.final_matrix, "reordered").as_bytes(),
    )?;

    let back = io::read_trace_csv(&out.join("trace.csv"))?;
    println!("wrote {} trace rows to {}", back.len(), out.display());
    Ok(())
}
