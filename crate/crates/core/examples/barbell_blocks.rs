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

//! Builds the 32-slot barbell graph and shows how one row bit and one
//! column bit split it into four quadrant sums.

use blockperm::encoding::{block_distribution, QubitGroup};
use blockperm::fitness::{default_expected, evaluate};
use blockperm::graph;

fn main() -> blockperm::Result<()> {
    let x = graph::generate_barbell(15, 2)?;
    println!(
        "nodes {} padded to {} ({} qubits), {} edges, total weight {}",
        x.n_nodes(),
        x.size(),
        x.n_qubits(),
        x.edge_count(),
        x.total_sum()
    );

    let group = QubitGroup::parse(x.n_qubits(), "0,5")?;
    let expected = default_expected(2, 2)?;
    let ordered = evaluate(&x, &group, &expected)?;
    println!(
        "ordered: raw {:?} fitness {:.6}",
        ordered.raw().raw(),
        ordered.fitness()
    );

    let (shuffled, p) = graph::shuffle(&x, 42);
    let scrambled = block_distribution(&shuffled, &group)?;
    let f = evaluate(&shuffled, &group, &expected)?.fitness();
    println!("shuffled by {p}");
    println!("shuffled: raw {:?} fitness {f:.6}", scrambled.raw());
    Ok(())
}
