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

//! Cycle notation, orders, and the structured move families on an
//! eight-element register.

use blockperm::perm::{self, Permutation};
use blockperm::simulator::gate_cost;

fn main() -> blockperm::Result<()> {
    let p = Permutation::from_cycles(8, &[vec![0, 3, 5], vec![1, 6]])?;
    println!("p = {p}  map {:?}  order {}", p.as_slice(), p.order()?);
    println!("p^-1 = {}", p.inverse());
    println!("p^3 = {}", p.pow(3));
    println!(
        "transpositions {:?}",
        p.cycle_decomposition().transpositions()
    );
    println!(
        "(0 1 2) as swaps {:?}",
        perm::cycle_to_transpositions(&[0, 1, 2])?
    );

    let flip = perm::bitflip_perm(perm::qubit_mask(&[0, 2], 3)?, 8)?;
    println!("X on qubits 0,2: {flip}  order {}", flip.order()?);

    for offset in [0, 1] {
        println!(
            "neighbour swaps offset {offset}: {}",
            perm::neighbor_swap_family(offset, 8)?
        );
    }

    for pattern in 0..4 {
        let (a, b) = perm::restricted_mcx_pair(pattern, 0, 8)?;
        println!("MCX target 0, controls {pattern:02b}: swaps {a} <-> {b}");
    }

    let cost = gate_cost(&p)?;
    println!(
        "p as gates: {} transpositions, {} MCX (max {} controls) or {} CX + {} Toffoli with an ancilla",
        cost.n_transpositions, cost.n_mcx, cost.max_controls, cost.ancilla_cx, cost.ancilla_toffoli
    );
    Ok(())
}
