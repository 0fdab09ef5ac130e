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

//! Prints which cells of an 8x8 matrix land in each outcome of a few
//! qubit selections.

use blockperm::encoding::{pattern_mask, QubitGroup};

fn main() -> blockperm::Result<()> {
    for list in ["0", "3", "0,3", "1,4", "2,5", "0,1"] {
        let group = QubitGroup::parse(3, list)?;
        println!("qubits [{list}]:");
        // Each cell shows the outcome it measures to.
        for r in 0..group.size() {
            let mut line = String::from("  ");
            for c in 0..group.size() {
                let outcome = (0..group.outcome_count())
                    .find(|&o| {
                        pattern_mask(&group, o)
                            .map(|m| m.get(r, c))
                            .unwrap_or(false)
                    })
                    .unwrap();
                line.push_str(&format!("{outcome:x}"));
            }
            println!("{line}");
        }
    }
    Ok(())
}
