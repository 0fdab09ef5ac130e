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

//! Qubit-group view of a matrix.
//!
//! The vectorized matrix has basis index `i = r * N + c`, written as `2n`
//! bits MSB first. Qubit `q` reads bit `2n - 1 - q` of `i`: qubits `0..n`
//! are the row bits (qubit 0 is the row MSB) and qubits `n..2n` are the
//! column bits (qubit `n` is the column MSB). The outcome of a cell under a
//! group concatenates the selected bits in the group's listed order, the
//! first listed qubit being the outcome's most significant bit.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::AdjacencyMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QubitGroup {
    n: u32,
    qubits: Vec<usize>,
}

impl QubitGroup {
    /// `n` is the number of qubits per register (`N = 2^n`).
    pub fn new(n: u32, qubits: Vec<usize>) -> Result<Self> {
        if qubits.is_empty() {
            return Err(Error::invalid("qubit group must not be empty"));
        }
        let width = 2 * n as usize;
        let mut seen = vec![false; width];
        for &q in &qubits {
            if q >= width {
                return Err(Error::IndexOutOfRange {
                    index: q,
                    size: width,
                });
            }
            if std::mem::replace(&mut seen[q], true) {
                return Err(Error::invalid(format!("qubit {q} listed twice")));
            }
        }
        Ok(QubitGroup { n, qubits })
    }

    /// Parses a comma-separated list such as `0,5`.
    pub fn parse(n: u32, list: &str) -> Result<Self> {
        let qubits = list
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::invalid(format!("bad qubit index {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        QubitGroup::new(n, qubits)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn size(&self) -> usize {
        1 << self.n
    }

    pub fn qubits(&self) -> &[usize] {
        &self.qubits
    }

    /// Number of qubits in the group.
    pub fn k(&self) -> usize {
        self.qubits.len()
    }

    pub fn outcome_count(&self) -> usize {
        1 << self.k()
    }

    pub fn is_row_qubit(&self, q: usize) -> bool {
        q < self.n as usize
    }

    /// Per-row and per-column outcome contributions.
    ///
    /// Each group qubit is either a row bit or a column bit, so
    /// `outcome_of(r, c) == rows[r] | cols[c]`.
    pub fn outcome_tables(&self) -> (Vec<usize>, Vec<usize>) {
        let n = self.n as usize;
        let size = self.size();
        let k = self.k();
        let mut rows = vec![0usize; size];
        let mut cols = vec![0usize; size];
        for (pos, &q) in self.qubits.iter().enumerate() {
            let out_bit = 1 << (k - 1 - pos);
            let (table, bit) = if q < n {
                (&mut rows, n - 1 - q)
            } else {
                (&mut cols, 2 * n - 1 - q)
            };
            for (index, slot) in table.iter_mut().enumerate() {
                if index >> bit & 1 == 1 {
                    *slot |= out_bit;
                }
            }
        }
        (rows, cols)
    }

    fn check_dimension(&self, size: usize) -> Result<()> {
        if size != self.size() {
            return Err(Error::DimensionMismatch {
                expected: self.size(),
                found: size,
            });
        }
        Ok(())
    }
}

/// Outcome index of cell `(r, c)` under `group`.
pub fn outcome_of(r: usize, c: usize, group: &QubitGroup) -> usize {
    let width = 2 * group.n as usize;
    let index = r << group.n | c;
    let k = group.k();
    group.qubits.iter().enumerate().fold(0, |acc, (pos, &q)| {
        acc | (index >> (width - 1 - q) & 1) << (k - 1 - pos)
    })
}

/// Summed matrix mass per group outcome.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockDistribution {
    raw: Vec<f64>,
    total: f64,
}

impl BlockDistribution {
    pub fn from_raw(raw: Vec<f64>) -> Self {
        let total = raw.iter().sum();
        BlockDistribution { raw, total }
    }

    pub(crate) fn from_parts(raw: Vec<f64>, total: f64) -> Self {
        BlockDistribution { raw, total }
    }

    pub fn raw(&self) -> &[f64] {
        &self.raw
    }

    pub fn total(&self) -> f64 {
        self.total
    }

    /// `raw / total`, or `None` when the matrix has no mass.
    pub fn normalized(&self) -> Option<Vec<f64>> {
        (self.total > 0.0).then(|| self.raw.iter().map(|v| v / self.total).collect())
    }
}

pub fn block_distribution(
    matrix: &AdjacencyMatrix,
    group: &QubitGroup,
) -> Result<BlockDistribution> {
    group.check_dimension(matrix.size())?;
    let (rows, cols) = group.outcome_tables();
    let mut raw = vec![0.0; group.outcome_count()];
    for (r, &row_code) in rows.iter().enumerate() {
        for (&value, &col_code) in matrix.row(r).iter().zip(&cols) {
            raw[row_code | col_code] += value;
        }
    }
    Ok(BlockDistribution {
        raw,
        total: matrix.total_sum(),
    })
}

/// Cells of an `N x N` grid selected by one group outcome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternMask {
    size: usize,
    cells: Vec<bool>,
}

impl PatternMask {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.cells[r * self.size + c]
    }

    pub fn count(&self) -> usize {
        self.cells.iter().filter(|&&b| b).count()
    }

    /// Plain PGM (P2): selected cells are black (0), the rest white (255).
    pub fn to_pgm(&self) -> String {
        let mut out = format!("P2\n{} {}\n255\n", self.size, self.size);
        for r in 0..self.size {
            let row: Vec<&str> = (0..self.size)
                .map(|c| if self.get(r, c) { "0" } else { "255" })
                .collect();
            writeln!(out, "{}", row.join(" ")).unwrap();
        }
        out
    }
}

pub fn pattern_mask(group: &QubitGroup, outcome: usize) -> Result<PatternMask> {
    if outcome >= group.outcome_count() {
        return Err(Error::IndexOutOfRange {
            index: outcome,
            size: group.outcome_count(),
        });
    }
    let size = group.size();
    let (rows, cols) = group.outcome_tables();
    let cells = rows
        .iter()
        .flat_map(|&rc| cols.iter().map(move |&cc| rc | cc == outcome))
        .collect();
    Ok(PatternMask { size, cells })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_barbell, generate_planted_blocks};

    #[test]
    fn outcome_examples() {
        let g = QubitGroup::new(2, vec![0, 2]).unwrap();
        assert_eq!(outcome_of(3, 1, &g), 2);
        for r in 0..4 {
            for c in 0..4 {
                assert_eq!(
                    outcome_of(r, c, &g),
                    2 * (r >= 2) as usize + (c >= 2) as usize
                );
            }
        }
        let g = QubitGroup::new(5, vec![0, 5]).unwrap();
        assert_eq!(outcome_of(0, 0, &g), 0);
        assert_eq!(outcome_of(16, 3, &g), 2);
        assert_eq!(outcome_of(20, 31, &g), 3);
        let g = QubitGroup::new(3, vec![2]).unwrap();
        assert_eq!(outcome_of(5, 0, &g), 1);
        assert_eq!(outcome_of(4, 7, &g), 0);
    }

    #[test]
    fn listed_order_sets_outcome_bits() {
        let g = QubitGroup::new(2, vec![2, 0]).unwrap();
        // Column MSB first, then row MSB.
        assert_eq!(outcome_of(3, 1, &g), 1);
    }

    #[allow(clippy::needless_range_loop)]
    #[test]
    fn tables_agree_with_bit_extraction() {
        let g = QubitGroup::new(3, vec![4, 1, 5]).unwrap();
        let (rows, cols) = g.outcome_tables();
        for r in 0..8 {
            for c in 0..8 {
                assert_eq!(rows[r] | cols[c], outcome_of(r, c, &g));
            }
        }
    }

    #[test]
    fn group_validation() {
        assert!(QubitGroup::new(2, vec![]).is_err());
        assert!(QubitGroup::new(2, vec![4]).is_err());
        assert!(QubitGroup::new(2, vec![1, 1]).is_err());
        assert_eq!(QubitGroup::parse(5, "0, 5").unwrap().qubits(), &[0, 5]);
        assert!(QubitGroup::parse(5, "0,x").is_err());
    }

    #[test]
    fn barbell_block_sums() {
        let x = generate_barbell(15, 2).unwrap();
        let g = QubitGroup::new(5, vec![0, 5]).unwrap();
        let d = block_distribution(&x, &g).unwrap();
        assert_eq!(d.raw(), &[212.0, 1.0, 1.0, 212.0]);
        assert_eq!(d.total(), 426.0);
    }

    #[test]
    fn zero_matrix_distribution() {
        let x = AdjacencyMatrix::zeros(8);
        let g = QubitGroup::new(3, vec![0, 3]).unwrap();
        let d = block_distribution(&x, &g).unwrap();
        assert!(d.raw().iter().all(|&v| v == 0.0));
        assert_eq!(d.total(), 0.0);
        assert!(d.normalized().is_none());
    }

    #[test]
    fn single_row_qubit_splits_halves() {
        let x = generate_planted_blocks(&[5, 6], 0.6, 0.3, 2).unwrap();
        let g = QubitGroup::new(4, vec![0]).unwrap();
        let d = block_distribution(&x, &g).unwrap();
        let mut top = 0.0;
        let mut bottom = 0.0;
        for r in 0..16 {
            for c in 0..16 {
                if r < 8 {
                    top += x.get(r, c);
                } else {
                    bottom += x.get(r, c);
                }
            }
        }
        assert_eq!(d.raw(), &[top, bottom]);
    }

    #[test]
    fn dimension_mismatch() {
        let x = AdjacencyMatrix::zeros(8);
        let g = QubitGroup::new(2, vec![0]).unwrap();
        assert!(matches!(
            block_distribution(&x, &g),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn quadrant_masks() {
        let g = QubitGroup::new(2, vec![0, 2]).unwrap();
        let m = pattern_mask(&g, 0).unwrap();
        for r in 0..4 {
            for c in 0..4 {
                assert_eq!(m.get(r, c), r < 2 && c < 2);
            }
        }
        let g = QubitGroup::new(4, vec![0]).unwrap();
        let m = pattern_mask(&g, 0).unwrap();
        assert!((0..16).all(|c| m.get(7, c) && !m.get(8, c)));
        assert!(pattern_mask(&g, 2).is_err());
    }

    #[test]
    fn masks_partition_grid() {
        let g = QubitGroup::new(3, vec![1, 3, 5]).unwrap();
        let masks: Vec<_> = (0..8).map(|o| pattern_mask(&g, o).unwrap()).collect();
        for r in 0..8 {
            for c in 0..8 {
                assert_eq!(masks.iter().filter(|m| m.get(r, c)).count(), 1);
            }
        }
        assert!(masks.iter().all(|m| m.count() == 64 / 8));
    }

    #[test]
    fn pgm_header() {
        let g = QubitGroup::new(1, vec![0]).unwrap();
        let pgm = pattern_mask(&g, 1).unwrap().to_pgm();
        assert_eq!(pgm, "P2\n2 2\n255\n255 255\n0 0\n");
    }
}
