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

//! Statevector model of the quantum formulation.
//!
//! The matrix is loaded as a real `2n`-qubit state with amplitude
//! `x[r][c] / ||x||_F` at basis index `r * N + c`. A node relabeling acts as
//! `P ⊗ P` (the same permutation on the row and column registers), and a
//! qubit group is read out by summing squared amplitudes per outcome. This
//! path shares no code with the block-sum scoring in [`crate::fitness`] and
//! is used as its oracle.

use serde::Serialize;

use crate::encoding::QubitGroup;
use crate::error::{Error, Result};
use crate::graph::AdjacencyMatrix;
use crate::perm::Permutation;

#[derive(Clone, Debug, PartialEq)]
pub struct Statevector {
    n: u32,
    amplitudes: Vec<f64>,
}

impl Statevector {
    /// Qubits per register; the state has `2n` qubits.
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a * a).sum::<f64>().sqrt()
    }
}

/// Amplitude-encodes the vectorized matrix.
pub fn prepare(matrix: &AdjacencyMatrix) -> Result<Statevector> {
    let norm = matrix.frobenius_norm();
    if norm == 0.0 {
        return Err(Error::ZeroMatrix);
    }
    Ok(Statevector {
        n: matrix.n_qubits(),
        amplitudes: matrix.entries().iter().map(|v| v / norm).collect(),
    })
}

/// Applies `P ⊗ P`: the amplitude at `r * N + c` moves to `p(r) * N + p(c)`.
pub fn apply_symmetric_permutation(state: &Statevector, p: &Permutation) -> Result<Statevector> {
    let size = 1usize << state.n;
    if p.size() != size {
        return Err(Error::DimensionMismatch {
            expected: size,
            found: p.size(),
        });
    }
    let mut amplitudes = vec![0.0; state.amplitudes.len()];
    for (index, &amp) in state.amplitudes.iter().enumerate() {
        let (r, c) = (index >> state.n, index & (size - 1));
        amplitudes[p.apply(r) << state.n | p.apply(c)] = amp;
    }
    Ok(Statevector {
        n: state.n,
        amplitudes,
    })
}

/// Marginal probabilities of the group's qubits.
///
/// Each basis index is decoded qubit by qubit (qubit `q` is bit `2n-1-q`),
/// independently of the outcome tables used by the block-sum path.
pub fn measure_group(state: &Statevector, group: &QubitGroup) -> Result<Vec<f64>> {
    if group.n() != state.n {
        return Err(Error::DimensionMismatch {
            expected: 1 << state.n,
            found: group.size(),
        });
    }
    let width = 2 * state.n as usize;
    let mut probs = vec![0.0; group.outcome_count()];
    for (index, &amp) in state.amplitudes.iter().enumerate() {
        if amp == 0.0 {
            continue;
        }
        let mut outcome = 0;
        for &q in group.qubits() {
            outcome = outcome << 1 | (index >> (width - 1 - q) & 1);
        }
        probs[outcome] += amp * amp;
    }
    Ok(probs)
}

/// Gate counts for synthesizing a permutation on one `n`-qubit register.
///
/// Each transposition `(a b)` is realized as a Gray-code chain of
/// multi-controlled X gates walking from `a` to `b` and back, `2 H(a, b) - 1`
/// gates with `n - 1` controls each, where `H` is the Hamming distance. The
/// ancilla-assisted alternative is reported as a flat 4 CX + 4 Toffoli per
/// transposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GateCostReport {
    pub n_transpositions: usize,
    pub n_mcx: usize,
    pub max_controls: usize,
    pub ancilla_cx: usize,
    pub ancilla_toffoli: usize,
}

/// MCX count for one transposition under the Gray-code model.
pub fn transposition_mcx_count(a: usize, b: usize) -> usize {
    let distance = (a ^ b).count_ones() as usize;
    if distance == 0 {
        0
    } else {
        2 * distance - 1
    }
}

/// The Gray-code walk from `a` to `b` flips differing bits from the most
/// significant down; returns the visited indices, `a` first and `b` last.
pub fn gray_chain(a: usize, b: usize) -> Vec<usize> {
    let mut chain = vec![a];
    let mut current = a;
    let mut diff = a ^ b;
    while diff != 0 {
        let top = 1 << (usize::BITS - 1 - diff.leading_zeros());
        current ^= top;
        diff ^= top;
        chain.push(current);
    }
    chain
}

pub fn gate_cost(p: &Permutation) -> Result<GateCostReport> {
    let size = p.size();
    if size == 0 || !size.is_power_of_two() {
        return Err(Error::invalid(format!("size {size} is not a power of two")));
    }
    let n = size.trailing_zeros() as usize;
    let pairs = p.cycle_decomposition().transpositions();
    let n_mcx = pairs
        .iter()
        .map(|&(a, b)| transposition_mcx_count(a, b))
        .sum();
    Ok(GateCostReport {
        n_transpositions: pairs.len(),
        n_mcx,
        max_controls: if pairs.is_empty() {
            0
        } else {
            n.saturating_sub(1)
        },
        ancilla_cx: 4 * pairs.len(),
        ancilla_toffoli: 4 * pairs.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate_barbell;
    use crate::perm::transposition;

    #[test]
    fn prepare_barbell() {
        let x = generate_barbell(15, 2).unwrap();
        let s = prepare(&x).unwrap();
        assert_eq!(s.amplitudes().len(), 1024);
        let nonzero: Vec<f64> = s
            .amplitudes()
            .iter()
            .cloned()
            .filter(|&a| a != 0.0)
            .collect();
        assert_eq!(nonzero.len(), 426);
        let want = 1.0 / 426f64.sqrt();
        assert!(nonzero.iter().all(|a| (a - want).abs() < 1e-15));
        assert!((s.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn single_edge_state() {
        let mut x = AdjacencyMatrix::zeros(4);
        x.set_symmetric(1, 2, 1.0).unwrap();
        let s = prepare(&x).unwrap();
        let nz: Vec<_> = s.amplitudes().iter().filter(|&&a| a != 0.0).collect();
        assert_eq!(nz.len(), 2);
        assert!(nz.iter().all(|&&a| (a - 0.5f64.sqrt()).abs() < 1e-15));
        assert!(matches!(
            prepare(&AdjacencyMatrix::zeros(4)),
            Err(Error::ZeroMatrix)
        ));
    }

    #[test]
    fn barbell_group_probabilities() {
        let x = generate_barbell(15, 2).unwrap();
        let g = QubitGroup::new(5, vec![0, 5]).unwrap();
        let probs = measure_group(&prepare(&x).unwrap(), &g).unwrap();
        let want = [212.0 / 426.0, 1.0 / 426.0, 1.0 / 426.0, 212.0 / 426.0];
        for (p, w) in probs.iter().zip(want) {
            assert!((p - w).abs() < 1e-12);
        }
    }

    #[test]
    fn full_register_is_squared_amplitudes() {
        let x = generate_barbell(3, 0).unwrap();
        let s = prepare(&x).unwrap();
        let g = QubitGroup::new(3, (0..6).collect()).unwrap();
        let probs = measure_group(&s, &g).unwrap();
        for (p, a) in probs.iter().zip(s.amplitudes()) {
            assert_eq!(*p, a * a);
        }
    }

    #[test]
    fn permutation_round_trip() {
        let x = generate_barbell(3, 1).unwrap();
        let s = prepare(&x).unwrap();
        let p = Permutation::from_map(vec![3, 0, 7, 1, 2, 6, 5, 4]).unwrap();
        let t = apply_symmetric_permutation(&s, &p).unwrap();
        assert_eq!(t.norm(), s.norm());
        assert_eq!(apply_symmetric_permutation(&t, &p.inverse()).unwrap(), s);
        assert_eq!(
            apply_symmetric_permutation(&s, &Permutation::identity(8)).unwrap(),
            s
        );
        assert_eq!(t, prepare(&x.conjugate(&p).unwrap()).unwrap());
        assert!(apply_symmetric_permutation(&s, &Permutation::identity(4)).is_err());
    }

    #[test]
    fn gate_costs() {
        assert_eq!(
            gate_cost(&transposition(4, 5, 8).unwrap()).unwrap().n_mcx,
            1
        );
        let r = gate_cost(&transposition(0, 3, 4).unwrap()).unwrap();
        assert_eq!((r.n_transpositions, r.n_mcx, r.max_controls), (1, 3, 1));
        let id = gate_cost(&Permutation::identity(16)).unwrap();
        assert_eq!((id.n_transpositions, id.n_mcx, id.max_controls), (0, 0, 0));
        let cyc = Permutation::from_cycles(8, &[vec![0, 1, 2]]).unwrap();
        // (0 1 2) = (0 2)(0 1): H(0,2)=1, H(0,1)=1.
        assert_eq!(gate_cost(&cyc).unwrap().n_mcx, 2);
        assert!(gate_cost(&Permutation::identity(6)).is_err());
    }

    #[test]
    fn gray_chain_steps_one_bit() {
        assert_eq!(gray_chain(0, 3), vec![0, 2, 3]);
        let chain = gray_chain(0b1010, 0b0101);
        assert_eq!(chain.len(), 5);
        assert!(chain.windows(2).all(|w| (w[0] ^ w[1]).count_ones() == 1));
        assert_eq!(*chain.last().unwrap(), 0b0101);
    }
}
