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

//! Permutations of `{0, .., N-1}` stored as dense image tables.
//!
//! `map[i]` is the image of `i`. Composition follows function notation:
//! `p.compose(&q)` applies `q` first, then `p`.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn identity(size: usize) -> Self {
        Permutation {
            map: (0..size).collect(),
        }
    }

    /// Builds a permutation from its image table, checking bijectivity.
    pub fn from_map(map: Vec<usize>) -> Result<Self> {
        let size = map.len();
        let mut seen = vec![false; size];
        for &image in &map {
            if image >= size {
                return Err(Error::NotAPermutation(format!(
                    "image {image} out of range for size {size}"
                )));
            }
            if std::mem::replace(&mut seen[image], true) {
                return Err(Error::NotAPermutation(format!("image {image} repeated")));
            }
        }
        Ok(Permutation { map })
    }

    /// Builds a permutation from disjoint cycles; `(a b c)` sends a to b, b to c, c to a.
    pub fn from_cycles(size: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut map: Vec<usize> = (0..size).collect();
        let mut touched = vec![false; size];
        for cycle in cycles {
            for (pos, &from) in cycle.iter().enumerate() {
                if from >= size {
                    return Err(Error::IndexOutOfRange { index: from, size });
                }
                if std::mem::replace(&mut touched[from], true) {
                    return Err(Error::NotAPermutation(format!(
                        "element {from} appears in more than one cycle position"
                    )));
                }
                map[from] = cycle[(pos + 1) % cycle.len()];
            }
        }
        Ok(Permutation { map })
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.map.len()
    }

    #[inline]
    pub fn apply(&self, index: usize) -> usize {
        self.map[index]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.map
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &m)| i == m)
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.size() != other.size() {
            return Err(Error::DimensionMismatch {
                expected: self.size(),
                found: other.size(),
            });
        }
        Ok(Permutation {
            map: other.map.iter().map(|&i| self.map[i]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.size()];
        for (i, &image) in self.map.iter().enumerate() {
            inv[image] = i;
        }
        Permutation { map: inv }
    }

    /// `self` composed with itself `exponent` times.
    pub fn pow(&self, mut exponent: u64) -> Permutation {
        let mut result = Permutation::identity(self.size());
        let mut base = self.clone();
        while exponent > 0 {
            if exponent & 1 == 1 {
                result = base.compose(&result).expect("same size");
            }
            base = base.compose(&base).expect("same size");
            exponent >>= 1;
        }
        result
    }

    /// In-place right multiplication by the transposition `(a b)`:
    /// swaps the images of `a` and `b`.
    pub fn swap_images(&mut self, a: usize, b: usize) {
        self.map.swap(a, b);
    }

    /// In-place left multiplication by the transposition `(a b)`:
    /// relabels the values `a` and `b` wherever they appear.
    pub fn then_transpose(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for image in self.map.iter_mut() {
            if *image == a {
                *image = b;
            } else if *image == b {
                *image = a;
            }
        }
    }

    pub fn cycle_decomposition(&self) -> CycleDecomposition {
        let mut visited = vec![false; self.size()];
        let mut cycles = Vec::new();
        // Scanning starts in increasing order, so each cycle begins at its
        // smallest element and cycles come out sorted by that element.
        for start in 0..self.size() {
            if visited[start] || self.map[start] == start {
                visited[start] = true;
                continue;
            }
            let mut cycle = Vec::new();
            let mut current = start;
            while !visited[current] {
                visited[current] = true;
                cycle.push(current);
                current = self.map[current];
            }
            cycles.push(cycle);
        }
        CycleDecomposition {
            size: self.size(),
            cycles,
        }
    }

    /// Least common multiple of the cycle lengths; 1 for the identity.
    pub fn order(&self) -> Result<u128> {
        self.cycle_decomposition().order()
    }

    /// Single-line serialization: the images separated by spaces.
    pub fn to_line(&self) -> String {
        let parts: Vec<String> = self.map.iter().map(|i| i.to_string()).collect();
        parts.join(" ")
    }

    pub fn parse_line(line: &str) -> Result<Permutation> {
        let map = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|_| Error::NotAPermutation(format!("bad image {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::from_map(map)
    }
}

/// Disjoint cycles of a permutation, fixed points omitted.
///
/// Canonical form: each cycle starts at its smallest element and cycles are
/// sorted by that element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleDecomposition {
    size: usize,
    cycles: Vec<Vec<usize>>,
}

impl CycleDecomposition {
    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn to_permutation(&self) -> Permutation {
        Permutation::from_cycles(self.size, &self.cycles).expect("cycles are disjoint")
    }

    pub fn order(&self) -> Result<u128> {
        self.cycles.iter().try_fold(1u128, |acc, cycle| {
            let len = cycle.len() as u128;
            let g = acc.gcd(&len);
            (acc / g).checked_mul(len).ok_or(Error::OrderOverflow)
        })
    }

    /// Every cycle expanded into transpositions, in application order
    /// (the first pair is applied first).
    pub fn transpositions(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for cycle in &self.cycles {
            let mut pairs = cycle_to_transpositions(cycle).expect("canonical cycles");
            pairs.reverse();
            out.extend(pairs);
        }
        out
    }
}

impl fmt::Display for CycleDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in &self.cycles {
            f.write_str("(")?;
            for (i, x) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.cycle_decomposition(), f)
    }
}

/// The transposition `P_ab` on `size` points.
pub fn transposition(a: usize, b: usize, size: usize) -> Result<Permutation> {
    for index in [a, b] {
        if index >= size {
            return Err(Error::IndexOutOfRange { index, size });
        }
    }
    let mut p = Permutation::identity(size);
    p.map.swap(a, b);
    Ok(p)
}

/// Writes the cycle `(a1 a2 ... am)` as `(a1 am)(a1 am-1)...(a1 a2)`.
///
/// The returned list is in written order; applying it right to left
/// (last pair first) reproduces the cycle.
pub fn cycle_to_transpositions(cycle: &[usize]) -> Result<Vec<(usize, usize)>> {
    if cycle.len() < 2 {
        return Err(Error::invalid("cycle must have at least two elements"));
    }
    let mut sorted = cycle.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::invalid("cycle has repeated elements"));
    }
    let head = cycle[0];
    Ok(cycle[1..].iter().rev().map(|&x| (head, x)).collect())
}

fn log2_exact(size: usize) -> Result<u32> {
    if size == 0 || !size.is_power_of_two() {
        return Err(Error::invalid(format!("size {size} is not a power of two")));
    }
    Ok(size.trailing_zeros())
}

/// Index mask that toggles the listed qubits of an `n`-qubit register.
///
/// Qubit 0 is the most significant bit, so qubit `q` is bit `n - 1 - q`.
pub fn qubit_mask(qubits: &[usize], n: u32) -> Result<usize> {
    qubits.iter().try_fold(0usize, |mask, &q| {
        if q >= n as usize {
            Err(Error::IndexOutOfRange {
                index: q,
                size: n as usize,
            })
        } else {
            Ok(mask | 1 << (n as usize - 1 - q))
        }
    })
}

/// The bit-flip operator `i -> i XOR flip_mask` on `size = 2^n` points.
pub fn bitflip_perm(flip_mask: usize, size: usize) -> Result<Permutation> {
    log2_exact(size)?;
    if flip_mask >= size {
        return Err(Error::IndexOutOfRange {
            index: flip_mask,
            size,
        });
    }
    Ok(Permutation {
        map: (0..size).map(|i| i ^ flip_mask).collect(),
    })
}

/// Neighbour-swap families.
///
/// Offset 0 is `(0 1)(2 3)...(N-2 N-1)`; offset 1 is `(1 2)(3 4)...(N-1 0)`.
pub fn neighbor_swap_family(offset: usize, size: usize) -> Result<Permutation> {
    if size == 0 || !size.is_multiple_of(2) {
        return Err(Error::invalid(format!(
            "size {size} must be even and nonzero"
        )));
    }
    if offset > 1 {
        return Err(Error::invalid(format!(
            "offset must be 0 or 1, got {offset}"
        )));
    }
    let mut map: Vec<usize> = (0..size).collect();
    for start in (offset..size + offset).step_by(2) {
        let a = start % size;
        let b = (start + 1) % size;
        map.swap(a, b);
    }
    Ok(Permutation { map })
}

/// Index pair swapped by a multi-controlled X on `target_qubit` whose
/// controls are the other `n - 1` qubits fixed to `control_pattern`.
///
/// The pattern lists the control qubits in increasing qubit order, MSB first.
pub fn restricted_mcx_pair(
    control_pattern: usize,
    target_qubit: usize,
    size: usize,
) -> Result<(usize, usize)> {
    let n = log2_exact(size)? as usize;
    if n == 0 {
        return Err(Error::invalid("register must have at least one qubit"));
    }
    if target_qubit >= n {
        return Err(Error::IndexOutOfRange {
            index: target_qubit,
            size: n,
        });
    }
    if control_pattern >= size / 2 {
        return Err(Error::IndexOutOfRange {
            index: control_pattern,
            size: size / 2,
        });
    }
    let target_bit = n - 1 - target_qubit;
    let low = control_pattern & ((1 << target_bit) - 1);
    let high = control_pattern >> target_bit;
    let i = (high << (target_bit + 1)) | low;
    Ok((i, i | 1 << target_bit))
}

pub fn restricted_mcx_move(
    control_pattern: usize,
    target_qubit: usize,
    size: usize,
) -> Result<Permutation> {
    let (a, b) = restricted_mcx_pair(control_pattern, target_qubit, size)?;
    transposition(a, b, size)
}
