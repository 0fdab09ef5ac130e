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

//! Problem instances: dense symmetric nonnegative matrices padded to a
//! power-of-two dimension.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::io::write_atomic;
use crate::perm::Permutation;
use crate::rng;

/// Dense symmetric nonnegative `N x N` matrix with `N = 2^n`.
///
/// Rows and columns at or past `n_nodes` are zero padding.
#[derive(Clone, Debug, PartialEq)]
pub struct AdjacencyMatrix {
    n_nodes: usize,
    size: usize,
    entries: Vec<f64>,
}

/// Smallest power of two that holds `n_nodes`, never below 2 so that the
/// register has at least one qubit.
pub fn padded_size(n_nodes: usize) -> usize {
    n_nodes.max(2).next_power_of_two()
}

impl AdjacencyMatrix {
    /// All-zero matrix for `n_nodes` nodes, padded.
    pub fn zeros(n_nodes: usize) -> Self {
        let size = padded_size(n_nodes);
        AdjacencyMatrix {
            n_nodes,
            size,
            entries: vec![0.0; size * size],
        }
    }

    /// Builds a matrix from square rows, validating symmetry and entries,
    /// and pads to the next power of two.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let mut m = AdjacencyMatrix::zeros(n);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            for (c, &value) in row.iter().enumerate() {
                if !value.is_finite() || value < 0.0 {
                    return Err(Error::InvalidEntry {
                        row: r,
                        col: c,
                        value,
                    });
                }
                m.entries[r * m.size + c] = value;
            }
        }
        m.check_symmetric()?;
        Ok(m)
    }

    fn check_symmetric(&self) -> Result<()> {
        for r in 0..self.size {
            for c in r + 1..self.size {
                if self.get(r, c) != self.get(c, r) {
                    return Err(Error::NotSymmetric { row: r, col: c });
                }
            }
        }
        Ok(())
    }

    /// Node count before padding.
    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    /// Padded dimension `N`.
    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    /// Qubits per register, `n = log2 N`.
    pub fn n_qubits(&self) -> u32 {
        self.size.trailing_zeros()
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.size + col]
    }

    /// Row-major entries, length `N * N`.
    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.entries[row * self.size..(row + 1) * self.size]
    }

    /// Sets an undirected entry (both `(u, v)` and `(v, u)`).
    pub fn set_symmetric(&mut self, u: usize, v: usize, value: f64) -> Result<()> {
        for index in [u, v] {
            if index >= self.size {
                return Err(Error::IndexOutOfRange {
                    index,
                    size: self.size,
                });
            }
        }
        if !value.is_finite() || value < 0.0 {
            return Err(Error::InvalidEntry {
                row: u,
                col: v,
                value,
            });
        }
        self.entries[u * self.size + v] = value;
        self.entries[v * self.size + u] = value;
        Ok(())
    }

    pub fn total_sum(&self) -> f64 {
        self.entries.iter().sum()
    }

    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.size).map(|r| self.row(r).iter().sum()).collect()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// True when every entry is exactly 0 or 1.
    pub fn is_binary(&self) -> bool {
        self.entries.iter().all(|&v| v == 0.0 || v == 1.0)
    }

    pub fn is_symmetric(&self) -> bool {
        self.check_symmetric().is_ok()
    }

    /// Number of undirected edges (nonzero entries on or above the diagonal).
    pub fn edge_count(&self) -> usize {
        (0..self.size)
            .map(|r| (r..self.size).filter(|&c| self.get(r, c) != 0.0).count())
            .sum()
    }

    /// Swaps rows `a`, `b` and columns `a`, `b` in place.
    pub fn swap_symmetric(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let n = self.size;
        for c in 0..n {
            self.entries.swap(a * n + c, b * n + c);
        }
        for r in 0..n {
            self.entries.swap(r * n + a, r * n + b);
        }
    }

    /// Simultaneous relabeling `P X P^T`: entry `(r, c)` moves to `(p(r), p(c))`.
    pub fn conjugate(&self, p: &Permutation) -> Result<AdjacencyMatrix> {
        if p.size() != self.size {
            return Err(Error::DimensionMismatch {
                expected: self.size,
                found: p.size(),
            });
        }
        let n = self.size;
        let mut entries = vec![0.0; n * n];
        for r in 0..n {
            let pr = p.apply(r) * n;
            for c in 0..n {
                entries[pr + p.apply(c)] = self.entries[r * n + c];
            }
        }
        Ok(AdjacencyMatrix {
            n_nodes: self.n_nodes,
            size: n,
            entries,
        })
    }
}

/// Two `clique_size` cliques joined by a path of `path_length` nodes.
///
/// Node order is clique one, path, clique two, so the unshuffled matrix has
/// both cliques on the diagonal.
pub fn generate_barbell(clique_size: usize, path_length: usize) -> Result<AdjacencyMatrix> {
    if clique_size < 3 {
        return Err(Error::invalid(format!(
            "clique_size must be at least 3, got {clique_size}"
        )));
    }
    let n_nodes = 2 * clique_size + path_length;
    let mut m = AdjacencyMatrix::zeros(n_nodes);
    let second = clique_size + path_length;
    for offset in [0, second] {
        for u in offset..offset + clique_size {
            for v in u + 1..offset + clique_size {
                m.set_symmetric(u, v, 1.0)?;
            }
        }
    }
    // Chain from the last node of clique one through the path into clique two.
    for u in clique_size - 1..second {
        m.set_symmetric(u, u + 1, 1.0)?;
    }
    Ok(m)
}

/// Planted-partition random graph: nodes laid out block by block, each pair
/// joined with probability `p_in` inside a block and `p_out` across blocks.
pub fn generate_planted_blocks(
    block_sizes: &[usize],
    p_in: f64,
    p_out: f64,
    seed: u64,
) -> Result<AdjacencyMatrix> {
    if block_sizes.is_empty() {
        return Err(Error::invalid("block list is empty"));
    }
    if !(0.0..=1.0).contains(&p_in) || !(0.0..=1.0).contains(&p_out) || p_out > p_in {
        return Err(Error::invalid(format!(
            "need 0 <= p_out <= p_in <= 1, got p_in={p_in}, p_out={p_out}"
        )));
    }
    let labels: Vec<usize> = block_sizes
        .iter()
        .enumerate()
        .flat_map(|(block, &len)| std::iter::repeat_n(block, len))
        .collect();
    let mut m = AdjacencyMatrix::zeros(labels.len());
    let mut rng = rng::seeded(seed);
    for u in 0..labels.len() {
        for v in u + 1..labels.len() {
            let p = if labels[u] == labels[v] { p_in } else { p_out };
            if rng::bernoulli(&mut rng, p) {
                m.set_symmetric(u, v, 1.0)?;
            }
        }
    }
    Ok(m)
}

/// Uniform random permutation of `0..size` by Fisher-Yates.
pub fn random_permutation(size: usize, seed: u64) -> Permutation {
    let mut rng = rng::seeded(seed);
    let mut map: Vec<usize> = (0..size).collect();
    for i in (1..size).rev() {
        let j = rng::uniform_index(&mut rng, i + 1);
        map.swap(i, j);
    }
    Permutation::from_map(map).expect("shuffled identity is a bijection")
}

/// Relabels every index (padding included) with a seeded random permutation.
///
/// Returns the shuffled matrix and the permutation `p` with
/// `shuffled = P X P^T`; conjugating by `p.inverse()` restores `matrix`.
pub fn shuffle(matrix: &AdjacencyMatrix, seed: u64) -> (AdjacencyMatrix, Permutation) {
    let p = random_permutation(matrix.size(), seed);
    let shuffled = matrix.conjugate(&p).expect("sizes match");
    (shuffled, p)
}

fn parse_err(path: &Path, line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        line,
        message: message.into(),
    }
}

/// Parses the edge-list text format.
///
/// First significant line is `nodes <count>`, then one `u v [w]` per line
/// (0-indexed, undirected, each edge listed once). Blank lines and lines
/// starting with `#` are skipped.
pub fn parse_edge_list(text: &str, path: &Path) -> Result<AdjacencyMatrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines
        .next()
        .ok_or_else(|| parse_err(path, 1, "missing `nodes <count>` header"))?;
    let mut parts = header.split_whitespace();
    let n_nodes = match (parts.next(), parts.next(), parts.next()) {
        (Some("nodes"), Some(count), None) => count
            .parse::<usize>()
            .map_err(|_| parse_err(path, header_line, format!("bad node count {count:?}")))?,
        _ => {
            return Err(parse_err(
                path,
                header_line,
                "expected header `nodes <count>`",
            ))
        }
    };
    if n_nodes == 0 {
        return Err(parse_err(path, header_line, "node count must be positive"));
    }

    let mut m = AdjacencyMatrix::zeros(n_nodes);
    let mut seen = vec![false; m.size * m.size];
    for (line_no, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if !(2..=3).contains(&fields.len()) {
            return Err(parse_err(path, line_no, "expected `u v [w]`"));
        }
        let index = |tok: &str| -> Result<usize> {
            let i = tok
                .parse::<usize>()
                .map_err(|_| parse_err(path, line_no, format!("bad node index {tok:?}")))?;
            if i >= n_nodes {
                return Err(parse_err(
                    path,
                    line_no,
                    format!("node {i} out of range for {n_nodes} declared nodes"),
                ));
            }
            Ok(i)
        };
        let u = index(fields[0])?;
        let v = index(fields[1])?;
        let w = match fields.get(2) {
            Some(tok) => tok
                .parse::<f64>()
                .ok()
                .filter(|w| w.is_finite() && *w >= 0.0)
                .ok_or_else(|| parse_err(path, line_no, format!("bad weight {tok:?}")))?,
            None => 1.0,
        };
        let key = u * m.size + v;
        if seen[key] && m.get(u, v) != w {
            return Err(parse_err(
                path,
                line_no,
                format!("edge ({u}, {v}) listed again with conflicting weight {w}"),
            ));
        }
        seen[key] = true;
        seen[v * m.size + u] = true;
        m.set_symmetric(u, v, w)?;
    }
    Ok(m)
}

pub fn load_edge_list(path: impl AsRef<Path>) -> Result<AdjacencyMatrix> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_edge_list(&text, path)
}

/// Writes a matrix entry as an exact integer when it is one.
pub fn format_entry(value: f64) -> String {
    if value.fract() == 0.0 && value.abs() < 1e15 {
        format!("{}", value as i64)
    } else {
        format!("{value}")
    }
}

pub fn edge_list_text(matrix: &AdjacencyMatrix) -> String {
    let mut out = format!("nodes {}\n", matrix.n_nodes().max(1));
    for u in 0..matrix.size() {
        for v in u..matrix.size() {
            let w = matrix.get(u, v);
            if w == 0.0 {
                continue;
            }
            if w == 1.0 {
                writeln!(out, "{u} {v}").unwrap();
            } else {
                writeln!(out, "{u} {v} {}", format_entry(w)).unwrap();
            }
        }
    }
    out
}

pub fn save_edge_list(matrix: &AdjacencyMatrix, path: impl AsRef<Path>) -> Result<()> {
    write_atomic(path.as_ref(), edge_list_text(matrix).as_bytes())
}

/// CSV text: `N` rows of `N` comma-separated numbers, no header.
pub fn matrix_csv_text(matrix: &AdjacencyMatrix) -> String {
    let mut out = String::with_capacity(matrix.size() * matrix.size() * 2);
    for r in 0..matrix.size() {
        let row: Vec<String> = matrix.row(r).iter().map(|&v| format_entry(v)).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn save_matrix(matrix: &AdjacencyMatrix, path: impl AsRef<Path>) -> Result<()> {
    write_atomic(path.as_ref(), matrix_csv_text(matrix).as_bytes())
}

pub fn parse_matrix_csv(text: &str, path: &Path) -> Result<AdjacencyMatrix> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| parse_err(path, i + 1, e.to_string()))?;
        let row = record
            .iter()
            .map(|tok| {
                tok.parse::<f64>()
                    .map_err(|_| parse_err(path, i + 1, format!("bad number {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(parse_err(path, 1, "empty matrix"));
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != rows.len() {
            return Err(parse_err(
                path,
                i + 1,
                format!("expected {} columns, found {}", rows.len(), row.len()),
            ));
        }
    }
    AdjacencyMatrix::from_rows(&rows)
}

pub fn load_matrix(path: impl AsRef<Path>) -> Result<AdjacencyMatrix> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_matrix_csv(&text, path)
}
