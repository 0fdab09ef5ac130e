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

//! Trace, summary and probability-vector file formats.

use std::io::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::optimizer::{FitnessTrace, TraceRecord};

pub const TRACE_HEADER: &str = "iter,a,b,candidate_fitness,best_fitness,accepted";

/// Writes `bytes` to a temporary file beside `path`, then renames it over `path`.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(dir, e))?;
    tmp.write_all(bytes).map_err(|e| Error::io(path, e))?;
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}

/// Formats `x` with `digits` significant digits, like C's `%.{digits}g`.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// JSON array of numbers at 12 significant digits.
pub fn probability_json(values: &[f64]) -> String {
    let parts: Vec<String> = values.iter().map(|&v| format_sig(v, 12)).collect();
    format!("[{}]", parts.join(","))
}

pub fn trace_csv_text(records: &[TraceRecord]) -> String {
    let mut out = String::with_capacity(32 * (records.len() + 1));
    out.push_str(TRACE_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.iter,
            r.a,
            r.b,
            format_sig(r.candidate_fitness, 12),
            format_sig(r.best_fitness, 12),
            u8::from(r.accepted)
        ));
    }
    out
}

pub fn write_trace_csv(records: &[TraceRecord], path: &Path) -> Result<()> {
    write_atomic(path, trace_csv_text(records).as_bytes())
}

#[derive(Debug, Deserialize)]
struct TraceRow {
    iter: usize,
    a: usize,
    b: usize,
    candidate_fitness: f64,
    best_fitness: f64,
    accepted: u8,
}

pub fn parse_trace_csv(text: &str, path: &Path) -> Result<Vec<TraceRecord>> {
    let mut reader = csv::ReaderBuilder::new().from_reader(text.as_bytes());
    let header: Vec<String> = reader.headers()?.iter().map(str::to_string).collect();
    if header.join(",") != TRACE_HEADER {
        return Err(Error::Parse {
            path: path.to_path_buf(),
            line: 1,
            message: format!("expected header {TRACE_HEADER:?}"),
        });
    }
    reader
        .deserialize::<TraceRow>()
        .enumerate()
        .map(|(i, row)| {
            let row = row.map_err(|e| Error::Parse {
                path: path.to_path_buf(),
                line: i + 2,
                message: e.to_string(),
            })?;
            Ok(TraceRecord {
                iter: row.iter,
                a: row.a,
                b: row.b,
                candidate_fitness: row.candidate_fitness,
                best_fitness: row.best_fitness,
                accepted: row.accepted != 0,
            })
        })
        .collect()
}

pub fn read_trace_csv(path: &Path) -> Result<Vec<TraceRecord>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_trace_csv(&text, path)
}

/// Run summary written next to the trace.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub mode: String,
    pub seed: u64,
    pub iters_run: usize,
    pub best_fitness: f64,
    pub final_raw: Vec<f64>,
    pub permutation: Vec<usize>,
    pub initial_fitness: f64,
    pub stop_reason: String,
    pub accepted_moves: usize,
    pub group: Vec<usize>,
    pub expected: Vec<f64>,
    /// Seed used to shuffle a generated instance, when the run built one.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub shuffle_seed: Option<u64>,
}

impl RunSummary {
    pub fn from_trace(trace: &FitnessTrace, group: &[usize], expected: &[f64]) -> Self {
        RunSummary {
            mode: trace.mode.to_string(),
            seed: trace.seed,
            iters_run: trace.iters_run,
            best_fitness: trace.best_fitness,
            final_raw: trace.final_raw.raw().to_vec(),
            permutation: trace.final_permutation.as_slice().to_vec(),
            initial_fitness: trace.initial_fitness,
            stop_reason: trace.stop_reason.as_str().to_string(),
            accepted_moves: trace.accepted().count(),
            group: group.to_vec(),
            expected: expected.to_vec(),
            shuffle_seed: None,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }
}
