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

//! Command implementations behind the `blockperm` binary.
//!
//! Each command takes a plain argument struct, writes its files, and returns
//! the text to print together with the process exit code. Flag parsing lives
//! in the binary.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::encoding::{block_distribution, pattern_mask, QubitGroup};
use crate::error::{Error, Result};
use crate::fitness::{default_expected, evaluate, ExpectedDistribution};
use crate::graph::{self, AdjacencyMatrix};
use crate::io::{self, format_sig, probability_json, RunSummary};
use crate::optimizer::{self, default_stall_window, Mode, OptimizerConfig};
use crate::perm::Permutation;
use crate::plot;
use crate::simulator;

/// Exit code when the statevector and block-sum paths disagree.
pub const EXIT_ORACLE_MISMATCH: i32 = 2;
/// Agreement required between the two paths in `simulate`.
pub const ORACLE_TOLERANCE: f64 = 1e-12;
/// Shuffle seed used by presets when none is given.
pub const DEFAULT_SHUFFLE_SEED: u64 = 42;

#[derive(Clone, Debug, Default)]
pub struct CommandOutput {
    pub stdout: String,
    pub warnings: Vec<String>,
    pub exit_code: i32,
}

impl CommandOutput {
    fn ok(stdout: String) -> Self {
        CommandOutput {
            stdout,
            ..Default::default()
        }
    }
}

/// Named experiment configurations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    /// 32-node barbell (two 15-cliques joined by a 2-node path), group
    /// `(0, 5)`, expected `[0.5, 0, 0, 0.5]`.
    BarbellPaper,
}

impl Preset {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "barbell-paper" => Ok(Preset::BarbellPaper),
            other => Err(Error::invalid(format!("unknown preset {other:?}"))),
        }
    }

    pub fn instance(self) -> Result<AdjacencyMatrix> {
        match self {
            Preset::BarbellPaper => graph::generate_barbell(15, 2),
        }
    }

    pub fn group(self) -> &'static str {
        match self {
            Preset::BarbellPaper => "0,5",
        }
    }

    pub fn expected(self) -> &'static str {
        match self {
            Preset::BarbellPaper => "0.5,0,0,0.5",
        }
    }
}

/// Loads a matrix CSV (`.csv`) or an edge list (anything else).
pub fn load_instance(path: &Path) -> Result<AdjacencyMatrix> {
    if path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"))
    {
        graph::load_matrix(path)
    } else {
        graph::load_edge_list(path)
    }
}

fn create_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}

fn resolve_group(n: u32, group: Option<&str>, preset: Option<Preset>) -> Result<QubitGroup> {
    match (group, preset) {
        (Some(list), _) => QubitGroup::parse(n, list),
        (None, Some(p)) => QubitGroup::parse(n, p.group()),
        // Row MSB and column MSB: the two-block quadrant split.
        (None, None) => QubitGroup::new(n, vec![0, n as usize]),
    }
}

fn resolve_expected(
    group: &QubitGroup,
    expected: Option<&str>,
    preset: Option<Preset>,
) -> Result<ExpectedDistribution> {
    match (expected, preset) {
        (Some(list), _) => ExpectedDistribution::parse(list),
        (None, Some(p)) if group.k() == 2 => ExpectedDistribution::parse(p.expected()),
        _ => default_expected(group.k(), 1 << (group.k() / 2)).map_err(|_| {
            Error::invalid(format!(
                "no default expected distribution for a {}-qubit group; pass --expected",
                group.k()
            ))
        }),
    }
}

fn list_f64(values: &[f64]) -> String {
    let parts: Vec<String> = values.iter().map(|&v| graph::format_entry(v)).collect();
    format!("[{}]", parts.join(", "))
}

#[derive(Clone, Debug, PartialEq)]
pub enum InstanceSpec {
    Barbell {
        clique_size: usize,
        path_length: usize,
    },
    Planted {
        block_sizes: Vec<usize>,
        p_in: f64,
        p_out: f64,
        seed: u64,
    },
    Preset(Preset),
}

impl InstanceSpec {
    pub fn build(&self) -> Result<AdjacencyMatrix> {
        match self {
            InstanceSpec::Barbell {
                clique_size,
                path_length,
            } => graph::generate_barbell(*clique_size, *path_length),
            InstanceSpec::Planted {
                block_sizes,
                p_in,
                p_out,
                seed,
            } => graph::generate_planted_blocks(block_sizes, *p_in, *p_out, *seed),
            InstanceSpec::Preset(p) => p.instance(),
        }
    }
}

/// `generate`: writes `matrix.csv` and `edges.txt`.
pub fn generate(spec: &InstanceSpec, out: &Path) -> Result<CommandOutput> {
    let matrix = spec.build()?;
    create_dir(out)?;
    let matrix_path = out.join("matrix.csv");
    let edges_path = out.join("edges.txt");
    graph::save_matrix(&matrix, &matrix_path)?;
    graph::save_edge_list(&matrix, &edges_path)?;
    Ok(CommandOutput::ok(format!(
        "nodes {} padded to {} ({} edges, total {})\nwrote {}\nwrote {}\n",
        matrix.n_nodes(),
        matrix.size(),
        matrix.edge_count(),
        graph::format_entry(matrix.total_sum()),
        matrix_path.display(),
        edges_path.display()
    )))
}

/// `shuffle`: writes the conjugated `matrix.csv` and `permutation.txt`.
pub fn shuffle(input: &Path, seed: u64, out: &Path) -> Result<CommandOutput> {
    let matrix = load_instance(input)?;
    let (shuffled, p) = graph::shuffle(&matrix, seed);
    create_dir(out)?;
    let matrix_path = out.join("matrix.csv");
    let perm_path = out.join("permutation.txt");
    graph::save_matrix(&shuffled, &matrix_path)?;
    io::write_atomic(&perm_path, format!("{}\n", p.to_line()).as_bytes())?;
    Ok(CommandOutput::ok(format!(
        "seed {seed}\nwrote {}\nwrote {}\n",
        matrix_path.display(),
        perm_path.display()
    )))
}

#[derive(Clone, Debug, Default)]
pub struct EncodeArgs {
    pub input: Option<PathBuf>,
    pub preset: Option<Preset>,
    pub group: Option<String>,
    pub expected: Option<String>,
    /// Directory for one PGM mask per outcome.
    pub masks: Option<PathBuf>,
}

fn instance_from(input: Option<&Path>, preset: Option<Preset>) -> Result<AdjacencyMatrix> {
    match (input, preset) {
        (Some(path), _) => load_instance(path),
        (None, Some(p)) => p.instance(),
        (None, None) => Err(Error::invalid("an input file or --preset is required")),
    }
}

/// `encode`: block distribution and fitness of one matrix.
pub fn encode(args: &EncodeArgs) -> Result<CommandOutput> {
    let matrix = instance_from(args.input.as_deref(), args.preset)?;
    let group = resolve_group(matrix.n_qubits(), args.group.as_deref(), args.preset)?;
    let expected = resolve_expected(&group, args.expected.as_deref(), args.preset)?;
    let state = evaluate(&matrix, &group, &expected)?;
    let mut out = String::new();
    writeln!(out, "group {:?}", group.qubits()).unwrap();
    writeln!(out, "raw {}", list_f64(state.raw().raw())).unwrap();
    writeln!(out, "total {}", graph::format_entry(state.raw().total())).unwrap();
    if let Some(norm) = state.raw().normalized() {
        writeln!(out, "normalized {}", probability_json(&norm)).unwrap();
    }
    writeln!(out, "fitness {:.6}", state.fitness()).unwrap();
    let mut output = CommandOutput::ok(out);
    if state.is_degenerate() {
        output
            .warnings
            .push("matrix has no mass; fitness fixed at 0".to_string());
    }
    if let Some(dir) = &args.masks {
        create_dir(dir)?;
        for outcome in 0..group.outcome_count() {
            let mask = pattern_mask(&group, outcome)?;
            let name = format!("mask_{:0width$b}.pgm", outcome, width = group.k());
            io::write_atomic(&dir.join(name), mask.to_pgm().as_bytes())?;
        }
        writeln!(
            output.stdout,
            "wrote {} masks to {}",
            group.outcome_count(),
            dir.display()
        )
        .unwrap();
    }
    Ok(output)
}

#[derive(Clone, Debug)]
pub struct OptimizeArgs {
    pub input: Option<PathBuf>,
    pub preset: Option<Preset>,
    /// Shuffle applied to a preset instance before searching.
    pub shuffle_seed: Option<u64>,
    pub group: Option<String>,
    pub expected: Option<String>,
    pub mode: Mode,
    pub seed: u64,
    pub max_iters: usize,
    pub batch_size: usize,
    pub stop_fitness: Option<f64>,
    /// `None` uses the default window; `Some(0)` disables stall detection.
    pub stall_window: Option<usize>,
    pub out: PathBuf,
}

impl OptimizeArgs {
    pub fn new(out: impl Into<PathBuf>) -> Self {
        OptimizeArgs {
            input: None,
            preset: None,
            shuffle_seed: None,
            group: None,
            expected: None,
            mode: Mode::RandomPab,
            seed: 0,
            max_iters: 100_000,
            batch_size: 1,
            stop_fitness: None,
            stall_window: None,
            out: out.into(),
        }
    }
}

/// `optimize`: writes `trace.csv`, `summary.json`, `matrix.csv` and
/// `permutation.txt`.
pub fn optimize(args: &OptimizeArgs) -> Result<CommandOutput> {
    let (matrix, shuffle_seed) = match (&args.input, args.preset) {
        (Some(path), _) => (load_instance(path)?, None),
        (None, Some(p)) => {
            let seed = args.shuffle_seed.unwrap_or(DEFAULT_SHUFFLE_SEED);
            (graph::shuffle(&p.instance()?, seed).0, Some(seed))
        }
        (None, None) => return Err(Error::invalid("an input file or --preset is required")),
    };
    let group = resolve_group(matrix.n_qubits(), args.group.as_deref(), args.preset)?;
    let expected = resolve_expected(&group, args.expected.as_deref(), args.preset)?;
    let mut config =
        OptimizerConfig::new(args.mode, args.max_iters, args.seed).with_batch_size(args.batch_size);
    config.stop_fitness = args.stop_fitness;
    config.stall_window = match args.stall_window {
        None => Some(default_stall_window(matrix.size())),
        Some(0) => None,
        Some(w) => Some(w),
    };
    let trace = optimizer::run(&matrix, &group, &expected, &config)?;

    create_dir(&args.out)?;
    let mut summary = RunSummary::from_trace(&trace, group.qubits(), expected.weights());
    summary.shuffle_seed = shuffle_seed;
    io::write_trace_csv(&trace.records, &args.out.join("trace.csv"))?;
    io::write_atomic(
        &args.out.join("summary.json"),
        summary.to_json()?.as_bytes(),
    )?;
    graph::save_matrix(&trace.final_matrix, args.out.join("matrix.csv"))?;
    io::write_atomic(
        &args.out.join("permutation.txt"),
        format!("{}\n", trace.final_permutation.to_line()).as_bytes(),
    )?;

    let mut out = String::new();
    writeln!(out, "mode {} seed {}", trace.mode, trace.seed).unwrap();
    writeln!(
        out,
        "iterations {} ({}), accepted {}",
        trace.iters_run,
        trace.stop_reason.as_str(),
        summary.accepted_moves
    )
    .unwrap();
    writeln!(
        out,
        "fitness {} -> {}",
        format_sig(trace.initial_fitness, 12),
        format_sig(trace.best_fitness, 12)
    )
    .unwrap();
    writeln!(out, "final raw {}", list_f64(trace.final_raw.raw())).unwrap();
    writeln!(out, "wrote {}", args.out.display()).unwrap();
    Ok(CommandOutput::ok(out))
}

#[derive(Clone, Debug, Default)]
pub struct SimulateArgs {
    pub input: Option<PathBuf>,
    pub preset: Option<Preset>,
    pub permutation: Option<PathBuf>,
    pub group: Option<String>,
}

/// `simulate`: statevector probabilities of a group, cross-checked against
/// the block-sum path. Exit code [`EXIT_ORACLE_MISMATCH`] on disagreement.
pub fn simulate(args: &SimulateArgs) -> Result<CommandOutput> {
    let matrix = instance_from(args.input.as_deref(), args.preset)?;
    let group = resolve_group(matrix.n_qubits(), args.group.as_deref(), args.preset)?;
    let permutation = match &args.permutation {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
            Permutation::parse_line(&text)?
        }
        None => Permutation::identity(matrix.size()),
    };
    let state = simulator::prepare(&matrix)?;
    let state = simulator::apply_symmetric_permutation(&state, &permutation)?;
    let probs = simulator::measure_group(&state, &group)?;

    // Squared amplitudes measure squared entries; for 0/1 data that is the
    // matrix itself.
    let conjugated = matrix.conjugate(&permutation)?;
    let mut output = CommandOutput::default();
    let reference = if conjugated.is_binary() {
        conjugated
    } else {
        output.warnings.push(
            "weighted matrix: measured probabilities follow squared entries, \
             while fitness uses raw entry sums"
                .to_string(),
        );
        let rows: Vec<Vec<f64>> = (0..conjugated.size())
            .map(|r| conjugated.row(r).iter().map(|v| v * v).collect())
            .collect();
        AdjacencyMatrix::from_rows(&rows)?
    };
    let blocks = block_distribution(&reference, &group)?
        .normalized()
        .ok_or(Error::ZeroMatrix)?;
    let max_err = probs
        .iter()
        .zip(&blocks)
        .map(|(p, b)| (p - b).abs())
        .fold(0.0, f64::max);
    let cost = simulator::gate_cost(&permutation)?;

    writeln!(output.stdout, "probabilities {}", probability_json(&probs)).unwrap();
    writeln!(output.stdout, "block_path {}", probability_json(&blocks)).unwrap();
    writeln!(output.stdout, "max_abs_error {}", format_sig(max_err, 3)).unwrap();
    writeln!(output.stdout, "gate_cost {}", serde_json::to_string(&cost)?).unwrap();
    if max_err > ORACLE_TOLERANCE {
        output.exit_code = EXIT_ORACLE_MISMATCH;
        output.warnings.push(format!(
            "oracle mismatch: {max_err:e} > {ORACLE_TOLERANCE:e}"
        ));
    }
    Ok(output)
}

#[derive(Clone, Debug, Default)]
pub struct PlotArgs {
    pub trace: Option<PathBuf>,
    pub matrix: Option<PathBuf>,
    pub out: PathBuf,
}

/// `plot`: `fitness.svg` from a trace and/or `heatmap.svg` from a matrix.
pub fn plot(args: &PlotArgs) -> Result<CommandOutput> {
    if args.trace.is_none() && args.matrix.is_none() {
        return Err(Error::invalid("plot needs --trace and/or --matrix"));
    }
    create_dir(&args.out)?;
    let mut out = String::new();
    if let Some(path) = &args.trace {
        let records = io::read_trace_csv(path)?;
        let svg = plot::fitness_curve_svg(&records, "fitness during the search");
        let target = args.out.join("fitness.svg");
        io::write_atomic(&target, svg.as_bytes())?;
        writeln!(out, "wrote {}", target.display()).unwrap();
    }
    if let Some(path) = &args.matrix {
        let matrix = load_instance(path)?;
        let title = format!("{0} x {0} matrix", matrix.size());
        let target = args.out.join("heatmap.svg");
        io::write_atomic(&target, plot::heatmap_svg(&matrix, &title).as_bytes())?;
        writeln!(out, "wrote {}", target.display()).unwrap();
    }
    Ok(CommandOutput::ok(out))
}
