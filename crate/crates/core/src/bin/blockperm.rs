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

//! Command-line front end; every subcommand forwards to `blockperm::commands`.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use blockperm::commands::{self, CommandOutput, InstanceSpec, Preset};
use blockperm::optimizer::Mode;

#[derive(Parser)]
#[command(
    name = "blockperm",
    version,
    about = "Blockmodeling by permutation search"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SeedArg {
    /// Random seed.
    #[arg(long, env = "BLOCKPERM_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance; writes matrix.csv and edges.txt.
    Generate {
        /// Barbell graph: CLIQUE_SIZE PATH_LENGTH.
        #[arg(long, num_args = 2, value_names = ["CLIQUE", "PATH"])]
        barbell: Option<Vec<usize>>,
        /// Planted partition block sizes, comma separated.
        #[arg(long, value_delimiter = ',')]
        planted: Option<Vec<usize>>,
        #[arg(long, default_value_t = 0.9)]
        p_in: f64,
        #[arg(long, default_value_t = 0.05)]
        p_out: f64,
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long)]
        preset: Option<String>,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Relabel rows and columns with a seeded random permutation.
    Shuffle {
        /// Matrix CSV or edge list.
        input: PathBuf,
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Print the block distribution and fitness of a matrix.
    Encode {
        input: Option<PathBuf>,
        #[arg(long)]
        preset: Option<String>,
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        expected: Option<String>,
        /// Write one PGM pattern mask per outcome into this directory.
        #[arg(long)]
        masks: Option<PathBuf>,
    },
    /// Search for a row/column permutation maximizing the fitness.
    Optimize {
        input: Option<PathBuf>,
        #[arg(long)]
        preset: Option<String>,
        /// Shuffle seed for preset instances.
        #[arg(long)]
        shuffle_seed: Option<u64>,
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        expected: Option<String>,
        #[arg(long, default_value = "random_pab")]
        mode: Mode,
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long, default_value_t = 100_000)]
        max_iters: usize,
        #[arg(long, default_value_t = 1)]
        batch_size: usize,
        #[arg(long)]
        stop_fitness: Option<f64>,
        /// Non-improving iterations before stopping; 0 disables (default 10 N^2).
        #[arg(long)]
        stall_window: Option<usize>,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Statevector probabilities of a qubit group, checked against block sums.
    Simulate {
        input: Option<PathBuf>,
        #[arg(long)]
        preset: Option<String>,
        /// File holding one line of permutation images.
        #[arg(long)]
        permutation: Option<PathBuf>,
        #[arg(long)]
        group: Option<String>,
    },
    /// Render fitness.svg from a trace and heatmap.svg from a matrix.
    Plot {
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long)]
        matrix: Option<PathBuf>,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

fn preset(name: Option<String>) -> blockperm::Result<Option<Preset>> {
    name.as_deref().map(Preset::parse).transpose()
}

fn dispatch(command: Command) -> blockperm::Result<CommandOutput> {
    match command {
        Command::Generate {
            barbell,
            planted,
            p_in,
            p_out,
            seed,
            preset: name,
            out,
        } => {
            let spec = match (barbell, planted, preset(name)?) {
                (Some(b), None, None) => InstanceSpec::Barbell {
                    clique_size: b[0],
                    path_length: b[1],
                },
                (None, Some(block_sizes), None) => InstanceSpec::Planted {
                    block_sizes,
                    p_in,
                    p_out,
                    seed: seed.seed,
                },
                (None, None, Some(p)) => InstanceSpec::Preset(p),
                _ => {
                    return Err(blockperm::Error::InvalidArgument(
                        "choose exactly one of --barbell, --planted, --preset".into(),
                    ))
                }
            };
            commands::generate(&spec, &out)
        }
        Command::Shuffle { input, seed, out } => commands::shuffle(&input, seed.seed, &out),
        Command::Encode {
            input,
            preset: name,
            group,
            expected,
            masks,
        } => commands::encode(&commands::EncodeArgs {
            input,
            preset: preset(name)?,
            group,
            expected,
            masks,
        }),
        Command::Optimize {
            input,
            preset: name,
            shuffle_seed,
            group,
            expected,
            mode,
            seed,
            max_iters,
            batch_size,
            stop_fitness,
            stall_window,
            out,
        } => commands::optimize(&commands::OptimizeArgs {
            input,
            preset: preset(name)?,
            shuffle_seed,
            group,
            expected,
            mode,
            seed: seed.seed,
            max_iters,
            batch_size,
            stop_fitness,
            stall_window,
            out,
        }),
        Command::Simulate {
            input,
            preset: name,
            permutation,
            group,
        } => commands::simulate(&commands::SimulateArgs {
            input,
            preset: preset(name)?,
            permutation,
            group,
        }),
        Command::Plot { trace, matrix, out } => {
            commands::plot(&commands::PlotArgs { trace, matrix, out })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(output) => {
            print!("{}", output.stdout);
            for warning in &output.warnings {
                eprintln!("warning: {warning}");
            }
            ExitCode::from(output.exit_code as u8)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::FAILURE
        }
    }
}
