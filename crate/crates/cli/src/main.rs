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

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qplace_core::{
    emit_chain_meta, emit_circuit, emit_environment, emit_report, exhaustive_place, fast_graph,
    gen_chain_benchmark, gen_hamiltonian_reduction, min_connecting_threshold, parse_circuit,
    parse_environment, parse_graph, parse_permutation, parse_time, place, route_permutation,
    Circuit, Error, EvalMode, PhysicalEnvironment, PlacementConfig, RouterConfig, ThresholdChoice,
    Time,
};

#[derive(Parser)]
#[command(
    name = "qplace",
    version,
    about = "Places quantum circuits onto weighted physical environments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Pipelined,
    Sequential,
}

impl From<Mode> for EvalMode {
    fn from(mode: Mode) -> EvalMode {
        match mode {
            Mode::Pipelined => EvalMode::Pipelined,
            Mode::Sequential => EvalMode::SequentialLevels,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compile a circuit: split, place, fine-tune and bridge with swaps
    Place {
        #[arg(long)]
        env: PathBuf,
        #[arg(long)]
        circuit: PathBuf,
        /// Fast-graph threshold: a weight, or `auto` for the smallest
        /// connecting value
        #[arg(long, default_value = "auto")]
        threshold: String,
        /// Placement candidates kept per subcircuit
        #[arg(long, default_value_t = 100)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Mode::Pipelined)]
        mode: Mode,
        /// Score candidates on the current subcircuit only
        #[arg(long)]
        no_lookahead: bool,
        /// Reserved; the pipeline is deterministic and draws no randomness
        #[arg(long)]
        seed: Option<u64>,
        /// Write the report here instead of stdout
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Route a permutation of an environment's fast graph with swap layers
    Route {
        #[arg(long)]
        env: PathBuf,
        #[arg(long, default_value = "auto")]
        threshold: String,
        /// Permutation file: `<from> <to>` vertex names, one move per line
        #[arg(long)]
        perm: PathBuf,
    },
    /// Exhaustively search all placements of the whole circuit
    Oracle {
        #[arg(long)]
        env: PathBuf,
        #[arg(long)]
        circuit: PathBuf,
        /// Refuse searches larger than this many placements
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
    },
    /// Generate a hidden-stage chain benchmark instance
    GenChain {
        /// Number of qubits; a power of two, at least 4
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output path prefix (default `chain-n<N>-s<SEED>`)
        #[arg(long)]
        out: Option<String>,
    },
    /// Generate a Hamiltonian-cycle reduction instance from a graph file
    GenReduction {
        #[arg(long)]
        graph: PathBuf,
        /// Output path prefix (default `reduction-m<M>`)
        #[arg(long)]
        out: Option<String>,
    },
    /// Compile once per threshold and tabulate the outcomes
    Sweep {
        #[arg(long)]
        env: PathBuf,
        #[arg(long)]
        circuit: PathBuf,
        /// Comma-separated list of thresholds to try
        #[arg(long, value_delimiter = ',', required = true)]
        thresholds: Vec<String>,
        #[arg(long, default_value_t = 100)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Mode::Pipelined)]
        mode: Mode,
        #[arg(long)]
        no_lookahead: bool,
    },
}

/// Exit codes: 0 success, 2 bad input, 3 infeasible instance, 4 refused
/// by a size or budget limit.
fn exit_code(err: &Error) -> u8 {
    match err {
        Error::NoEmbedding { .. }
        | Error::NoFeasiblePlacement
        | Error::DisconnectedFastGraph
        | Error::Unconnectable
        | Error::UnroutablePermutation
        | Error::UnavailableInteraction { .. } => 3,
        Error::OracleBudgetExceeded { .. } | Error::RoutingTooLarge { .. } => 4,
        _ => 2,
    }
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<(), String> {
    fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    println!("wrote {}", path.display());
    Ok(())
}

fn load_environment(path: &Path) -> Result<PhysicalEnvironment, CliError> {
    Ok(parse_environment(&read(path)?)?)
}

fn load_circuit(path: &Path) -> Result<Circuit, CliError> {
    Ok(parse_circuit(&read(path)?)?)
}

fn threshold_choice(text: &str) -> Result<ThresholdChoice, CliError> {
    if text == "auto" {
        Ok(ThresholdChoice::Auto)
    } else {
        let t = parse_time(text).map_err(|m| format!("bad threshold `{text}`: {m}"))?;
        Ok(ThresholdChoice::Fixed(t))
    }
}

fn resolve_threshold(env: &PhysicalEnvironment, text: &str) -> Result<Time, CliError> {
    match threshold_choice(text)? {
        ThresholdChoice::Auto => Ok(min_connecting_threshold(env)?),
        ThresholdChoice::Fixed(t) => Ok(t),
    }
}

enum CliError {
    Core(Error),
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        CliError::Core(e)
    }
}

impl From<String> for CliError {
    fn from(m: String) -> CliError {
        CliError::Usage(m)
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Place {
            env,
            circuit,
            threshold,
            k,
            mode,
            no_lookahead,
            seed: _,
            report,
        } => {
            let env = load_environment(&env)?;
            let circuit = load_circuit(&circuit)?;
            let config = PlacementConfig {
                threshold: threshold_choice(&threshold)?,
                candidate_limit: k,
                mode: mode.into(),
                lookahead: !no_lookahead,
                ..PlacementConfig::default()
            };
            let program = place(&circuit, &env, &config)?;
            let text = emit_report(&program, &env);
            match report {
                Some(path) => write(&path, &text)?,
                None => print!("{text}"),
            }
            Ok(())
        }
        Command::Route {
            env,
            threshold,
            perm,
        } => {
            let env = load_environment(&env)?;
            let threshold = resolve_threshold(&env, &threshold)?;
            let g = fast_graph(&env, threshold);
            let target = parse_permutation(&read(&perm)?, &env)?;
            let schedule = route_permutation(&g, &target, &RouterConfig::default())?;
            println!("depth: {}", schedule.depth());
            println!("swaps: {}", schedule.swap_count());
            for (i, layer) in schedule.layers().iter().enumerate() {
                let swaps: Vec<String> = layer
                    .iter()
                    .map(|&(a, b)| format!("({} {})", env.name(a), env.name(b)))
                    .collect();
                println!("layer {}: {}", i + 1, swaps.join(" "));
            }
            Ok(())
        }
        Command::Oracle {
            env,
            circuit,
            budget,
        } => {
            let env = load_environment(&env)?;
            let circuit = load_circuit(&circuit)?;
            let best = exhaustive_place(&circuit, &env, EvalMode::Pipelined, budget)?;
            let pairs: Vec<String> = circuit
                .qubit_names()
                .iter()
                .zip(best.placement.as_slice())
                .map(|(q, &v)| format!("{q}={}", env.name(v)))
                .collect();
            println!("placement: {}", pairs.join(" "));
            println!("runtime_units: {}", qplace_core::format_time(&best.total));
            println!(
                "runtime_seconds: {}",
                qplace_core::format_time(&(best.total * env.unit_seconds()))
            );
            println!("search_space: {}", best.search_space);
            Ok(())
        }
        Command::GenChain { n, seed, out } => {
            let b = gen_chain_benchmark(n, seed)?;
            let prefix = out.unwrap_or_else(|| format!("chain-n{n}-s{seed}"));
            write(
                Path::new(&format!("{prefix}.env")),
                &emit_environment(&b.env),
            )?;
            write(
                Path::new(&format!("{prefix}.circuit")),
                &emit_circuit(&b.circuit),
            )?;
            write(Path::new(&format!("{prefix}.meta")), &emit_chain_meta(&b))?;
            Ok(())
        }
        Command::GenReduction { graph, out } => {
            let (m, edges) = parse_graph(&read(&graph)?)?;
            let (env, circuit) = gen_hamiltonian_reduction(m, &edges)?;
            let prefix = out.unwrap_or_else(|| format!("reduction-m{m}"));
            write(Path::new(&format!("{prefix}.env")), &emit_environment(&env))?;
            write(
                Path::new(&format!("{prefix}.circuit")),
                &emit_circuit(&circuit),
            )?;
            Ok(())
        }
        Command::Sweep {
            env,
            circuit,
            thresholds,
            k,
            mode,
            no_lookahead,
        } => {
            let env = load_environment(&env)?;
            let circuit = load_circuit(&circuit)?;
            for text in thresholds {
                let config = PlacementConfig {
                    threshold: threshold_choice(&text)?,
                    candidate_limit: k,
                    mode: mode.into(),
                    lookahead: !no_lookahead,
                    ..PlacementConfig::default()
                };
                match place(&circuit, &env, &config) {
                    Ok(program) => println!(
                        "threshold {text}: subcircuits {}, runtime_units {}, runtime_seconds {}",
                        program.stage_count(),
                        qplace_core::format_time(&program.total_units),
                        qplace_core::format_time(&program.total_seconds),
                    ),
                    Err(e) if exit_code(&e) == 3 => {
                        println!("threshold {text}: N/A ({e})");
                    }
                    Err(e) => return Err(e.into()),
                }
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(CliError::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
