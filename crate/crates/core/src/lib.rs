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

//! Placement compilation for quantum circuits on weighted environments.
//!
//! A physical environment is a set of sites with pairwise interaction
//! weights; a circuit is a leveled list of one- and two-qubit gates. This
//! crate maps logical qubits onto sites so that the physical runtime is
//! small: it derives the circuit's interaction pattern, embeds the pattern
//! into the subgraph of cheap couplings, splits the circuit into subcircuits
//! wherever no embedding exists, and bridges consecutive placements with
//! routed SWAP stages. All cost arithmetic is exact rational.

pub mod circuit;
pub mod env;
pub mod error;
pub mod eval;
mod exec;
pub mod fastgraph;
pub mod format;
pub mod generate;
pub mod mono;
pub mod oracle;
pub mod placement;
pub mod placer;
pub mod report;
pub mod router;
pub mod separator;
#[cfg(test)]
mod testutil;
pub mod time;

pub use circuit::{Circuit, Gate, LogicalQubit, Operands};
pub use env::{validate_environment, PhysicalEnvironment, PhysicalVertex};
pub use error::{Error, Result, ValidationReport, Violation};
pub use eval::{
    evaluate_runtime, evaluate_runtime_steps, merge_interaction_runs, EvalMode, RuntimeTrace,
    INTERACTION_USE_CAP,
};
pub use fastgraph::{fast_graph, min_connecting_threshold, FastGraph};
pub use format::{
    emit_chain_meta, emit_circuit, emit_environment, emit_permutation, parse_circuit,
    parse_environment, parse_graph, parse_permutation,
};
pub use generate::{
    gen_chain_benchmark, gen_hamiltonian_reduction, ChainBenchmark, CHAIN_GENERATOR_ID,
};
pub use mono::{enumerate_monomorphisms, InteractionPattern, Monomorphism, MonomorphismSet};
pub use oracle::{exhaustive_place, has_hamiltonian_cycle, min_depth_routing, ExhaustiveResult};
pub use placement::Placement;
pub use placer::{
    extract_max_prefix, fine_tune, place, PlacedProgram, PlacedStage, PlacementConfig,
    ThresholdChoice,
};
pub use report::emit_report;
pub use router::{route_permutation, schedule_to_gates, RouterConfig, SwapSchedule};
pub use separator::{balanced_connected_separator, SeparatorResult};
pub use time::{format_time, parse_time, Time};
