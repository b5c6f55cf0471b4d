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

//! Seeded instance generators: hidden-stage chain benchmarks and
//! Hamiltonian-cycle reduction instances.

use rand::RngCore;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::circuit::{Circuit, Gate, LogicalQubit};
use crate::env::{PhysicalEnvironment, PhysicalVertex};
use crate::error::{Error, Result};
use crate::time::{time, Time};

/// Identity of the pseudorandom generator behind [`gen_chain_benchmark`],
/// recorded in instance headers so benchmarks stay reproducible.
pub const CHAIN_GENERATOR_ID: &str = "chacha8";

/// A benchmark circuit on a linear-nearest-neighbor environment whose gate
/// list hides `log2(N)` consecutive placement regimes. Each regime draws a
/// fresh random ordering of the qubits along the chain and emits gates only
/// between qubits adjacent in that ordering, so a placement compiler should
/// recover exactly one subcircuit per regime.
#[derive(Clone, Debug)]
pub struct ChainBenchmark {
    pub n: usize,
    pub seed: u64,
    pub env: PhysicalEnvironment,
    pub circuit: Circuit,
    /// `hidden[s][pos]` is the qubit sitting at chain position `pos`
    /// during stage `s`.
    pub hidden: Vec<Vec<LogicalQubit>>,
}

impl ChainBenchmark {
    pub fn hidden_stage_count(&self) -> usize {
        self.hidden.len()
    }
}

fn chain_environment(n: usize, unit_seconds: Time) -> PhysicalEnvironment {
    let names: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let mut env = PhysicalEnvironment::new(names, unit_seconds);
    for v in 0..n as u32 {
        env.set_weight(PhysicalVertex(v), PhysicalVertex(v), time(0));
    }
    for v in 0..n as u32 - 1 {
        env.set_weight(PhysicalVertex(v), PhysicalVertex(v + 1), time(1));
    }
    env
}

/// Fisher–Yates with explicit draws, so instances stay byte-identical
/// across library upgrades. The modulo bias is ~k/2^64, irrelevant here.
fn shuffled(n: usize, rng: &mut ChaCha8Rng) -> Vec<LogicalQubit> {
    let mut p: Vec<LogicalQubit> = (0..n as u32).map(LogicalQubit).collect();
    for i in (1..n).rev() {
        let j = (rng.next_u64() % (i as u64 + 1)) as usize;
        p.swap(i, j);
    }
    p
}

/// Builds the hidden-stage chain benchmark: `log2(N)` stages, each drawing
/// a fresh uniform ordering of the qubits along the chain and emitting
/// `N*log2(N)` gates between qubits adjacent in that ordering (a uniform
/// position is drawn together with a left/right coin; out-of-range draws
/// are rejected). All gates have duration factor 3; the chain couples
/// neighbors at weight 1 and a unit is one millisecond.
pub fn gen_chain_benchmark(n: usize, seed: u64) -> Result<ChainBenchmark> {
    if n < 4 || !n.is_power_of_two() {
        return Err(Error::InvalidParameter(format!(
            "benchmark size must be a power of two at least 4, got {n}"
        )));
    }
    let stages = n.trailing_zeros() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hidden = Vec::with_capacity(stages);
    let mut levels: Vec<Vec<Gate>> = Vec::with_capacity(n * stages * stages);
    for _ in 0..stages {
        let p = shuffled(n, &mut rng);
        for _ in 0..n * stages {
            let (a, b) = loop {
                let j = (rng.next_u64() % n as u64) as usize;
                let right = rng.next_u64() & 1 == 1;
                let k = if right { j + 1 } else { j.wrapping_sub(1) };
                if k < n {
                    break (p[j], p[k]);
                }
            };
            // One gate per level keeps the flattened order equal to the
            // emission order, which is what hides the stage boundaries.
            levels.push(vec![Gate::pair("ZZ", time(3), a, b)]);
        }
        hidden.push(p);
    }
    let names: Vec<String> = (1..=n).map(|i| format!("q{i}")).collect();
    let circuit = Circuit::from_levels(names, levels)?;
    Ok(ChainBenchmark {
        n,
        seed,
        env: chain_environment(n, Time::new(1, 1000)),
        circuit,
        hidden,
    })
}

/// Encodes a Hamiltonian-cycle question as a placement instance: the
/// environment couples two sites at weight 0 exactly when the graph has
/// that edge (weight 1 otherwise, zero diagonals), and the circuit walks
/// the qubits in one fixed cycle, one gate per level with duration 1. The
/// exhaustive placement optimum is 0 iff the graph has a Hamiltonian cycle.
pub fn gen_hamiltonian_reduction(
    m: usize,
    edges: &[(u32, u32)],
) -> Result<(PhysicalEnvironment, Circuit)> {
    if m < 3 {
        return Err(Error::InvalidParameter(format!(
            "reduction needs at least 3 vertices, got {m}"
        )));
    }
    for &(a, b) in edges {
        if a == b || a as usize >= m || b as usize >= m {
            return Err(Error::InvalidParameter(format!(
                "edge ({a}, {b}) is not a simple edge on {m} vertices"
            )));
        }
    }
    let names: Vec<String> = (1..=m).map(|i| format!("v{i}")).collect();
    let mut env = PhysicalEnvironment::new(names, time(1));
    for v in 0..m as u32 {
        env.set_weight(PhysicalVertex(v), PhysicalVertex(v), time(0));
    }
    for a in 0..m as u32 {
        for b in a + 1..m as u32 {
            let is_edge = edges
                .iter()
                .any(|&(x, y)| (x, y) == (a, b) || (y, x) == (a, b));
            let w = if is_edge { time(0) } else { time(1) };
            env.set_weight(PhysicalVertex(a), PhysicalVertex(b), w);
        }
    }
    let levels: Vec<Vec<Gate>> = (0..m as u32)
        .map(|i| {
            vec![Gate::pair(
                "G",
                time(1),
                LogicalQubit(i),
                LogicalQubit((i + 1) % m as u32),
            )]
        })
        .collect();
    let qnames: Vec<String> = (1..=m).map(|i| format!("q{i}")).collect();
    let circuit = Circuit::from_levels(qnames, levels)?;
    Ok((env, circuit))
}
