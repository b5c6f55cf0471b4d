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

//! Randomized invariants over bounded instances. Structures are drawn from a
//! seeded generator so every failure reproduces from the seed proptest
//! reports.

mod common;

use proptest::prelude::*;
use rand_chacha::ChaCha8Rng;

use qplace_core::{
    balanced_connected_separator, emit_circuit, emit_environment, emit_permutation, emit_report,
    evaluate_runtime, fast_graph, merge_interaction_runs, parse_circuit, parse_environment,
    parse_permutation, place, route_permutation, Circuit, EvalMode, Gate, LogicalQubit, Operands,
    PhysicalEnvironment, PhysicalVertex, Placement, PlacementConfig, RouterConfig, Time,
};

/// An environment with every weight declared, so evaluation can never hit an
/// unavailable interaction.
fn dense_env(n: usize, rng: &mut ChaCha8Rng) -> PhysicalEnvironment {
    let names: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
    let mut env = PhysicalEnvironment::new(names, Time::new(1, 1000));
    for u in 0..n as u32 {
        for v in u..n as u32 {
            let w = Time::new(
                common::below(rng, 40) as i64,
                1 + common::below(rng, 3) as i64,
            );
            env.set_weight(PhysicalVertex(u), PhysicalVertex(v), w);
        }
    }
    env
}

const LABELS: [&str; 4] = ["X", "Ry90", "ZZ", "CZ"];

fn random_duration(rng: &mut ChaCha8Rng) -> Time {
    Time::new(
        common::below(rng, 5) as i64,
        1 + common::below(rng, 2) as i64,
    )
}

/// A leveled circuit on `qubits` qubits with no empty level.
fn random_circuit(qubits: usize, max_levels: usize, rng: &mut ChaCha8Rng) -> Circuit {
    let names: Vec<String> = (0..qubits).map(|i| format!("q{i}")).collect();
    let mut levels = Vec::new();
    for _ in 0..1 + common::below(rng, max_levels) {
        let mut ids: Vec<u32> = (0..qubits as u32).collect();
        for i in (1..ids.len()).rev() {
            ids.swap(i, common::below(rng, i + 1));
        }
        let mut level = Vec::new();
        let mut rest = &ids[..];
        while !rest.is_empty() {
            let label = LABELS[common::below(rng, LABELS.len())];
            let duration = random_duration(rng);
            if rest.len() >= 2 && common::below(rng, 2) == 0 {
                level.push(Gate::pair(
                    label,
                    duration,
                    LogicalQubit(rest[0]),
                    LogicalQubit(rest[1]),
                ));
                rest = &rest[2..];
            } else {
                level.push(Gate::single(label, duration, LogicalQubit(rest[0])));
                rest = &rest[1..];
            }
            if common::below(rng, 3) == 0 {
                break; // leave the remaining qubits idle this level
            }
        }
        levels.push(level);
    }
    Circuit::from_levels(names, levels).expect("generated levels are valid")
}

fn random_placement(qubits: usize, vertices: usize, rng: &mut ChaCha8Rng) -> Placement {
    let onto = common::random_permutation(vertices, rng);
    Placement::new(onto[..qubits].to_vec(), vertices).expect("permutation prefix is injective")
}

fn gate_cost(g: &Gate, p: &Placement, env: &PhysicalEnvironment) -> Time {
    let w = match g.operands {
        Operands::Single(q) => env.weight(p.vertex_of(q), p.vertex_of(q)),
        Operands::Pair(a, b) => env.weight(p.vertex_of(a), p.vertex_of(b)),
    };
    w.expect("dense environment") * g.duration_factor
}

/// Longest path over the gate dependency DAG, in plain rational arithmetic.
fn longest_path_total(circuit: &Circuit, p: &Placement, env: &PhysicalEnvironment) -> Time {
    let gates: Vec<&Gate> = circuit.flatten().collect();
    let mut dist: Vec<Time> = Vec::with_capacity(gates.len());
    let mut total = Time::from_integer(0);
    for (i, gate) in gates.iter().enumerate() {
        let mut start = Time::from_integer(0);
        for (j, earlier) in gates.iter().enumerate().take(i) {
            let shares = match gate.operands {
                Operands::Single(q) => earlier.operands.touches(q),
                Operands::Pair(a, b) => earlier.operands.touches(a) || earlier.operands.touches(b),
            };
            if shares {
                start = start.max(dist[j]);
            }
        }
        let d = start + gate_cost(gate, p, env);
        dist.push(d);
        total = total.max(d);
    }
    total
}

/// With level barriers, a circuit runs in the sum of each level's slowest
/// gate.
fn level_sum_total(circuit: &Circuit, p: &Placement, env: &PhysicalEnvironment) -> Time {
    circuit
        .levels()
        .iter()
        .map(|level| {
            level
                .iter()
                .map(|g| gate_cost(g, p, env))
                .max()
                .unwrap_or_else(|| Time::from_integer(0))
        })
        .sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn pipelined_runtime_is_the_dag_longest_path(seed in any::<u64>(), qubits in 1usize..=5) {
        let mut rng = common::rng(seed);
        let env = dense_env(qubits + common::below(&mut rng, 3), &mut rng);
        let circuit = random_circuit(qubits, 6, &mut rng);
        let p = random_placement(qubits, env.vertex_count(), &mut rng);
        let trace = evaluate_runtime(&circuit, &p, &env, EvalMode::Pipelined).unwrap();
        prop_assert_eq!(trace.total, longest_path_total(&circuit, &p, &env));
    }

    #[test]
    fn sequential_runtime_is_the_sum_of_level_maxima(seed in any::<u64>(), qubits in 1usize..=5) {
        let mut rng = common::rng(seed);
        let env = dense_env(qubits + common::below(&mut rng, 3), &mut rng);
        let circuit = random_circuit(qubits, 6, &mut rng);
        let p = random_placement(qubits, env.vertex_count(), &mut rng);
        let trace = evaluate_runtime(&circuit, &p, &env, EvalMode::SequentialLevels).unwrap();
        prop_assert_eq!(trace.total, level_sum_total(&circuit, &p, &env));
    }

    #[test]
    fn merging_preserves_pipelined_runtime_and_caps_interactions(
        seed in any::<u64>(),
        qubits in 2usize..=5,
        cap_units in 1i64..=6,
    ) {
        let mut rng = common::rng(seed);
        let env = dense_env(qubits, &mut rng);
        let circuit = random_circuit(qubits, 8, &mut rng);
        let p = random_placement(qubits, qubits, &mut rng);
        let before = evaluate_runtime(&circuit, &p, &env, EvalMode::Pipelined).unwrap();

        // An unreachable cap only fuses runs; the critical path is unchanged.
        let huge = Time::from_integer(1_000_000);
        let fused = merge_interaction_runs(&circuit, huge);
        let after = evaluate_runtime(&fused, &p, &env, EvalMode::Pipelined).unwrap();
        prop_assert_eq!(after.total, before.total);

        let singles = |c: &Circuit| c.flatten().filter(|g| g.unordered_pair().is_none()).count();
        prop_assert_eq!(singles(&fused), singles(&circuit));
        let pair_load = |c: &Circuit| {
            let mut sums = std::collections::BTreeMap::new();
            for g in c.flatten() {
                if let Some((a, b)) = g.unordered_pair() {
                    *sums.entry((a.0, b.0)).or_insert_with(|| Time::from_integer(0)) +=
                        g.duration_factor;
                }
            }
            sums
        };
        prop_assert_eq!(pair_load(&fused), pair_load(&circuit));

        // A finite cap can only shorten gates, and shows in every duration.
        let cap = Time::from_integer(cap_units);
        let capped = merge_interaction_runs(&circuit, cap);
        for g in capped.flatten() {
            if g.unordered_pair().is_some() {
                prop_assert!(g.duration_factor <= cap);
            }
        }
        let capped_trace = evaluate_runtime(&capped, &p, &env, EvalMode::Pipelined).unwrap();
        prop_assert!(capped_trace.total <= before.total);
    }

    #[test]
    fn routing_composes_within_the_depth_bound(
        seed in any::<u64>(),
        n in 2usize..=12,
        max_degree in 2usize..=4,
    ) {
        let mut rng = common::rng(seed);
        let g = common::random_connected_graph(n, max_degree, n / 2, &mut rng);
        let target = common::random_permutation(n, &mut rng);
        let schedule = route_permutation(&g, &target, &RouterConfig::default()).unwrap();
        prop_assert!(schedule.verify(&g).is_ok());
        prop_assert!(schedule.depth() <= 8 * n + 8);
    }

    #[test]
    fn separator_parts_are_connected_and_balanced(
        seed in any::<u64>(),
        n in 2usize..=16,
        max_degree in 3usize..=5,
    ) {
        let mut rng = common::rng(seed);
        let g = common::random_connected_graph(n, max_degree, n / 3, &mut rng);
        let result = balanced_connected_separator(&g).unwrap();
        prop_assert_eq!(result.part_a.len() + result.part_b.len(), n);
        prop_assert!(result.ratio >= Time::new(1, g.max_degree().max(1) as i64));
        for part in [&result.part_a, &result.part_b] {
            let (sub, _) = g.induced(part);
            prop_assert!(sub.is_connected());
        }
    }

    #[test]
    fn environment_text_round_trips(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = common::rng(seed);
        let env = dense_env(n, &mut rng);
        let text = emit_environment(&env);
        let back = parse_environment(&text).unwrap();
        prop_assert_eq!(back.vertex_count(), env.vertex_count());
        for u in (0..n as u32).map(PhysicalVertex) {
            prop_assert_eq!(back.name(u), env.name(u));
            for v in (0..n as u32).map(PhysicalVertex) {
                prop_assert_eq!(back.weight(u, v), env.weight(u, v));
            }
        }
        prop_assert_eq!(emit_environment(&back), text);
    }

    #[test]
    fn circuit_text_round_trips(seed in any::<u64>(), qubits in 1usize..=5) {
        let mut rng = common::rng(seed);
        let circuit = random_circuit(qubits, 6, &mut rng);
        let text = emit_circuit(&circuit);
        let back = parse_circuit(&text).unwrap();
        prop_assert_eq!(back.qubit_names(), circuit.qubit_names());
        prop_assert_eq!(back.levels(), circuit.levels());
        prop_assert_eq!(emit_circuit(&back), text);
    }

    #[test]
    fn permutation_text_round_trips(seed in any::<u64>(), n in 1usize..=8) {
        let mut rng = common::rng(seed);
        let env = dense_env(n, &mut rng);
        let target = common::random_permutation(n, &mut rng);
        let text = emit_permutation(&target, &env);
        let back = parse_permutation(&text, &env).unwrap();
        prop_assert_eq!(back, target);
    }
}

proptest! {
    // Placement runs the full pipeline, so fewer cases keep the suite quick.
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn placement_conserves_gates_and_emits_valid_schedules(
        seed in any::<u64>(),
        qubits in 1usize..=4,
    ) {
        let env = parse_environment(
            "unit 0.001\n\
             w w 2\nx x 1\ny y 1\nz z 2\n\
             w x 1\nx y 1\ny z 1\n\
             w y 50\nw z 90\nx z 50\n",
        )
        .unwrap();
        let mut rng = common::rng(seed);
        let circuit = random_circuit(qubits, 8, &mut rng);
        let config = PlacementConfig::default();
        let program = place(&circuit, &env, &config).unwrap();

        prop_assert_eq!(program.input_gate_count, circuit.gate_count());
        let staged: usize = program.stages.iter().map(|s| s.circuit.gate_count()).sum();
        prop_assert_eq!(staged, program.merged_gate_count);

        let g = fast_graph(&env, program.threshold);
        prop_assert!(program.stages[0].entry.is_none());
        for stage in &program.stages {
            prop_assert_eq!(stage.placement.qubit_count(), circuit.qubit_count());
            if let Some(entry) = &stage.entry {
                prop_assert!(entry.verify(&g).is_ok());
            }
        }

        // The pipeline draws no randomness: a rerun reproduces the report.
        let again = place(&circuit, &env, &config).unwrap();
        prop_assert_eq!(emit_report(&again, &env), emit_report(&program, &env));
    }
}
