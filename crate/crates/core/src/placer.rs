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

//! The placement pipeline.
//!
//! A circuit is compiled in stages: merge repeated interactions, split the
//! gate list into maximal prefixes whose interaction pattern embeds into
//! the fast graph, enumerate up to `candidate_limit` embeddings per stage,
//! complete each to a total placement, polish it by local moves, and stitch
//! consecutive stages together with routed SWAP schedules. Candidates are
//! scored by continuing the exact runtime recurrence from the committed
//! per-vertex state, optionally looking one stage ahead.

use std::collections::HashSet;

use num_bigint::BigUint;

use crate::circuit::{Circuit, Gate, LogicalQubit, Operands};
use crate::env::{PhysicalEnvironment, PhysicalVertex};
use crate::error::{Error, Result};
use crate::eval::{
    merge_interaction_runs, run_ops, CostTable, EvalMode, PhysOp, INTERACTION_USE_CAP,
};
use crate::exec;
use crate::fastgraph::{fast_graph, min_connecting_threshold, FastGraph};
use crate::mono::{enumerate_monomorphisms, pattern_embeds, InteractionPattern, Monomorphism};
use crate::oracle::placement_count;
use crate::placement::Placement;
use crate::router::{route_permutation, RouterConfig, SwapSchedule};
use crate::time::{time, Time};

/// How to pick the fast-graph threshold.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThresholdChoice {
    /// Smallest threshold that connects the environment.
    Auto,
    Fixed(Time),
}

#[derive(Clone, Debug)]
pub struct PlacementConfig {
    pub threshold: ThresholdChoice,
    /// Embeddings enumerated per stage.
    pub candidate_limit: usize,
    pub mode: EvalMode,
    /// Score candidates through the next stage as well.
    pub lookahead: bool,
    /// Maximum local-improvement sweeps per candidate.
    pub sweep_cap: usize,
    /// Duration factor of one SWAP gate.
    pub swap_duration_factor: Time,
    /// Ceiling for merged interaction runs.
    pub interaction_cap: Time,
    /// Node budget per monomorphism search.
    pub node_budget: u64,
    pub router: RouterConfig,
}

impl Default for PlacementConfig {
    fn default() -> Self {
        PlacementConfig {
            threshold: ThresholdChoice::Auto,
            candidate_limit: 100,
            mode: EvalMode::Pipelined,
            lookahead: true,
            sweep_cap: 50,
            swap_duration_factor: time(3),
            interaction_cap: INTERACTION_USE_CAP,
            node_budget: 10_000_000,
            router: RouterConfig::default(),
        }
    }
}

/// One subcircuit with its placement and the SWAP stage that prepares it.
#[derive(Clone, Debug)]
pub struct PlacedStage {
    pub circuit: Circuit,
    /// Total placement: every circuit qubit has a vertex.
    pub placement: Placement,
    /// Swap layers moving the previous placement into this one; `None` for
    /// the first stage.
    pub entry: Option<SwapSchedule>,
    /// Runtime units elapsed once this stage has finished.
    pub finish_units: Time,
}

#[derive(Clone, Debug)]
pub struct PlacedProgram {
    pub stages: Vec<PlacedStage>,
    pub threshold: Time,
    pub mode: EvalMode,
    pub total_units: Time,
    pub total_seconds: Time,
    /// Number of injective placements of the circuit's qubits, m!/(m-n)!.
    pub search_space: BigUint,
    pub input_gate_count: usize,
    pub merged_gate_count: usize,
}

impl PlacedProgram {
    pub fn stage_count(&self) -> usize {
        self.stages.len()
    }
}

fn operand_indices(gate: &Gate) -> (u32, u32) {
    match gate.operands {
        Operands::Single(q) => (q.0, q.0),
        Operands::Pair(a, b) => (a.0, b.0),
    }
}

/// Length of the longest prefix of `gates` whose interaction pattern embeds
/// into `host`. Fails only when the very first two-qubit gate cannot be
/// embedded on its own, since then no progress is possible at all.
fn max_prefix_slice(gates: &[Gate], host: &FastGraph, node_budget: u64) -> Result<usize> {
    let mut edges: HashSet<(LogicalQubit, LogicalQubit)> = HashSet::new();
    let mut edge_list: Vec<(LogicalQubit, LogicalQubit)> = Vec::new();
    for (i, gate) in gates.iter().enumerate() {
        let pair = match gate.unordered_pair() {
            None => continue,
            Some(p) => p,
        };
        if edges.contains(&pair) {
            continue;
        }
        edge_list.push(pair);
        let pattern = InteractionPattern::from_edges(&edge_list);
        if !pattern_embeds(&pattern, host, node_budget) {
            if edges.is_empty() {
                return Err(Error::NoEmbedding { gate_index: i });
            }
            return Ok(i);
        }
        edges.insert(pair);
    }
    Ok(gates.len())
}

/// Longest embeddable prefix of the circuit's flattened gate list.
pub fn extract_max_prefix(circuit: &Circuit, host: &FastGraph, node_budget: u64) -> Result<usize> {
    let flat: Vec<Gate> = circuit.flatten().cloned().collect();
    max_prefix_slice(&flat, host, node_budget)
}

/// Placement-independent view of one stage's gates for repeated evaluation.
struct StageEval {
    /// (level, qubit a, qubit b, duration); `a == b` for single-qubit gates.
    gates: Vec<(u32, u32, u32, Time)>,
    level_count: u32,
    qubit_count: usize,
}

impl StageEval {
    fn new(stage: &Circuit) -> StageEval {
        let gates = stage
            .flatten_with_levels()
            .map(|(level, gate)| {
                let (a, b) = operand_indices(gate);
                (level as u32, a, b, gate.duration_factor)
            })
            .collect();
        StageEval {
            gates,
            level_count: stage.levels().len() as u32,
            qubit_count: stage.qubit_count(),
        }
    }

    /// Runtime of the stage alone under `image`, in scaled units.
    fn cost(&self, image: &[PhysicalVertex], table: &CostTable, mode: EvalMode) -> Result<i128> {
        let mut ops = Vec::with_capacity(self.gates.len());
        for &(level, a, b, t) in &self.gates {
            let cost = table.cost(image[a as usize], image[b as usize], t)?;
            ops.push(PhysOp { a, b, cost, level });
        }
        let mut state = vec![0i128; self.qubit_count];
        run_ops(&mut state, &ops, mode, false);
        Ok(state.into_iter().max().unwrap_or(0))
    }

    /// The stage's gates lowered onto vertices, with levels offset so that
    /// consecutive segments of a stitched program never share a level id.
    fn vertex_ops(
        &self,
        image: &[PhysicalVertex],
        table: &CostTable,
        level_base: u32,
    ) -> Result<Vec<PhysOp>> {
        let mut ops = Vec::with_capacity(self.gates.len());
        for &(level, a, b, t) in &self.gates {
            let (u, v) = (image[a as usize], image[b as usize]);
            let cost = table.cost(u, v, t)?;
            ops.push(PhysOp {
                a: u.0,
                b: v.0,
                cost,
                level: level_base + level,
            });
        }
        Ok(ops)
    }
}

fn schedule_vertex_ops(
    schedule: &SwapSchedule,
    table: &CostTable,
    swap_duration: Time,
    level_base: u32,
) -> Result<Vec<PhysOp>> {
    let mut ops = Vec::with_capacity(schedule.swap_count());
    for (i, layer) in schedule.layers().iter().enumerate() {
        for &(u, v) in layer {
            let cost = table.cost(u, v, swap_duration)?;
            ops.push(PhysOp {
                a: u.0,
                b: v.0,
                cost,
                level: level_base + i as u32,
            });
        }
    }
    Ok(ops)
}

/// Advance a per-vertex time state over one segment. `continuation` marks
/// segments appended after earlier work: in sequential mode the boundary is
/// a barrier, so the state is flattened to its maximum first.
fn advance(state: &mut [i128], ops: &[PhysOp], mode: EvalMode, continuation: bool) {
    if matches!(mode, EvalMode::SequentialLevels) && continuation && !ops.is_empty() {
        let peak = state.iter().copied().max().unwrap_or(0);
        for entry in state.iter_mut() {
            *entry = peak;
        }
    }
    run_ops(state, ops, mode, false);
}

/// The permutation of vertices sending the previous placement to the next
/// one: the token on `prev(q)` must reach `next(q)`. Vertices free in both
/// placements stay put; any remaining sources and destinations are matched
/// in ascending order.
pub(crate) fn transition_permutation(
    prev: &Placement,
    next: &Placement,
    vertex_count: usize,
) -> Vec<PhysicalVertex> {
    let mut target: Vec<Option<PhysicalVertex>> = vec![None; vertex_count];
    let mut taken = vec![false; vertex_count];
    for (p, n) in prev.as_slice().iter().zip(next.as_slice()) {
        target[p.index()] = Some(*n);
        taken[n.index()] = true;
    }
    for v in 0..vertex_count {
        if target[v].is_none() && !taken[v] {
            target[v] = Some(PhysicalVertex(v as u32));
            taken[v] = true;
        }
    }
    let sources: Vec<usize> = (0..vertex_count).filter(|&v| target[v].is_none()).collect();
    let dests: Vec<usize> = (0..vertex_count).filter(|&v| !taken[v]).collect();
    debug_assert_eq!(sources.len(), dests.len());
    for (s, d) in sources.into_iter().zip(dests) {
        target[s] = Some(PhysicalVertex(d as u32));
    }
    target.into_iter().map(Option::unwrap).collect()
}

/// Extend an embedding of the stage's interaction pattern to a placement of
/// every circuit qubit. Qubits with only single-qubit gates take the free
/// vertices with the cheapest available diagonals, longest workload first;
/// idle qubits fill the remaining vertices in index order.
fn complete_placement(
    stage: &Circuit,
    mono: &Monomorphism,
    env: &PhysicalEnvironment,
) -> Result<Placement> {
    let n = stage.qubit_count();
    let m = env.vertex_count();
    let mut image: Vec<Option<PhysicalVertex>> = vec![None; n];
    let mut used = vec![false; m];
    for &(q, v) in &mono.map {
        image[q.index()] = Some(v);
        used[v.index()] = true;
    }

    let mut solo: Vec<(Time, LogicalQubit)> = Vec::new();
    for q in stage.qubits() {
        if image[q.index()].is_some() {
            continue;
        }
        let workload: Time = stage
            .flatten()
            .filter(|g| !g.is_pair() && g.operands.touches(q))
            .map(|g| g.duration_factor)
            .fold(time(0), |acc, t| acc + t);
        if stage.flatten().any(|g| g.operands.touches(q)) {
            solo.push((workload, q));
        }
    }
    solo.sort_by_key(|&(w, q)| (std::cmp::Reverse(w), q));

    for (_, q) in solo {
        let mut pick: Option<(Option<Time>, u32)> = None;
        for v in 0..m as u32 {
            if used[v as usize] {
                continue;
            }
            let diag = env.weight(PhysicalVertex(v), PhysicalVertex(v));
            let key = (diag.is_none(), diag, v);
            let better = match pick {
                None => true,
                Some((pd, pv)) => key < (pd.is_none(), pd, pv),
            };
            if better {
                pick = Some((diag, v));
            }
        }
        let (diag, v) = pick.expect("qubit count is bounded by the vertex count");
        if diag.is_none() {
            return Err(Error::UnavailableInteraction {
                a: env.name(PhysicalVertex(v)).to_string(),
                b: env.name(PhysicalVertex(v)).to_string(),
            });
        }
        image[q.index()] = Some(PhysicalVertex(v));
        used[v as usize] = true;
    }

    let mut free = (0..m as u32).filter(|&v| !used[v as usize]);
    let image: Vec<PhysicalVertex> = image
        .into_iter()
        .map(|slot| slot.unwrap_or_else(|| PhysicalVertex(free.next().expect("enough vertices"))))
        .collect();
    Placement::new(image, m)
}

/// Local improvement: move each interaction-pattern qubit, highest degree
/// first, to every other vertex (swapping with any occupant) and keep the
/// first move that strictly lowers the stage runtime; sweep until a full
/// pass finds nothing, up to `sweep_cap` sweeps. All visited placements
/// keep the pattern embedded in the fast graph.
pub fn fine_tune(
    stage: &Circuit,
    placement: &Placement,
    env: &PhysicalEnvironment,
    host: &FastGraph,
    mode: EvalMode,
    sweep_cap: usize,
) -> Result<(Placement, Time)> {
    let table = CostTable::new(env, stage.flatten().map(|g| g.duration_factor))?;
    let eval = StageEval::new(stage);
    let (image, cost) = fine_tune_scaled(
        &eval,
        placement.as_slice().to_vec(),
        host,
        &table,
        mode,
        sweep_cap,
    )?;
    let total = table.to_time(cost)?;
    Ok((Placement::new(image, env.vertex_count())?, total))
}

fn fine_tune_scaled(
    eval: &StageEval,
    mut image: Vec<PhysicalVertex>,
    host: &FastGraph,
    table: &CostTable,
    mode: EvalMode,
    sweep_cap: usize,
) -> Result<(Vec<PhysicalVertex>, i128)> {
    let pattern = {
        let pairs: Vec<(LogicalQubit, LogicalQubit)> = eval
            .gates
            .iter()
            .filter(|&&(_, a, b, _)| a != b)
            .map(|&(_, a, b, _)| (LogicalQubit(a), LogicalQubit(b)))
            .collect();
        InteractionPattern::from_edges(&pairs)
    };
    let mut order: Vec<LogicalQubit> = pattern.vertices().to_vec();
    order.sort_by_key(|&q| (std::cmp::Reverse(pattern.degree(q)), q));

    let m = host.vertex_count();
    let mut occupant: Vec<Option<u32>> = vec![None; m];
    for (q, v) in image.iter().enumerate() {
        occupant[v.index()] = Some(q as u32);
    }
    let mut best = eval.cost(&image, table, mode)?;

    for _ in 0..sweep_cap {
        let mut improved = false;
        for &q in &order {
            let qi = q.index();
            let home = image[qi];
            for x in 0..m as u32 {
                let v = PhysicalVertex(x);
                if v == home {
                    continue;
                }
                let other = occupant[v.index()];
                image[qi] = v;
                if let Some(u) = other {
                    image[u as usize] = home;
                }
                let feasible = {
                    let edges_ok = |w: LogicalQubit| {
                        pattern
                            .neighbors(w)
                            .iter()
                            .all(|&x| host.has_edge(image[w.index()], image[x.index()]))
                    };
                    edges_ok(q)
                        && other.is_none_or(|u| {
                            !pattern.contains(LogicalQubit(u)) || edges_ok(LogicalQubit(u))
                        })
                };
                let cost = if feasible {
                    eval.cost(&image, table, mode).ok()
                } else {
                    None
                };
                match cost {
                    Some(c) if c < best => {
                        occupant[v.index()] = Some(q.0);
                        occupant[home.index()] = other;
                        best = c;
                        improved = true;
                        break;
                    }
                    _ => {
                        image[qi] = home;
                        if let Some(u) = other {
                            image[u as usize] = v;
                        }
                    }
                }
            }
        }
        if !improved {
            break;
        }
    }
    Ok((image, best))
}

/// Embeddings of the stage's pattern, completed to total placements and
/// fine-tuned, in stable enumeration order with duplicates dropped.
fn stage_candidates(
    stage: &Circuit,
    eval: &StageEval,
    host: &FastGraph,
    env: &PhysicalEnvironment,
    table: &CostTable,
    config: &PlacementConfig,
) -> Result<Vec<Placement>> {
    let pattern = InteractionPattern::from_circuit(stage);
    let set = enumerate_monomorphisms(&pattern, host, config.candidate_limit, config.node_budget);
    if set.maps.is_empty() {
        return Err(Error::NoEmbedding { gate_index: 0 });
    }
    let tuned = exec::map_indexed(&set.maps, |_, mono| -> Result<Vec<PhysicalVertex>> {
        let completed = complete_placement(stage, mono, env)?;
        let (image, _) = fine_tune_scaled(
            eval,
            completed.as_slice().to_vec(),
            host,
            table,
            config.mode,
            config.sweep_cap,
        )?;
        Ok(image)
    });
    let mut out: Vec<Placement> = Vec::new();
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut first_err: Option<Error> = None;
    for result in tuned {
        match result {
            Ok(image) => {
                let key: Vec<u32> = image.iter().map(|v| v.0).collect();
                if seen.insert(key) {
                    out.push(Placement::new(image, env.vertex_count())?);
                }
            }
            Err(e) => {
                if first_err.is_none() {
                    first_err = Some(e);
                }
            }
        }
    }
    if out.is_empty() {
        return Err(first_err.unwrap_or(Error::NoFeasiblePlacement));
    }
    Ok(out)
}

struct CandidateOutcome {
    score: i128,
    entry: Option<SwapSchedule>,
    end_state: Vec<i128>,
    levels_used: u32,
}

/// Compile a circuit onto an environment: split it into embeddable
/// subcircuits, place each one, and bridge them with SWAP stages.
pub fn place(
    circuit: &Circuit,
    env: &PhysicalEnvironment,
    config: &PlacementConfig,
) -> Result<PlacedProgram> {
    let n = circuit.qubit_count();
    let m = env.vertex_count();
    if n > m {
        return Err(Error::TooManyQubits {
            qubits: n,
            vertices: m,
        });
    }
    let threshold = match config.threshold {
        ThresholdChoice::Auto => min_connecting_threshold(env)?,
        ThresholdChoice::Fixed(t) => t,
    };
    let host = fast_graph(env, threshold);
    if !host.is_connected() {
        return Err(Error::DisconnectedFastGraph);
    }

    let merged = merge_interaction_runs(circuit, config.interaction_cap);
    let table = CostTable::new(
        env,
        merged
            .flatten()
            .map(|g| g.duration_factor)
            .chain(std::iter::once(config.swap_duration_factor)),
    )?;

    let flat: Vec<Gate> = merged.flatten().cloned().collect();
    let mut stage_circuits: Vec<Circuit> = Vec::new();
    let mut start = 0usize;
    while start < flat.len() {
        let len =
            max_prefix_slice(&flat[start..], &host, config.node_budget).map_err(|e| match e {
                Error::NoEmbedding { gate_index } => Error::NoEmbedding {
                    gate_index: start + gate_index,
                },
                other => other,
            })?;
        stage_circuits.push(Circuit::levelize(
            merged.qubit_names().to_vec(),
            flat[start..start + len].to_vec(),
        )?);
        start += len;
    }
    if stage_circuits.is_empty() {
        stage_circuits.push(Circuit::levelize(merged.qubit_names().to_vec(), vec![])?);
    }
    assert_eq!(
        stage_circuits
            .iter()
            .map(Circuit::gate_count)
            .sum::<usize>(),
        flat.len(),
        "stages must conserve gates"
    );

    let evals: Vec<StageEval> = stage_circuits.iter().map(StageEval::new).collect();

    let mut stages: Vec<PlacedStage> = Vec::with_capacity(stage_circuits.len());
    let mut committed = vec![0i128; m];
    let mut level_base = 0u32;
    let mut prev: Option<Placement> = None;
    let mut cached: Option<Vec<Placement>> = None;

    for s in 0..stage_circuits.len() {
        let candidates = match cached.take() {
            Some(c) => c,
            None => stage_candidates(&stage_circuits[s], &evals[s], &host, env, &table, config)?,
        };
        let next_candidates = if config.lookahead && s + 1 < stage_circuits.len() {
            Some(stage_candidates(
                &stage_circuits[s + 1],
                &evals[s + 1],
                &host,
                env,
                &table,
                config,
            )?)
        } else {
            None
        };

        let outcomes = exec::map_indexed(&candidates, |_, cand| -> Result<CandidateOutcome> {
            let entry = match &prev {
                None => None,
                Some(p) => {
                    let target = transition_permutation(p, cand, m);
                    let schedule = route_permutation(&host, &target, &config.router)?;
                    if schedule.is_identity() {
                        None
                    } else {
                        Some(schedule)
                    }
                }
            };
            let mut state = committed.clone();
            let mut level = level_base;
            if let Some(schedule) = &entry {
                let ops =
                    schedule_vertex_ops(schedule, &table, config.swap_duration_factor, level)?;
                advance(&mut state, &ops, config.mode, true);
                level += schedule.depth() as u32;
            }
            let ops = evals[s].vertex_ops(cand.as_slice(), &table, level)?;
            advance(&mut state, &ops, config.mode, s > 0 || entry.is_some());
            level += evals[s].level_count;
            let end_state = state.clone();

            let score = match &next_candidates {
                None => end_state.iter().copied().max().unwrap_or(0),
                Some(nexts) => {
                    let mut best: Option<i128> = None;
                    for next in nexts {
                        let follow = (|| -> Result<i128> {
                            let target = transition_permutation(cand, next, m);
                            let schedule = route_permutation(&host, &target, &config.router)?;
                            let mut look = state.clone();
                            let ops = schedule_vertex_ops(
                                &schedule,
                                &table,
                                config.swap_duration_factor,
                                level,
                            )?;
                            advance(&mut look, &ops, config.mode, true);
                            let ops = evals[s + 1].vertex_ops(
                                next.as_slice(),
                                &table,
                                level + schedule.depth() as u32,
                            )?;
                            advance(&mut look, &ops, config.mode, true);
                            Ok(look.into_iter().max().unwrap_or(0))
                        })();
                        if let Ok(total) = follow {
                            best = Some(best.map_or(total, |b: i128| b.min(total)));
                        }
                    }
                    best.unwrap_or_else(|| end_state.iter().copied().max().unwrap_or(0))
                }
            };
            Ok(CandidateOutcome {
                score,
                entry,
                end_state,
                levels_used: level - level_base,
            })
        });

        let mut chosen: Option<(i128, usize)> = None;
        let mut first_err: Option<Error> = None;
        for (i, outcome) in outcomes.iter().enumerate() {
            match outcome {
                Ok(o) => {
                    if chosen.is_none_or(|(s0, _)| o.score < s0) {
                        chosen = Some((o.score, i));
                    }
                }
                Err(e) => {
                    if first_err.is_none() {
                        first_err = Some(e.clone());
                    }
                }
            }
        }
        let (_, idx) = match chosen {
            Some(c) => c,
            None => return Err(first_err.unwrap_or(Error::NoFeasiblePlacement)),
        };
        let outcome = match outcomes.into_iter().nth(idx).unwrap() {
            Ok(o) => o,
            Err(_) => unreachable!("chosen outcome is Ok"),
        };

        committed = outcome.end_state;
        level_base += outcome.levels_used;
        let finish_scaled = committed.iter().copied().max().unwrap_or(0);
        stages.push(PlacedStage {
            circuit: stage_circuits[s].clone(),
            placement: candidates[idx].clone(),
            entry: outcome.entry,
            finish_units: table.to_time(finish_scaled)?,
        });
        prev = Some(candidates[idx].clone());
        cached = next_candidates;
    }

    let total_units = stages
        .last()
        .map(|s| s.finish_units)
        .unwrap_or_else(|| time(0));
    Ok(PlacedProgram {
        stages,
        threshold,
        mode: config.mode,
        total_seconds: total_units * env.unit_seconds(),
        total_units,
        search_space: placement_count(n, m),
        input_gate_count: circuit.gate_count(),
        merged_gate_count: flat.len(),
    })
}
