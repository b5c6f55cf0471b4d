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

//! Runtime evaluation of a placed circuit.
//!
//! The physical runtime of a gate is `W(P(q1), P(q2)) * T(G)`; single-qubit
//! gates read the diagonal entry of their vertex. In pipelined mode a gate
//! starts as soon as all of its operands are free. In sequential mode every
//! level finishes before the next one starts.
//!
//! Internally all arithmetic happens on integers scaled by the common
//! denominator of the weight and duration tables, which keeps the evaluation
//! exact while staying cheap enough for the placer's inner loops.

use num_integer::Integer;

use crate::circuit::{Circuit, LogicalQubit, Operands};
use crate::env::{PhysicalEnvironment, PhysicalVertex};
use crate::error::{Error, Result};
use crate::placement::Placement;
use crate::time::{time, Time};

/// Default ceiling on the accumulated use of one interaction: longer runs of
/// the same coupling are equivalent to their remainder, so anything past
/// three units is cut.
pub const INTERACTION_USE_CAP: Time = Time::new_raw(3, 1);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalMode {
    /// Gates start as soon as their operands are free.
    Pipelined,
    /// Every level is a barrier: no gate of level `l + 1` starts before all
    /// of level `l` finished.
    SequentialLevels,
}

/// Finish times of one evaluation, per logical qubit, plus their maximum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuntimeTrace {
    pub finish: Vec<Time>,
    pub total: Time,
}

/// Evaluates the physical runtime of `circuit` under `placement`.
pub fn evaluate_runtime(
    circuit: &Circuit,
    placement: &Placement,
    env: &PhysicalEnvironment,
    mode: EvalMode,
) -> Result<RuntimeTrace> {
    Ok(evaluate_with_steps(circuit, placement, env, mode, false)?.0)
}

/// Like `evaluate_runtime` but also returns the full `time[]` column after
/// every gate, in flattened order.
pub fn evaluate_runtime_steps(
    circuit: &Circuit,
    placement: &Placement,
    env: &PhysicalEnvironment,
    mode: EvalMode,
) -> Result<(RuntimeTrace, Vec<Vec<Time>>)> {
    evaluate_with_steps(circuit, placement, env, mode, true)
}

fn evaluate_with_steps(
    circuit: &Circuit,
    placement: &Placement,
    env: &PhysicalEnvironment,
    mode: EvalMode,
    record: bool,
) -> Result<(RuntimeTrace, Vec<Vec<Time>>)> {
    if placement.qubit_count() != circuit.qubit_count() {
        return Err(Error::InvalidParameter(format!(
            "placement covers {} qubits, circuit has {}",
            placement.qubit_count(),
            circuit.qubit_count()
        )));
    }
    let table = CostTable::new(env, circuit.flatten().map(|g| g.duration_factor))?;
    let mut ops = Vec::with_capacity(circuit.gate_count());
    for (level, gate) in circuit.flatten_with_levels() {
        let (a, b) = match gate.operands {
            Operands::Single(q) => (q, q),
            Operands::Pair(p, q) => (p, q),
        };
        let (u, v) = (placement.vertex_of(a), placement.vertex_of(b));
        let cost = table.cost(u, v, gate.duration_factor).map_err(|e| {
            if matches!(e, Error::UnavailableInteraction { .. }) {
                Error::UnavailableInteraction {
                    a: env.name(u).to_string(),
                    b: env.name(v).to_string(),
                }
            } else {
                e
            }
        })?;
        ops.push(PhysOp {
            a: a.0,
            b: b.0,
            cost,
            level: level as u32,
        });
    }
    let mut state = vec![0i128; circuit.qubit_count()];
    let steps = run_ops(&mut state, &ops, mode, record);
    let finish: Result<Vec<Time>> = state.iter().map(|&t| table.to_time(t)).collect();
    let finish = finish?;
    let total = finish.iter().copied().max().unwrap_or_else(|| time(0));
    let steps: Result<Vec<Vec<Time>>> = steps
        .iter()
        .map(|col| col.iter().map(|&t| table.to_time(t)).collect())
        .collect();
    Ok((RuntimeTrace { finish, total }, steps?))
}

/// Merges every maximal run of consecutive two-qubit gates on the same
/// unordered pair (nothing in between in flattened order) into a single gate
/// of duration `min(cap, sum)`. A run may be a single gate, so durations
/// above the cap are cut even when nothing merges.
pub fn merge_interaction_runs(circuit: &Circuit, cap: Time) -> Circuit {
    // Keep the original level structure: a merged run stays in the level of
    // its first gate, so the flattened gate order is preserved exactly.
    let mut levels: Vec<Vec<crate::circuit::Gate>> = vec![Vec::new(); circuit.levels().len()];
    let mut last: Option<(LogicalQubit, LogicalQubit, usize, usize)> = None;
    for (level, gate) in circuit.flatten_with_levels() {
        let extend = match (last, gate.unordered_pair()) {
            (Some((a, b, _, _)), Some(pair)) => (a, b) == pair,
            _ => false,
        };
        if extend {
            let (_, _, li, gi) = last.unwrap();
            levels[li][gi].duration_factor += gate.duration_factor;
        } else {
            levels[level].push(gate.clone());
            last = gate
                .unordered_pair()
                .map(|(a, b)| (a, b, level, levels[level].len() - 1));
        }
    }
    for gate in levels.iter_mut().flatten() {
        if gate.is_pair() && gate.duration_factor > cap {
            gate.duration_factor = cap;
        }
    }
    levels.retain(|l| !l.is_empty());
    Circuit::from_levels(circuit.qubit_names().to_vec(), levels)
        .expect("merging a valid circuit cannot fail")
}

/// One gate lowered to scaled-integer form; `a == b` encodes a single-qubit
/// gate. Indices are whatever space the evaluation runs over (qubits for a
/// plain circuit, vertices for a stitched program).
#[derive(Debug, Clone, Copy)]
pub(crate) struct PhysOp {
    pub a: u32,
    pub b: u32,
    pub cost: i128,
    pub level: u32,
}

/// Applies ops to the running `time[]` state. Returns per-gate snapshots
/// when `record` is set. In sequential mode every change of the level id is
/// a barrier that lifts all entries to the running maximum.
pub(crate) fn run_ops(
    state: &mut [i128],
    ops: &[PhysOp],
    mode: EvalMode,
    record: bool,
) -> Vec<Vec<i128>> {
    let mut steps = Vec::new();
    let mut current_level = ops.first().map(|op| op.level).unwrap_or(0);
    for op in ops {
        if matches!(mode, EvalMode::SequentialLevels) && op.level != current_level {
            let peak = state.iter().copied().max().unwrap_or(0);
            state.fill(peak);
            current_level = op.level;
        }
        if op.a == op.b {
            state[op.a as usize] += op.cost;
        } else {
            let finish = state[op.a as usize].max(state[op.b as usize]) + op.cost;
            state[op.a as usize] = finish;
            state[op.b as usize] = finish;
        }
        if record {
            steps.push(state.to_vec());
        }
    }
    steps
}

const UNAVAILABLE: i128 = i128::MAX;

/// Scaled-integer view of an environment's weight table. Weights are
/// multiplied by the common denominator `wden`, durations by `tden`; a cost
/// `w * t` is then exact at scale `wden * tden`.
#[derive(Debug, Clone)]
pub(crate) struct CostTable {
    m: usize,
    scaled: Vec<i128>,
    tden: i64,
    scale: i128,
}

impl CostTable {
    pub fn new(
        env: &PhysicalEnvironment,
        durations: impl Iterator<Item = Time>,
    ) -> Result<CostTable> {
        let mut wden: i64 = 1;
        for (_, _, w) in env.declared_entries() {
            wden = checked_lcm(wden, *w.denom())?;
        }
        let mut tden: i64 = 1;
        for t in durations {
            tden = checked_lcm(tden, *t.denom())?;
        }
        let m = env.vertex_count();
        let mut scaled = vec![UNAVAILABLE; m * m];
        for u in env.vertices() {
            for v in env.vertices() {
                if let Some(w) = env.weight(u, v) {
                    scaled[u.index() * m + v.index()] =
                        *w.numer() as i128 * (wden / *w.denom()) as i128;
                }
            }
        }
        Ok(CostTable {
            m,
            scaled,
            tden,
            scale: wden as i128 * tden as i128,
        })
    }

    pub fn weight_scaled(&self, u: PhysicalVertex, v: PhysicalVertex) -> i128 {
        self.scaled[u.index() * self.m + v.index()]
    }

    pub fn duration_scaled(&self, t: Time) -> i128 {
        *t.numer() as i128 * (self.tden / *t.denom()) as i128
    }

    /// Scaled cost of `t` units of interaction between `u` and `v`.
    pub fn cost(&self, u: PhysicalVertex, v: PhysicalVertex, t: Time) -> Result<i128> {
        let w = self.weight_scaled(u, v);
        if w == UNAVAILABLE {
            return Err(Error::UnavailableInteraction {
                a: format!("#{}", u.0),
                b: format!("#{}", v.0),
            });
        }
        w.checked_mul(self.duration_scaled(t))
            .ok_or(Error::NumericOverflow)
    }

    pub fn to_time(&self, scaled: i128) -> Result<Time> {
        let g = scaled.gcd(&self.scale);
        let (n, d) = (scaled / g, self.scale / g);
        if n > i64::MAX as i128 || d > i64::MAX as i128 {
            return Err(Error::NumericOverflow);
        }
        Ok(Time::new(n as i64, d as i64))
    }
}

fn checked_lcm(a: i64, b: i64) -> Result<i64> {
    let g = a.gcd(&b);
    (a / g).checked_mul(b).ok_or(Error::NumericOverflow)
}
