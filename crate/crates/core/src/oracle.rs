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

//! Brute-force reference solvers. These exist to check the heuristics, not
//! to be fast: exhaustive placement search, breadth-first minimum-depth
//! routing, and a Hamiltonian cycle tester.

use num_bigint::BigUint;

use crate::circuit::Circuit;
use crate::env::{PhysicalEnvironment, PhysicalVertex};
use crate::error::{Error, Result};
use crate::eval::{evaluate_runtime, EvalMode};
use crate::exec;
use crate::fastgraph::FastGraph;
use crate::placement::Placement;
use crate::time::Time;

/// Outcome of an exhaustive placement search.
#[derive(Clone, Debug)]
pub struct ExhaustiveResult {
    /// The first optimal placement in lexicographic enumeration order
    /// (qubits assigned in index order to ascending free vertices).
    pub placement: Placement,
    pub total: Time,
    /// Number of injective placements, m!/(m-n)!.
    pub search_space: BigUint,
}

/// Number of injective maps from `n` qubits into `m` vertices.
pub fn placement_count(n: usize, m: usize) -> BigUint {
    let mut total = BigUint::from(1u32);
    for i in 0..n {
        total *= BigUint::from((m - i) as u64);
    }
    total
}

fn enumerate_tail(
    circuit: &Circuit,
    env: &PhysicalEnvironment,
    mode: EvalMode,
    image: &mut Vec<PhysicalVertex>,
    used: &mut Vec<bool>,
    rank: &mut u64,
    best: &mut Option<(Time, u64, Vec<PhysicalVertex>)>,
) {
    let n = circuit.qubit_count();
    if image.len() == n {
        *rank += 1;
        let placement = Placement::new(image.clone(), env.vertex_count()).unwrap();
        if let Ok(trace) = evaluate_runtime(circuit, &placement, env, mode) {
            let better = match best {
                None => true,
                Some((t, _, _)) => trace.total < *t,
            };
            if better {
                *best = Some((trace.total, *rank, image.clone()));
            }
        }
        return;
    }
    for v in 0..env.vertex_count() as u32 {
        if used[v as usize] {
            continue;
        }
        used[v as usize] = true;
        image.push(PhysicalVertex(v));
        enumerate_tail(circuit, env, mode, image, used, rank, best);
        image.pop();
        used[v as usize] = false;
    }
}

/// Try every injective placement of the circuit's qubits onto the
/// environment and return the best total runtime. Placements that hit an
/// undeclared interaction are skipped. Refuses to start when the search
/// space exceeds `budget` placements.
pub fn exhaustive_place(
    circuit: &Circuit,
    env: &PhysicalEnvironment,
    mode: EvalMode,
    budget: u64,
) -> Result<ExhaustiveResult> {
    let n = circuit.qubit_count();
    let m = env.vertex_count();
    if n > m {
        return Err(Error::TooManyQubits {
            qubits: n,
            vertices: m,
        });
    }
    let search_space = placement_count(n, m);
    if search_space > BigUint::from(budget) {
        return Err(Error::OracleBudgetExceeded {
            search_space: search_space.to_string(),
            budget,
        });
    }
    if n == 0 {
        return Ok(ExhaustiveResult {
            placement: Placement::new(Vec::new(), m).unwrap(),
            total: Time::from_integer(0),
            search_space,
        });
    }

    // Fan out over the first qubit's vertex; each branch enumerates the
    // rest in lexicographic order, and branches are combined in order so
    // the result is the same as one sequential scan.
    let firsts: Vec<u32> = (0..m as u32).collect();
    let branch_best = exec::map_indexed(&firsts, |_, &first| {
        let mut image = vec![PhysicalVertex(first)];
        let mut used = vec![false; m];
        used[first as usize] = true;
        let mut rank = 0u64;
        let mut best: Option<(Time, u64, Vec<PhysicalVertex>)> = None;
        enumerate_tail(
            circuit, env, mode, &mut image, &mut used, &mut rank, &mut best,
        );
        best
    });
    let mut best: Option<(Time, usize, u64, Vec<PhysicalVertex>)> = None;
    for (branch, cand) in branch_best.into_iter().enumerate() {
        if let Some((t, rank, image)) = cand {
            let better = match &best {
                None => true,
                Some((bt, _, _, _)) => t < *bt,
            };
            if better {
                best = Some((t, branch, rank, image));
            }
        }
    }
    match best {
        None => Err(Error::NoFeasiblePlacement),
        Some((total, _, _, image)) => Ok(ExhaustiveResult {
            placement: Placement::new(image, m).unwrap(),
            total,
            search_space,
        }),
    }
}

const ROUTING_ORACLE_LIMIT: usize = 8;

fn pack(token_at: &[u8]) -> u64 {
    token_at
        .iter()
        .enumerate()
        .fold(0u64, |acc, (i, &t)| acc | (t as u64) << (4 * i))
}

fn matchings(g: &FastGraph) -> Vec<Vec<(u8, u8)>> {
    let edges: Vec<(u8, u8)> = g
        .edges()
        .iter()
        .map(|&(a, b)| (a.0 as u8, b.0 as u8))
        .collect();
    let mut out = Vec::new();
    let mut current: Vec<(u8, u8)> = Vec::new();
    fn rec(
        edges: &[(u8, u8)],
        from: usize,
        used: u32,
        current: &mut Vec<(u8, u8)>,
        out: &mut Vec<Vec<(u8, u8)>>,
    ) {
        if !current.is_empty() {
            out.push(current.clone());
        }
        for i in from..edges.len() {
            let (a, b) = edges[i];
            let bits = (1u32 << a) | (1u32 << b);
            if used & bits != 0 {
                continue;
            }
            current.push(edges[i]);
            rec(edges, i + 1, used | bits, current, out);
            current.pop();
        }
    }
    rec(&edges, 0, 0, &mut current, &mut out);
    out
}

/// Minimum number of vertex-disjoint swap layers to realize `target`, by
/// breadth-first search over token configurations. Limited to graphs of at
/// most 8 vertices.
pub fn min_depth_routing(g: &FastGraph, target: &[PhysicalVertex]) -> Result<usize> {
    let n = g.vertex_count();
    if n > ROUTING_ORACLE_LIMIT {
        return Err(Error::RoutingTooLarge {
            vertices: n,
            limit: ROUTING_ORACLE_LIMIT,
        });
    }
    if target.len() != n {
        return Err(Error::NotAPermutation);
    }
    let mut seen_t = vec![false; n];
    for t in target {
        if t.index() >= n || seen_t[t.index()] {
            return Err(Error::NotAPermutation);
        }
        seen_t[t.index()] = true;
    }
    // Goal configuration: vertex target[v] holds token v.
    let mut goal = vec![0u8; n];
    for (v, t) in target.iter().enumerate() {
        goal[t.index()] = v as u8;
    }
    let goal = pack(&goal);
    let start: Vec<u8> = (0..n as u8).collect();
    let start_key = pack(&start);
    if start_key == goal {
        return Ok(0);
    }

    let moves = matchings(g);
    let mut dist = std::collections::HashMap::new();
    dist.insert(start_key, 0usize);
    let mut queue = std::collections::VecDeque::from([start]);
    while let Some(state) = queue.pop_front() {
        let d = dist[&pack(&state)];
        for m in &moves {
            let mut next = state.clone();
            for &(a, b) in m {
                next.swap(a as usize, b as usize);
            }
            let key = pack(&next);
            if key == goal {
                return Ok(d + 1);
            }
            if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(key) {
                e.insert(d + 1);
                queue.push_back(next);
            }
        }
    }
    Err(Error::UnroutablePermutation)
}

/// Does the graph on vertices 0..n with the given undirected edges contain
/// a Hamiltonian cycle? Brute force over vertex orders with the start
/// fixed, so usable up to ten vertices or so.
pub fn has_hamiltonian_cycle(n: usize, edges: &[(u32, u32)]) -> bool {
    if n < 3 {
        return false;
    }
    let mut adj = vec![vec![false; n]; n];
    for &(a, b) in edges {
        if a == b {
            continue;
        }
        adj[a as usize][b as usize] = true;
        adj[b as usize][a as usize] = true;
    }
    let mut order: Vec<usize> = (1..n).collect();
    fn rec(adj: &[Vec<bool>], order: &mut Vec<usize>, depth: usize, prev: usize) -> bool {
        let n = adj.len();
        if depth == order.len() {
            return adj[prev][0];
        }
        for i in depth..order.len() {
            order.swap(depth, i);
            let v = order[depth];
            if adj[prev][v] && rec(adj, order, depth + 1, v) {
                return true;
            }
            order.swap(depth, i);
        }
        let _ = n;
        false
    }
    rec(&adj, &mut order, 0, 0)
}
