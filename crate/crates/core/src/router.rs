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

//! SWAP routing: realize a permutation of tokens on a graph as layers of
//! vertex-disjoint swaps.
//!
//! Divide and conquer on a balanced connected separator. Tokens that must
//! cross the cut are bubbled up BFS trees toward the two endpoints of a
//! designated channel edge and exchanged through it one pair per layer;
//! once each side holds exactly the tokens destined for it, the halves are
//! routed recursively and their layer sequences run in parallel. Each
//! recursion level cleans the cut in O(n) layers and the separator ratio
//! bounds the recursion depth, so schedules stay within O(n) layers on
//! bounded-degree graphs.

use crate::circuit::{Circuit, Gate, LogicalQubit};
use crate::env::{PhysicalEnvironment, PhysicalVertex};
use crate::error::{Error, Result};
use crate::fastgraph::FastGraph;
use crate::separator::separate_masked;
use crate::time::Time;

/// Routing options. `leaf_override` enables the retirement rule: a leaf
/// whose final token is already present (or sits one step away on its only
/// neighbor) is finished off and dropped from the active set, instead of
/// letting the token detour through the standard bubbling phases.
#[derive(Clone, Debug)]
pub struct RouterConfig {
    pub leaf_override: bool,
}

impl Default for RouterConfig {
    fn default() -> Self {
        RouterConfig {
            leaf_override: true,
        }
    }
}

/// Layers of vertex-disjoint swaps realizing `target`: the token starting
/// on vertex `v` ends on vertex `target[v]`.
#[derive(Clone, Debug)]
pub struct SwapSchedule {
    layers: Vec<Vec<(PhysicalVertex, PhysicalVertex)>>,
    target: Vec<PhysicalVertex>,
}

impl SwapSchedule {
    pub fn empty(vertex_count: usize) -> SwapSchedule {
        SwapSchedule {
            layers: Vec::new(),
            target: (0..vertex_count as u32).map(PhysicalVertex).collect(),
        }
    }

    pub fn layers(&self) -> &[Vec<(PhysicalVertex, PhysicalVertex)>] {
        &self.layers
    }

    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    pub fn swap_count(&self) -> usize {
        self.layers.iter().map(Vec::len).sum()
    }

    pub fn target(&self) -> &[PhysicalVertex] {
        &self.target
    }

    pub fn is_identity(&self) -> bool {
        self.layers.is_empty()
    }

    /// Checks the schedule against a graph: every swap on an edge, layers
    /// vertex-disjoint, and the layers composing to `target`.
    pub fn verify(&self, g: &FastGraph) -> Result<()> {
        let n = g.vertex_count();
        if self.target.len() != n {
            return Err(Error::InvalidParameter(
                "schedule/graph size mismatch".into(),
            ));
        }
        let mut token_at: Vec<u32> = (0..n as u32).collect();
        for layer in &self.layers {
            let mut used = vec![false; n];
            for &(a, b) in layer {
                if !g.has_edge(a, b) {
                    return Err(Error::InvalidParameter(format!(
                        "swap ({}, {}) is not an edge",
                        a.0, b.0
                    )));
                }
                if used[a.index()] || used[b.index()] {
                    return Err(Error::InvalidParameter(format!(
                        "vertex reused within a layer at ({}, {})",
                        a.0, b.0
                    )));
                }
                used[a.index()] = true;
                used[b.index()] = true;
                token_at.swap(a.index(), b.index());
            }
        }
        for (start, &t) in self.target.iter().enumerate() {
            if token_at[t.index()] != start as u32 {
                return Err(Error::InvalidParameter(format!(
                    "token {start} did not reach {}",
                    t.0
                )));
            }
        }
        Ok(())
    }
}

struct Routing<'a> {
    g: &'a FastGraph,
    dest: Vec<u32>,
    token_at: Vec<u32>,
    override_on: bool,
}

type Layer = Vec<(u32, u32)>;

impl Routing<'_> {
    fn swap(&mut self, u: u32, v: u32) {
        self.token_at.swap(u as usize, v as usize);
    }

    fn is_home(&self, v: u32) -> bool {
        self.dest[self.token_at[v as usize] as usize] == v
    }

    /// Retire leaves that already hold their final token; repeats until
    /// stable since each removal may expose new leaves. `exclude` protects
    /// the current channel endpoints.
    fn retire_home_leaves(
        &self,
        active: &mut Vec<u32>,
        mask: &mut [bool],
        deg: &mut [usize],
        exclude: &[u32],
    ) {
        if !self.override_on {
            return;
        }
        loop {
            let candidate = active
                .iter()
                .copied()
                .find(|&v| deg[v as usize] == 1 && !exclude.contains(&v) && self.is_home(v));
            match candidate {
                None => return,
                Some(v) => {
                    mask[v as usize] = false;
                    active.retain(|&u| u != v);
                    for u in self.g.neighbors(PhysicalVertex(v)) {
                        if mask[u.index()] {
                            deg[u.index()] -= 1;
                        }
                    }
                }
            }
        }
    }

    fn route_component(&mut self, mut active: Vec<u32>) -> Vec<Layer> {
        let n = self.g.vertex_count();
        let mut mask = vec![false; n];
        for &v in &active {
            mask[v as usize] = true;
        }
        let mut deg = vec![0usize; n];
        for &v in &active {
            deg[v as usize] = self
                .g
                .neighbors(PhysicalVertex(v))
                .iter()
                .filter(|u| mask[u.index()])
                .count();
        }
        self.retire_home_leaves(&mut active, &mut mask, &mut deg, &[]);

        if active.iter().all(|&v| self.is_home(v)) {
            return Vec::new();
        }
        if active.len() == 2 {
            let (u, v) = (active[0], active[1]);
            assert!(self.g.has_edge(PhysicalVertex(u), PhysicalVertex(v)));
            self.swap(u, v);
            return vec![vec![(u, v)]];
        }

        let sep = separate_masked(self.g, &mask);
        let (c1, c2) = sep.channel;
        let side_a = sep.side_a;

        // BFS trees per side, rooted at the channel endpoints; bubbling
        // moves cut-crossing tokens along tree edges toward the roots.
        let tree = |root: u32, in_side: &dyn Fn(u32) -> bool| -> (Vec<u32>, Vec<u32>) {
            let mut parent = vec![u32::MAX; n];
            let mut depth = vec![u32::MAX; n];
            parent[root as usize] = root;
            depth[root as usize] = 0;
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for u in self.g.neighbors(PhysicalVertex(v)) {
                    let u = u.0;
                    if mask[u as usize] && in_side(u) && parent[u as usize] == u32::MAX {
                        parent[u as usize] = v;
                        depth[u as usize] = depth[v as usize] + 1;
                        queue.push_back(u);
                    }
                }
            }
            (parent, depth)
        };
        let (parent_a, depth_a) = tree(c1, &|v| side_a[v as usize]);
        let (parent_b, depth_b) = tree(c2, &|v| !side_a[v as usize]);
        let bubble_pairs = |parent: &[u32], depth: &[u32]| -> Vec<(u32, u32)> {
            let mut pairs: Vec<(u32, u32)> = active
                .iter()
                .copied()
                .filter(|&v| parent[v as usize] != u32::MAX && parent[v as usize] != v)
                .map(|v| (v, parent[v as usize]))
                .collect();
            pairs.sort_by_key(|&(v, _)| (std::cmp::Reverse(depth[v as usize]), v));
            pairs
        };
        let pairs_a = bubble_pairs(&parent_a, &depth_a);
        let pairs_b = bubble_pairs(&parent_b, &depth_b);

        fn crossing(dest: &[u32], token_at: &[u32], side_a: &[bool], v: u32) -> bool {
            side_a[dest[token_at[v as usize] as usize] as usize] != side_a[v as usize]
        }

        let mut layers: Vec<Layer> = Vec::new();
        let budget = 4 * n * n + 16;
        while active
            .iter()
            .any(|&v| crossing(&self.dest, &self.token_at, &side_a, v))
        {
            assert!(
                layers.len() <= budget,
                "cut cleaning failed to make progress"
            );
            let mut layer: Layer = Vec::new();
            let mut used = vec![false; n];
            let mut retire_after: Vec<u32> = Vec::new();

            if self.override_on {
                for &v in &active {
                    if deg[v as usize] != 1 || v == c1 || v == c2 || used[v as usize] {
                        continue;
                    }
                    let u = self
                        .g
                        .neighbors(PhysicalVertex(v))
                        .iter()
                        .map(|u| u.0)
                        .find(|&u| mask[u as usize])
                        .expect("active leaf has an active neighbor");
                    if used[u as usize] {
                        continue;
                    }
                    if self.dest[self.token_at[u as usize] as usize] == v {
                        used[u as usize] = true;
                        used[v as usize] = true;
                        layer.push((u.min(v), u.max(v)));
                        self.swap(u, v);
                        retire_after.push(v);
                    }
                }
            }

            if !used[c1 as usize] && !used[c2 as usize] {
                let t1 = self.token_at[c1 as usize] as usize;
                let t2 = self.token_at[c2 as usize] as usize;
                if !side_a[self.dest[t1] as usize] && side_a[self.dest[t2] as usize] {
                    used[c1 as usize] = true;
                    used[c2 as usize] = true;
                    layer.push((c1.min(c2), c1.max(c2)));
                    self.swap(c1, c2);
                }
            }

            // Deepest first: a rising token frees its vertex for the one
            // below it in the same layer's ordering of later levels.
            for &(child, par) in &pairs_a {
                if !mask[child as usize] || used[child as usize] || used[par as usize] {
                    continue;
                }
                let tc = self.token_at[child as usize] as usize;
                let tp = self.token_at[par as usize] as usize;
                if !side_a[self.dest[tc] as usize] && side_a[self.dest[tp] as usize] {
                    used[child as usize] = true;
                    used[par as usize] = true;
                    layer.push((child.min(par), child.max(par)));
                    self.swap(child, par);
                }
            }
            for &(child, par) in &pairs_b {
                if !mask[child as usize] || used[child as usize] || used[par as usize] {
                    continue;
                }
                let tc = self.token_at[child as usize] as usize;
                let tp = self.token_at[par as usize] as usize;
                if side_a[self.dest[tc] as usize] && !side_a[self.dest[tp] as usize] {
                    used[child as usize] = true;
                    used[par as usize] = true;
                    layer.push((child.min(par), child.max(par)));
                    self.swap(child, par);
                }
            }

            assert!(!layer.is_empty(), "cut cleaning stalled");
            layers.push(layer);
            for v in retire_after {
                mask[v as usize] = false;
                active.retain(|&u| u != v);
                for u in self.g.neighbors(PhysicalVertex(v)) {
                    if mask[u.index()] {
                        deg[u.index()] -= 1;
                    }
                }
            }
            self.retire_home_leaves(&mut active, &mut mask, &mut deg, &[c1, c2]);
        }

        let half_a: Vec<u32> = active
            .iter()
            .copied()
            .filter(|&v| side_a[v as usize])
            .collect();
        let half_b: Vec<u32> = active
            .iter()
            .copied()
            .filter(|&v| !side_a[v as usize])
            .collect();
        let sub_a = if half_a.is_empty() {
            Vec::new()
        } else {
            self.route_component(half_a)
        };
        let sub_b = if half_b.is_empty() {
            Vec::new()
        } else {
            self.route_component(half_b)
        };
        layers.extend(merge_parallel(vec![sub_a, sub_b]));
        layers
    }
}

/// Run independent layer sequences side by side: layer i of the result is
/// the union of every sequence's layer i.
fn merge_parallel(parts: Vec<Vec<Layer>>) -> Vec<Layer> {
    let depth = parts.iter().map(Vec::len).max().unwrap_or(0);
    let mut out = Vec::with_capacity(depth);
    for i in 0..depth {
        let mut layer: Layer = Vec::new();
        for part in &parts {
            if let Some(l) = part.get(i) {
                layer.extend_from_slice(l);
            }
        }
        out.push(layer);
    }
    out
}

/// Compute swap layers sending the token on vertex `v` to `target[v]`,
/// for every vertex. The permutation must stay within connected components.
pub fn route_permutation(
    g: &FastGraph,
    target: &[PhysicalVertex],
    config: &RouterConfig,
) -> Result<SwapSchedule> {
    let n = g.vertex_count();
    if target.len() != n {
        return Err(Error::NotAPermutation);
    }
    let mut seen = vec![false; n];
    for t in target {
        if t.index() >= n || seen[t.index()] {
            return Err(Error::NotAPermutation);
        }
        seen[t.index()] = true;
    }

    let components = g.components();
    let mut comp_of = vec![usize::MAX; n];
    for (i, comp) in components.iter().enumerate() {
        for v in comp {
            comp_of[v.index()] = i;
        }
    }
    for v in 0..n {
        if comp_of[target[v].index()] != comp_of[v] {
            return Err(Error::UnroutablePermutation);
        }
    }

    let mut routing = Routing {
        g,
        dest: target.iter().map(|t| t.0).collect(),
        token_at: (0..n as u32).collect(),
        override_on: config.leaf_override,
    };
    let mut parts = Vec::with_capacity(components.len());
    for comp in &components {
        parts.push(routing.route_component(comp.iter().map(|v| v.0).collect()));
    }
    let mut layers: Vec<Vec<(PhysicalVertex, PhysicalVertex)>> = merge_parallel(parts)
        .into_iter()
        .map(|layer| {
            let mut l: Vec<(PhysicalVertex, PhysicalVertex)> = layer
                .into_iter()
                .map(|(a, b)| (PhysicalVertex(a), PhysicalVertex(b)))
                .collect();
            l.sort();
            l
        })
        .collect();
    layers.retain(|l| !l.is_empty());

    for (v, &t) in target.iter().enumerate() {
        debug_assert_eq!(
            routing.token_at[t.index()] as usize,
            v,
            "routing must realize the permutation"
        );
    }
    Ok(SwapSchedule {
        layers,
        target: target.to_vec(),
    })
}

/// Express a schedule as a circuit over the environment's sites: one qubit
/// per vertex, one level per layer, every swap a two-qubit SWAP gate with
/// the given duration factor. Evaluating it under the identity placement
/// prices the schedule in environment time.
pub fn schedule_to_gates(
    schedule: &SwapSchedule,
    env: &PhysicalEnvironment,
    swap_duration_factor: Time,
) -> Result<Circuit> {
    if schedule.target.len() != env.vertex_count() {
        return Err(Error::InvalidParameter(
            "schedule/environment size mismatch".into(),
        ));
    }
    let levels = schedule
        .layers
        .iter()
        .map(|layer| {
            layer
                .iter()
                .map(|&(a, b)| {
                    Gate::pair(
                        "SWAP",
                        swap_duration_factor,
                        LogicalQubit(a.0),
                        LogicalQubit(b.0),
                    )
                })
                .collect()
        })
        .collect();
    Circuit::from_levels(env.names().to_vec(), levels)
}
