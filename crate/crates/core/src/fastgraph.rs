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

//! The fast-interaction graph of an environment.
//!
//! Placement never uses the full weighted environment directly: it fixes a
//! threshold and keeps only the couplings at or below it. The resulting
//! unweighted graph is where interaction patterns are embedded and SWAP
//! stages are routed; the discarded heavy couplings are what placement is
//! trying to avoid paying for.

use std::collections::BTreeMap;

use crate::env::{PhysicalEnvironment, PhysicalVertex};
use crate::error::{Error, Result};
use crate::time::Time;

/// Unweighted graph over an environment's vertices, annotated with the
/// original coupling weight per edge (the router picks cut channels by it).
#[derive(Clone, Debug)]
pub struct FastGraph {
    vertex_count: usize,
    adj: Vec<Vec<PhysicalVertex>>,
    edges: Vec<(PhysicalVertex, PhysicalVertex)>,
    weights: BTreeMap<(u32, u32), Time>,
    threshold: Time,
}

impl FastGraph {
    fn build(vertex_count: usize, mut pairs: Vec<(u32, u32, Time)>, threshold: Time) -> FastGraph {
        pairs.sort_by_key(|&(a, b, _)| (a, b));
        let mut adj = vec![Vec::new(); vertex_count];
        let mut edges = Vec::with_capacity(pairs.len());
        let mut weights = BTreeMap::new();
        for (a, b, w) in pairs {
            debug_assert!(a < b && (b as usize) < vertex_count);
            adj[a as usize].push(PhysicalVertex(b));
            adj[b as usize].push(PhysicalVertex(a));
            edges.push((PhysicalVertex(a), PhysicalVertex(b)));
            weights.insert((a, b), w);
        }
        for list in &mut adj {
            list.sort();
        }
        FastGraph {
            vertex_count,
            adj,
            edges,
            weights,
            threshold,
        }
    }

    /// Test/bench constructor: unit-weight edges, threshold 1.
    pub fn from_edges(vertex_count: usize, edges: &[(u32, u32)]) -> FastGraph {
        let one = Time::from_integer(1);
        let pairs = edges
            .iter()
            .map(|&(a, b)| {
                assert!(a != b && (a as usize) < vertex_count && (b as usize) < vertex_count);
                (a.min(b), a.max(b), one)
            })
            .collect();
        FastGraph::build(vertex_count, pairs, one)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn threshold(&self) -> Time {
        self.threshold
    }

    pub fn vertices(&self) -> impl Iterator<Item = PhysicalVertex> + '_ {
        (0..self.vertex_count as u32).map(PhysicalVertex)
    }

    pub fn edges(&self) -> &[(PhysicalVertex, PhysicalVertex)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: PhysicalVertex) -> &[PhysicalVertex] {
        &self.adj[v.index()]
    }

    pub fn degree(&self, v: PhysicalVertex) -> usize {
        self.adj[v.index()].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, a: PhysicalVertex, b: PhysicalVertex) -> bool {
        self.adj[a.index()].binary_search(&b).is_ok()
    }

    /// Coupling weight carried over from the environment, if (a, b) is an
    /// edge of this graph.
    pub fn edge_weight(&self, a: PhysicalVertex, b: PhysicalVertex) -> Option<Time> {
        let key = (a.0.min(b.0), a.0.max(b.0));
        self.weights.get(&key).copied()
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<PhysicalVertex>> {
        let n = self.vertex_count;
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut queue = std::collections::VecDeque::from([start as u32]);
            let mut comp = Vec::new();
            while let Some(v) = queue.pop_front() {
                comp.push(PhysicalVertex(v));
                for &u in &self.adj[v as usize] {
                    if !seen[u.index()] {
                        seen[u.index()] = true;
                        queue.push_back(u.0);
                    }
                }
            }
            comp.sort();
            out.push(comp);
        }
        out
    }

    /// Subgraph induced by `keep`, with vertices renumbered 0.. in the order
    /// given. Returns the graph and the map from new index to old vertex.
    pub fn induced(&self, keep: &[PhysicalVertex]) -> (FastGraph, Vec<PhysicalVertex>) {
        let mut back = keep.to_vec();
        back.sort();
        back.dedup();
        let mut fwd = vec![u32::MAX; self.vertex_count];
        for (i, v) in back.iter().enumerate() {
            fwd[v.index()] = i as u32;
        }
        let mut pairs = Vec::new();
        for &(a, b) in &self.edges {
            let (na, nb) = (fwd[a.index()], fwd[b.index()]);
            if na != u32::MAX && nb != u32::MAX {
                let w = self.edge_weight(a, b).unwrap();
                pairs.push((na.min(nb), na.max(nb), w));
            }
        }
        (FastGraph::build(back.len(), pairs, self.threshold), back)
    }
}

/// Keep exactly the off-diagonal couplings with weight at or below
/// `threshold`. Diagonal (single-qubit) weights never form edges.
pub fn fast_graph(env: &PhysicalEnvironment, threshold: Time) -> FastGraph {
    let mut pairs = Vec::new();
    for (u, v, w) in env.declared_entries() {
        if u != v && w <= threshold {
            pairs.push((u.0, v.0, w));
        }
    }
    FastGraph::build(env.vertex_count(), pairs, threshold)
}

/// Smallest threshold whose fast graph is connected: the maximum edge of a
/// bottleneck spanning tree over the declared couplings.
pub fn min_connecting_threshold(env: &PhysicalEnvironment) -> Result<Time> {
    let n = env.vertex_count();
    if n <= 1 {
        return Ok(Time::from_integer(0));
    }
    let n = n as u32;
    let mut edges: Vec<(Time, u32, u32)> = env
        .declared_entries()
        .into_iter()
        .filter(|&(u, v, _)| u != v)
        .map(|(u, v, w)| (w, u.0, v.0))
        .collect();
    edges.sort();
    let mut parent: Vec<u32> = (0..n).collect();
    fn find(parent: &mut [u32], v: u32) -> u32 {
        let mut root = v;
        while parent[root as usize] != root {
            root = parent[root as usize];
        }
        let mut cur = v;
        while parent[cur as usize] != root {
            let next = parent[cur as usize];
            parent[cur as usize] = root;
            cur = next;
        }
        root
    }
    let mut remaining = n - 1;
    for (w, a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra as usize] = rb;
            remaining -= 1;
            if remaining == 0 {
                return Ok(w);
            }
        }
    }
    Err(Error::Unconnectable)
}
