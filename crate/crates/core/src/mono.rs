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

//! Subgraph monomorphism search: embedding a circuit's interaction pattern
//! into the fast graph.
//!
//! The search is plain backtracking with two standard refinements: pattern
//! vertices are ordered so each one (after the first of its component) is
//! adjacent to an already-ordered vertex, preferring high degree, and host
//! candidates for such a vertex are drawn only from the neighborhood of an
//! already-mapped pattern neighbor. Enumeration order is deterministic, so
//! a capped result set is a stable prefix of the full one.

use std::collections::HashMap;

use crate::circuit::{Circuit, LogicalQubit};
use crate::env::PhysicalVertex;
use crate::fastgraph::FastGraph;

/// The simple graph on a circuit's qubits induced by its two-qubit gates.
/// Qubits that only ever see single-qubit gates (or none) are not part of
/// the pattern; they are placed separately.
#[derive(Clone, Debug)]
pub struct InteractionPattern {
    vertices: Vec<LogicalQubit>,
    edges: Vec<(LogicalQubit, LogicalQubit)>,
    adj: HashMap<u32, Vec<LogicalQubit>>,
}

impl InteractionPattern {
    pub fn from_circuit(circuit: &Circuit) -> InteractionPattern {
        let pairs: Vec<(LogicalQubit, LogicalQubit)> = circuit
            .flatten()
            .filter_map(|g| g.unordered_pair())
            .collect();
        InteractionPattern::from_edges(&pairs)
    }

    pub fn from_edges(pairs: &[(LogicalQubit, LogicalQubit)]) -> InteractionPattern {
        let mut edges: Vec<(LogicalQubit, LogicalQubit)> = pairs
            .iter()
            .map(|&(a, b)| {
                assert_ne!(a, b, "self-loop in interaction pattern");
                (a.min(b), a.max(b))
            })
            .collect();
        edges.sort();
        edges.dedup();
        let mut adj: HashMap<u32, Vec<LogicalQubit>> = HashMap::new();
        for &(a, b) in &edges {
            adj.entry(a.0).or_default().push(b);
            adj.entry(b.0).or_default().push(a);
        }
        let mut vertices: Vec<LogicalQubit> = adj.keys().copied().map(LogicalQubit).collect();
        vertices.sort();
        for list in adj.values_mut() {
            list.sort();
        }
        InteractionPattern {
            vertices,
            edges,
            adj,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Pattern qubits, ascending.
    pub fn vertices(&self) -> &[LogicalQubit] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(LogicalQubit, LogicalQubit)] {
        &self.edges
    }

    pub fn degree(&self, q: LogicalQubit) -> usize {
        self.adj.get(&q.0).map_or(0, Vec::len)
    }

    pub fn neighbors(&self, q: LogicalQubit) -> &[LogicalQubit] {
        self.adj.get(&q.0).map_or(&[], Vec::as_slice)
    }

    pub fn contains(&self, q: LogicalQubit) -> bool {
        self.adj.contains_key(&q.0)
    }

    pub fn has_edge(&self, a: LogicalQubit, b: LogicalQubit) -> bool {
        self.edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }
}

/// One embedding of a pattern: qubit-to-vertex pairs, sorted by qubit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomorphism {
    pub map: Vec<(LogicalQubit, PhysicalVertex)>,
}

impl Monomorphism {
    pub fn vertex_of(&self, q: LogicalQubit) -> Option<PhysicalVertex> {
        self.map
            .binary_search_by_key(&q, |&(p, _)| p)
            .ok()
            .map(|i| self.map[i].1)
    }
}

/// Result of a capped enumeration. `complete` is true only when the whole
/// search space was exhausted (neither the map limit nor the node budget
/// cut it short).
#[derive(Clone, Debug)]
pub struct MonomorphismSet {
    pub maps: Vec<Monomorphism>,
    pub complete: bool,
    pub nodes_expanded: u64,
}

struct Search<'a> {
    host: &'a FastGraph,
    order: Vec<LogicalQubit>,
    /// For order position i: position of an earlier pattern neighbor, if any.
    anchor: Vec<Option<usize>>,
    pat_deg: Vec<usize>,
    pat_neighbors: Vec<Vec<usize>>,
    limit: usize,
    budget: u64,
    nodes: u64,
    image: Vec<PhysicalVertex>,
    used: Vec<bool>,
    maps: Vec<Monomorphism>,
    complete: bool,
}

fn search_order(pattern: &InteractionPattern) -> (Vec<LogicalQubit>, Vec<Option<usize>>) {
    let n = pattern.vertex_count();
    let mut order = Vec::with_capacity(n);
    let mut anchor = Vec::with_capacity(n);
    let mut placed: HashMap<LogicalQubit, usize> = HashMap::new();
    let priority = |q: LogicalQubit| (std::cmp::Reverse(pattern.degree(q)), q);
    while order.len() < n {
        let mut best: Option<(LogicalQubit, Option<usize>)> = None;
        for &q in pattern.vertices() {
            if placed.contains_key(&q) {
                continue;
            }
            let link = pattern
                .neighbors(q)
                .iter()
                .filter_map(|p| placed.get(p).copied())
                .min();
            let connected = link.is_some() || order.is_empty();
            let better = match &best {
                None => connected,
                Some((cur, cur_link)) => {
                    let cur_connected = cur_link.is_some() || order.is_empty();
                    match (connected, cur_connected) {
                        (true, false) => true,
                        (false, true) => false,
                        _ => priority(q) < priority(*cur),
                    }
                }
            };
            if better {
                best = Some((q, link));
            }
        }
        let (q, link) = match best {
            Some(x) => x,
            // No unplaced vertex touches the ordered set: the pattern is
            // disconnected, so start a fresh component at the best vertex.
            None => {
                let q = pattern
                    .vertices()
                    .iter()
                    .copied()
                    .filter(|q| !placed.contains_key(q))
                    .min_by_key(|&q| priority(q))
                    .unwrap();
                (q, None)
            }
        };
        placed.insert(q, order.len());
        order.push(q);
        anchor.push(link);
    }
    (order, anchor)
}

impl<'a> Search<'a> {
    fn new(
        pattern: &InteractionPattern,
        host: &'a FastGraph,
        limit: usize,
        budget: u64,
    ) -> Search<'a> {
        let (order, anchor) = search_order(pattern);
        let pos: HashMap<LogicalQubit, usize> =
            order.iter().enumerate().map(|(i, &q)| (q, i)).collect();
        let pat_deg = order.iter().map(|&q| pattern.degree(q)).collect();
        let pat_neighbors = order
            .iter()
            .enumerate()
            .map(|(i, &q)| {
                pattern
                    .neighbors(q)
                    .iter()
                    .map(|p| pos[p])
                    .filter(|&j| j < i)
                    .collect()
            })
            .collect();
        Search {
            host,
            order,
            anchor,
            pat_deg,
            pat_neighbors,
            limit,
            budget,
            nodes: 0,
            image: Vec::new(),
            used: vec![false; host.vertex_count()],
            maps: Vec::new(),
            complete: true,
        }
    }

    /// Returns false to abort the whole search (limit or budget reached).
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            let mut map: Vec<(LogicalQubit, PhysicalVertex)> = self
                .order
                .iter()
                .copied()
                .zip(self.image.iter().copied())
                .collect();
            map.sort_by_key(|&(q, _)| q);
            self.maps.push(Monomorphism { map });
            if self.maps.len() >= self.limit {
                self.complete = false;
                return false;
            }
            return true;
        }
        let candidates: Vec<PhysicalVertex> = match self.anchor[depth] {
            Some(a) => self.host.neighbors(self.image[a]).to_vec(),
            None => self.host.vertices().collect(),
        };
        for v in candidates {
            if self.used[v.index()] || self.host.degree(v) < self.pat_deg[depth] {
                continue;
            }
            if !self.pat_neighbors[depth]
                .iter()
                .all(|&j| self.host.has_edge(v, self.image[j]))
            {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                self.complete = false;
                return false;
            }
            self.image.push(v);
            self.used[v.index()] = true;
            let keep_going = self.extend(depth + 1);
            self.used[v.index()] = false;
            self.image.pop();
            if !keep_going {
                return false;
            }
        }
        true
    }
}

/// Enumerate embeddings of `pattern` into `host`, at most `limit` of them,
/// spending at most `budget` candidate extensions.
pub fn enumerate_monomorphisms(
    pattern: &InteractionPattern,
    host: &FastGraph,
    limit: usize,
    budget: u64,
) -> MonomorphismSet {
    if pattern.is_empty() {
        return MonomorphismSet {
            maps: vec![Monomorphism { map: Vec::new() }],
            complete: true,
            nodes_expanded: 0,
        };
    }
    if limit == 0 {
        return MonomorphismSet {
            maps: Vec::new(),
            complete: false,
            nodes_expanded: 0,
        };
    }
    if pattern.vertex_count() > host.vertex_count()
        || pattern
            .vertices()
            .iter()
            .any(|&q| pattern.degree(q) > host.max_degree())
    {
        return MonomorphismSet {
            maps: Vec::new(),
            complete: true,
            nodes_expanded: 0,
        };
    }
    let mut search = Search::new(pattern, host, limit, budget);
    search.extend(0);
    MonomorphismSet {
        maps: search.maps,
        complete: search.complete,
        nodes_expanded: search.nodes,
    }
}

/// Existence check; stops at the first embedding. A budget overrun counts
/// as "no embedding found", consistent with how prefix extraction treats it.
pub fn pattern_embeds(pattern: &InteractionPattern, host: &FastGraph, budget: u64) -> bool {
    !enumerate_monomorphisms(pattern, host, 1, budget)
        .maps
        .is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{acetyl, encoder_circuit};
    use crate::time::time;

    fn q(i: u32) -> LogicalQubit {
        LogicalQubit(i)
    }

    fn v(i: u32) -> PhysicalVertex {
        PhysicalVertex(i)
    }

    const BUDGET: u64 = 1_000_000;

    #[test]
    fn pattern_skips_single_qubit_gates() {
        let c = encoder_circuit();
        let p = InteractionPattern::from_circuit(&c);
        assert_eq!(p.vertex_count(), 3);
        assert_eq!(p.edges(), &[(q(0), q(1)), (q(1), q(2))]);
        assert_eq!(p.degree(q(1)), 2);
    }

    #[test]
    fn duplicate_gates_collapse_to_one_edge() {
        let p = InteractionPattern::from_edges(&[(q(0), q(1)), (q(1), q(0)), (q(0), q(1))]);
        assert_eq!(p.edge_count(), 1);
        assert!(p.has_edge(q(1), q(0)));
    }

    #[test]
    fn single_edge_into_triangle_enumerates_all_six() {
        let p = InteractionPattern::from_edges(&[(q(0), q(1))]);
        let host = FastGraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]);
        let set = enumerate_monomorphisms(&p, &host, 100, BUDGET);
        assert!(set.complete);
        assert_eq!(set.maps.len(), 6);
        assert_eq!(set.maps[0].map, vec![(q(0), v(0)), (q(1), v(1))]);
        assert_eq!(set.maps[1].map, vec![(q(0), v(0)), (q(1), v(2))]);
    }

    #[test]
    fn limit_truncates_and_reports_incomplete() {
        let p = InteractionPattern::from_edges(&[(q(0), q(1))]);
        let host = FastGraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]);
        let set = enumerate_monomorphisms(&p, &host, 4, BUDGET);
        assert!(!set.complete);
        assert_eq!(set.maps.len(), 4);
        let full = enumerate_monomorphisms(&p, &host, 100, BUDGET);
        assert_eq!(&full.maps[..4], &set.maps[..]);
    }

    #[test]
    fn path_pattern_into_acetyl_line() {
        let env = acetyl();
        let host = crate::fastgraph::fast_graph(&env, time(100));
        let p = InteractionPattern::from_edges(&[(q(0), q(1)), (q(1), q(2))]);
        let set = enumerate_monomorphisms(&p, &host, 100, BUDGET);
        assert!(set.complete);
        // The middle qubit must sit on the middle site; two orientations.
        assert_eq!(set.maps.len(), 2);
        assert_eq!(
            set.maps[0].map,
            vec![(q(0), v(0)), (q(1), v(1)), (q(2), v(2))]
        );
        assert_eq!(
            set.maps[1].map,
            vec![(q(0), v(2)), (q(1), v(1)), (q(2), v(0))]
        );
    }

    #[test]
    fn triangle_does_not_embed_into_a_path() {
        let p = InteractionPattern::from_edges(&[(q(0), q(1)), (q(1), q(2)), (q(0), q(2))]);
        let host = FastGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        let set = enumerate_monomorphisms(&p, &host, 100, BUDGET);
        assert!(set.complete);
        assert!(set.maps.is_empty());
        assert!(!pattern_embeds(&p, &host, BUDGET));
    }

    #[test]
    fn empty_pattern_has_exactly_one_embedding() {
        let p = InteractionPattern::from_edges(&[]);
        let host = FastGraph::from_edges(2, &[(0, 1)]);
        let set = enumerate_monomorphisms(&p, &host, 100, BUDGET);
        assert!(set.complete);
        assert_eq!(set.maps.len(), 1);
        assert!(set.maps[0].map.is_empty());
    }

    #[test]
    fn disconnected_pattern_components_both_embed() {
        let p = InteractionPattern::from_edges(&[(q(0), q(1)), (q(2), q(3))]);
        let host = FastGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        let set = enumerate_monomorphisms(&p, &host, 1000, BUDGET);
        assert!(set.complete);
        assert!(!set.maps.is_empty());
        for m in &set.maps {
            let at = |x: u32| m.vertex_of(q(x)).unwrap();
            assert!(host.has_edge(at(0), at(1)));
            assert!(host.has_edge(at(2), at(3)));
            let mut img = vec![at(0), at(1), at(2), at(3)];
            img.dedup();
            img.sort();
            img.dedup();
            assert_eq!(img.len(), 4, "images must be distinct");
        }
    }

    #[test]
    fn budget_overrun_is_reported_incomplete() {
        let p = InteractionPattern::from_edges(&[(q(0), q(1)), (q(1), q(2))]);
        let host = FastGraph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]);
        let set = enumerate_monomorphisms(&p, &host, usize::MAX, 3);
        assert!(!set.complete);
    }

    /// Brute force over all injections, for cross-checking.
    fn brute_force(p: &InteractionPattern, host: &FastGraph) -> usize {
        let hn = host.vertex_count();
        let pv = p.vertices();
        let mut count = 0;
        let mut image = vec![PhysicalVertex(0); pv.len()];
        let mut used = vec![false; hn];
        fn rec(
            p: &InteractionPattern,
            host: &FastGraph,
            pv: &[LogicalQubit],
            depth: usize,
            image: &mut [PhysicalVertex],
            used: &mut [bool],
            count: &mut usize,
        ) {
            if depth == pv.len() {
                *count += 1;
                return;
            }
            for x in 0..host.vertex_count() as u32 {
                let cand = PhysicalVertex(x);
                if used[cand.index()] {
                    continue;
                }
                let ok = (0..depth)
                    .all(|j| !p.has_edge(pv[depth], pv[j]) || host.has_edge(cand, image[j]));
                if ok {
                    used[cand.index()] = true;
                    image[depth] = cand;
                    rec(p, host, pv, depth + 1, image, used, count);
                    used[cand.index()] = false;
                }
            }
        }
        rec(p, host, pv, 0, &mut image, &mut used, &mut count);
        count
    }

    #[test]
    fn counts_agree_with_brute_force() {
        let hosts = [
            FastGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]),
            FastGraph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)]),
            FastGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]),
            FastGraph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]),
        ];
        let patterns = [
            InteractionPattern::from_edges(&[(q(0), q(1))]),
            InteractionPattern::from_edges(&[(q(0), q(1)), (q(1), q(2))]),
            InteractionPattern::from_edges(&[(q(0), q(1)), (q(1), q(2)), (q(2), q(3))]),
            InteractionPattern::from_edges(&[(q(0), q(1)), (q(1), q(2)), (q(0), q(2))]),
            InteractionPattern::from_edges(&[(q(0), q(1)), (q(2), q(3))]),
            InteractionPattern::from_edges(&[(q(0), q(1)), (q(0), q(2)), (q(0), q(3))]),
        ];
        for host in &hosts {
            for p in &patterns {
                let set = enumerate_monomorphisms(p, host, usize::MAX, BUDGET);
                assert!(set.complete);
                assert_eq!(set.maps.len(), brute_force(p, host));
                let mut sorted = set.maps.clone();
                sorted.dedup();
                assert_eq!(sorted.len(), set.maps.len(), "no duplicate maps");
            }
        }
    }
}
