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

//! Seeded graph and permutation generators shared by the integration
//! suites. Each test target uses its own subset.

#![allow(dead_code)]

use rand::RngCore;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qplace_core::{FastGraph, PhysicalVertex};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn below(rng: &mut ChaCha8Rng, n: usize) -> usize {
    (rng.next_u64() % n as u64) as usize
}

pub fn chain(n: usize) -> FastGraph {
    let edges: Vec<(u32, u32)> = (0..n as u32 - 1).map(|i| (i, i + 1)).collect();
    FastGraph::from_edges(n, &edges)
}

pub fn grid(width: usize, height: usize) -> FastGraph {
    let mut edges = Vec::new();
    let at = |x: usize, y: usize| (y * width + x) as u32;
    for y in 0..height {
        for x in 0..width {
            if x + 1 < width {
                edges.push((at(x, y), at(x + 1, y)));
            }
            if y + 1 < height {
                edges.push((at(x, y), at(x, y + 1)));
            }
        }
    }
    FastGraph::from_edges(width * height, &edges)
}

/// A connected graph on `n` vertices with maximum degree at most
/// `max_degree` (which must be at least 2): a random tree grown under the
/// degree cap, plus up to `extra` additional random edges that respect it.
pub fn random_connected_graph(
    n: usize,
    max_degree: usize,
    extra: usize,
    rng: &mut ChaCha8Rng,
) -> FastGraph {
    assert!(max_degree >= 2 && n >= 1);
    let mut degree = vec![0usize; n];
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut open: Vec<u32> = vec![0];
    for v in 1..n as u32 {
        let slot = below(rng, open.len());
        let parent = open[slot];
        edges.push((parent, v));
        degree[parent as usize] += 1;
        degree[v as usize] += 1;
        if degree[parent as usize] >= max_degree {
            open.swap_remove(slot);
        }
        if degree[v as usize] < max_degree {
            open.push(v);
        }
    }
    for _ in 0..extra {
        let a = below(rng, n) as u32;
        let b = below(rng, n) as u32;
        if a == b || degree[a as usize] >= max_degree || degree[b as usize] >= max_degree {
            continue;
        }
        let key = (a.min(b), a.max(b));
        if edges.iter().any(|&(x, y)| (x.min(y), x.max(y)) == key) {
            continue;
        }
        edges.push(key);
        degree[a as usize] += 1;
        degree[b as usize] += 1;
    }
    FastGraph::from_edges(n, &edges)
}

pub fn random_permutation(n: usize, rng: &mut ChaCha8Rng) -> Vec<PhysicalVertex> {
    let mut p: Vec<PhysicalVertex> = (0..n as u32).map(PhysicalVertex).collect();
    for i in (1..n).rev() {
        let j = below(rng, i + 1);
        p.swap(i, j);
    }
    p
}
