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

//! The physical environment: a weighted interaction table over vertices.
//!
//! `W(u, v)` is the duration of one unit of interaction between the qubits
//! sitting at vertices `u` and `v`; the diagonal `W(v, v)` prices one unit of
//! a single-qubit operation at `v`. A missing entry means the interaction is
//! not available at all. Weights are dimensionless multiples of the
//! environment's time unit.

use std::collections::HashMap;

use crate::error::{ValidationReport, Violation};
use crate::time::Time;

/// Index of a vertex of the physical environment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PhysicalVertex(pub u32);

impl PhysicalVertex {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhysicalEnvironment {
    names: Vec<String>,
    index: HashMap<String, u32>,
    /// Row-major `m x m` table; `None` marks an unavailable interaction.
    weights: Vec<Option<Time>>,
    unit_seconds: Time,
}

impl PhysicalEnvironment {
    /// Creates an environment with no interactions declared yet.
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>, unit_seconds: Time) -> Self {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let m = names.len();
        let mut index = HashMap::with_capacity(m);
        for (i, name) in names.iter().enumerate() {
            index.entry(name.clone()).or_insert(i as u32);
        }
        PhysicalEnvironment {
            names,
            index,
            weights: vec![None; m * m],
            unit_seconds,
        }
    }

    /// Wraps a raw weight table without touching it, so that defective
    /// tables can be handed to `validate_environment`.
    pub fn from_raw_table(
        names: Vec<String>,
        weights: Vec<Option<Time>>,
        unit_seconds: Time,
    ) -> Self {
        assert_eq!(weights.len(), names.len() * names.len());
        let mut env = PhysicalEnvironment::new(names, unit_seconds);
        env.weights = weights;
        env
    }

    /// Declares `W(u, v) = W(v, u) = weight`.
    pub fn set_weight(&mut self, u: PhysicalVertex, v: PhysicalVertex, weight: Time) {
        let m = self.names.len();
        self.weights[u.index() * m + v.index()] = Some(weight);
        self.weights[v.index() * m + u.index()] = Some(weight);
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = PhysicalVertex> {
        (0..self.names.len() as u32).map(PhysicalVertex)
    }

    pub fn name(&self, v: PhysicalVertex) -> &str {
        &self.names[v.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn find(&self, name: &str) -> Option<PhysicalVertex> {
        self.index.get(name).copied().map(PhysicalVertex)
    }

    /// The weight of one unit of interaction, or `None` if unavailable.
    pub fn weight(&self, u: PhysicalVertex, v: PhysicalVertex) -> Option<Time> {
        self.weights[u.index() * self.names.len() + v.index()]
    }

    pub fn unit_seconds(&self) -> Time {
        self.unit_seconds
    }

    /// All declared entries with `u <= v`, in row order. Diagonals first
    /// within a row is implied by the column scan.
    pub fn declared_entries(&self) -> Vec<(PhysicalVertex, PhysicalVertex, Time)> {
        let mut out = Vec::new();
        for u in 0..self.names.len() {
            for v in u..self.names.len() {
                if let Some(w) = self.weights[u * self.names.len() + v] {
                    out.push((PhysicalVertex(u as u32), PhysicalVertex(v as u32), w));
                }
            }
        }
        out
    }

    /// Largest finite weight in the table, if any entry is declared.
    pub fn max_weight(&self) -> Option<Time> {
        self.weights.iter().flatten().copied().max()
    }
}

/// Checks symmetry, nonnegativity, vertex-name uniqueness and unit
/// positivity. The environment is usable iff the report is empty.
pub fn validate_environment(env: &PhysicalEnvironment) -> ValidationReport {
    let mut report = ValidationReport::default();
    let m = env.names.len();
    let mut counts: HashMap<&str, usize> = HashMap::new();
    for name in &env.names {
        *counts.entry(name.as_str()).or_insert(0) += 1;
    }
    let mut reported: Vec<&str> = Vec::new();
    for name in &env.names {
        if counts[name.as_str()] > 1 && !reported.contains(&name.as_str()) {
            reported.push(name.as_str());
            report
                .violations
                .push(Violation::DuplicateVertex(name.clone()));
        }
    }
    for u in 0..m {
        for v in u..m {
            let forward = env.weights[u * m + v];
            let backward = env.weights[v * m + u];
            if forward != backward {
                report.violations.push(Violation::AsymmetricWeight(
                    env.names[u].clone(),
                    env.names[v].clone(),
                ));
            }
            for w in [forward, backward].into_iter().flatten() {
                if w < Time::from_integer(0) {
                    report.violations.push(Violation::NegativeWeight(
                        env.names[u].clone(),
                        env.names[v].clone(),
                    ));
                    break;
                }
            }
        }
    }
    if env.unit_seconds <= Time::from_integer(0) {
        report.violations.push(Violation::NegativeUnit);
    }
    report
}
