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

//! Injective assignments of logical qubits to physical vertices.

use crate::circuit::{Circuit, LogicalQubit};
use crate::env::{PhysicalEnvironment, PhysicalVertex};
use crate::error::{Error, Result};

/// A total injective map from the qubits of one circuit to environment
/// vertices. Index `i` holds the image of qubit `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Placement {
    to_vertex: Vec<PhysicalVertex>,
}

impl Placement {
    pub fn new(to_vertex: Vec<PhysicalVertex>, vertex_count: usize) -> Result<Placement> {
        let mut used = vec![false; vertex_count];
        for &v in &to_vertex {
            if v.index() >= vertex_count {
                return Err(Error::UnknownVertex(format!("#{}", v.0)));
            }
            if used[v.index()] {
                return Err(Error::InvalidParameter(format!(
                    "placement maps two qubits to vertex #{}",
                    v.0
                )));
            }
            used[v.index()] = true;
        }
        Ok(Placement { to_vertex })
    }

    /// Builds a placement from `(qubit name, vertex name)` pairs; every
    /// circuit qubit must be covered exactly once.
    pub fn from_pairs(
        circuit: &Circuit,
        env: &PhysicalEnvironment,
        pairs: &[(&str, &str)],
    ) -> Result<Placement> {
        let mut to_vertex: Vec<Option<PhysicalVertex>> = vec![None; circuit.qubit_count()];
        for (qname, vname) in pairs {
            let q = circuit
                .find_qubit(qname)
                .ok_or_else(|| Error::UnknownQubit(qname.to_string()))?;
            let v = env
                .find(vname)
                .ok_or_else(|| Error::UnknownVertex(vname.to_string()))?;
            to_vertex[q.index()] = Some(v);
        }
        let mut map = Vec::with_capacity(to_vertex.len());
        for (i, slot) in to_vertex.into_iter().enumerate() {
            map.push(slot.ok_or_else(|| Error::UnplacedQubit(circuit.qubit_names()[i].clone()))?);
        }
        Placement::new(map, env.vertex_count())
    }

    pub fn vertex_of(&self, q: LogicalQubit) -> PhysicalVertex {
        self.to_vertex[q.index()]
    }

    pub fn qubit_count(&self) -> usize {
        self.to_vertex.len()
    }

    pub fn as_slice(&self) -> &[PhysicalVertex] {
        &self.to_vertex
    }

    /// The qubit currently occupying `v`, if any.
    pub fn occupant(&self, v: PhysicalVertex) -> Option<LogicalQubit> {
        self.to_vertex
            .iter()
            .position(|&u| u == v)
            .map(|i| LogicalQubit(i as u32))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{acetyl, encoder_circuit};

    #[test]
    fn from_pairs_builds_the_expected_map() {
        let env = acetyl();
        let circuit = encoder_circuit();
        let p =
            Placement::from_pairs(&circuit, &env, &[("a", "M"), ("b", "C2"), ("c", "C1")]).unwrap();
        assert_eq!(p.vertex_of(LogicalQubit(0)), env.find("M").unwrap());
        assert_eq!(p.vertex_of(LogicalQubit(1)), env.find("C2").unwrap());
        assert_eq!(p.occupant(env.find("C1").unwrap()), Some(LogicalQubit(2)));
    }

    #[test]
    fn rejects_collisions_and_gaps() {
        let env = acetyl();
        let circuit = encoder_circuit();
        assert!(
            Placement::from_pairs(&circuit, &env, &[("a", "M"), ("b", "M"), ("c", "C1")]).is_err()
        );
        assert!(Placement::from_pairs(&circuit, &env, &[("a", "M"), ("b", "C1")]).is_err());
    }

    #[test]
    fn rejects_out_of_range_vertices() {
        assert!(Placement::new(vec![PhysicalVertex(3)], 3).is_err());
    }
}
