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

//! Logical circuits as leveled lists of one- and two-qubit gates.
//!
//! A level is a set of gates on pairwise disjoint qubits; levels execute in
//! order. Gate durations are dimensionless factors that the evaluator
//! multiplies by the environment weight of the placed operands.

use crate::error::{Error, Result};
use crate::time::Time;

/// Index of a logical qubit within its circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LogicalQubit(pub u32);

impl LogicalQubit {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Operands {
    Single(LogicalQubit),
    Pair(LogicalQubit, LogicalQubit),
}

impl Operands {
    pub fn touches(&self, q: LogicalQubit) -> bool {
        match *self {
            Operands::Single(a) => a == q,
            Operands::Pair(a, b) => a == q || b == q,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gate {
    pub label: String,
    /// Dimensionless duration factor; the cost of the gate is this factor
    /// times the weight of the physical pair it lands on.
    pub duration_factor: Time,
    pub operands: Operands,
}

impl Gate {
    pub fn single(label: &str, duration_factor: Time, q: LogicalQubit) -> Gate {
        Gate {
            label: label.to_string(),
            duration_factor,
            operands: Operands::Single(q),
        }
    }

    pub fn pair(label: &str, duration_factor: Time, a: LogicalQubit, b: LogicalQubit) -> Gate {
        assert_ne!(a, b, "two-qubit gate needs distinct operands");
        Gate {
            label: label.to_string(),
            duration_factor,
            operands: Operands::Pair(a, b),
        }
    }

    pub fn is_pair(&self) -> bool {
        matches!(self.operands, Operands::Pair(..))
    }

    /// The unordered operand pair of a two-qubit gate, smaller index first.
    pub fn unordered_pair(&self) -> Option<(LogicalQubit, LogicalQubit)> {
        match self.operands {
            Operands::Single(_) => None,
            Operands::Pair(a, b) => Some(if a.0 <= b.0 { (a, b) } else { (b, a) }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    qubit_names: Vec<String>,
    levels: Vec<Vec<Gate>>,
}

impl Circuit {
    /// Builds a circuit from explicit levels, checking that every level has
    /// pairwise disjoint support and that qubit names are unique.
    pub fn from_levels<S: Into<String>>(
        qubit_names: impl IntoIterator<Item = S>,
        levels: Vec<Vec<Gate>>,
    ) -> Result<Circuit> {
        let qubit_names: Vec<String> = qubit_names.into_iter().map(Into::into).collect();
        check_names(&qubit_names)?;
        let n = qubit_names.len() as u32;
        for (li, level) in levels.iter().enumerate() {
            let mut touched = vec![false; n as usize];
            for gate in level {
                for q in operand_list(gate) {
                    if q.0 >= n {
                        return Err(Error::UnknownQubit(format!("#{}", q.0)));
                    }
                    if touched[q.index()] {
                        return Err(Error::LevelSupportOverlap {
                            level: li + 1,
                            qubit: qubit_names[q.index()].clone(),
                        });
                    }
                    touched[q.index()] = true;
                }
            }
        }
        Ok(Circuit {
            qubit_names,
            levels,
        })
    }

    /// Builds a circuit from a flat gate list by as-soon-as-possible
    /// levelization: each gate lands one past the last level touching any of
    /// its operands.
    pub fn levelize<S: Into<String>>(
        qubit_names: impl IntoIterator<Item = S>,
        gates: Vec<Gate>,
    ) -> Result<Circuit> {
        let qubit_names: Vec<String> = qubit_names.into_iter().map(Into::into).collect();
        check_names(&qubit_names)?;
        let n = qubit_names.len();
        let mut last_level: Vec<Option<usize>> = vec![None; n];
        let mut levels: Vec<Vec<Gate>> = Vec::new();
        for gate in gates {
            let mut lvl = 0usize;
            for q in operand_list(&gate) {
                if q.index() >= n {
                    return Err(Error::UnknownQubit(format!("#{}", q.0)));
                }
                if let Some(l) = last_level[q.index()] {
                    lvl = lvl.max(l + 1);
                }
            }
            if lvl == levels.len() {
                levels.push(Vec::new());
            }
            for q in operand_list(&gate) {
                last_level[q.index()] = Some(lvl);
            }
            levels[lvl].push(gate);
        }
        Ok(Circuit {
            qubit_names,
            levels,
        })
    }

    pub fn qubits(&self) -> impl Iterator<Item = LogicalQubit> {
        (0..self.qubit_names.len() as u32).map(LogicalQubit)
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_names.len()
    }

    pub fn qubit_names(&self) -> &[String] {
        &self.qubit_names
    }

    pub fn qubit_name(&self, q: LogicalQubit) -> &str {
        &self.qubit_names[q.index()]
    }

    pub fn find_qubit(&self, name: &str) -> Option<LogicalQubit> {
        self.qubit_names
            .iter()
            .position(|n| n == name)
            .map(|i| LogicalQubit(i as u32))
    }

    pub fn levels(&self) -> &[Vec<Gate>] {
        &self.levels
    }

    pub fn gate_count(&self) -> usize {
        self.levels.iter().map(|l| l.len()).sum()
    }

    /// Gates in execution order: level by level, in-level order preserved.
    pub fn flatten(&self) -> impl Iterator<Item = &Gate> {
        self.levels.iter().flatten()
    }

    /// Flattened gates paired with their level index.
    pub fn flatten_with_levels(&self) -> impl Iterator<Item = (usize, &Gate)> {
        self.levels
            .iter()
            .enumerate()
            .flat_map(|(i, level)| level.iter().map(move |g| (i, g)))
    }

    /// True if the qubit appears in at least one two-qubit gate.
    pub fn interacts(&self, q: LogicalQubit) -> bool {
        self.flatten().any(|g| g.is_pair() && g.operands.touches(q))
    }
}

pub(crate) fn operand_list(gate: &Gate) -> Vec<LogicalQubit> {
    match gate.operands {
        Operands::Single(a) => vec![a],
        Operands::Pair(a, b) => vec![a, b],
    }
}

fn check_names(names: &[String]) -> Result<()> {
    for (i, name) in names.iter().enumerate() {
        if names[..i].contains(name) {
            return Err(Error::DuplicateQubit(name.clone()));
        }
    }
    Ok(())
}
