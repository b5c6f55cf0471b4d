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

//! Error and validation types shared across the crate.

use std::fmt;

/// A single defect found while validating a physical environment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    DuplicateVertex(String),
    NegativeWeight(String, String),
    AsymmetricWeight(String, String),
    NegativeUnit,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateVertex(name) => write!(f, "duplicate vertex name `{name}`"),
            Violation::NegativeWeight(a, b) => write!(f, "negative weight between `{a}` and `{b}`"),
            Violation::AsymmetricWeight(a, b) => {
                write!(f, "asymmetric weights between `{a}` and `{b}`")
            }
            Violation::NegativeUnit => write!(f, "time unit must be positive"),
        }
    }
}

/// Outcome of `validate_environment`: empty means the environment is usable.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "ok");
        }
        let lines: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", lines.join("; "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid environment: {0}")]
    InvalidEnvironment(ValidationReport),
    #[error("unknown qubit `{0}`")]
    UnknownQubit(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate qubit `{0}`")]
    DuplicateQubit(String),
    #[error("level {level} uses qubit `{qubit}` more than once")]
    LevelSupportOverlap { level: usize, qubit: String },
    #[error("circuit has {qubits} qubits but the environment only has {vertices} vertices")]
    TooManyQubits { qubits: usize, vertices: usize },
    #[error("no interaction is available between `{a}` and `{b}`")]
    UnavailableInteraction { a: String, b: String },
    #[error("placement does not cover qubit `{0}`")]
    UnplacedQubit(String),
    #[error("no placement avoids the environment's unavailable interactions")]
    NoFeasiblePlacement,
    #[error("interaction pattern does not embed into the fast graph at gate {gate_index}")]
    NoEmbedding { gate_index: usize },
    #[error("fast graph is disconnected; raise the threshold or pass `auto`")]
    DisconnectedFastGraph,
    #[error("no finite threshold connects the environment")]
    Unconnectable,
    #[error("routing target is not a permutation of the vertices")]
    NotAPermutation,
    #[error("permutation moves values between disconnected fast-graph components")]
    UnroutablePermutation,
    #[error("instance has {vertices} vertices; the exact router handles at most {limit}")]
    RoutingTooLarge { vertices: usize, limit: usize },
    #[error("search space of {search_space} placements exceeds the budget of {budget}")]
    OracleBudgetExceeded { search_space: String, budget: u64 },
    #[error("numeric overflow in exact arithmetic")]
    NumericOverflow,
    #[error("{0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
