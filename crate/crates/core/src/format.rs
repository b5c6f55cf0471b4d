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

//! Text formats for environments, circuits, permutations and graphs.
//!
//! All formats are line-oriented UTF-8; `#` starts a comment and blank
//! lines are ignored. Emitters write a canonical form, so emit→parse→emit
//! is byte-identical.

use crate::circuit::{Circuit, Gate, LogicalQubit};
use crate::env::{PhysicalEnvironment, PhysicalVertex};
use crate::error::{Error, Result};
use crate::generate::{ChainBenchmark, CHAIN_GENERATOR_ID};
use crate::time::{format_time, parse_time, time, Time};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Strips comments and yields `(1-based line number, tokens)` for every
/// line that has content.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        if tokens.is_empty() {
            None
        } else {
            Some((i + 1, tokens))
        }
    })
}

/// Environment format: a `unit <seconds-per-unit>` header, then one weight
/// per line as `<name_i> <name_j> <weight>`. A line naming the same vertex
/// twice declares the diagonal. Vertices are created in order of first
/// mention; pairs never declared are unavailable.
pub fn parse_environment(text: &str) -> Result<PhysicalEnvironment> {
    let mut lines = content_lines(text);
    let unit = match lines.next() {
        Some((line, tokens)) => {
            if tokens.len() != 2 || tokens[0] != "unit" {
                return Err(parse_err(line, "expected `unit <seconds-per-unit>`"));
            }
            parse_time(tokens[1]).map_err(|m| parse_err(line, m))?
        }
        None => return Err(parse_err(0, "missing `unit` line")),
    };
    let mut names: Vec<String> = Vec::new();
    let mut entries: Vec<(usize, usize, Time, usize)> = Vec::new();
    let intern = |name: &str, names: &mut Vec<String>| -> usize {
        match names.iter().position(|n| n == name) {
            Some(i) => i,
            None => {
                names.push(name.to_string());
                names.len() - 1
            }
        }
    };
    for (line, tokens) in lines {
        if tokens[0] == "unit" {
            return Err(parse_err(line, "`unit` declared twice"));
        }
        if tokens.len() != 3 {
            return Err(parse_err(line, "expected `<name> <name> <weight>`"));
        }
        let a = intern(tokens[0], &mut names);
        let b = intern(tokens[1], &mut names);
        let w = parse_time(tokens[2]).map_err(|m| parse_err(line, m))?;
        if w < time(0) {
            return Err(parse_err(line, format!("negative weight `{}`", tokens[2])));
        }
        let (lo, hi) = (a.min(b), a.max(b));
        if entries.iter().any(|&(x, y, _, _)| (x, y) == (lo, hi)) {
            return Err(parse_err(
                line,
                format!("pair `{} {}` declared twice", tokens[0], tokens[1]),
            ));
        }
        entries.push((lo, hi, w, line));
    }
    let mut env = PhysicalEnvironment::new(names, unit);
    for (a, b, w, _) in entries {
        env.set_weight(PhysicalVertex(a as u32), PhysicalVertex(b as u32), w);
    }
    Ok(env)
}

/// Canonical environment text: the unit header, every declared diagonal in
/// vertex order, then the off-diagonals sorted by index pair. A vertex
/// that has no declared weight at all cannot be expressed in this format
/// and is dropped on a round trip.
pub fn emit_environment(env: &PhysicalEnvironment) -> String {
    let mut out = format!("unit {}\n", format_time(&env.unit_seconds()));
    let mut off: Vec<(PhysicalVertex, PhysicalVertex, Time)> = Vec::new();
    for (a, b, w) in env.declared_entries() {
        if a == b {
            out.push_str(&format!(
                "{} {} {}\n",
                env.name(a),
                env.name(a),
                format_time(&w)
            ));
        } else {
            off.push((a, b, w));
        }
    }
    for (a, b, w) in off {
        out.push_str(&format!(
            "{} {} {}\n",
            env.name(a),
            env.name(b),
            format_time(&w)
        ));
    }
    out
}

/// Circuit format: a `qubits <names...>` header, then one gate per line as
/// `<label> <T> <q1> [<q2>]`. A `---` line forces a level boundary; when
/// the text has no boundaries at all, gates are levelized greedily.
pub fn parse_circuit(text: &str) -> Result<Circuit> {
    let mut lines = content_lines(text);
    let qubit_names: Vec<String> = match lines.next() {
        Some((line, tokens)) => {
            if tokens[0] != "qubits" {
                return Err(parse_err(line, "expected `qubits <names...>`"));
            }
            tokens[1..].iter().map(|s| s.to_string()).collect()
        }
        None => return Err(parse_err(0, "missing `qubits` line")),
    };
    let find = |name: &str| -> Result<LogicalQubit> {
        qubit_names
            .iter()
            .position(|n| n == name)
            .map(|i| LogicalQubit(i as u32))
            .ok_or_else(|| Error::UnknownQubit(name.to_string()))
    };
    let mut levels: Vec<Vec<Gate>> = vec![Vec::new()];
    let mut explicit = false;
    for (line, tokens) in lines {
        if tokens == ["---"] {
            explicit = true;
            levels.push(Vec::new());
            continue;
        }
        if tokens.len() != 3 && tokens.len() != 4 {
            return Err(parse_err(line, "expected `<label> <T> <q1> [<q2>]`"));
        }
        let duration = parse_time(tokens[1]).map_err(|m| parse_err(line, m))?;
        if duration < time(0) {
            return Err(parse_err(line, "negative duration factor"));
        }
        let gate = if tokens.len() == 3 {
            Gate::single(tokens[0], duration, find(tokens[2])?)
        } else {
            let (a, b) = (find(tokens[2])?, find(tokens[3])?);
            if a == b {
                return Err(parse_err(line, "two-qubit gate repeats a qubit"));
            }
            Gate::pair(tokens[0], duration, a, b)
        };
        levels.last_mut().unwrap().push(gate);
    }
    levels.retain(|l| !l.is_empty());
    if explicit {
        Circuit::from_levels(qubit_names, levels)
    } else {
        Circuit::levelize(qubit_names, levels.into_iter().flatten().collect())
    }
}

/// Canonical circuit text with every level boundary explicit.
pub fn emit_circuit(circuit: &Circuit) -> String {
    let mut out = String::from("qubits");
    for name in circuit.qubit_names() {
        out.push(' ');
        out.push_str(name);
    }
    out.push('\n');
    for level in circuit.levels().iter().filter(|l| !l.is_empty()) {
        for gate in level {
            out.push_str(&gate.label);
            out.push(' ');
            out.push_str(&format_time(&gate.duration_factor));
            match gate.operands {
                crate::circuit::Operands::Single(q) => {
                    out.push(' ');
                    out.push_str(circuit.qubit_name(q));
                }
                crate::circuit::Operands::Pair(a, b) => {
                    out.push(' ');
                    out.push_str(circuit.qubit_name(a));
                    out.push(' ');
                    out.push_str(circuit.qubit_name(b));
                }
            }
            out.push('\n');
        }
        out.push_str("---\n");
    }
    out
}

/// Permutation format: one `<from> <to>` vertex-name pair per line, read
/// as "the token on `from` must end on `to`"; unlisted vertices stay put.
pub fn parse_permutation(text: &str, env: &PhysicalEnvironment) -> Result<Vec<PhysicalVertex>> {
    let m = env.vertex_count();
    let mut target: Vec<Option<PhysicalVertex>> = vec![None; m];
    let mut used = vec![false; m];
    for (line, tokens) in content_lines(text) {
        if tokens.len() != 2 {
            return Err(parse_err(line, "expected `<from> <to>`"));
        }
        let from = env
            .find(tokens[0])
            .ok_or_else(|| Error::UnknownVertex(tokens[0].to_string()))?;
        let to = env
            .find(tokens[1])
            .ok_or_else(|| Error::UnknownVertex(tokens[1].to_string()))?;
        if target[from.index()].is_some() {
            return Err(parse_err(
                line,
                format!("vertex `{}` mapped twice", tokens[0]),
            ));
        }
        if used[to.index()] {
            return Err(parse_err(
                line,
                format!("vertex `{}` is the destination of two tokens", tokens[1]),
            ));
        }
        target[from.index()] = Some(to);
        used[to.index()] = true;
    }
    for v in 0..m {
        if target[v].is_none() {
            if used[v] {
                return Err(parse_err(
                    0,
                    format!(
                        "vertex `{}` is left implicit but its place is taken",
                        env.name(PhysicalVertex(v as u32))
                    ),
                ));
            }
            target[v] = Some(PhysicalVertex(v as u32));
        }
    }
    Ok(target.into_iter().map(Option::unwrap).collect())
}

/// Canonical permutation text: only the moved vertices, in index order.
pub fn emit_permutation(target: &[PhysicalVertex], env: &PhysicalEnvironment) -> String {
    let mut out = String::new();
    for (v, &dest) in target.iter().enumerate() {
        if dest.index() != v {
            out.push_str(&format!(
                "{} {}\n",
                env.name(PhysicalVertex(v as u32)),
                env.name(dest)
            ));
        }
    }
    out
}

/// Graph format for reduction instances: a `vertices <m>` header, then one
/// `<i> <j>` edge per line with 1-based vertex numbers.
pub fn parse_graph(text: &str) -> Result<(usize, Vec<(u32, u32)>)> {
    let mut lines = content_lines(text);
    let m: usize = match lines.next() {
        Some((line, tokens)) => {
            if tokens.len() != 2 || tokens[0] != "vertices" {
                return Err(parse_err(line, "expected `vertices <count>`"));
            }
            tokens[1]
                .parse()
                .map_err(|_| parse_err(line, format!("bad vertex count `{}`", tokens[1])))?
        }
        None => return Err(parse_err(0, "missing `vertices` line")),
    };
    let mut edges = Vec::new();
    for (line, tokens) in lines {
        if tokens.len() != 2 {
            return Err(parse_err(line, "expected `<i> <j>`"));
        }
        let mut ends = [0u32; 2];
        for (slot, token) in ends.iter_mut().zip(&tokens) {
            let v: usize = token
                .parse()
                .map_err(|_| parse_err(line, format!("bad vertex `{token}`")))?;
            if v < 1 || v > m {
                return Err(parse_err(line, format!("vertex `{token}` out of range")));
            }
            *slot = (v - 1) as u32;
        }
        if ends[0] == ends[1] {
            return Err(parse_err(line, "self-loops are not allowed"));
        }
        edges.push((ends[0], ends[1]));
    }
    Ok((m, edges))
}

/// Sidecar header for a generated chain benchmark: size, seed, generator
/// identity and the hidden qubit ordering of every stage.
pub fn emit_chain_meta(benchmark: &ChainBenchmark) -> String {
    let mut out = format!(
        "n {}\nseed {}\ngenerator {}\n",
        benchmark.n, benchmark.seed, CHAIN_GENERATOR_ID
    );
    for stage in &benchmark.hidden {
        out.push_str("stage");
        for &q in stage {
            out.push(' ');
            out.push_str(benchmark.circuit.qubit_name(q));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen_chain_benchmark;
    use crate::testutil::{acetyl, encoder_circuit};

    const ACETYL_TEXT: &str = "\
# acetyl chloride spin system
unit 1e-4
M M 8
C1 C1 8
C2 C2 1
C1 M 38
C1 C2 89
M C2 672
";

    #[test]
    fn parses_the_acetyl_fixture() {
        let env = parse_environment(ACETYL_TEXT).unwrap();
        let fixture = acetyl();
        assert_eq!(env.names(), fixture.names());
        assert_eq!(env.unit_seconds(), fixture.unit_seconds());
        assert_eq!(env.declared_entries(), fixture.declared_entries());
    }

    #[test]
    fn environment_emit_parse_emit_is_stable() {
        let env = parse_environment(ACETYL_TEXT).unwrap();
        let once = emit_environment(&env);
        let twice = emit_environment(&parse_environment(&once).unwrap());
        assert_eq!(once, twice);
    }

    #[test]
    fn environment_round_trip_preserves_the_fixture() {
        let fixture = acetyl();
        let back = parse_environment(&emit_environment(&fixture)).unwrap();
        assert_eq!(back.names(), fixture.names());
        assert_eq!(back.unit_seconds(), fixture.unit_seconds());
        assert_eq!(back.declared_entries(), fixture.declared_entries());
    }

    #[test]
    fn environment_errors_are_reported_with_lines() {
        assert!(matches!(
            parse_environment("M M 8\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_environment(""),
            Err(Error::Parse { line: 0, .. })
        ));
        assert!(matches!(
            parse_environment("unit 1\na b 1\nb a 2\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_environment("unit 1\na b -1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_environment("unit 1\nunit 2\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_environment("unit 1\na b\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn circuit_round_trips_with_explicit_levels() {
        let circuit = encoder_circuit();
        let text = emit_circuit(&circuit);
        let back = parse_circuit(&text).unwrap();
        assert_eq!(back.qubit_names(), circuit.qubit_names());
        assert_eq!(back.levels(), circuit.levels());
        assert_eq!(emit_circuit(&back), text);
    }

    #[test]
    fn circuit_without_boundaries_is_levelized() {
        let text = "qubits a b c\nZZ 1 a b\nZZ 1 b c\nX 1 a\n";
        let circuit = parse_circuit(text).unwrap();
        // Both later gates wait for (a, b) and then run together.
        assert_eq!(circuit.levels().len(), 2);
        assert_eq!(circuit.levels()[0].len(), 1);
        assert_eq!(circuit.levels()[1].len(), 2);
    }

    #[test]
    fn circuit_boundaries_force_levels() {
        let text = "qubits a b\nX 1 a\n---\nX 1 b\n---\n";
        let circuit = parse_circuit(text).unwrap();
        assert_eq!(circuit.levels().len(), 2);
        let merged = "qubits a b\nX 1 a\nX 1 b\n";
        assert_eq!(parse_circuit(merged).unwrap().levels().len(), 1);
    }

    #[test]
    fn empty_gate_section_is_an_empty_circuit() {
        let circuit = parse_circuit("qubits a b\n").unwrap();
        assert_eq!(circuit.gate_count(), 0);
        assert_eq!(circuit.qubit_count(), 2);
    }

    #[test]
    fn circuit_errors() {
        assert!(matches!(
            parse_circuit("qubits a\nX 1 z\n"),
            Err(Error::UnknownQubit(name)) if name == "z"
        ));
        assert!(matches!(
            parse_circuit("qubits a\nX abc a\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_circuit("qubits a b\nZZ 1 a a\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_circuit("X 1 a\n"),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn permutation_round_trip_and_identity_default() {
        let env = acetyl();
        let text = "M C1\nC1 M\n";
        let target = parse_permutation(text, &env).unwrap();
        assert_eq!(
            target,
            vec![PhysicalVertex(1), PhysicalVertex(0), PhysicalVertex(2)]
        );
        assert_eq!(emit_permutation(&target, &env), text);
        assert_eq!(
            parse_permutation("", &env).unwrap(),
            vec![PhysicalVertex(0), PhysicalVertex(1), PhysicalVertex(2)]
        );
    }

    #[test]
    fn permutation_collisions_are_errors() {
        let env = acetyl();
        assert!(parse_permutation("M C1\nM C2\n", &env).is_err());
        assert!(parse_permutation("M C1\nC2 C1\n", &env).is_err());
        // M moves onto C1 but C1 is never moved away.
        assert!(parse_permutation("M C1\n", &env).is_err());
        assert!(matches!(
            parse_permutation("M X\n", &env),
            Err(Error::UnknownVertex(_))
        ));
    }

    #[test]
    fn graph_parsing_checks_ranges() {
        let (m, edges) = parse_graph("vertices 3\n1 2\n2 3\n").unwrap();
        assert_eq!(m, 3);
        assert_eq!(edges, vec![(0, 1), (1, 2)]);
        assert!(parse_graph("1 2\n").is_err());
        assert!(parse_graph("vertices 3\n1 4\n").is_err());
        assert!(parse_graph("vertices 3\n2 2\n").is_err());
    }

    #[test]
    fn chain_meta_lists_every_stage() {
        let b = gen_chain_benchmark(8, 5).unwrap();
        let meta = emit_chain_meta(&b);
        assert!(meta.starts_with("n 8\nseed 5\ngenerator chacha8\n"));
        assert_eq!(meta.lines().filter(|l| l.starts_with("stage")).count(), 3);
        for stage in &b.hidden {
            assert_eq!(stage.len(), 8);
        }
    }
}
