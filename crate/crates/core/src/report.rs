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

//! Machine-readable placement reports with a stable key order.

use crate::env::PhysicalEnvironment;
use crate::eval::EvalMode;
use crate::placer::PlacedProgram;
use crate::time::format_time;

fn mode_name(mode: EvalMode) -> &'static str {
    match mode {
        EvalMode::Pipelined => "pipelined",
        EvalMode::SequentialLevels => "sequential",
    }
}

/// Renders a placement run as `key: value` lines. Keys appear in a fixed
/// order and stage blocks are numbered from 1, so reports diff cleanly.
pub fn emit_report(program: &PlacedProgram, env: &PhysicalEnvironment) -> String {
    let mut out = String::new();
    out.push_str(&format!("subcircuits: {}\n", program.stage_count()));
    out.push_str(&format!(
        "runtime_units: {}\n",
        format_time(&program.total_units)
    ));
    out.push_str(&format!(
        "runtime_seconds: {}\n",
        format_time(&program.total_seconds)
    ));
    out.push_str(&format!("search_space: {}\n", program.search_space));
    out.push_str(&format!("threshold: {}\n", format_time(&program.threshold)));
    out.push_str(&format!("mode: {}\n", mode_name(program.mode)));
    out.push_str(&format!("gates_in: {}\n", program.input_gate_count));
    out.push_str(&format!("gates_merged: {}\n", program.merged_gate_count));
    for (i, stage) in program.stages.iter().enumerate() {
        let id = i + 1;
        if let Some(entry) = &stage.entry {
            let layers: Vec<String> = entry
                .layers()
                .iter()
                .map(|layer| {
                    layer
                        .iter()
                        .map(|&(a, b)| format!("({} {})", env.name(a), env.name(b)))
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .collect();
            out.push_str(&format!("stage {id} entry: {}\n", layers.join(" | ")));
        }
        out.push_str(&format!(
            "stage {id} gates: {}\n",
            stage.circuit.gate_count()
        ));
        let placement: Vec<String> = stage
            .circuit
            .qubit_names()
            .iter()
            .zip(stage.placement.as_slice())
            .map(|(q, &v)| format!("{q}={}", env.name(v)))
            .collect();
        out.push_str(&format!("stage {id} placement: {}\n", placement.join(" ")));
        out.push_str(&format!(
            "stage {id} finish_units: {}\n",
            format_time(&stage.finish_units)
        ));
    }
    out
}
