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

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn qplace(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qplace"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn place_reports_the_encoder_optimum() {
    let out = qplace(&[
        "place",
        "--env",
        fixture("acetyl.env").to_str().unwrap(),
        "--circuit",
        fixture("encoder.circuit").to_str().unwrap(),
    ]);
    assert_eq!(
        code(&out),
        0,
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    assert!(text.contains("subcircuits: 1\n"));
    assert!(text.contains("runtime_units: 136\n"));
    assert!(text.contains("runtime_seconds: 0.0136\n"));
    assert!(text.contains("search_space: 6\n"));
    assert!(text.contains("stage 1 placement: a=C2 b=C1 c=M\n"));
}

#[test]
fn place_with_a_disconnecting_threshold_exits_3() {
    let out = qplace(&[
        "place",
        "--env",
        fixture("acetyl.env").to_str().unwrap(),
        "--circuit",
        fixture("encoder.circuit").to_str().unwrap(),
        "--threshold",
        "38",
    ]);
    assert_eq!(code(&out), 3);
}

#[test]
fn missing_input_file_exits_2() {
    let out = qplace(&[
        "place",
        "--env",
        "no-such-file.env",
        "--circuit",
        fixture("encoder.circuit").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn malformed_environment_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.env");
    std::fs::write(&bad, "M M 8\n").unwrap();
    let out = qplace(&[
        "place",
        "--env",
        bad.to_str().unwrap(),
        "--circuit",
        fixture("encoder.circuit").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn report_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.txt");
    let out = qplace(&[
        "place",
        "--env",
        fixture("acetyl.env").to_str().unwrap(),
        "--circuit",
        fixture("encoder.circuit").to_str().unwrap(),
        "--report",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("subcircuits: 1\n"));
}

#[test]
fn oracle_matches_the_known_optimum() {
    let out = qplace(&[
        "oracle",
        "--env",
        fixture("acetyl.env").to_str().unwrap(),
        "--circuit",
        fixture("encoder.circuit").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("placement: a=C2 b=C1 c=M\n"));
    assert!(text.contains("runtime_units: 136\n"));
    assert!(text.contains("search_space: 6\n"));
}

#[test]
fn oracle_budget_refusal_exits_4() {
    let out = qplace(&[
        "oracle",
        "--env",
        fixture("acetyl.env").to_str().unwrap(),
        "--circuit",
        fixture("encoder.circuit").to_str().unwrap(),
        "--budget",
        "1",
    ]);
    assert_eq!(code(&out), 4);
}

#[test]
fn route_reverses_a_three_chain_in_three_layers() {
    let out = qplace(&[
        "route",
        "--env",
        fixture("chain3.env").to_str().unwrap(),
        "--perm",
        fixture("reverse3.perm").to_str().unwrap(),
    ]);
    assert_eq!(
        code(&out),
        0,
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    assert!(text.contains("depth: 3\n"));
    assert!(text.contains("swaps: 3\n"));
}

#[test]
fn generated_chain_instance_recovers_its_stages() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("b");
    let out = qplace(&[
        "gen-chain",
        "--n",
        "8",
        "--seed",
        "1",
        "--out",
        prefix.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    for ext in ["env", "circuit", "meta"] {
        assert!(dir.path().join(format!("b.{ext}")).exists());
    }
    let meta = std::fs::read_to_string(dir.path().join("b.meta")).unwrap();
    assert!(meta.starts_with("n 8\nseed 1\ngenerator chacha8\n"));
    let out = qplace(&[
        "place",
        "--env",
        dir.path().join("b.env").to_str().unwrap(),
        "--circuit",
        dir.path().join("b.circuit").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("subcircuits: 3\n"));
}

#[test]
fn gen_chain_rejects_non_powers_of_two() {
    let out = qplace(&["gen-chain", "--n", "6"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn generated_reduction_instance_costs_one_on_a_path() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("r");
    let out = qplace(&[
        "gen-reduction",
        "--graph",
        fixture("p3.graph").to_str().unwrap(),
        "--out",
        prefix.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let out = qplace(&[
        "oracle",
        "--env",
        dir.path().join("r.env").to_str().unwrap(),
        "--circuit",
        dir.path().join("r.circuit").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("runtime_units: 1\n"));
}

#[test]
fn sweep_marks_infeasible_thresholds() {
    let out = qplace(&[
        "sweep",
        "--env",
        fixture("acetyl.env").to_str().unwrap(),
        "--circuit",
        fixture("encoder.circuit").to_str().unwrap(),
        "--thresholds",
        "38,89,672",
    ]);
    assert_eq!(
        code(&out),
        0,
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    assert!(text.contains("threshold 38: N/A"));
    assert!(text.contains("threshold 89: subcircuits 1, runtime_units 136"));
    assert!(text.contains("threshold 672: subcircuits 1, runtime_units 136"));
}
