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

//! Fixtures shared by the unit tests.

use crate::circuit::{Circuit, Gate, LogicalQubit};
use crate::env::{PhysicalEnvironment, PhysicalVertex};
use crate::time::{parse_time, time, Time};

/// Three-site NMR-style environment: a methyl group `M` and two carbons.
/// Interaction weights are in units of 1e-4 seconds. The carbon-carbon
/// coupling is cheap, the methyl-to-far-carbon coupling is two orders of
/// magnitude slower.
pub(crate) fn acetyl() -> PhysicalEnvironment {
    let names = vec!["M".to_string(), "C1".to_string(), "C2".to_string()];
    let mut env = PhysicalEnvironment::new(names, parse_time("1e-4").unwrap());
    let (m, c1, c2) = (PhysicalVertex(0), PhysicalVertex(1), PhysicalVertex(2));
    env.set_weight(m, m, time(8));
    env.set_weight(c1, c1, time(8));
    env.set_weight(c2, c2, time(1));
    env.set_weight(c1, m, time(38));
    env.set_weight(c1, c2, time(89));
    env.set_weight(m, c2, time(672));
    env
}

/// Encoding block of the three-qubit error correcting code on qubits
/// `a`, `b`, `c`: nine gates, of which five carry nonzero duration. The
/// two-qubit interactions touch the pairs `(a,b)` and `(b,c)` only.
pub(crate) fn encoder_circuit() -> Circuit {
    let (a, b, c) = (LogicalQubit(0), LogicalQubit(1), LogicalQubit(2));
    let zero: Time = time(0);
    let one: Time = time(1);
    let levels = vec![
        vec![Gate::single("Ry90", one, a)],
        vec![Gate::pair("ZZ90", one, a, b), Gate::single("Ry90", one, c)],
        vec![
            Gate::single("Rz-90", zero, a),
            Gate::single("Rz-90", zero, b),
        ],
        vec![Gate::pair("ZZ90", one, b, c)],
        vec![Gate::single("Ry90", one, b), Gate::single("Rz-90", zero, c)],
        vec![Gate::single("Rz-90", zero, b)],
    ];
    Circuit::from_levels(
        vec!["a".to_string(), "b".to_string(), "c".to_string()],
        levels,
    )
    .unwrap()
}
