//! JSON circuit documents.
//!
//! ```json
//! {
//!   "num_inputs": 1,
//!   "input_bits": "0",
//!   "answer_wire": 1,
//!   "gates": [
//!     { "name": "H", "in_wires": [0], "out_wires": [1] },
//!     { "name": "U", "in_wires": [1], "out_wires": [2],
//!       "matrix": [[0, 0], [1, 0], [1, 0], [0, 0]] }
//!   ]
//! }
//! ```
//!
//! `matrix` is row-major with `2^|out_wires|` rows; it may be omitted when
//! `name` is one of the built-ins `H`, `X`, `CNOT`, `COPY`, `ERASE`, `PREP0`,
//! `PROJ0`, `I` or `CPHASE(theta)`. Optional fields: `outputs` (ordered list
//! of dangling wires), and per gate `layer` and `lane` layout tags.

use serde::{Deserialize, Serialize};

use super::gate::{Builtin, LinearGate};
use super::operator::{GateApp, OperatorCircuit, WireId};
use crate::error::{Error, Result};
use crate::C64;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CircuitDoc {
    num_inputs: usize,
    input_bits: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    answer_wire: Option<WireId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    outputs: Option<Vec<WireId>>,
    gates: Vec<GateDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GateDoc {
    name: String,
    in_wires: Vec<WireId>,
    out_wires: Vec<WireId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    matrix: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    layer: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lane: Option<u32>,
}

/// Parses and validates a circuit document.
pub fn parse_circuit(text: &str) -> Result<OperatorCircuit> {
    let doc: CircuitDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let bits = super::oracle::parse_bits(&doc.input_bits)?;
    if bits.len() != doc.num_inputs {
        return Err(Error::Parse(format!(
            "input_bits has {} bits but num_inputs is {}",
            bits.len(),
            doc.num_inputs
        )));
    }
    let mut gates = Vec::with_capacity(doc.gates.len());
    for (i, g) in doc.gates.into_iter().enumerate() {
        let gate = match (&g.matrix, Builtin::parse(&g.name)) {
            (Some(m), _) => LinearGate::new(
                g.in_wires.len(),
                g.out_wires.len(),
                m.iter().map(|&[re, im]| C64::new(re, im)).collect(),
            )
            .map_err(|e| Error::Parse(format!("gate {i} ({}): {e}", g.name)))?,
            (None, Some(b)) => b.gate(),
            (None, None) => {
                return Err(Error::Parse(format!(
                    "gate {i}: '{}' is not a built-in and has no matrix",
                    g.name
                )))
            }
        };
        gates.push(GateApp {
            label: g.name,
            gate,
            inputs: g.in_wires,
            outputs: g.out_wires,
            layer: g.layer,
            lane: g.lane,
        });
    }
    OperatorCircuit::new(bits, gates, doc.outputs, doc.answer_wire)
}

/// Serializes a circuit; matrices are written only for gates whose label is
/// not a built-in with exactly that matrix.
pub fn emit_circuit(q: &OperatorCircuit) -> String {
    let gates = q
        .gates()
        .iter()
        .map(|g| {
            let builtin_matches = Builtin::parse(&g.label).is_some_and(|b| b.gate() == g.gate);
            GateDoc {
                name: g.label.clone(),
                in_wires: g.inputs.clone(),
                out_wires: g.outputs.clone(),
                matrix: (!builtin_matches)
                    .then(|| g.gate.matrix().iter().map(|z| [z.re, z.im]).collect()),
                layer: g.layer,
                lane: g.lane,
            }
        })
        .collect();
    let doc = CircuitDoc {
        num_inputs: q.num_inputs(),
        input_bits: super::oracle::format_bits(q.input_bits()),
        answer_wire: q.answer_wire(),
        outputs: Some(q.outputs().to_vec()),
        gates,
    };
    serde_json::to_string_pretty(&doc).expect("circuit documents always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_builtins_and_matrices() {
        let text = r#"{
            "num_inputs": 2, "input_bits": "01", "answer_wire": 4,
            "gates": [
                {"name": "H", "in_wires": [0], "out_wires": [2]},
                {"name": "CPHASE(0.25)", "in_wires": [2, 1], "out_wires": [3, 4]},
                {"name": "U", "in_wires": [3], "out_wires": [],
                 "matrix": [[1, 0], [0, -1]]}
            ]
        }"#;
        let q = parse_circuit(text).unwrap();
        assert_eq!(q.gates().len(), 3);
        assert_eq!(q.gates()[1].gate, LinearGate::cphase(0.25));
        assert_eq!(q.gates()[2].gate.entry(0, 1), C64::new(0.0, -1.0));
        assert_eq!(q.outputs(), &[4]);
        let again = parse_circuit(&emit_circuit(&q)).unwrap();
        assert_eq!(again, q);
    }

    #[test]
    fn rejects_bad_documents() {
        for (text, needle) in [
            (r#"{"num_inputs": 1, "input_bits": "00", "gates": []}"#, "num_inputs"),
            (r#"{"num_inputs": 1, "input_bits": "2", "gates": []}"#, "not a bit"),
            (
                r#"{"num_inputs": 1, "input_bits": "0", "gates": [{"name": "FOO", "in_wires": [0], "out_wires": [1]}]}"#,
                "not a built-in",
            ),
            (
                r#"{"num_inputs": 1, "input_bits": "0", "gates": [{"name": "U", "in_wires": [0], "out_wires": [1], "matrix": [[1,0]]}]}"#,
                "expected 4",
            ),
            (r#"{"num_inputs": 1"#, "EOF"),
        ] {
            let err = parse_circuit(text).unwrap_err().to_string();
            assert!(err.contains(needle), "{err} should mention {needle}");
        }
        let err = parse_circuit(
            r#"{"num_inputs": 1, "input_bits": "0", "gates": [{"name": "H", "in_wires": [3], "out_wires": [1]}]}"#,
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidCircuit(_)));
    }
}
