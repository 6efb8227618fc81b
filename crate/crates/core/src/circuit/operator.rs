use std::collections::{HashMap, HashSet};
use std::fmt;

use super::gate::LinearGate;
use crate::error::{Error, Result};

pub type WireId = usize;

/// One gate application: a linear gate consuming and producing wires.
///
/// `layer` (time step) and `lane` (spatial column of the rightmost wire the
/// gate touches) are optional layout tags used by the layered bubbling.
#[derive(Clone, Debug, PartialEq)]
pub struct GateApp {
    pub label: String,
    pub gate: LinearGate,
    pub inputs: Vec<WireId>,
    pub outputs: Vec<WireId>,
    pub layer: Option<u32>,
    pub lane: Option<u32>,
}

impl GateApp {
    pub fn new(
        label: impl Into<String>,
        gate: LinearGate,
        inputs: Vec<WireId>,
        outputs: Vec<WireId>,
    ) -> Self {
        Self {
            label: label.into(),
            gate,
            inputs,
            outputs,
            layer: None,
            lane: None,
        }
    }

    pub fn at(mut self, layer: u32, lane: u32) -> Self {
        self.layer = Some(layer);
        self.lane = Some(lane);
        self
    }
}

/// The first invariant an [`OperatorCircuit`] breaks.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Violation {
    #[error("gate {gate}: wire lists have {got_in} inputs and {got_out} outputs, gate expects {want_in} and {want_out}")]
    ArityMismatch {
        gate: usize,
        want_in: usize,
        want_out: usize,
        got_in: usize,
        got_out: usize,
    },
    #[error("gate {gate}: unknown wire {wire}")]
    UnknownWire { gate: usize, wire: WireId },
    #[error("gate {gate}: wire {wire} consumed before it is produced")]
    NotYetProduced { gate: usize, wire: WireId },
    #[error("gate {gate}: wire reuse, wire {wire} is already consumed")]
    WireReuse { gate: usize, wire: WireId },
    #[error("gate {gate}: wire {wire} is produced twice")]
    DuplicateProduction { gate: usize, wire: WireId },
    #[error("output list names wire {wire}, which is not a dangling wire")]
    NotAnOutput { wire: WireId },
    #[error("dangling wire {wire} is missing from the output list")]
    MissingOutput { wire: WireId },
    #[error("answer wire {wire} is not a dangling output")]
    AnswerNotOutput { wire: WireId },
}

/// A layered DAG of linear gates acting on wires.
///
/// Wires `0..num_inputs` are the input terminals, prepared in the basis state
/// given by `input_bits`. Every other wire is produced by exactly one gate.
/// Wires that no gate consumes are the outputs, listed in `outputs` in the
/// order that defines the output basis (first wire is the most significant
/// bit).
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorCircuit {
    input_bits: Vec<bool>,
    gates: Vec<GateApp>,
    outputs: Vec<WireId>,
    answer_wire: Option<WireId>,
}

impl OperatorCircuit {
    /// Builds and validates a circuit. With `outputs = None` the dangling
    /// wires are listed in production order.
    pub fn new(
        input_bits: Vec<bool>,
        gates: Vec<GateApp>,
        outputs: Option<Vec<WireId>>,
        answer_wire: Option<WireId>,
    ) -> Result<Self> {
        let c = Self::unchecked(input_bits, gates, outputs, answer_wire);
        c.validate()?;
        Ok(c)
    }

    /// Assembles a circuit without validating it.
    pub fn unchecked(
        input_bits: Vec<bool>,
        gates: Vec<GateApp>,
        outputs: Option<Vec<WireId>>,
        answer_wire: Option<WireId>,
    ) -> Self {
        let outputs = outputs.unwrap_or_else(|| dangling_wires(input_bits.len(), &gates));
        Self {
            input_bits,
            gates,
            outputs,
            answer_wire,
        }
    }

    pub fn num_inputs(&self) -> usize {
        self.input_bits.len()
    }

    pub fn input_bits(&self) -> &[bool] {
        &self.input_bits
    }

    pub fn gates(&self) -> &[GateApp] {
        &self.gates
    }

    pub fn outputs(&self) -> &[WireId] {
        &self.outputs
    }

    pub fn num_outputs(&self) -> usize {
        self.outputs.len()
    }

    pub fn answer_wire(&self) -> Option<WireId> {
        self.answer_wire
    }

    /// Position of the answer wire within [`Self::outputs`].
    pub fn answer_index(&self) -> Option<usize> {
        let a = self.answer_wire?;
        self.outputs.iter().position(|&w| w == a)
    }

    /// Same gates and wiring, different basis input.
    pub fn with_input_bits(&self, bits: Vec<bool>) -> Result<Self> {
        if bits.len() != self.num_inputs() {
            return Err(Error::BitLength {
                expected: self.num_inputs(),
                got: bits.len(),
            });
        }
        Ok(Self {
            input_bits: bits,
            ..self.clone()
        })
    }

    pub fn with_answer_wire(&self, answer: Option<WireId>) -> Result<Self> {
        let c = Self {
            answer_wire: answer,
            ..self.clone()
        };
        c.validate()?;
        Ok(c)
    }

    /// Replaces the gate at `index`; used for fault injection.
    pub fn with_gate_replaced(&self, index: usize, gate: LinearGate) -> Result<Self> {
        let mut gates = self.gates.clone();
        gates[index].gate = gate;
        gates[index].label = "U".into();
        Self::new(
            self.input_bits.clone(),
            gates,
            Some(self.outputs.clone()),
            self.answer_wire,
        )
    }

    /// Largest number of wires alive at once when the gates are applied in
    /// list order.
    pub fn peak_live_wires(&self) -> usize {
        let mut live = self.num_inputs();
        let mut peak = live;
        for g in &self.gates {
            live = live - g.inputs.len() + g.outputs.len();
            peak = peak.max(live);
        }
        peak
    }

    /// Checks every structural invariant and reports the first violation.
    pub fn validate(&self) -> Result<(), Violation> {
        let n = self.num_inputs();
        let mut producer: HashMap<WireId, Option<usize>> =
            (0..n).map(|w| (w, None)).collect();
        for (gi, g) in self.gates.iter().enumerate() {
            if g.inputs.len() != g.gate.arity_in() || g.outputs.len() != g.gate.arity_out() {
                return Err(Violation::ArityMismatch {
                    gate: gi,
                    want_in: g.gate.arity_in(),
                    want_out: g.gate.arity_out(),
                    got_in: g.inputs.len(),
                    got_out: g.outputs.len(),
                });
            }
            for &w in &g.outputs {
                if producer.insert(w, Some(gi)).is_some() {
                    return Err(Violation::DuplicateProduction { gate: gi, wire: w });
                }
            }
        }

        let mut produced: HashSet<WireId> = (0..n).collect();
        let mut consumed: HashSet<WireId> = HashSet::new();
        for (gi, g) in self.gates.iter().enumerate() {
            for &w in &g.inputs {
                if !produced.contains(&w) {
                    return Err(match producer.get(&w) {
                        None => Violation::UnknownWire { gate: gi, wire: w },
                        Some(_) => Violation::NotYetProduced { gate: gi, wire: w },
                    });
                }
                if !consumed.insert(w) {
                    return Err(Violation::WireReuse { gate: gi, wire: w });
                }
            }
            produced.extend(g.outputs.iter().copied());
        }

        let dangling: HashSet<WireId> = produced.difference(&consumed).copied().collect();
        let mut listed = HashSet::new();
        for &w in &self.outputs {
            if !dangling.contains(&w) || !listed.insert(w) {
                return Err(Violation::NotAnOutput { wire: w });
            }
        }
        if let Some(&w) = dangling_wires(n, &self.gates)
            .iter()
            .find(|w| !listed.contains(w))
        {
            return Err(Violation::MissingOutput { wire: w });
        }
        if let Some(a) = self.answer_wire {
            if !dangling.contains(&a) {
                return Err(Violation::AnswerNotOutput { wire: a });
            }
        }
        Ok(())
    }
}

impl fmt::Display for OperatorCircuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "circuit: {} inputs, {} gates, {} outputs",
            self.num_inputs(),
            self.gates.len(),
            self.num_outputs()
        )?;
        for (i, g) in self.gates.iter().enumerate() {
            writeln!(f, "  {i:4} {} {:?} -> {:?}", g.label, g.inputs, g.outputs)?;
        }
        Ok(())
    }
}

/// Wires produced but never consumed, in production order.
fn dangling_wires(num_inputs: usize, gates: &[GateApp]) -> Vec<WireId> {
    let consumed: HashSet<WireId> = gates.iter().flat_map(|g| g.inputs.iter().copied()).collect();
    let mut seen = HashSet::new();
    (0..num_inputs)
        .chain(gates.iter().flat_map(|g| g.outputs.iter().copied()))
        .filter(|w| !consumed.contains(w) && seen.insert(*w))
        .collect()
}

/// Which tensor sits on the answer wire in the middle of `Q'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MiddleTensor {
    /// `diag(1, 0)`: projects onto `|0>`, so `<x|Q'|x> = ||Q(x)_0||^2`.
    #[default]
    Projector,
    /// `m(00) = m(11) = 1`, the identity pattern; `<x|Q'|x>` is then `||Qx||^2`.
    IdentityPattern,
}

impl MiddleTensor {
    pub fn gate(self) -> (&'static str, LinearGate) {
        match self {
            MiddleTensor::Projector => ("PROJ0", LinearGate::projector0()),
            MiddleTensor::IdentityPattern => ("I", LinearGate::identity(1)),
        }
    }
}

/// Builds `Q' = Q^dagger . P_0(answer) . Q`.
///
/// Gate `g` of `Q` keeps index `g` in `Q'`; the middle gate has index `G` and
/// the adjoint of `g` has index `2G - g`, where `G` is the gate count of `Q`.
/// Output `i` of `Q'` mirrors input `i` of `Q`, so `Q'` maps `num_inputs`
/// wires to `num_inputs` wires and `<x|Q'|x>` is the probability that `Q`
/// leaves its answer wire in `|0>`.
pub fn build_q_prime(q: &OperatorCircuit) -> Result<OperatorCircuit> {
    build_q_prime_with(q, MiddleTensor::Projector)
}

pub fn build_q_prime_with(q: &OperatorCircuit, middle: MiddleTensor) -> Result<OperatorCircuit> {
    q.validate()?;
    let answer = q.answer_wire().ok_or(Error::MissingAnswerWire)?;

    let mut next = q
        .gates()
        .iter()
        .flat_map(|g| g.outputs.iter().copied())
        .chain(0..q.num_inputs())
        .max()
        .map_or(0, |m| m + 1);
    let mut fresh = || {
        next += 1;
        next - 1
    };

    let dangling: HashSet<WireId> = q.outputs().iter().copied().collect();
    let mut mirror: HashMap<WireId, WireId> = HashMap::new();
    let mut mirror_of = |w: WireId, fresh: &mut dyn FnMut() -> WireId| -> WireId {
        if dangling.contains(&w) && w != answer {
            return w;
        }
        *mirror.entry(w).or_insert_with(fresh)
    };

    let max_layer = q.gates().iter().filter_map(|g| g.layer).max().unwrap_or(0);
    let answer_lane = q
        .gates()
        .iter()
        .find(|g| g.outputs.contains(&answer))
        .and_then(|g| g.lane);

    let mut gates: Vec<GateApp> = q.gates().to_vec();
    let projected = mirror_of(answer, &mut fresh);
    let (label, gate) = middle.gate();
    gates.push(GateApp {
        label: label.into(),
        gate,
        inputs: vec![answer],
        outputs: vec![projected],
        layer: q.gates().first().and_then(|g| g.layer).map(|_| max_layer + 1),
        lane: answer_lane,
    });
    for g in q.gates().iter().rev() {
        let inputs = g.outputs.iter().map(|&w| mirror_of(w, &mut fresh)).collect();
        let outputs = g.inputs.iter().map(|&w| mirror_of(w, &mut fresh)).collect();
        gates.push(GateApp {
            label: adjoint_label(&g.label),
            gate: g.gate.adjoint(),
            inputs,
            outputs,
            layer: g.layer.map(|l| 2 * max_layer + 2 - l),
            lane: g.lane,
        });
    }
    let outputs = (0..q.num_inputs())
        .map(|w| mirror_of(w, &mut fresh))
        .collect();
    OperatorCircuit::new(q.input_bits().to_vec(), gates, Some(outputs), None)
}

fn adjoint_label(label: &str) -> String {
    match label {
        "H" | "CNOT" | "X" | "I" | "PROJ0" => label.to_string(),
        _ => match label.strip_suffix('*') {
            Some(base) => base.to_string(),
            None => format!("{label}*"),
        },
    }
}
