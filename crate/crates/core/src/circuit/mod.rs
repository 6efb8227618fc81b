//! Operator circuits: data model, validation, the `Q'` construction, the
//! circuit file format and the brute-force oracles.

pub mod format;
mod gate;
pub mod oracle;
mod operator;

pub use gate::{Builtin, LinearGate};
pub use operator::{
    build_q_prime, build_q_prime_with, GateApp, MiddleTensor, OperatorCircuit, Violation, WireId,
};

/// A circuit fragment with designated entry and exit wires, used while
/// assembling larger circuits.
#[derive(Clone, Debug, Default)]
pub struct SubCircuit {
    pub gates: Vec<GateApp>,
    pub inputs: Vec<WireId>,
    pub outputs: Vec<WireId>,
}

impl SubCircuit {
    /// Closes the fragment into a circuit fed by the given basis state.
    ///
    /// Entry wires are renumbered to `0..inputs.len()`; the remaining wires
    /// are numbered after them in order of first appearance.
    pub fn into_circuit(self, input_bits: Vec<bool>) -> crate::Result<OperatorCircuit> {
        use std::collections::HashMap;
        if input_bits.len() != self.inputs.len() {
            return Err(crate::Error::BitLength {
                expected: self.inputs.len(),
                got: input_bits.len(),
            });
        }
        let mut map: HashMap<WireId, WireId> =
            self.inputs.iter().enumerate().map(|(i, &w)| (w, i)).collect();
        let mut remap = |w: WireId| -> WireId {
            let next = map.len();
            *map.entry(w).or_insert(next)
        };
        let mut gates = self.gates;
        for g in &mut gates {
            g.inputs = g.inputs.iter().map(|&w| remap(w)).collect();
            g.outputs = g.outputs.iter().map(|&w| remap(w)).collect();
        }
        let outputs = self.outputs.iter().map(|&w| remap(w)).collect();
        OperatorCircuit::new(input_bits, gates, Some(outputs), None)
    }
}

/// Hands out consecutive wire ids.
#[derive(Clone, Debug, Default)]
pub struct WireAllocator {
    next: WireId,
}

impl WireAllocator {
    pub fn starting_at(next: WireId) -> Self {
        Self { next }
    }

    pub fn fresh(&mut self) -> WireId {
        self.next += 1;
        self.next - 1
    }

    pub fn peek(&self) -> WireId {
        self.next
    }
}

impl SubCircuit {
    /// Sequential composition: `next` is fed by this fragment's exit wires,
    /// matched position by position. Internal wires of `next` are shifted
    /// past every wire id used here.
    pub fn then(mut self, next: SubCircuit) -> crate::Result<SubCircuit> {
        use std::collections::HashMap;
        if next.inputs.len() != self.outputs.len() {
            return Err(crate::Error::BitLength {
                expected: self.outputs.len(),
                got: next.inputs.len(),
            });
        }
        let offset = self
            .gates
            .iter()
            .flat_map(|g| g.inputs.iter().chain(&g.outputs))
            .chain(&self.inputs)
            .copied()
            .max()
            .map_or(0, |m| m + 1);
        let joined: HashMap<WireId, WireId> =
            next.inputs.iter().copied().zip(self.outputs.iter().copied()).collect();
        let map = |w: WireId| joined.get(&w).copied().unwrap_or(w + offset);
        for mut g in next.gates {
            g.inputs = g.inputs.into_iter().map(map).collect();
            g.outputs = g.outputs.into_iter().map(map).collect();
            self.gates.push(g);
        }
        self.outputs = next.outputs.into_iter().map(map).collect();
        Ok(self)
    }
}
