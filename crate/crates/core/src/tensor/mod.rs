//! Tensor circuits: a graph with a complex tensor on every vertex, whose
//! value is the sum over all 0/1 edge labelings of the product of the
//! tensor entries selected by the labeling.

mod brute;
mod contract;
mod sim;

use std::fmt::Write as _;

pub use brute::{value_brute_force, value_brute_force_capped, BRUTE_FORCE_EDGE_CAP};
pub use contract::{contract, contract_with, ContractOptions, ContractStats, FrontierState, DEFAULT_WIDTH_CAP};
pub use sim::{
    amplitude, amplitude_with, choose_bubbling, choose_q_prime_bubbling, prob_answer_zero, prob_answer_zero_with,
    q_prime_bubbling, AnswerProbability, BubblingStrategy,
};

use crate::circuit::{MiddleTensor, OperatorCircuit};
use crate::error::{Error, Result};
use crate::graph::{circuit_graph, CircuitGraph, CircuitIndex, EdgeId, VertexKind};
use crate::C64;

/// A map from labelings of the incident edges to complex numbers. Entry
/// index bits follow `edges` in order, first edge most significant.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor {
    edges: Vec<EdgeId>,
    entries: Vec<C64>,
}

impl Tensor {
    pub fn new(edges: Vec<EdgeId>, entries: Vec<C64>) -> Result<Self> {
        if edges.len() >= usize::BITS as usize || entries.len() != 1 << edges.len() {
            return Err(Error::InvalidTensorCircuit(format!(
                "tensor on {} edges has {} entries",
                edges.len(),
                entries.len()
            )));
        }
        let mut sorted = edges.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidTensorCircuit(format!(
                "tensor lists an edge twice: {edges:?}"
            )));
        }
        Ok(Self { edges, entries })
    }

    /// Degree-1 tensor selecting one basis label.
    pub fn basis(edge: EdgeId, bit: bool) -> Self {
        let mut entries = vec![C64::new(0.0, 0.0); 2];
        entries[bit as usize] = C64::new(1.0, 0.0);
        Self {
            edges: vec![edge],
            entries,
        }
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    pub fn degree(&self) -> usize {
        self.edges.len()
    }
}

/// A graph together with one tensor per vertex.
#[derive(Clone, Debug)]
pub struct TensorCircuit {
    graph: CircuitGraph,
    tensors: Vec<Tensor>,
}

impl TensorCircuit {
    /// Every tensor's edge list must be exactly the vertex's incident edges.
    pub fn new(graph: CircuitGraph, tensors: Vec<Tensor>) -> Result<Self> {
        if tensors.len() != graph.num_vertices() {
            return Err(Error::InvalidTensorCircuit(format!(
                "{} tensors for {} vertices",
                tensors.len(),
                graph.num_vertices()
            )));
        }
        for (v, t) in tensors.iter().enumerate() {
            let mut listed = t.edges.clone();
            listed.sort_unstable();
            if listed != graph.incident(v) {
                return Err(Error::InvalidTensorCircuit(format!(
                    "vertex {v}: tensor edges {:?} differ from incident edges {:?}",
                    t.edges,
                    graph.incident(v)
                )));
            }
        }
        Ok(Self { graph, tensors })
    }

    /// Tensor circuit of `q` with the output terminals fixed to `outputs`:
    /// gate vertices carry their matrix (output edges first, then input
    /// edges, so the entries are the matrix in row-major order) and every
    /// terminal carries a basis selector. Its value is `<outputs|Q|x>`.
    pub fn from_circuit(q: &OperatorCircuit, outputs: &[bool]) -> Result<Self> {
        q.validate()?;
        if outputs.len() != q.num_outputs() {
            return Err(Error::BitLength {
                expected: q.num_outputs(),
                got: outputs.len(),
            });
        }
        let graph = circuit_graph(q);
        let idx = CircuitIndex::new(q);
        let tensors = graph
            .kinds()
            .iter()
            .map(|&kind| match kind {
                VertexKind::Input(i) => Ok(Tensor::basis(idx.wire_edge[&i], q.input_bits()[i])),
                VertexKind::Output(j) => Ok(Tensor::basis(idx.wire_edge[&q.outputs()[j]], outputs[j])),
                VertexKind::Gate(g) => {
                    let app = &q.gates()[g];
                    let edges: Vec<EdgeId> = app
                        .outputs
                        .iter()
                        .chain(&app.inputs)
                        .map(|w| idx.wire_edge[w])
                        .collect();
                    if edges.len() != app.gate.arity_in() + app.gate.arity_out() {
                        return Err(Error::InvalidTensorCircuit(format!(
                            "gate {g} has {} incident edges but arity {} + {}",
                            edges.len(),
                            app.gate.arity_in(),
                            app.gate.arity_out()
                        )));
                    }
                    Tensor::new(edges, app.gate.matrix().to_vec())
                }
                VertexKind::Plain => unreachable!("circuit graphs have no plain vertices"),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(graph, tensors)
    }

    /// `T_Q`: the tensor circuit of `Q'` with input and output terminals
    /// both fixed to the input bits of `q`. Its value is `||Q(x)_0||^2` for
    /// the projector middle tensor.
    pub fn for_answer_probability(q: &OperatorCircuit, middle: MiddleTensor) -> Result<Self> {
        let qp = crate::circuit::build_q_prime_with(q, middle)?;
        Self::from_circuit(&qp, q.input_bits())
    }

    pub fn graph(&self) -> &CircuitGraph {
        &self.graph
    }

    pub fn tensors(&self) -> &[Tensor] {
        &self.tensors
    }

    pub fn tensor(&self, v: usize) -> &Tensor {
        &self.tensors[v]
    }

    /// Debug listing: one line per vertex with its edges and entries.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for (v, t) in self.tensors.iter().enumerate() {
            write!(s, "vertex {v} edges {:?} entries [", t.edges).unwrap();
            for (i, z) in t.entries.iter().enumerate() {
                if i > 0 {
                    s.push_str(", ");
                }
                write!(s, "[{}, {}]", z.re, z.im).unwrap();
            }
            s.push_str("]\n");
        }
        s
    }
}
