//! Seeded generators for random gates, operator circuits and tensor
//! circuits.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::circuit::{GateApp, LinearGate, OperatorCircuit, WireAllocator, WireId};
use crate::graph::CircuitGraph;
use crate::tensor::{Tensor, TensorCircuit};
use crate::C64;

pub use rand::SeedableRng;

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian(rng: &mut Rng64) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-ish random unitary: Gram-Schmidt on a complex Gaussian matrix.
pub fn random_unitary(qubits: usize, rng: &mut Rng64) -> LinearGate {
    let n = 1 << qubits;
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v: Vec<C64> = (0..n).map(|_| gaussian(rng)).collect();
        for u in &cols {
            let dot: C64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (x, y) in v.iter_mut().zip(u) {
                *x -= dot * y;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            cols.push(v.into_iter().map(|z| z / norm).collect());
        }
    }
    let mut m = vec![C64::new(0.0, 0.0); n * n];
    for (c, col) in cols.iter().enumerate() {
        for (r, z) in col.iter().enumerate() {
            m[r * n + c] = *z;
        }
    }
    LinearGate::new(qubits, qubits, m).expect("square matrix")
}

/// Arbitrary (non-unitary) gate with entries uniform in the unit square.
pub fn random_matrix(arity_in: usize, arity_out: usize, rng: &mut Rng64) -> LinearGate {
    let m = (0..1usize << (arity_in + arity_out))
        .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    LinearGate::new(arity_in, arity_out, m).expect("shape matches")
}

#[derive(Clone, Copy, Debug)]
pub struct CircuitConfig {
    /// Cap on live wires at any point (and on input count).
    pub max_qubits: usize,
    pub max_gates: usize,
    /// Allow copy / erase / prep and arbitrary non-unitary matrices.
    pub non_unitary: bool,
}

impl Default for CircuitConfig {
    fn default() -> Self {
        Self {
            max_qubits: 5,
            max_gates: 15,
            non_unitary: true,
        }
    }
}

/// A valid random circuit with a random basis input and an answer wire.
pub fn random_operator_circuit(rng: &mut Rng64, cfg: CircuitConfig) -> OperatorCircuit {
    let n_in = rng.gen_range(1..=cfg.max_qubits);
    let n_gates = rng.gen_range(1..=cfg.max_gates);
    let bits: Vec<bool> = (0..n_in).map(|_| rng.gen()).collect();
    let mut wires = WireAllocator::starting_at(n_in);
    let mut live: Vec<WireId> = (0..n_in).collect();
    let mut gates = Vec::with_capacity(n_gates);

    while gates.len() < n_gates {
        let kind = rng.gen_range(0..if cfg.non_unitary { 9 } else { 4 });
        let room = live.len() < cfg.max_qubits;
        let app = match kind {
            0 => {
                let w = take(&mut live, rng);
                GateApp::new("U", random_unitary(1, rng), vec![w], vec![wires.fresh()])
            }
            1 | 2 if live.len() >= 2 => {
                let (a, b) = (take(&mut live, rng), take(&mut live, rng));
                let (label, gate) = if kind == 1 {
                    ("U", random_unitary(2, rng))
                } else {
                    ("CNOT", LinearGate::cnot())
                };
                GateApp::new(label, gate, vec![a, b], vec![wires.fresh(), wires.fresh()])
            }
            3 => {
                let w = take(&mut live, rng);
                GateApp::new("H", LinearGate::hadamard(), vec![w], vec![wires.fresh()])
            }
            4 if room => {
                let w = take(&mut live, rng);
                GateApp::new("COPY", LinearGate::copy(), vec![w], vec![wires.fresh(), wires.fresh()])
            }
            5 if live.len() > 1 => {
                let w = take(&mut live, rng);
                GateApp::new("ERASE", LinearGate::erase(), vec![w], vec![])
            }
            6 if room => GateApp::new("PREP0", LinearGate::prep0(), vec![], vec![wires.fresh()]),
            7 => {
                let w = take(&mut live, rng);
                GateApp::new("M", random_matrix(1, 1, rng), vec![w], vec![wires.fresh()])
            }
            8 if live.len() >= 2 => {
                let (a, b) = (take(&mut live, rng), take(&mut live, rng));
                GateApp::new("CPHASE(0.125)", LinearGate::cphase(0.125), vec![a, b], vec![wires.fresh(), wires.fresh()])
            }
            _ => continue,
        };
        live.extend(app.outputs.iter().copied());
        gates.push(app);
    }
    let answer = *live.choose(rng).expect("at least one live wire");
    OperatorCircuit::new(bits, gates, None, Some(answer)).expect("generator builds valid circuits")
}

fn take(live: &mut Vec<WireId>, rng: &mut Rng64) -> WireId {
    let i = rng.gen_range(0..live.len());
    live.swap_remove(i)
}

/// Random tensor circuit on `2..=max_vertices` vertices with up to
/// `max_edges` edges, vertex degree at most `max_degree`, random complex
/// entries and a random edge order per tensor.
pub fn random_tensor_circuit(
    rng: &mut Rng64,
    max_vertices: usize,
    max_edges: usize,
    max_degree: usize,
) -> TensorCircuit {
    let n = rng.gen_range(2..=max_vertices);
    let target = rng.gen_range(1..=max_edges);
    let mut degree = vec![0; n];
    let mut edges = Vec::new();
    for _ in 0..8 * max_edges {
        if edges.len() == target {
            break;
        }
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u != v && degree[u] < max_degree && degree[v] < max_degree {
            degree[u] += 1;
            degree[v] += 1;
            edges.push((u, v));
        }
    }
    let g = CircuitGraph::new(n, edges).expect("no self-loops");
    let tensors = (0..n)
        .map(|v| {
            let mut es = g.incident(v).to_vec();
            es.shuffle(rng);
            let entries = (0..1 << es.len())
                .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            Tensor::new(es, entries).expect("entry count matches")
        })
        .collect();
    TensorCircuit::new(g, tensors).expect("tensors follow incidence")
}

/// A uniformly random order of `0..n`.
pub fn random_order(n: usize, rng: &mut Rng64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    order
}
