use super::{contract_with, ContractOptions, ContractStats, TensorCircuit};
use crate::circuit::{build_q_prime, MiddleTensor, OperatorCircuit};
use crate::error::{Error, Result};
use crate::graph::{
    circuit_graph, exact_bubble_width, greedy_bubbling, layered_bubbling, Bubbling, CircuitIndex,
    VertexKind, EXACT_VERTEX_CAP,
};
use crate::C64;

/// How to pick a bubbling of a circuit's graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BubblingStrategy {
    /// Exact below the vertex cap; otherwise the narrower of greedy and
    /// layered (when the circuit carries layout tags).
    Auto,
    Greedy,
    Layered,
    Exact,
    Given(Bubbling),
}

/// A bubbling of `G_Q` chosen by `strategy`.
pub fn choose_bubbling(q: &OperatorCircuit, strategy: &BubblingStrategy) -> Result<Bubbling> {
    let g = circuit_graph(q);
    match strategy {
        BubblingStrategy::Greedy => Ok(greedy_bubbling(&g)),
        BubblingStrategy::Layered => layered_bubbling(q),
        BubblingStrategy::Exact => exact_bubble_width(&g).map(|(_, b)| b),
        BubblingStrategy::Given(b) => {
            b.check(&g)?;
            Ok(b.clone())
        }
        BubblingStrategy::Auto => {
            if g.num_vertices() <= EXACT_VERTEX_CAP {
                return exact_bubble_width(&g).map(|(_, b)| b);
            }
            let greedy = greedy_bubbling(&g);
            match layered_bubbling(q) {
                Ok(layered) if layered.width(&g)? < greedy.width(&g)? => Ok(layered),
                _ => Ok(greedy),
            }
        }
    }
}

/// A bubbling of `G_{Q'}` for [`prob_answer_zero`]. `Layered` sweeps the
/// lanes of `Q'` itself (adjoint gates inherit their lanes); `Greedy`,
/// `Exact` and `Given` lift a bubbling of `G_Q` with [`q_prime_bubbling`];
/// `Auto` solves small `G_{Q'}` exactly and otherwise keeps the narrowest
/// of the candidates that apply.
pub fn choose_q_prime_bubbling(q: &OperatorCircuit, strategy: &BubblingStrategy) -> Result<Bubbling> {
    match strategy {
        BubblingStrategy::Layered => layered_bubbling(&build_q_prime(q)?),
        BubblingStrategy::Auto => {
            let qp = build_q_prime(q)?;
            let gp = circuit_graph(&qp);
            if gp.num_vertices() <= EXACT_VERTEX_CAP {
                return exact_bubble_width(&gp).map(|(_, b)| b);
            }
            let mut candidates = vec![q_prime_bubbling(q, &choose_bubbling(q, &BubblingStrategy::Auto)?)?];
            candidates.push(q_prime_bubbling(q, &greedy_bubbling(&circuit_graph(q)))?);
            if let Ok(b) = layered_bubbling(&qp) {
                candidates.push(b);
            }
            let mut best: Option<(usize, Bubbling)> = None;
            for b in candidates {
                let w = b.width(&gp)?;
                if best.as_ref().map_or(true, |(bw, _)| w < *bw) {
                    best = Some((w, b));
                }
            }
            Ok(best.expect("at least one candidate").1)
        }
        other => q_prime_bubbling(q, &choose_bubbling(q, other)?),
    }
}

/// `<y|Q|x>` by contracting the tensor circuit of `q` with output terminals
/// fixed to `y`, along a bubbling `b` of `G_Q`.
pub fn amplitude(q: &OperatorCircuit, y: &[bool], b: &Bubbling) -> Result<C64> {
    amplitude_with(q, y, b, ContractOptions::default()).map(|(a, _)| a)
}

pub fn amplitude_with(
    q: &OperatorCircuit,
    y: &[bool],
    b: &Bubbling,
    opts: ContractOptions,
) -> Result<(C64, ContractStats)> {
    let t = TensorCircuit::from_circuit(q, y)?;
    contract_with(&t, b, opts)
}

#[derive(Clone, Copy, Debug)]
pub struct AnswerProbability {
    /// Real part of `<x|Q'|x>`.
    pub p0: f64,
    /// Imaginary part, zero up to rounding.
    pub imag: f64,
    pub stats: ContractStats,
}

/// `||Q(x)_0||^2` by contracting `T_Q` (the tensor circuit of `Q'`) along a
/// bubbling `b` of `G_{Q'}`; see [`q_prime_bubbling`] to lift a bubbling of
/// `G_Q`.
pub fn prob_answer_zero(q: &OperatorCircuit, b: &Bubbling) -> Result<AnswerProbability> {
    prob_answer_zero_with(q, b, ContractOptions::default(), MiddleTensor::Projector)
}

pub fn prob_answer_zero_with(
    q: &OperatorCircuit,
    b: &Bubbling,
    opts: ContractOptions,
    middle: MiddleTensor,
) -> Result<AnswerProbability> {
    let t = TensorCircuit::for_answer_probability(q, middle)?;
    let (v, stats) = contract_with(&t, b, opts)?;
    Ok(AnswerProbability {
        p0: v.re,
        imag: v.im,
        stats,
    })
}

/// Lifts a bubbling of `G_Q` to `G_{Q'}`: each gate `g` of `Q` is followed
/// by its adjoint `g*`, the middle projector is swallowed on the answer
/// terminal's turn, and every output terminal of `Q'` (the mirror of an
/// input terminal) right after its only neighbour. Non-answer output
/// terminals of `Q` have no counterpart in `Q'`.
pub fn q_prime_bubbling(q: &OperatorCircuit, b: &Bubbling) -> Result<Bubbling> {
    let answer = q.answer_wire().ok_or(Error::MissingAnswerWire)?;
    let g = circuit_graph(q);
    b.check(&g)?;
    let gates = q.gates().len();
    let qp = build_q_prime(q)?;
    let gp = circuit_graph(&qp);
    let idx = CircuitIndex::new(&qp);
    let gate_base = idx.num_inputs;

    // mirrored output terminals of Q', keyed by their neighbour
    let mut trailing: Vec<Vec<usize>> = vec![Vec::new(); gp.num_vertices()];
    for i in 0..idx.num_outputs {
        let v = idx.output_vertex(i);
        let e = gp.incident(v)[0];
        trailing[gp.other_end(e, v)].push(v);
    }

    let mut order = Vec::with_capacity(gp.num_vertices());
    let push = |v: usize, order: &mut Vec<usize>| {
        order.push(v);
        order.extend(trailing[v].iter().copied());
    };
    for &v in b.order() {
        match g.kind(v) {
            VertexKind::Input(i) => push(idx.input_vertex(i), &mut order),
            VertexKind::Gate(k) => {
                push(gate_base + k, &mut order);
                push(gate_base + 2 * gates - k, &mut order);
            }
            VertexKind::Output(j) if q.outputs()[j] == answer => push(gate_base + gates, &mut order),
            VertexKind::Output(_) => {}
            VertexKind::Plain => unreachable!("circuit graphs have no plain vertices"),
        }
    }
    let lifted = Bubbling::new(order);
    debug_assert!(lifted.check(&gp).is_ok());
    Ok(lifted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::oracle::{dense_apply, prob_answer_zero_dense};
    use crate::circuit::{GateApp, LinearGate};
    use std::f64::consts::FRAC_1_SQRT_2;

    fn h_on(bit: bool) -> OperatorCircuit {
        OperatorCircuit::new(
            vec![bit],
            vec![GateApp::new("H", LinearGate::hadamard(), vec![0], vec![1])],
            None,
            Some(1),
        )
        .unwrap()
    }

    fn auto_prime(q: &OperatorCircuit) -> Bubbling {
        choose_q_prime_bubbling(q, &BubblingStrategy::Auto).unwrap()
    }

    #[test]
    fn identity_amplitudes() {
        let q = OperatorCircuit::new(vec![true, false], vec![], None, None).unwrap();
        let b = choose_bubbling(&q, &BubblingStrategy::Exact).unwrap();
        assert_eq!(amplitude(&q, &[true, false], &b).unwrap(), C64::new(1.0, 0.0));
        assert_eq!(amplitude(&q, &[true, true], &b).unwrap(), C64::new(0.0, 0.0));
        assert!(matches!(amplitude(&q, &[true], &b), Err(Error::BitLength { .. })));
    }

    #[test]
    fn hadamard_amplitude_and_probability() {
        let q = h_on(false);
        let b = choose_bubbling(&q, &BubblingStrategy::Greedy).unwrap();
        assert!((amplitude(&q, &[false], &b).unwrap() - C64::new(FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
        let p = prob_answer_zero(&q, &auto_prime(&q)).unwrap();
        assert!((p.p0 - 0.5).abs() < 1e-15);
        assert!(p.imag.abs() < 1e-15);
    }

    #[test]
    fn identity_on_one() {
        let q = OperatorCircuit::new(vec![true], vec![], None, Some(0)).unwrap();
        let p = prob_answer_zero(&q, &auto_prime(&q)).unwrap();
        assert_eq!(p.p0, 0.0);
    }

    #[test]
    fn literal_middle_tensor_gives_full_norm() {
        // non-unitary: 2 * H on |0>, answer wire
        let two_h = LinearGate::from_real(1, 1, &[2.0 * FRAC_1_SQRT_2, 2.0 * FRAC_1_SQRT_2, 2.0 * FRAC_1_SQRT_2, -2.0 * FRAC_1_SQRT_2]).unwrap();
        let q = OperatorCircuit::new(vec![false], vec![GateApp::new("U", two_h, vec![0], vec![1])], None, Some(1)).unwrap();
        let b = auto_prime(&q);
        let proj = prob_answer_zero(&q, &b).unwrap();
        assert!((proj.p0 - prob_answer_zero_dense(&q).unwrap()).abs() < 1e-12);
        assert!((proj.p0 - 2.0).abs() < 1e-12);
        let lit = prob_answer_zero_with(&q, &b, ContractOptions::default(), MiddleTensor::IdentityPattern).unwrap();
        assert!((lit.p0 - dense_apply(&q).unwrap().norm_sqr()).abs() < 1e-12);
        assert!((lit.p0 - 4.0).abs() < 1e-12);
    }

    #[test]
    fn single_gate_q_prime_width() {
        let q = h_on(false);
        let g = circuit_graph(&q);
        let (w, b) = exact_bubble_width(&g).unwrap();
        assert_eq!(w, 1);
        let lifted = q_prime_bubbling(&q, &b).unwrap();
        let gp = circuit_graph(&build_q_prime(&q).unwrap());
        assert!(lifted.width(&gp).unwrap() <= 3);
    }

    #[test]
    fn identity_circuit_q_prime_width_matches() {
        let q = OperatorCircuit::new(vec![false], vec![], None, Some(0)).unwrap();
        let g = circuit_graph(&q);
        let gp = circuit_graph(&build_q_prime(&q).unwrap());
        // input terminal first: the lift is a path sweep
        let forward = q_prime_bubbling(&q, &Bubbling::natural(2)).unwrap();
        assert_eq!(forward.width(&gp).unwrap(), Bubbling::natural(2).width(&g).unwrap());
        // output terminal first: the middle vertex opens both of its edges
        let backward = q_prime_bubbling(&q, &Bubbling::new(vec![1, 0])).unwrap();
        assert_eq!(backward.width(&gp).unwrap(), 2);
    }
}
