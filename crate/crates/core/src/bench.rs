//! Cost scaling of contraction on a ladder family.
//!
//! A ladder has `rails` wires and a fixed number of random two-qubit rungs
//! between neighbouring rails. Swallowing it in time order keeps exactly
//! `rails` wires on the frontier, so the width is the rail count while the
//! vertex count stays nearly constant. Plotting `log2(ops)` against width
//! should then give a line of slope one.

use std::time::Instant;

use crate::circuit::{GateApp, OperatorCircuit, WireAllocator};
use crate::error::Result;
use crate::graph::{circuit_graph, Bubbling, CircuitIndex};
use crate::random::{random_unitary, rng, Rng64};
use crate::tensor::{amplitude_with, ContractOptions};
use rand::Rng;

/// `rungs` random unitaries on rails `(t mod (rails - 1), +1)`, on a random
/// basis input.
pub fn ladder_circuit(rails: usize, rungs: usize, rng: &mut Rng64) -> OperatorCircuit {
    assert!(rails >= 2, "a ladder needs two rails");
    let bits: Vec<bool> = (0..rails).map(|_| rng.gen()).collect();
    let mut wires = WireAllocator::starting_at(rails);
    let mut current: Vec<usize> = (0..rails).collect();
    let mut gates = Vec::with_capacity(rungs);
    for t in 0..rungs {
        let r = t % (rails - 1);
        let outs = vec![wires.fresh(), wires.fresh()];
        gates.push(
            GateApp::new("U", random_unitary(2, rng), vec![current[r], current[r + 1]], outs.clone())
                .at(t as u32, (r + 1) as u32),
        );
        current[r] = outs[0];
        current[r + 1] = outs[1];
    }
    OperatorCircuit::new(bits, gates, Some(current), None).expect("ladder is well formed")
}

/// Input terminals, then gates in list order, then output terminals.
pub fn time_order_bubbling(q: &OperatorCircuit) -> Bubbling {
    let idx = CircuitIndex::new(q);
    let order = (0..q.num_inputs())
        .map(|i| idx.input_vertex(i))
        .chain((0..q.gates().len()).map(|g| idx.gate_vertex(g)))
        .chain((0..q.num_outputs()).map(|j| idx.output_vertex(j)))
        .collect();
    Bubbling::new(order)
}

#[derive(Clone, Debug, PartialEq)]
pub struct LadderPoint {
    pub rails: usize,
    pub width: usize,
    pub ops: u64,
    pub seconds: f64,
}

/// Contracts one amplitude of a ladder for each rail count.
pub fn ladder_sweep(rails: &[usize], rungs: usize, seed: u64) -> Result<Vec<LadderPoint>> {
    let mut r = rng(seed);
    rails
        .iter()
        .map(|&n| {
            let q = ladder_circuit(n, rungs, &mut r);
            let b = time_order_bubbling(&q);
            let width = b.width(&circuit_graph(&q))?;
            let y: Vec<bool> = (0..n).map(|_| r.gen()).collect();
            let start = Instant::now();
            let (_, stats) = amplitude_with(&q, &y, &b, ContractOptions::default())?;
            Ok(LadderPoint {
                rails: n,
                width,
                ops: stats.ops,
                seconds: start.elapsed().as_secs_f64(),
            })
        })
        .collect()
}

/// Least-squares slope of `ys` against `xs`.
pub fn fit_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Slope of `log2(ops)` against width over a sweep.
pub fn ops_slope(points: &[LadderPoint]) -> f64 {
    let xs: Vec<f64> = points.iter().map(|p| p.width as f64).collect();
    let ys: Vec<f64> = points.iter().map(|p| (p.ops as f64).log2()).collect();
    fit_slope(&xs, &ys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::oracle::dense_apply;

    #[test]
    fn ladder_width_is_the_rail_count() {
        let mut r = rng(4);
        for rails in 2..8 {
            let q = ladder_circuit(rails, 12, &mut r);
            let g = circuit_graph(&q);
            assert_eq!(time_order_bubbling(&q).width(&g).unwrap(), rails);
        }
    }

    #[test]
    fn ladder_amplitudes_match_the_dense_oracle() {
        let mut r = rng(8);
        let q = ladder_circuit(4, 9, &mut r);
        let s = dense_apply(&q).unwrap();
        let b = time_order_bubbling(&q);
        for y in 0..16usize {
            let bits: Vec<bool> = (0..4).map(|i| (y >> (3 - i)) & 1 == 1).collect();
            let (a, _) = amplitude_with(&q, &bits, &b, ContractOptions::default()).unwrap();
            assert!((a - s.amplitude(&bits)).norm() < 1e-12);
        }
    }

    #[test]
    fn slope_of_a_line() {
        assert!((fit_slope(&[1.0, 2.0, 3.0], &[2.0, 4.0, 6.0]) - 2.0).abs() < 1e-12);
    }
}
