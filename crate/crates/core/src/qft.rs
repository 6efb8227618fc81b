//! Approximate quantum Fourier transform as an operator circuit.
//!
//! The circuit copies every classical input bit `k` times, inserts `k`
//! fresh ancillas per bit, turns one ancilla per bit into the product-form
//! factor `|mu_{0.x_j x_{j-1} ... x_{j-k+1}}>` with a Hadamard and
//! controlled phases, and erases everything else.
//!
//! Conventions: input wire `i` carries bit `x_{n-1-i}` (big-endian), and
//! output `j` carries the factor built from `x_j, x_{j-1}, ...`. Under
//! big-endian reading of the outputs this is the standard DFT
//! `|x> -> 2^{-n/2} sum_y e^{2 pi i x y / 2^n} |y>`.
//!
//! Layout tags put everything concerning bit `x_j` in lane `j`. Copy trees
//! are expanded lazily: a copy gate sits in the lane of the first gadget
//! that needs one of its leaves, so only `O(log k)` copies of each bit cross
//! any lane boundary.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::circuit::oracle::sparse_apply;
use crate::circuit::{GateApp, LinearGate, OperatorCircuit, SubCircuit, WireAllocator, WireId};
use crate::error::{Error, Result};
use crate::graph::{circuit_graph, greedy_bubbling, layered_bubbling};
use crate::C64;

/// Largest `n` for which dense QFT matrices are built.
pub const DENSE_QFT_CAP: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QftParams {
    pub n: usize,
    pub k: usize,
    /// Target error the precision was derived from, if any.
    pub epsilon: Option<f64>,
}

impl QftParams {
    /// `k = ceil(2 log2(n / eps)) + 2`, clamped to `1..=n`.
    pub fn from_epsilon(n: usize, epsilon: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParams("n must be at least 1".into()));
        }
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::InvalidParams(format!("epsilon {epsilon} is not in (0, 1)")));
        }
        let k = (2.0 * (n as f64 / epsilon).log2()).ceil() as usize + 2;
        Ok(Self {
            n,
            k: k.clamp(1, n),
            epsilon: Some(epsilon),
        })
    }

    pub fn with_k(n: usize, k: usize) -> Result<Self> {
        if n == 0 || k == 0 || k > n {
            return Err(Error::InvalidParams(format!("need 1 <= k <= n, got n = {n}, k = {k}")));
        }
        Ok(Self { n, k, epsilon: None })
    }

    /// Per-input fidelity guaranteed by truncation: each factor's phase is
    /// off by less than `2^-k`, and `|<mu_a|mu_b>| = |cos(pi (a - b))|`.
    pub fn fidelity_lower_bound(&self) -> f64 {
        if self.k >= self.n {
            return 1.0;
        }
        let per_factor = (PI * 0.5f64.powi(self.k as i32)).cos();
        per_factor.powi((self.n - self.k) as i32)
    }
}

/// `(|0> + e^{2 pi i theta}|1>)/sqrt 2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MuState {
    pub theta: f64,
}

impl MuState {
    pub fn new(theta: f64) -> Self {
        Self {
            theta: theta.rem_euclid(1.0),
        }
    }

    pub fn amplitudes(&self) -> [C64; 2] {
        [
            C64::new(FRAC_1_SQRT_2, 0.0),
            C64::from_polar(FRAC_1_SQRT_2, 2.0 * PI * self.theta),
        ]
    }
}

pub fn copy_gate() -> LinearGate {
    LinearGate::copy()
}

pub fn erase_gate() -> LinearGate {
    LinearGate::erase()
}

pub fn prep0_gate() -> LinearGate {
    LinearGate::prep0()
}

pub fn cphase_gate(theta: f64) -> LinearGate {
    LinearGate::cphase(theta)
}

/// Depth of a balanced copy tree with `k` leaves.
pub fn copy_tree_depth(k: usize) -> u32 {
    k.max(1).next_power_of_two().trailing_zeros()
}

/// Grows the copy tree over leaves `a..b` from `root`, appending gates and
/// writing leaf wires into `leaves[a..b]`. A gate whose first leaf is `a`
/// sits in lane `lane_of(a)`, but never before its parent's lane.
#[allow(clippy::too_many_arguments)]
fn grow_tree(
    root: WireId,
    (a, b): (usize, usize),
    depth: u32,
    parent_lane: u32,
    lane_of: &dyn Fn(usize) -> u32,
    wires: &mut WireAllocator,
    gates: &mut Vec<GateApp>,
    leaves: &mut [WireId],
) {
    if b - a == 1 {
        leaves[a] = root;
        return;
    }
    let m = a + (b - a).div_ceil(2);
    let (l, r) = (wires.fresh(), wires.fresh());
    let lane = lane_of(a).max(parent_lane);
    gates.push(GateApp::new("COPY", copy_gate(), vec![root], vec![l, r]).at(depth, lane));
    grow_tree(l, (a, m), depth + 1, lane, lane_of, wires, gates, leaves);
    grow_tree(r, (m, b), depth + 1, lane, lane_of, wires, gates, leaves);
}

/// Balanced binary tree of `k - 1` copy gates turning one wire into `k`.
pub fn copy_tree(k: usize) -> SubCircuit {
    let mut wires = WireAllocator::starting_at(1);
    let mut gates = Vec::new();
    let mut leaves = vec![0; k.max(1)];
    grow_tree(0, (0, k.max(1)), 0, 0, &|_| 0, &mut wires, &mut gates, &mut leaves);
    SubCircuit {
        gates,
        inputs: vec![0],
        outputs: leaves,
    }
}

/// Wire layout between the stages: block `i` (fed by input wire `i`, bit
/// `x_{n-1-i}`) holds `k` copies then `k` ancillas. Copy `c` of bit `x_l` is
/// reserved for gadget `l + c`; ancilla 0 of block `x_j` becomes the
/// gadget-`j` output.
fn copy_slot(p: &QftParams, bit: usize, c: usize) -> usize {
    (p.n - 1 - bit) * 2 * p.k + c
}

fn ancilla_slot(p: &QftParams, bit: usize, a: usize) -> usize {
    (p.n - 1 - bit) * 2 * p.k + p.k + a
}

/// Lane of the gadget consuming copy `c` of bit `l`, clamped to the last
/// lane for spare copies.
fn consumer_lane(p: &QftParams, bit: usize, c: usize) -> u32 {
    (bit + c).min(p.n - 1) as u32
}

fn is_used(p: &QftParams, bit: usize, c: usize) -> bool {
    bit + c < p.n
}

/// `|x> -> |alpha_x>`: copy trees and fresh ancillas, `2nk` exit wires.
pub fn build_stage1(p: &QftParams) -> SubCircuit {
    let (n, k) = (p.n, p.k);
    let depth = copy_tree_depth(k);
    let mut wires = WireAllocator::starting_at(n);
    let mut gates = Vec::new();
    let mut outputs = vec![0; 2 * n * k];
    for i in 0..n {
        let bit = n - 1 - i;
        let mut leaves = vec![0; k];
        let lane_of = |c: usize| if is_used(p, bit, c) { consumer_lane(p, bit, c) } else { bit as u32 };
        grow_tree(i, (0, k), 0, bit as u32, &lane_of, &mut wires, &mut gates, &mut leaves);
        for (c, w) in leaves.into_iter().enumerate() {
            outputs[copy_slot(p, bit, c)] = w;
        }
        for a in 0..k {
            let w = wires.fresh();
            gates.push(GateApp::new("PREP0", prep0_gate(), vec![], vec![w]).at(depth, bit as u32));
            outputs[ancilla_slot(p, bit, a)] = w;
        }
    }
    SubCircuit {
        gates,
        inputs: (0..n).collect(),
        outputs,
    }
}

/// `|alpha_x> -> |beta_x>`: gadget `A_j` puts a Hadamard on ancilla 0 of
/// block `x_j`, then a controlled phase `2^{l-j-1}` against the reserved copy
/// of every `x_l`, `j-k+1 <= l <= j`.
pub fn build_stage2(p: &QftParams) -> SubCircuit {
    let (n, k) = (p.n, p.k);
    let depth = copy_tree_depth(k);
    let width = 2 * n * k;
    let mut wires = WireAllocator::starting_at(width);
    let mut current: Vec<WireId> = (0..width).collect();
    let mut gates = Vec::new();
    for j in 0..n {
        let lane = j as u32;
        let slot = ancilla_slot(p, j, 0);
        let h = wires.fresh();
        gates.push(GateApp::new("H", LinearGate::hadamard(), vec![current[slot]], vec![h]).at(depth + 1, lane));
        current[slot] = h;
        for (t, l) in (j.saturating_sub(k - 1)..=j).rev().enumerate() {
            let theta = 0.5f64.powi((j - l + 1) as i32);
            let cs = copy_slot(p, l, j - l);
            let (c_out, a_out) = (wires.fresh(), wires.fresh());
            gates.push(
                GateApp::new(
                    format!("CPHASE({theta})"),
                    cphase_gate(theta),
                    vec![current[cs], current[slot]],
                    vec![c_out, a_out],
                )
                .at(depth + 2 + t as u32, lane),
            );
            current[cs] = c_out;
            current[slot] = a_out;
        }
    }
    SubCircuit {
        gates,
        inputs: (0..width).collect(),
        outputs: current,
    }
}

/// `|beta_x> -> |psi~_x>`: erases every wire except the gadget outputs,
/// which exit in order `j = 0, 1, ..., n-1`.
pub fn build_stage3(p: &QftParams) -> SubCircuit {
    let (n, k) = (p.n, p.k);
    let depth = copy_tree_depth(k);
    let late = depth + 2 + k as u32;
    let mut gates = Vec::new();
    for bit in 0..n {
        for c in 0..k {
            let w = copy_slot(p, bit, c);
            let layer = if is_used(p, bit, c) { late } else { depth };
            let lane = consumer_lane(p, bit, c);
            gates.push(GateApp::new("ERASE", erase_gate(), vec![w], vec![]).at(layer, lane));
        }
        for a in 1..k {
            let w = ancilla_slot(p, bit, a);
            gates.push(GateApp::new("ERASE", erase_gate(), vec![w], vec![]).at(depth, bit as u32));
        }
    }
    SubCircuit {
        gates,
        inputs: (0..2 * n * k).collect(),
        outputs: (0..n).map(|j| ancilla_slot(p, j, 0)).collect(),
    }
}

/// The three stages composed, on input `x` given big-endian. The answer
/// wire is the first output (`|mu_{0.x_0}>`).
pub fn build_approx_qft(p: &QftParams, x: &[bool]) -> Result<OperatorCircuit> {
    QftParams::with_k(p.n, p.k)?;
    if x.len() != p.n {
        return Err(Error::BitLength {
            expected: p.n,
            got: x.len(),
        });
    }
    let sub = build_stage1(p).then(build_stage2(p))?.then(build_stage3(p))?;
    let q = sub.into_circuit(x.to_vec())?;
    let first = q.outputs()[0];
    q.with_answer_wire(Some(first))
}

/// Phase of output `j` on input `x` (as an integer), truncated to `k`
/// binary digits: `0.x_j x_{j-1} ... x_{j-k+1}`.
pub fn truncated_phase(x: usize, j: usize, k: usize) -> f64 {
    let lo = (j + 1).saturating_sub(k);
    (lo..=j).map(|l| ((x >> l) & 1) as f64 * 0.5f64.powi((j - l + 1) as i32)).sum()
}

/// `|psi~_x>` (or `|psi_x>` for `k >= n`) as a dense big-endian vector.
pub fn product_state(n: usize, k: usize, x: usize) -> Vec<C64> {
    let mut state = vec![C64::new(1.0, 0.0)];
    for j in 0..n {
        let mu = MuState::new(truncated_phase(x, j, k)).amplitudes();
        state = state.iter().flat_map(|&s| [s * mu[0], s * mu[1]]).collect();
    }
    state
}

fn check_dense(n: usize) -> Result<()> {
    if n > DENSE_QFT_CAP {
        return Err(Error::CapExceeded {
            what: "qubits for a dense QFT matrix",
            got: n,
            cap: DENSE_QFT_CAP,
        });
    }
    Ok(())
}

/// The exact transform in product form, row-major `2^n x 2^n`: column `x` is
/// `|psi_x>` in the builder's output order.
pub fn exact_qft_matrix(n: usize) -> Result<Vec<C64>> {
    check_dense(n)?;
    let dim = 1 << n;
    let mut m = vec![C64::new(0.0, 0.0); dim * dim];
    for x in 0..dim {
        for (y, a) in product_state(n, n, x).into_iter().enumerate() {
            m[y * dim + x] = a;
        }
    }
    Ok(m)
}

/// `omega^{xy} / sqrt(2^n)` straight from the definition.
pub fn dft_matrix(n: usize) -> Result<Vec<C64>> {
    check_dense(n)?;
    let dim = 1usize << n;
    let scale = (dim as f64).sqrt().recip();
    Ok((0..dim * dim)
        .map(|i| {
            let (y, x) = (i / dim, i % dim);
            let phase = ((x * y) % dim) as f64 / dim as f64;
            C64::from_polar(scale, 2.0 * PI * phase)
        })
        .collect())
}

/// Output state of the built circuit on input `x`, computed by sparse
/// simulation, as a dense vector over the `n` output wires.
pub fn simulate_output(p: &QftParams, x: usize) -> Result<Vec<C64>> {
    let bits: Vec<bool> = (0..p.n).map(|i| (x >> (p.n - 1 - i)) & 1 == 1).collect();
    let q = build_approx_qft(p, &bits)?;
    Ok(sparse_apply(&q)?.to_dense().amplitudes().to_vec())
}

/// `|<psi_x|psi~_x>|` for the built circuit on input `x`.
pub fn fidelity(p: &QftParams, x: usize) -> Result<f64> {
    let got = simulate_output(p, x)?;
    let exact = product_state(p.n, p.n, x);
    Ok(exact.iter().zip(&got).map(|(e, g)| e.conj() * g).sum::<C64>().norm())
}

#[derive(Clone, Debug, PartialEq)]
pub struct WidthRow {
    pub n: usize,
    pub k: usize,
    pub gates: usize,
    pub vertices: usize,
    pub layered_width: usize,
    pub greedy_width: usize,
}

impl WidthRow {
    /// `layered_width / k^2`.
    pub fn constant(&self) -> f64 {
        self.layered_width as f64 / (self.k * self.k) as f64
    }
}

/// Builds the circuit for every `n` at the given `epsilon` and measures
/// the layered and greedy bubbling widths of its graph.
pub fn qft_width_report(n_values: &[usize], epsilon: f64) -> Result<Vec<WidthRow>> {
    n_values
        .iter()
        .map(|&n| {
            let p = QftParams::from_epsilon(n, epsilon)?;
            let q = build_approx_qft(&p, &vec![false; n])?;
            let g = circuit_graph(&q);
            Ok(WidthRow {
                n,
                k: p.k,
                gates: q.gates().len(),
                vertices: g.num_vertices(),
                layered_width: layered_bubbling(&q)?.width(&g)?,
                greedy_width: greedy_bubbling(&g).width(&g)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::oracle::{dense_apply, format_bits};

    fn close(a: C64, b: C64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn primitive_gates() {
        let one = C64::new(1.0, 0.0);
        let (a, b) = (C64::new(0.6, 0.1), C64::new(-0.2, 0.7));
        let copied = copy_gate().apply(&[a, b]);
        assert_eq!(copied, vec![a, C64::new(0.0, 0.0), C64::new(0.0, 0.0), b]);
        assert_eq!(erase_gate().apply(&[a, b]), vec![a + b]);
        assert_eq!(prep0_gate().apply(&[one]), vec![one, C64::new(0.0, 0.0)]);
        assert_eq!(erase_gate().apply(&prep0_gate().apply(&[one])), vec![one]);
        let ph = cphase_gate(0.5).apply(&[C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0), one]);
        assert!(close(ph[3], -one));
        assert!(cphase_gate(0.3).is_unitary(1e-12));
        assert!(cphase_gate(0.0).max_abs_diff(&LinearGate::identity(2)) < 1e-15);
    }

    #[test]
    fn copy_tree_shape() {
        assert!(copy_tree(1).gates.is_empty());
        let t5 = copy_tree(5);
        assert_eq!(t5.gates.len(), 4);
        assert_eq!(copy_tree_depth(5), 3);
        assert_eq!(t5.gates.iter().map(|g| g.layer.unwrap()).max(), Some(2));
        let q = copy_tree(4).into_circuit(vec![true]).unwrap();
        let s = dense_apply(&q).unwrap();
        assert_eq!(s.amplitude(&[true; 4]), C64::new(1.0, 0.0));
        assert!((s.norm_sqr() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn params() {
        let p = QftParams::from_epsilon(64, 0.01).unwrap();
        assert_eq!(p.k, 28);
        assert_eq!(QftParams::from_epsilon(8, 0.1).unwrap().k, 8);
        assert!(QftParams::from_epsilon(8, 1.0).is_err());
        assert!(QftParams::from_epsilon(0, 0.1).is_err());
        assert!(QftParams::with_k(3, 4).is_err());
        assert!(QftParams::with_k(3, 0).is_err());
    }

    #[test]
    fn stage1_layout() {
        let p = QftParams::with_k(2, 2).unwrap();
        let s1 = build_stage1(&p);
        assert_eq!(s1.outputs.len(), 8);
        let q = s1.into_circuit(vec![true, false]).unwrap();
        let out = sparse_apply(&q).unwrap();
        assert_eq!(out.terms().len(), 1);
        let (bits, amp) = out.terms().iter().next().unwrap();
        assert_eq!(format_bits(bits), "11000000");
        assert_eq!(*amp, C64::new(1.0, 0.0));
    }

    #[test]
    fn single_qubit_is_a_hadamard() {
        let p = QftParams::with_k(1, 1).unwrap();
        for x in [false, true] {
            let q = build_approx_qft(&p, &[x]).unwrap();
            let s = dense_apply(&q).unwrap();
            let h = LinearGate::hadamard().apply(&if x {
                [C64::new(0.0, 0.0), C64::new(1.0, 0.0)]
            } else {
                [C64::new(1.0, 0.0), C64::new(0.0, 0.0)]
            });
            assert!(close(s.amplitudes()[0], h[0]) && close(s.amplitudes()[1], h[1]));
        }
    }

    #[test]
    fn gadget_phase_example() {
        // x = 110, output j = 2 carries mu_{0.11}
        let p = QftParams::with_k(3, 2).unwrap();
        assert_eq!(truncated_phase(0b110, 2, 2), 0.75);
        let out = simulate_output(&p, 0b110).unwrap();
        let expect = product_state(3, 2, 0b110);
        for (a, b) in out.iter().zip(&expect) {
            assert!(close(*a, *b));
        }
        let mu = MuState::new(0.75).amplitudes();
        // marginal amplitude ratio on the last output wire
        assert!(close(out[1] / out[0], mu[1] / mu[0]));
    }

    #[test]
    fn exact_at_full_precision() {
        for n in 1..=4 {
            let f = exact_qft_matrix(n).unwrap();
            let d = dft_matrix(n).unwrap();
            assert!(f.iter().zip(&d).all(|(a, b)| (a - b).norm() < 1e-12));
            let p = QftParams::with_k(n, n).unwrap();
            for x in 0..1 << n {
                let out = simulate_output(&p, x).unwrap();
                for (y, a) in out.iter().enumerate() {
                    assert!((a - f[(y << n) + x]).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn width_stays_within_four_k_squared() {
        for row in qft_width_report(&[4, 8, 16], 0.01).unwrap() {
            assert!(row.layered_width <= 4 * row.k * row.k, "{row:?}");
        }
    }
}
