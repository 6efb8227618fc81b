//! Self-check suites comparing the contraction engine, the width solvers
//! and the QFT builder against independent oracles.
//!
//! Every suite returns a [`SuiteReport`]; none of them panic on a mismatch.

use std::fmt;
use std::time::Instant;

use rand::Rng;

use crate::bench::{ladder_sweep, ops_slope};
use crate::circuit::oracle::{dense_apply, index_to_bits, prob_answer_zero_dense, sparse_apply};
use crate::circuit::LinearGate;
use crate::error::{Error, Result};
use crate::graph::{
    circuit_graph, exact_bubble_width, exact_path_width, layered_bubbling, Bubbling, CircuitGraph,
};
use crate::qft::{build_approx_qft, dft_matrix, fidelity, qft_width_report, QftParams};
use crate::random::{random_operator_circuit, random_order, random_tensor_circuit, rng, CircuitConfig};
use crate::tensor::{
    amplitude_with, choose_bubbling, contract, prob_answer_zero, q_prime_bubbling, value_brute_force,
    BubblingStrategy, ContractOptions, Tensor, TensorCircuit,
};
use crate::{C64, DEFAULT_SEED, DEFAULT_TOLERANCE};

pub const SUITES: &[&str] = &[
    "tensor",
    "circuits",
    "qft-exact",
    "qft-fidelity",
    "widths",
    "qft-widths",
    "ladder",
    "lift",
    "qft-contract",
];

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    pub tolerance: f64,
    /// Perturb the system under test (not the oracle) so that a working
    /// suite must report failures. Honoured by `tensor` and `circuits`.
    pub inject_fault: bool,
    /// Number of random cases for the randomized suites.
    pub cases: Option<usize>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            tolerance: DEFAULT_TOLERANCE,
            inject_fault: false,
            cases: None,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SuiteReport {
    pub name: String,
    pub cases: usize,
    /// Largest oracle mismatch seen (0 for purely combinatorial suites).
    pub max_deviation: f64,
    pub failures: Vec<String>,
    /// Measured quantities worth printing, as `key = value` pairs.
    pub notes: Vec<(String, String)>,
    pub seconds: f64,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            ..Self::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn deviation(&mut self, what: impl FnOnce() -> String, dev: f64, tol: f64) {
        self.max_deviation = self.max_deviation.max(dev);
        if !(dev <= tol) {
            self.fail(format!("{}: deviation {dev:.3e} > {tol:.1e}", what()));
        }
    }

    fn fail(&mut self, msg: String) {
        // keep reports readable when everything breaks
        if self.failures.len() < 20 {
            self.failures.push(msg);
        } else if self.failures.len() == 20 {
            self.failures.push("further failures omitted".into());
        }
    }

    fn note(&mut self, key: &str, value: impl ToString) {
        self.notes.push((key.to_string(), value.to_string()));
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "suite={} status={} cases={} max_deviation={:.3e} seconds={:.2}",
            self.name,
            if self.passed() { "pass" } else { "fail" },
            self.cases,
            self.max_deviation,
            self.seconds
        )?;
        for (k, v) in &self.notes {
            write!(f, " {k}={v}")?;
        }
        Ok(())
    }
}

pub fn run_suite(name: &str, opts: &VerifyOptions) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut report = match name {
        "tensor" => tensor_suite(opts),
        "circuits" => circuits_suite(opts),
        "qft-exact" => qft_exact_suite(opts, 8),
        "qft-fidelity" => qft_fidelity_suite(opts),
        "widths" => width_sandwich_suite(7, 4),
        "qft-widths" => qft_widths_suite(),
        "ladder" => ladder_suite(opts),
        "lift" => lift_suite(opts),
        "qft-contract" => qft_contract_suite(opts),
        other => {
            return Err(Error::InvalidParams(format!(
                "unknown suite {other:?}; known suites: {}",
                SUITES.join(", ")
            )))
        }
    }?;
    report.seconds = start.elapsed().as_secs_f64();
    Ok(report)
}

pub fn run_all(opts: &VerifyOptions) -> Result<Vec<SuiteReport>> {
    SUITES.iter().map(|s| run_suite(s, opts)).collect()
}

/// Random tensor circuits (at most 8 vertices, 12 edges, degree 4), each
/// contracted along 10 random bubblings and compared with the brute-force
/// sum over labelings.
pub fn tensor_suite(opts: &VerifyOptions) -> Result<SuiteReport> {
    let mut r = rng(opts.seed);
    let mut report = SuiteReport::new("tensor");
    for case in 0..opts.cases.unwrap_or(200) {
        let t = random_tensor_circuit(&mut r, 8, 12, 4);
        let reference = value_brute_force(&t)?;
        let t = if opts.inject_fault { perturb(&t) } else { t };
        for _ in 0..10 {
            let b = Bubbling::new(random_order(t.graph().num_vertices(), &mut r));
            let v = contract(&t, &b)?;
            report.deviation(|| format!("case {case} bubbling {b}"), (v - reference).norm(), opts.tolerance);
        }
        report.cases += 1;
    }
    Ok(report)
}

fn perturb(t: &TensorCircuit) -> TensorCircuit {
    let mut tensors = t.tensors().to_vec();
    let first = &tensors[0];
    let mut entries = first.entries().to_vec();
    entries[0] += C64::new(0.25, 0.0);
    tensors[0] = Tensor::new(first.edges().to_vec(), entries).expect("same shape");
    TensorCircuit::new(t.graph().clone(), tensors).expect("same graph")
}

/// Random operator circuits (at most 5 qubits, 15 gates, with copy, erase
/// and prep gates): every output amplitude and the answer probability
/// against the dense state-vector simulator.
pub fn circuits_suite(opts: &VerifyOptions) -> Result<SuiteReport> {
    let mut r = rng(opts.seed ^ 0xC1C);
    let mut report = SuiteReport::new("circuits");
    for case in 0..opts.cases.unwrap_or(120) {
        let q = random_operator_circuit(&mut r, CircuitConfig::default());
        let dense = dense_apply(&q)?;
        let p_ref = prob_answer_zero_dense(&q)?;
        let sut = if opts.inject_fault {
            let g = &q.gates()[0].gate;
            let mut m = g.matrix().to_vec();
            m[0] += C64::new(0.5, 0.0);
            q.with_gate_replaced(0, LinearGate::new(g.arity_in(), g.arity_out(), m)?)?
        } else {
            q.clone()
        };
        let b = choose_bubbling(&sut, &BubblingStrategy::Auto)?;
        for y in 0..1usize << q.num_outputs() {
            let bits = index_to_bits(y, q.num_outputs());
            let (a, _) = amplitude_with(&sut, &bits, &b, ContractOptions::default())?;
            report.deviation(|| format!("case {case} y {y}"), (a - dense.amplitude(&bits)).norm(), opts.tolerance);
        }
        let p = prob_answer_zero(&sut, &q_prime_bubbling(&sut, &b)?)?;
        report.deviation(|| format!("case {case} p0"), (p.p0 - p_ref).abs().max(p.imag.abs()), opts.tolerance);
        report.cases += 1;
    }
    Ok(report)
}

/// Built QFT at `k = n` against the DFT matrix, every input, `n <= max_n`;
/// also checks that every outcome has probability `2^-n`.
pub fn qft_exact_suite(opts: &VerifyOptions, max_n: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("qft-exact");
    for n in 1..=max_n {
        let p = QftParams::with_k(n, n)?;
        let dft = dft_matrix(n)?;
        let dim = 1usize << n;
        let uniform = 1.0 / dim as f64;
        for x in 0..dim {
            let bits = index_to_bits(x, n);
            let out = sparse_apply(&build_approx_qft(&p, &bits)?)?.to_dense();
            for (y, a) in out.amplitudes().iter().enumerate() {
                let dev = (a - dft[y * dim + x]).norm().max((a.norm_sqr() - uniform).abs());
                report.deviation(|| format!("n {n} x {x} y {y}"), dev, opts.tolerance);
            }
            report.deviation(|| format!("n {n} x {x} norm"), (out.norm_sqr() - 1.0).abs(), opts.tolerance);
            report.cases += 1;
        }
    }
    Ok(report)
}

/// Fidelity of the truncated transform at `n = 8` for every input: the
/// epsilon-derived precisions must reach `1 - eps`, and each explicit
/// precision must reach the analytic truncation bound.
pub fn qft_fidelity_suite(opts: &VerifyOptions) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("qft-fidelity");
    let n = 8;
    let mut params = Vec::new();
    for eps in [0.1, 0.01] {
        params.push((QftParams::from_epsilon(n, eps)?, 1.0 - eps));
    }
    for k in 2..n {
        let p = QftParams::with_k(n, k)?;
        params.push((p, p.fidelity_lower_bound() - opts.tolerance));
    }
    for (p, floor) in params {
        let mut worst = f64::INFINITY;
        for x in 0..1usize << n {
            let f = fidelity(&p, x)?;
            worst = worst.min(f);
            if f < floor {
                report.fail(format!("k {} x {x}: fidelity {f:.6} < {floor:.6}", p.k));
            }
            report.cases += 1;
        }
        let label = match p.epsilon {
            Some(e) => format!("min_fidelity[eps={e},k={}]", p.k),
            None => format!("min_fidelity[k={}]", p.k),
        };
        report.note(&label, format!("{worst:.6}"));
    }
    Ok(report)
}

/// All connected graphs on `2..=max_n` vertices with degree at most
/// `max_degree`, one labeling per isomorphism class at least (vertex
/// degrees are required to be non-increasing in the label).
pub fn connected_graphs(max_n: usize, max_degree: usize) -> Vec<CircuitGraph> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        for mask in 0u64..1 << pairs.len() {
            let mut deg = vec![0; n];
            for (i, &(u, v)) in pairs.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    deg[u] += 1;
                    deg[v] += 1;
                }
            }
            if deg.iter().any(|&d| d > max_degree || d == 0) || deg.windows(2).any(|w| w[0] < w[1]) {
                continue;
            }
            let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
            let g = CircuitGraph::new(n, edges).expect("simple graph");
            if g.is_connected() {
                out.push(g);
            }
        }
    }
    out
}

/// `PW / 2 <= BW <= d * PW` on every small connected graph, with exact
/// solvers on both sides (`PW` counted as the largest bag size).
pub fn width_sandwich_suite(max_n: usize, max_degree: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("widths");
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for g in connected_graphs(max_n, max_degree) {
        let (bw, _) = exact_bubble_width(&g)?;
        let (pw, _) = exact_path_width(&g)?;
        let d = g.max_degree();
        if 2 * bw < pw || bw > d * pw {
            report.fail(format!("{} vertices {:?}: bw {bw} pw {pw} d {d}", g.num_vertices(), g.edges()));
        }
        lo = lo.min(bw as f64 / pw as f64);
        hi = hi.max(bw as f64 / (d * pw) as f64);
        report.cases += 1;
    }
    report.note("min_bw_over_pw", format!("{lo:.3}"));
    report.note("max_bw_over_d_pw", format!("{hi:.3}"));
    Ok(report)
}

/// Layered width of the QFT circuit at `eps = 0.01` for `n` from 4 to 64.
pub fn qft_widths_suite() -> Result<SuiteReport> {
    let mut report = SuiteReport::new("qft-widths");
    let rows = qft_width_report(&[4, 8, 16, 32, 64], 0.01)?;
    let mut worst_c = 0.0f64;
    for row in &rows {
        if row.layered_width > 4 * row.k * row.k {
            report.fail(format!("n {}: width {} > 4k^2 = {}", row.n, row.layered_width, 4 * row.k * row.k));
        }
        worst_c = worst_c.max(row.constant());
        report.note(&format!("width[n={}]", row.n), row.layered_width);
        report.cases += 1;
    }
    let w = |n: usize| rows.iter().find(|r| r.n == n).map(|r| r.layered_width).unwrap_or(0);
    if w(64) >= 8 * w(8) {
        report.fail(format!("width(64) = {} is not below 8 * width(8) = {}", w(64), 8 * w(8)));
    }
    report.note("max_width_over_k2", format!("{worst_c:.3}"));
    Ok(report)
}

/// `log2(ops)` against width on the ladder family should have slope 1.
pub fn ladder_suite(opts: &VerifyOptions) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("ladder");
    let rails: Vec<usize> = (4..=18).collect();
    let points = ladder_sweep(&rails, 60, opts.seed)?;
    let slope = ops_slope(&points);
    report.cases = points.len();
    report.note("slope", format!("{slope:.4}"));
    if (slope - 1.0).abs() > 0.2 {
        report.fail(format!("slope {slope:.4} outside 1.0 +- 0.2"));
    }
    Ok(report)
}

/// Lifting an optimal bubbling of `G_Q` to `G_{Q'}`: the lifted width must
/// be at most `2 BW + 1 + maxdeg`. Reports the largest `width - 2 BW`.
pub fn lift_suite(opts: &VerifyOptions) -> Result<SuiteReport> {
    let mut r = rng(opts.seed ^ 0x11F7);
    let mut report = SuiteReport::new("lift");
    let cfg = CircuitConfig {
        max_qubits: 4,
        max_gates: 10,
        non_unitary: true,
    };
    let mut tightest = i64::MIN;
    for case in 0..opts.cases.unwrap_or(100) {
        let q = random_operator_circuit(&mut r, cfg);
        let g = circuit_graph(&q);
        let (bw, best) = exact_bubble_width(&g)?;
        let lifted = q_prime_bubbling(&q, &best)?;
        let gp = circuit_graph(&crate::circuit::build_q_prime(&q)?);
        let w = lifted.width(&gp)?;
        let bound = 2 * bw + 1 + g.max_degree();
        if w > bound {
            report.fail(format!("case {case}: lifted width {w} > 2*{bw} + 1 + {}", g.max_degree()));
        }
        tightest = tightest.max(w as i64 - 2 * bw as i64);
        report.cases += 1;
    }
    report.note("max_lifted_minus_2bw", tightest);
    Ok(report)
}

/// The `n = 6, k = 6` QFT by contraction along its layered bubbling against
/// the sparse simulator and the DFT matrix, on random `(x, y)` pairs.
pub fn qft_contract_suite(opts: &VerifyOptions) -> Result<SuiteReport> {
    let mut r = rng(opts.seed ^ 0x0F7);
    let mut report = SuiteReport::new("qft-contract");
    let n = 6;
    let p = QftParams::with_k(n, n)?;
    let dft = dft_matrix(n)?;
    let tol = opts.tolerance.max(1e-8);
    let mut peak = 0;
    let mut width = 0;
    for case in 0..opts.cases.unwrap_or(20) {
        let (x, y) = (r.gen_range(0..1usize << n), r.gen_range(0..1usize << n));
        let q = build_approx_qft(&p, &index_to_bits(x, n))?;
        let b = layered_bubbling(&q)?;
        width = b.width(&circuit_graph(&q))?;
        let ybits = index_to_bits(y, n);
        let (a, stats) = amplitude_with(&q, &ybits, &b, ContractOptions::default())?;
        let oracle = sparse_apply(&q)?.amplitude(&ybits);
        let dev = (a - oracle).norm().max((a - dft[(y << n) + x]).norm());
        report.deviation(|| format!("case {case} x {x} y {y}"), dev, tol);
        if stats.peak_width > width {
            report.fail(format!("case {case}: frontier {} exceeds layered width {width}", stats.peak_width));
        }
        peak = peak.max(stats.peak_width);
        report.cases += 1;
    }
    report.note("layered_width", width);
    report.note("peak_frontier", peak);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> VerifyOptions {
        VerifyOptions {
            cases: Some(10),
            ..VerifyOptions::default()
        }
    }

    #[test]
    fn small_suites_pass() {
        for name in ["tensor", "circuits", "lift", "qft-contract"] {
            let r = run_suite(name, &quick()).unwrap();
            assert!(r.passed(), "{r}: {:?}", r.failures);
            assert_eq!(r.cases, 10);
        }
        let r = qft_exact_suite(&quick(), 4).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        let r = width_sandwich_suite(5, 4).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
    }

    #[test]
    fn injected_faults_are_caught() {
        let opts = VerifyOptions {
            inject_fault: true,
            ..quick()
        };
        assert!(!run_suite("tensor", &opts).unwrap().passed());
        assert!(!run_suite("circuits", &opts).unwrap().passed());
    }

    #[test]
    fn unknown_suite() {
        assert!(run_suite("nope", &quick()).is_err());
    }

    #[test]
    fn graph_enumeration_counts() {
        // connected graphs on 3 vertices: the path and the triangle
        let three: Vec<_> = connected_graphs(3, 4).into_iter().filter(|g| g.num_vertices() == 3).collect();
        let mut sizes: Vec<usize> = three.iter().map(|g| g.num_edges()).collect();
        sizes.sort_unstable();
        sizes.dedup();
        assert_eq!(sizes, vec![2, 3]);
    }
}
