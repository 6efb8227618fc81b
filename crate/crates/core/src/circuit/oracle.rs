//! Brute-force simulators used as ground truth.
//!
//! [`dense_apply`] keeps a full vector over the live wires and applies every
//! gate as `gate (x) identity`. [`sparse_apply`] does the same on a map from
//! basis strings to amplitudes, which stays small for circuits whose wires
//! mostly carry classical copies (the Fourier transform builder produces
//! hundreds of such wires).

use std::collections::{BTreeMap, HashMap};

use super::operator::{OperatorCircuit, WireId};
use crate::error::{Error, Result};
use crate::C64;

/// Default cap on simultaneously live wires for [`dense_apply`].
pub const DENSE_WIRE_CAP: usize = 20;

/// Default cap on stored basis terms for [`sparse_apply`].
pub const SPARSE_TERM_CAP: usize = 1 << 22;

/// A (not necessarily normalized) vector over an ordered list of wires. The
/// first wire is the most significant bit of the index.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    wires: Vec<WireId>,
    amplitudes: Vec<C64>,
}

impl StateVector {
    pub fn new(wires: Vec<WireId>, amplitudes: Vec<C64>) -> Result<Self> {
        if amplitudes.len() != 1usize << wires.len() {
            return Err(Error::BitLength {
                expected: 1 << wires.len(),
                got: amplitudes.len(),
            });
        }
        Ok(Self { wires, amplitudes })
    }

    pub fn basis(wires: Vec<WireId>, bits: &[bool]) -> Self {
        assert_eq!(wires.len(), bits.len());
        let mut amplitudes = vec![C64::new(0.0, 0.0); 1 << wires.len()];
        amplitudes[bits_to_index(bits)] = C64::new(1.0, 0.0);
        Self { wires, amplitudes }
    }

    pub fn wires(&self) -> &[WireId] {
        &self.wires
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, bits: &[bool]) -> C64 {
        assert_eq!(bits.len(), self.wires.len());
        self.amplitudes[bits_to_index(bits)]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `||P_0 psi||^2` for the wire at `position`.
    pub fn prob_zero_at(&self, position: usize) -> f64 {
        let shift = self.wires.len() - 1 - position;
        self.amplitudes
            .iter()
            .enumerate()
            .filter(|(i, _)| (i >> shift) & 1 == 0)
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }
}

pub fn bits_to_index(bits: &[bool]) -> usize {
    bits.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
}

pub fn index_to_bits(index: usize, len: usize) -> Vec<bool> {
    (0..len).rev().map(|s| (index >> s) & 1 == 1).collect()
}

/// Parses a string of `0`/`1` characters.
pub fn parse_bits(s: &str) -> Result<Vec<bool>> {
    s.trim()
        .chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(Error::Parse(format!("'{other}' is not a bit"))),
        })
        .collect()
}

pub fn format_bits(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// Runs the circuit on its basis input and returns the state over
/// `q.outputs()`.
pub fn dense_apply(q: &OperatorCircuit) -> Result<StateVector> {
    dense_apply_capped(q, DENSE_WIRE_CAP)
}

pub fn dense_apply_capped(q: &OperatorCircuit, cap: usize) -> Result<StateVector> {
    let initial = StateVector::basis((0..q.num_inputs()).collect(), q.input_bits());
    dense_apply_from(q, &initial, cap)
}

/// Runs the circuit on an arbitrary vector over its input wires (listed as
/// `0..num_inputs` in order); the circuit's own input bits are ignored.
pub fn dense_apply_from(q: &OperatorCircuit, initial: &StateVector, cap: usize) -> Result<StateVector> {
    q.validate()?;
    if initial.wires != (0..q.num_inputs()).collect::<Vec<_>>() {
        return Err(Error::BitLength {
            expected: q.num_inputs(),
            got: initial.wires.len(),
        });
    }
    let peak = q.peak_live_wires();
    if peak > cap {
        return Err(Error::CapExceeded {
            what: "live wires",
            got: peak,
            cap,
        });
    }

    let mut wires = initial.wires.clone();
    let mut amps = initial.amplitudes.clone();
    for g in q.gates() {
        let w = wires.len();
        let in_pos: Vec<usize> = g
            .inputs
            .iter()
            .map(|x| wires.iter().position(|y| y == x).expect("validated"))
            .collect();
        let rest_pos: Vec<usize> = (0..w).filter(|p| !in_pos.contains(p)).collect();
        let (m, o, r) = (g.inputs.len(), g.outputs.len(), rest_pos.len());

        let scatter = |positions: &[usize], value: usize| -> usize {
            let k = positions.len();
            positions
                .iter()
                .enumerate()
                .map(|(i, &p)| ((value >> (k - 1 - i)) & 1) << (w - 1 - p))
                .sum()
        };
        let in_off: Vec<usize> = (0..1 << m).map(|v| scatter(&in_pos, v)).collect();
        let rest_off: Vec<usize> = (0..1 << r).map(|v| scatter(&rest_pos, v)).collect();

        let mut next = vec![C64::new(0.0, 0.0); 1 << (r + o)];
        for (rb, &base) in rest_off.iter().enumerate() {
            for ob in 0..1 << o {
                let mut acc = C64::new(0.0, 0.0);
                for (ib, &off) in in_off.iter().enumerate() {
                    acc += g.gate.entry(ob, ib) * amps[base + off];
                }
                next[(rb << o) | ob] = acc;
            }
        }
        wires = rest_pos.iter().map(|&p| wires[p]).chain(g.outputs.iter().copied()).collect();
        amps = next;
    }

    // reorder to the circuit's output order
    let w = wires.len();
    let perm: Vec<usize> = q
        .outputs()
        .iter()
        .map(|x| wires.iter().position(|y| y == x).expect("validated"))
        .collect();
    let mut out = vec![C64::new(0.0, 0.0); amps.len()];
    for (i, a) in amps.iter().enumerate() {
        let j = perm
            .iter()
            .enumerate()
            .map(|(k, &p)| ((i >> (w - 1 - p)) & 1) << (w - 1 - k))
            .sum::<usize>();
        out[j] = *a;
    }
    StateVector::new(q.outputs().to_vec(), out)
}

/// `||Q(x)_0||^2`: the squared norm of the output projected onto answer = 0.
pub fn prob_answer_zero_dense(q: &OperatorCircuit) -> Result<f64> {
    let pos = answer_position(q)?;
    Ok(dense_apply(q)?.prob_zero_at(pos))
}

fn answer_position(q: &OperatorCircuit) -> Result<usize> {
    q.answer_index().ok_or(Error::MissingAnswerWire)
}

/// Output state as a map from output basis strings to nonzero amplitudes.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseState {
    wires: Vec<WireId>,
    terms: BTreeMap<Vec<bool>, C64>,
}

impl SparseState {
    pub fn wires(&self) -> &[WireId] {
        &self.wires
    }

    pub fn terms(&self) -> &BTreeMap<Vec<bool>, C64> {
        &self.terms
    }

    pub fn amplitude(&self, bits: &[bool]) -> C64 {
        self.terms.get(bits).copied().unwrap_or_default()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.terms.values().map(|a| a.norm_sqr()).sum()
    }

    pub fn prob_zero_at(&self, position: usize) -> f64 {
        self.terms
            .iter()
            .filter(|(k, _)| !k[position])
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }

    /// Dense vector over the output wires; only sensible for few outputs.
    pub fn to_dense(&self) -> StateVector {
        let mut amps = vec![C64::new(0.0, 0.0); 1 << self.wires.len()];
        for (k, a) in &self.terms {
            amps[bits_to_index(k)] = *a;
        }
        StateVector {
            wires: self.wires.clone(),
            amplitudes: amps,
        }
    }
}

/// Same semantics as [`dense_apply`], storing only nonzero basis terms.
pub fn sparse_apply(q: &OperatorCircuit) -> Result<SparseState> {
    sparse_apply_capped(q, SPARSE_TERM_CAP)
}

pub fn sparse_apply_capped(q: &OperatorCircuit, max_terms: usize) -> Result<SparseState> {
    q.validate()?;
    let slots = q.peak_live_wires().max(1);
    let words = slots.div_ceil(64);

    let mut slot_of: HashMap<WireId, usize> = HashMap::new();
    let mut free: Vec<usize> = (0..slots).rev().collect();
    let mut key = vec![0u64; words];
    for (w, &b) in q.input_bits().iter().enumerate() {
        let s = free.pop().expect("enough slots");
        slot_of.insert(w, s);
        set_bit(&mut key, s, b);
    }
    let mut terms: HashMap<Vec<u64>, C64> = HashMap::new();
    terms.insert(key, C64::new(1.0, 0.0));

    for g in q.gates() {
        let in_slots: Vec<usize> = g.inputs.iter().map(|w| slot_of.remove(w).expect("validated")).collect();
        free.extend(in_slots.iter().rev());
        let out_slots: Vec<usize> = g
            .outputs
            .iter()
            .map(|&w| {
                let s = free.pop().expect("enough slots");
                slot_of.insert(w, s);
                s
            })
            .collect();

        let mut next: HashMap<Vec<u64>, C64> = HashMap::with_capacity(terms.len());
        for (mut k, amp) in terms {
            let col = in_slots
                .iter()
                .fold(0usize, |acc, &s| (acc << 1) | get_bit(&k, s) as usize);
            for &s in &in_slots {
                set_bit(&mut k, s, false);
            }
            for row in 0..g.gate.rows() {
                let coeff = g.gate.entry(row, col);
                if coeff == C64::new(0.0, 0.0) {
                    continue;
                }
                let mut nk = k.clone();
                let o = out_slots.len();
                for (i, &s) in out_slots.iter().enumerate() {
                    set_bit(&mut nk, s, (row >> (o - 1 - i)) & 1 == 1);
                }
                *next.entry(nk).or_default() += coeff * amp;
            }
        }
        next.retain(|_, a| *a != C64::new(0.0, 0.0));
        if next.len() > max_terms {
            return Err(Error::CapExceeded {
                what: "sparse state terms",
                got: next.len(),
                cap: max_terms,
            });
        }
        terms = next;
    }

    let out_slots: Vec<usize> = q.outputs().iter().map(|w| slot_of[w]).collect();
    let mut result = BTreeMap::new();
    for (k, a) in terms {
        let bits: Vec<bool> = out_slots.iter().map(|&s| get_bit(&k, s)).collect();
        *result.entry(bits).or_default() += a;
    }
    Ok(SparseState {
        wires: q.outputs().to_vec(),
        terms: result,
    })
}

fn get_bit(key: &[u64], slot: usize) -> bool {
    (key[slot / 64] >> (slot % 64)) & 1 == 1
}

fn set_bit(key: &mut [u64], slot: usize, value: bool) {
    let mask = 1u64 << (slot % 64);
    if value {
        key[slot / 64] |= mask;
    } else {
        key[slot / 64] &= !mask;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{build_q_prime, GateApp, LinearGate};
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn single(gate: LinearGate, label: &str, bit: bool) -> OperatorCircuit {
        OperatorCircuit::new(vec![bit], vec![GateApp::new(label, gate, vec![0], vec![1])], None, Some(1))
            .unwrap()
    }

    #[test]
    fn hadamard_column() {
        let s = dense_apply(&single(LinearGate::hadamard(), "H", false)).unwrap();
        assert_eq!(s.wires(), &[1]);
        for a in s.amplitudes() {
            assert!((a - c(FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
        }
        assert!((prob_answer_zero_dense(&single(LinearGate::hadamard(), "H", false)).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn identity_on_one_never_answers_zero() {
        let q = OperatorCircuit::new(vec![true], vec![], None, Some(0)).unwrap();
        assert_eq!(prob_answer_zero_dense(&q).unwrap(), 0.0);
    }

    #[test]
    fn erase_sums_amplitudes() {
        let q = OperatorCircuit::new(
            vec![false],
            vec![GateApp::new("ERASE", LinearGate::erase(), vec![0], vec![])],
            None,
            None,
        )
        .unwrap();
        let (alpha, beta) = (c(0.6, 0.1), c(-0.3, 0.5));
        let init = StateVector::new(vec![0], vec![alpha, beta]).unwrap();
        let out = dense_apply_from(&q, &init, 4).unwrap();
        assert!(out.wires().is_empty());
        assert_eq!(out.amplitudes(), &[alpha + beta]);
    }

    #[test]
    fn output_order_is_respected() {
        // |10> with outputs listed in reverse reads |01>
        let q = OperatorCircuit::new(vec![true, false], vec![], Some(vec![1, 0]), None).unwrap();
        let s = dense_apply(&q).unwrap();
        assert_eq!(s.amplitude(&[false, true]), c(1.0, 0.0));
        let sp = sparse_apply(&q).unwrap();
        assert_eq!(sp.amplitude(&[false, true]), c(1.0, 0.0));
        assert_eq!(sp.terms().len(), 1);
    }

    #[test]
    fn sparse_and_dense_agree_on_random_circuits() {
        let mut r = crate::random::rng(31);
        for _ in 0..50 {
            let q = crate::random::random_operator_circuit(&mut r, Default::default());
            let (d, sp) = (dense_apply(&q).unwrap(), sparse_apply(&q).unwrap().to_dense());
            for (a, b) in d.amplitudes().iter().zip(sp.amplitudes()) {
                assert!((a - b).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let q = OperatorCircuit::new(vec![false; 5], vec![], None, None).unwrap();
        assert!(matches!(
            dense_apply_capped(&q, 4),
            Err(Error::CapExceeded { got: 5, cap: 4, .. })
        ));
    }

    #[test]
    fn q_prime_identity_wire() {
        let q = OperatorCircuit::new(vec![false], vec![], None, Some(0)).unwrap();
        let qp = build_q_prime(&q).unwrap();
        let s = dense_apply(&qp).unwrap();
        assert!((s.amplitude(&[false]) - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn bit_helpers() {
        assert_eq!(parse_bits("0110").unwrap(), vec![false, true, true, false]);
        assert!(parse_bits("01x").is_err());
        assert_eq!(bits_to_index(&[true, false, true]), 5);
        assert_eq!(index_to_bits(5, 4), vec![false, true, false, true]);
        assert_eq!(format_bits(&index_to_bits(9, 4)), "1001");
    }
}
