//! Frontier contraction along a bubbling.
//!
//! After swallowing `b_1..b_i` the state `psi_i` is a vector over the edges
//! `z_i` crossing the bubble. Swallowing `v` splits its edges into `E1`
//! (already on the frontier) and `E2` (new), and applies the map
//! `m_v^{E1,E2}` to the `E1` slots, tensored with the identity on the rest.
//! The last state is a scalar: the value of the tensor circuit.

use super::{Tensor, TensorCircuit};
use crate::error::{Error, Result};
use crate::graph::{Bubbling, EdgeId};
use crate::C64;

/// Default frontier cap: `2^26` amplitudes, about 1 GiB.
pub const DEFAULT_WIDTH_CAP: usize = 26;

#[derive(Clone, Copy, Debug)]
pub struct ContractOptions {
    pub max_width: usize,
}

impl Default for ContractOptions {
    fn default() -> Self {
        Self {
            max_width: DEFAULT_WIDTH_CAP,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ContractStats {
    /// Largest number of frontier edges held at once.
    pub peak_width: usize,
    /// Complex multiply-adds performed.
    pub ops: u64,
    pub steps: usize,
}

/// The partial contraction `psi_i`: amplitudes over the live edges, kept in
/// ascending edge order. The first edge is the most significant index bit.
#[derive(Clone, Debug, PartialEq)]
pub struct FrontierState {
    edges: Vec<EdgeId>,
    amplitudes: Vec<C64>,
}

impl Default for FrontierState {
    fn default() -> Self {
        Self::new()
    }
}

impl FrontierState {
    /// The empty frontier holding the scalar 1.
    pub fn new() -> Self {
        Self {
            edges: Vec::new(),
            amplitudes: vec![C64::new(1.0, 0.0)],
        }
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn width(&self) -> usize {
        self.edges.len()
    }

    /// The scalar left once no edge crosses the bubble.
    pub fn scalar(&self) -> Option<C64> {
        self.edges.is_empty().then(|| self.amplitudes[0])
    }

    /// Swallows one vertex; returns the number of multiply-adds spent.
    pub fn absorb(&mut self, tensor: &Tensor) -> u64 {
        let old_w = self.edges.len();
        let deg = tensor.degree();

        // tensor position of every frontier / new edge
        let mut e1: Vec<(EdgeId, usize)> = Vec::new();
        let mut e2: Vec<(EdgeId, usize)> = Vec::new();
        for (p, &e) in tensor.edges().iter().enumerate() {
            if self.edges.binary_search(&e).is_ok() {
                e1.push((e, p));
            } else {
                e2.push((e, p));
            }
        }
        e1.sort_unstable();
        e2.sort_unstable();

        let mut new_edges: Vec<EdgeId> = self
            .edges
            .iter()
            .copied()
            .filter(|e| e1.binary_search_by_key(e, |&(x, _)| x).is_err())
            .chain(e2.iter().map(|&(e, _)| e))
            .collect();
        new_edges.sort_unstable();
        let new_w = new_edges.len();

        let slot_bit = |edges: &[EdgeId], w: usize, e: EdgeId| -> usize {
            let s = edges.binary_search(&e).expect("edge on frontier");
            1 << (w - 1 - s)
        };
        // value of the listed edges scattered into an index space
        let scatter = |count: usize, bit_of: &dyn Fn(usize) -> usize| -> Vec<usize> {
            (0..1usize << count)
                .map(|v| {
                    (0..count)
                        .filter(|i| (v >> (count - 1 - i)) & 1 == 1)
                        .map(bit_of)
                        .sum()
                })
                .collect()
        };
        let old_off = scatter(e1.len(), &|i| slot_bit(&self.edges, old_w, e1[i].0));
        let new_off = scatter(e2.len(), &|i| slot_bit(&new_edges, new_w, e2[i].0));
        let t_e1 = scatter(e1.len(), &|i| 1 << (deg - 1 - e1[i].1));
        let t_e2 = scatter(e2.len(), &|i| 1 << (deg - 1 - e2[i].1));

        let (na, nc) = (old_off.len(), new_off.len());
        let entries = tensor.entries();
        let mut mat = Vec::with_capacity(na * nc);
        for &tc in &t_e2 {
            for &ta in &t_e1 {
                mat.push(entries[tc + ta]);
            }
        }

        let old_rest: usize = (0..old_w).map(|s| 1usize << (old_w - 1 - s)).sum::<usize>()
            - old_off.last().copied().unwrap_or(0);
        let new_rest: usize = (0..new_w).map(|s| 1usize << (new_w - 1 - s)).sum::<usize>()
            - new_off.last().copied().unwrap_or(0);

        let mut next = vec![C64::new(0.0, 0.0); 1 << new_w];
        let (mut ro, mut rn) = (0usize, 0usize);
        let mut blocks = 0u64;
        loop {
            for (c, &noff) in new_off.iter().enumerate() {
                let row = &mat[c * na..(c + 1) * na];
                let mut acc = C64::new(0.0, 0.0);
                for (m, &ooff) in row.iter().zip(&old_off) {
                    acc += m * self.amplitudes[ro + ooff];
                }
                next[rn + noff] = acc;
            }
            blocks += 1;
            // next subset of the rest slots, same rank in both index spaces
            ro = (ro | !old_rest).wrapping_add(1) & old_rest;
            rn = (rn | !new_rest).wrapping_add(1) & new_rest;
            if ro == 0 {
                debug_assert_eq!(rn, 0);
                break;
            }
        }

        self.edges = new_edges;
        self.amplitudes = next;
        blocks * (na * nc) as u64
    }
}

/// Value of the tensor circuit by frontier contraction along `b`.
pub fn contract(t: &TensorCircuit, b: &Bubbling) -> Result<C64> {
    contract_with(t, b, ContractOptions::default()).map(|(v, _)| v)
}

pub fn contract_with(t: &TensorCircuit, b: &Bubbling, opts: ContractOptions) -> Result<(C64, ContractStats)> {
    let width = b.width(t.graph())?;
    if width > opts.max_width {
        return Err(Error::WidthCapExceeded {
            width,
            cap: opts.max_width,
        });
    }
    let mut state = FrontierState::new();
    let mut stats = ContractStats::default();
    for &v in b.order() {
        stats.ops += state.absorb(t.tensor(v));
        assert!(state.width() <= width, "frontier exceeded the bubbling width");
        stats.peak_width = stats.peak_width.max(state.width());
        stats.steps += 1;
    }
    let value = state.scalar().expect("all edges are closed after the last vertex");
    Ok((value, stats))
}
