//! Exact bubble width (cutwidth) and path width by dynamic programming over
//! vertex subsets.
//!
//! The cost of a prefix `S_i` depends only on the set, not on its internal
//! order, so the best width of an order that starts with exactly the set `S`
//! is `max(cost(S), min_{v in S} best(S - v))`.

use super::{Bubbling, CircuitGraph};
use crate::error::{Error, Result};

/// Default vertex cap for the exact solvers (`2^20` subsets).
pub const EXACT_VERTEX_CAP: usize = 20;

const HARD_CAP: usize = 28;

/// Minimum width over all bubblings, with a witnessing order.
pub fn exact_bubble_width(g: &CircuitGraph) -> Result<(usize, Bubbling)> {
    exact_bubble_width_capped(g, EXACT_VERTEX_CAP)
}

pub fn exact_bubble_width_capped(g: &CircuitGraph, cap: usize) -> Result<(usize, Bubbling)> {
    let n = check_cap(g, cap)?;
    let mut cut = vec![0u32; 1 << n];
    for s in 1usize..1 << n {
        let v = s.trailing_zeros() as usize;
        let rest = s & (s - 1);
        let back = g
            .incident(v)
            .iter()
            .filter(|&&e| rest >> g.other_end(e, v) & 1 == 1)
            .count() as u32;
        cut[s] = cut[rest] + g.degree(v) as u32 - 2 * back;
    }
    let (w, order) = min_max_order(n, &cut);
    Ok((w as usize, Bubbling::new(order)))
}

/// Exact path width in the bag-size convention (the width of a path
/// decomposition is its largest bag), with the vertex order realizing it.
///
/// Uses the identity `pathwidth = vertex separation number`: for an order,
/// the prefix cost is the number of prefix vertices with a neighbour outside
/// the prefix, and the largest bag of the induced decomposition is one more
/// than that. Graphs with no vertices have width 0.
pub fn exact_path_width(g: &CircuitGraph) -> Result<(usize, Bubbling)> {
    exact_path_width_capped(g, EXACT_VERTEX_CAP)
}

pub fn exact_path_width_capped(g: &CircuitGraph, cap: usize) -> Result<(usize, Bubbling)> {
    let n = check_cap(g, cap)?;
    if n == 0 {
        return Ok((0, Bubbling::new(Vec::new())));
    }
    let nbr: Vec<usize> = (0..n)
        .map(|v| {
            g.incident(v)
                .iter()
                .fold(0usize, |m, &e| m | 1 << g.other_end(e, v))
        })
        .collect();
    let mut boundary = vec![0u32; 1 << n];
    for (s, b) in boundary.iter_mut().enumerate().skip(1) {
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if nbr[v] & !s != 0 {
                *b += 1;
            }
        }
    }
    let (vsn, order) = min_max_order(n, &boundary);
    Ok((vsn as usize + 1, Bubbling::new(order)))
}

fn check_cap(g: &CircuitGraph, cap: usize) -> Result<usize> {
    let n = g.num_vertices();
    let cap = cap.min(HARD_CAP);
    if n > cap {
        return Err(Error::CapExceeded {
            what: "vertices for exact width",
            got: n,
            cap,
        });
    }
    Ok(n)
}

/// Minimises `max_i cost(S_i)` over vertex orders; returns the optimum and an
/// order achieving it (smallest vertex id preferred at each backtrack step).
fn min_max_order(n: usize, cost: &[u32]) -> (u32, Vec<usize>) {
    let full = (1usize << n) - 1;
    let mut best = vec![u32::MAX; 1 << n];
    best[0] = 0;
    for s in 1..=full {
        let mut m = u32::MAX;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros();
            rest &= rest - 1;
            m = m.min(best[s & !(1 << v)]);
        }
        best[s] = m.max(cost[s]);
    }

    let mut order = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        // pick the last vertex of an optimal order for s
        let v = (0..n)
            .filter(|&v| s >> v & 1 == 1)
            .min_by_key(|&v| (best[s & !(1 << v)], v))
            .expect("nonempty set");
        order.push(v);
        s &= !(1 << v);
    }
    order.reverse();
    (best[full], order)
}
