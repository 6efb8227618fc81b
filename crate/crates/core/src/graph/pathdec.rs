use super::{Bubbling, CircuitGraph, VertexId};
use crate::error::{Error, Result};

/// A sequence of vertex bags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathDecomposition {
    bags: Vec<Vec<VertexId>>,
}

impl PathDecomposition {
    /// Bags are stored sorted and deduplicated.
    pub fn new(bags: Vec<Vec<VertexId>>) -> Self {
        let bags = bags
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        Self { bags }
    }

    pub fn bags(&self) -> &[Vec<VertexId>] {
        &self.bags
    }

    /// Largest bag size.
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Checks that every edge lies in some bag and that each vertex occupies
    /// a contiguous run of bags.
    pub fn validate(&self, g: &CircuitGraph) -> Result<()> {
        let n = g.num_vertices();
        let mut first = vec![usize::MAX; n];
        let mut last = vec![0usize; n];
        let mut count = vec![0usize; n];
        for (i, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                if v >= n {
                    return Err(Error::InvalidPathDecomposition(format!(
                        "bag {i} holds unknown vertex {v}"
                    )));
                }
                first[v] = first[v].min(i);
                last[v] = i;
                count[v] += 1;
            }
        }
        for v in 0..n {
            if count[v] > 0 && last[v] - first[v] + 1 != count[v] {
                return Err(Error::InvalidPathDecomposition(format!(
                    "vertex {v} appears in non-contiguous bags"
                )));
            }
        }
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            let covered = count[u] > 0
                && count[v] > 0
                && first[u].max(first[v]) <= last[u].min(last[v]);
            if !covered {
                return Err(Error::InvalidPathDecomposition(format!(
                    "edge {e} ({u}, {v}) is in no bag"
                )));
            }
        }
        Ok(())
    }
}

/// Bag `i` holds the endpoints of the edges crossing the `i`-th cut; empty
/// bags are dropped. Largest bag is at most twice the bubbling's width.
pub fn path_decomposition_from_bubbling(g: &CircuitGraph, b: &Bubbling) -> Result<PathDecomposition> {
    let bags = b
        .cut_profile(g)?
        .into_iter()
        .filter(|z| !z.is_empty())
        .map(|z| {
            z.into_iter()
                .flat_map(|e| {
                    let (u, v) = g.edge(e);
                    [u, v]
                })
                .collect()
        })
        .collect();
    Ok(PathDecomposition::new(bags))
}

/// Lists vertices by the first bag containing them (ascending id within a
/// bag); vertices in no bag come last. The width is at most
/// `max_degree * (largest bag)`.
pub fn bubbling_from_path_decomposition(g: &CircuitGraph, p: &PathDecomposition) -> Result<Bubbling> {
    p.validate(g)?;
    let n = g.num_vertices();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for bag in p.bags() {
        for &v in bag {
            if !std::mem::replace(&mut placed[v], true) {
                order.push(v);
            }
        }
    }
    order.extend((0..n).filter(|&v| !placed[v]));
    Ok(Bubbling::new(order))
}
