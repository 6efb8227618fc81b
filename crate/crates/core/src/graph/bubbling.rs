use std::collections::BTreeSet;
use std::fmt;

use super::{circuit_graph, CircuitGraph, CircuitIndex, EdgeId, VertexId};
use crate::circuit::OperatorCircuit;
use crate::error::{Error, Result};

/// A linear order `b_1, ..., b_n` of the vertices of a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bubbling {
    order: Vec<VertexId>,
}

impl Bubbling {
    pub fn new(order: Vec<VertexId>) -> Self {
        Self { order }
    }

    /// The identity order `0, 1, ..., n-1`.
    pub fn natural(n: usize) -> Self {
        Self::new((0..n).collect())
    }

    pub fn order(&self) -> &[VertexId] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Errors unless the order is a bijection onto the graph's vertices.
    pub fn check(&self, g: &CircuitGraph) -> Result<()> {
        let n = g.num_vertices();
        let fail = |reason: String| Error::InvalidBubbling { vertices: n, reason };
        if self.order.len() != n {
            return Err(fail(format!("order has {} entries", self.order.len())));
        }
        let mut seen = vec![false; n];
        for &v in &self.order {
            if v >= n {
                return Err(fail(format!("vertex {v} does not exist")));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(fail(format!("vertex {v} appears twice")));
            }
        }
        Ok(())
    }

    /// `|z_i|` for `i = 1..=n`, maintained incrementally: swallowing `b_i`
    /// adds its degree and removes twice its edges back into the bubble.
    pub fn cut_sizes(&self, g: &CircuitGraph) -> Result<Vec<usize>> {
        self.check(g)?;
        let mut inside = vec![false; g.num_vertices()];
        let mut size = 0usize;
        let mut sizes = Vec::with_capacity(self.order.len());
        for &v in &self.order {
            let back = g
                .incident(v)
                .iter()
                .filter(|&&e| inside[g.other_end(e, v)])
                .count();
            size = size + g.degree(v) - 2 * back;
            inside[v] = true;
            sizes.push(size);
        }
        Ok(sizes)
    }

    /// The cut sets `z_1, ..., z_n`, each sorted by edge id.
    pub fn cut_profile(&self, g: &CircuitGraph) -> Result<Vec<Vec<EdgeId>>> {
        self.check(g)?;
        let mut cut = BTreeSet::new();
        let mut profile = Vec::with_capacity(self.order.len());
        for &v in &self.order {
            for &e in g.incident(v) {
                if !cut.remove(&e) {
                    cut.insert(e);
                }
            }
            profile.push(cut.iter().copied().collect());
        }
        Ok(profile)
    }

    pub fn width(&self, g: &CircuitGraph) -> Result<usize> {
        Ok(self.cut_sizes(g)?.into_iter().max().unwrap_or(0))
    }

    /// Position of every vertex in the order.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (i, &v) in self.order.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }

    /// Parses a single line of whitespace-separated vertex ids.
    pub fn parse(text: &str) -> Result<Self> {
        text.split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|_| Error::Parse(format!("'{t}' is not a vertex id")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }
}

impl fmt::Display for Bubbling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.order.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// `max_i |z_i(B)|`, counting parallel edges separately.
pub fn bubbling_width(g: &CircuitGraph, b: &Bubbling) -> Result<usize> {
    b.width(g)
}

/// Cut sets recomputed independently for every prefix.
pub fn cut_profile_from_scratch(g: &CircuitGraph, b: &Bubbling) -> Vec<Vec<EdgeId>> {
    let n = g.num_vertices();
    (1..=n)
        .map(|i| {
            let mut inside = vec![false; n];
            for &v in &b.order()[..i] {
                inside[v] = true;
            }
            (0..g.num_edges())
                .filter(|&e| {
                    let (u, v) = g.edge(e);
                    inside[u] != inside[v]
                })
                .collect()
        })
        .collect()
}

/// Swallows, at every step, the vertex whose addition leaves the smallest cut
/// (lowest id on ties).
pub fn greedy_bubbling(g: &CircuitGraph) -> Bubbling {
    let n = g.num_vertices();
    let mut inside = vec![false; n];
    // edges from each outside vertex into the bubble
    let mut back = vec![0i64; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !inside[v])
            .min_by_key(|&v| (g.degree(v) as i64 - 2 * back[v], v))
            .expect("an outside vertex remains");
        inside[v] = true;
        order.push(v);
        for &e in g.incident(v) {
            back[g.other_end(e, v)] += 1;
        }
    }
    Bubbling::new(order)
}

/// Sweeps the circuit along its lanes: gates are swallowed in order of
/// `(lane, layer, index)`, each input terminal right before the gate that
/// consumes it and each output terminal right after the gate producing it.
/// Wires passing straight from input to output are handled first.
///
/// Two local rules keep the cut small. A fan-out gate (more outputs than
/// inputs, such as a copy or a prep) waits until some later gate needs one
/// of its outputs, or until the end of its lane if nothing in a later lane
/// does. A gate with no outputs (an erase, say) is swallowed as soon as the
/// last of its inputs has been produced.
///
/// Every gate must carry both a `layer` and a `lane` tag.
pub fn layered_bubbling(q: &OperatorCircuit) -> Result<Bubbling> {
    use std::collections::HashMap;

    let gates = q.gates();
    let mut keyed = Vec::with_capacity(gates.len());
    for (gi, g) in gates.iter().enumerate() {
        match (g.lane, g.layer) {
            (Some(lane), Some(layer)) => keyed.push((lane, layer, gi)),
            _ => return Err(Error::MissingLayers { gate: gi }),
        }
    }
    keyed.sort_unstable();

    let idx = CircuitIndex::new(q);
    let n_in = q.num_inputs();
    let out_pos: HashMap<_, _> = q.outputs().iter().enumerate().map(|(j, &w)| (w, j)).collect();
    let mut producer = HashMap::new();
    let mut consumer = HashMap::new();
    for (gi, g) in gates.iter().enumerate() {
        producer.extend(g.outputs.iter().map(|&w| (w, gi)));
        consumer.extend(g.inputs.iter().map(|&w| (w, gi)));
    }
    let lane = |gi: usize| gates[gi].lane.unwrap_or(0);
    let fans_out = |gi: usize| gates[gi].outputs.len() > gates[gi].inputs.len();
    let is_sink = |gi: usize| gates[gi].outputs.is_empty();
    // a deferred fan-out gate that no later lane is waiting for
    let flushable = |gi: usize| {
        gates[gi].outputs.iter().all(|w| match consumer.get(w) {
            Some(&c) => lane(c) <= lane(gi) || is_sink(c),
            None => true,
        })
    };

    let mut order = Vec::with_capacity(idx.num_vertices());
    for i in 0..n_in {
        if let Some(&j) = out_pos.get(&i) {
            order.push(idx.input_vertex(i));
            order.push(idx.output_vertex(j));
        }
    }

    let mut placed = vec![false; gates.len()];
    let mut produced: std::collections::HashSet<usize> = (0..n_in).collect();
    // places `root` after any unplaced producers, then eager sinks
    let mut place = |root: usize, order: &mut Vec<usize>| {
        let mut stack = vec![(root, false)];
        while let Some((gi, ready)) = stack.pop() {
            if placed[gi] {
                continue;
            }
            let g = &gates[gi];
            if !ready {
                stack.push((gi, true));
                for w in &g.inputs {
                    if let Some(&p) = producer.get(w) {
                        if !placed[p] {
                            stack.push((p, false));
                        }
                    }
                }
                continue;
            }
            placed[gi] = true;
            order.extend(g.inputs.iter().filter(|&&w| w < n_in).map(|&w| idx.input_vertex(w)));
            order.push(idx.gate_vertex(gi));
            order.extend(g.outputs.iter().filter_map(|w| out_pos.get(w)).map(|&j| idx.output_vertex(j)));
            produced.extend(g.outputs.iter().copied());
            for w in &g.outputs {
                if let Some(&c) = consumer.get(w) {
                    if is_sink(c) && gates[c].inputs.iter().all(|w| produced.contains(w)) {
                        stack.push((c, true));
                    }
                }
            }
        }
    };

    let mut deferred: Vec<usize> = Vec::new();
    let mut k = 0;
    while k < keyed.len() {
        let current = keyed[k].0;
        while k < keyed.len() && keyed[k].0 == current {
            let gi = keyed[k].2;
            k += 1;
            if fans_out(gi) {
                deferred.push(gi);
            } else {
                place(gi, &mut order);
            }
        }
        for gi in std::mem::take(&mut deferred) {
            if flushable(gi) {
                place(gi, &mut order);
            } else {
                deferred.push(gi);
            }
        }
    }
    for gi in deferred {
        place(gi, &mut order);
    }
    let b = Bubbling::new(order);
    debug_assert!(b.check(&circuit_graph(q)).is_ok());
    Ok(b)
}
