//! Circuit graphs and their bubblings.
//!
//! A bubbling is a linear order of the vertices; its width is the largest
//! number of edges with exactly one endpoint among the first `i` vertices,
//! so the bubble width of a graph is its cutwidth.

mod bubbling;
mod exact;
mod pathdec;

use std::collections::HashMap;
use std::fmt::Write as _;

pub use bubbling::{
    bubbling_width, cut_profile_from_scratch, greedy_bubbling, layered_bubbling, Bubbling,
};
pub use exact::{
    exact_bubble_width, exact_bubble_width_capped, exact_path_width, exact_path_width_capped,
    EXACT_VERTEX_CAP,
};
pub use pathdec::{
    bubbling_from_path_decomposition, path_decomposition_from_bubbling, PathDecomposition,
};

use crate::circuit::{OperatorCircuit, WireId};
use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexKind {
    /// Input terminal `i`.
    Input(usize),
    /// Gate `g` of the circuit.
    Gate(usize),
    /// Output terminal `j` (position in the circuit's output list).
    Output(usize),
    /// Vertex of a graph that did not come from a circuit.
    Plain,
}

/// Undirected multigraph without self-loops.
#[derive(Clone, Debug, PartialEq)]
pub struct CircuitGraph {
    kinds: Vec<VertexKind>,
    edges: Vec<(VertexId, VertexId)>,
    incidence: Vec<Vec<EdgeId>>,
}

impl CircuitGraph {
    /// A graph of `Plain` vertices.
    pub fn new(num_vertices: usize, edges: Vec<(VertexId, VertexId)>) -> Result<Self> {
        Self::with_kinds(vec![VertexKind::Plain; num_vertices], edges)
    }

    pub fn with_kinds(kinds: Vec<VertexKind>, edges: Vec<(VertexId, VertexId)>) -> Result<Self> {
        let n = kinds.len();
        let mut incidence = vec![Vec::new(); n];
        for (e, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::Parse(format!("edge {e} ({u}, {v}) has an endpoint outside 0..{n}")));
            }
            if u == v {
                return Err(Error::Parse(format!("edge {e} is a self-loop on vertex {u}")));
            }
            incidence[u].push(e);
            incidence[v].push(e);
        }
        Ok(Self {
            kinds,
            edges,
            incidence,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.kinds.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn kinds(&self) -> &[VertexKind] {
        &self.kinds
    }

    pub fn kind(&self, v: VertexId) -> VertexKind {
        self.kinds[v]
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    /// Edges incident to `v`, in ascending id order.
    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incidence[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.incidence.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn other_end(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    /// The graph with edge `e` removed (later edge ids shift down by one).
    pub fn without_edge(&self, e: EdgeId) -> Self {
        let mut edges = self.edges.clone();
        edges.remove(e);
        Self::with_kinds(self.kinds.clone(), edges).expect("subgraph of a valid graph")
    }

    /// The same graph with vertex `v` renamed to `perm[v]`.
    pub fn relabeled(&self, perm: &[VertexId]) -> Self {
        let mut kinds = vec![VertexKind::Plain; self.num_vertices()];
        for (v, &p) in perm.iter().enumerate() {
            kinds[p] = self.kinds[v];
        }
        let edges = self.edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        Self::with_kinds(kinds, edges).expect("relabeling keeps validity")
    }

    pub fn is_connected(&self) -> bool {
        let n = self.num_vertices();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &e in self.incident(v) {
                let u = self.other_end(e, v);
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Parses the edge-list format: a header `p <vertices> <edges>` followed
    /// by one `u v` pair per line. Blank lines and lines starting with `c` or
    /// `#` are ignored.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let num = |s: &str| -> Result<usize> {
                s.parse()
                    .map_err(|_| Error::Parse(format!("line {}: '{s}' is not a number", lineno + 1)))
            };
            match (header, fields.as_slice()) {
                (None, ["p", nv, ne]) => header = Some((num(nv)?, num(ne)?)),
                (None, _) => {
                    return Err(Error::Parse(format!(
                        "line {}: expected header 'p <vertices> <edges>'",
                        lineno + 1
                    )))
                }
                (Some(_), [u, v]) => edges.push((num(u)?, num(v)?)),
                (Some(_), _) => {
                    return Err(Error::Parse(format!("line {}: expected 'u v'", lineno + 1)))
                }
            }
        }
        let (nv, ne) = header.ok_or_else(|| Error::Parse("missing header".into()))?;
        if ne != edges.len() {
            return Err(Error::Parse(format!(
                "header announces {ne} edges, found {}",
                edges.len()
            )));
        }
        Self::new(nv, edges)
    }

    pub fn to_edge_list(&self) -> String {
        let mut s = format!("p {} {}\n", self.num_vertices(), self.num_edges());
        for &(u, v) in &self.edges {
            writeln!(s, "{u} {v}").unwrap();
        }
        s
    }
}

/// Vertex and edge numbering of a circuit's graph.
///
/// Vertices: input terminals `0..ni`, gates `ni..ni+G`, output terminals
/// after that in output-list order. Edges: one per wire, numbered in
/// production order (input wires first, then each gate's outputs).
#[derive(Clone, Debug)]
pub struct CircuitIndex {
    pub num_inputs: usize,
    pub num_gates: usize,
    pub num_outputs: usize,
    pub wire_edge: HashMap<WireId, EdgeId>,
}

impl CircuitIndex {
    pub fn new(q: &OperatorCircuit) -> Self {
        let wires = (0..q.num_inputs()).chain(q.gates().iter().flat_map(|g| g.outputs.iter().copied()));
        Self {
            num_inputs: q.num_inputs(),
            num_gates: q.gates().len(),
            num_outputs: q.num_outputs(),
            wire_edge: wires.enumerate().map(|(e, w)| (w, e)).collect(),
        }
    }

    pub fn input_vertex(&self, i: usize) -> VertexId {
        i
    }

    pub fn gate_vertex(&self, g: usize) -> VertexId {
        self.num_inputs + g
    }

    pub fn output_vertex(&self, j: usize) -> VertexId {
        self.num_inputs + self.num_gates + j
    }

    pub fn num_vertices(&self) -> usize {
        self.num_inputs + self.num_gates + self.num_outputs
    }
}

/// One vertex per input terminal, gate and output terminal; one edge per wire
/// from its producer to its consumer.
pub fn circuit_graph(q: &OperatorCircuit) -> CircuitGraph {
    let idx = CircuitIndex::new(q);
    let mut kinds = Vec::with_capacity(idx.num_vertices());
    kinds.extend((0..idx.num_inputs).map(VertexKind::Input));
    kinds.extend((0..idx.num_gates).map(VertexKind::Gate));
    kinds.extend((0..idx.num_outputs).map(VertexKind::Output));

    let mut ends: Vec<(Option<VertexId>, Option<VertexId>)> = vec![(None, None); idx.wire_edge.len()];
    for i in 0..idx.num_inputs {
        ends[idx.wire_edge[&i]].0 = Some(idx.input_vertex(i));
    }
    for (g, app) in q.gates().iter().enumerate() {
        for w in &app.outputs {
            ends[idx.wire_edge[w]].0 = Some(idx.gate_vertex(g));
        }
        for w in &app.inputs {
            ends[idx.wire_edge[w]].1 = Some(idx.gate_vertex(g));
        }
    }
    for (j, w) in q.outputs().iter().enumerate() {
        ends[idx.wire_edge[w]].1 = Some(idx.output_vertex(j));
    }
    let edges = ends
        .into_iter()
        .map(|(p, c)| (p.expect("every wire has a producer"), c.expect("every wire has a consumer")))
        .collect();
    CircuitGraph::with_kinds(kinds, edges).expect("circuit graphs have no self-loops")
}
