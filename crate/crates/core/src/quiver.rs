//! Quivers with superpotential: nodes, arrows, and black/white 2-cells whose
//! boundaries are oriented cycles.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::report::ValidationReport;

/// An arrow `s -> t` on the boundary of one black and one white cell.
/// Nodes are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: u32,
    pub s: usize,
    pub t: usize,
    pub black: u32,
    pub white: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CellRef {
    Black(u32),
    White(u32),
}

impl fmt::Display for CellRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CellRef::Black(b) => write!(f, "b{b}"),
            CellRef::White(w) => write!(f, "w{w}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuiverViolation {
    /// Nodes not reachable from node 1 in the underlying undirected graph.
    Disconnected { unreachable: Vec<usize> },
    Loop { edge: u32 },
    /// Arrows `a: x -> y` and `b: y -> x`.
    TwoCycle { a: u32, b: u32 },
    Unbalanced { node: usize, incoming: usize, outgoing: usize },
    CellCountMismatch { black: usize, white: usize },
    NotACycle { cell: CellRef, reason: String },
}

impl fmt::Display for QuiverViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuiverViolation::Disconnected { unreachable } => {
                write!(f, "[1.1] graph is disconnected; unreachable nodes {unreachable:?}")
            }
            QuiverViolation::Loop { edge } => write!(f, "[1.1] edge {edge} is a loop"),
            QuiverViolation::TwoCycle { a, b } => write!(f, "[1.1] edges {a} and {b} form an oriented 2-cycle"),
            QuiverViolation::Unbalanced { node, incoming, outgoing } => {
                write!(f, "[1.1] node {node} has {incoming} incoming and {outgoing} outgoing arrows")
            }
            QuiverViolation::CellCountMismatch { black, white } => {
                write!(f, "[1.2] {black} black cells but {white} white cells")
            }
            QuiverViolation::NotACycle { cell, reason } => {
                write!(f, "[1.3] cell {cell} is not a connected oriented cycle: {reason}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    n_nodes: usize,
    /// Sorted by id.
    edges: Vec<Edge>,
}

impl Quiver {
    /// Structural checks only: node indices in range and unique edge ids.
    /// The cell conditions are checked separately by [`Quiver::check_condition1`].
    pub fn new(n_nodes: usize, mut edges: Vec<Edge>) -> Result<Quiver> {
        edges.sort_by_key(|e| e.id);
        for w in edges.windows(2) {
            if w[0].id == w[1].id {
                return Err(Error::MalformedQuiver(format!("duplicate edge id {}", w[0].id)));
            }
        }
        for e in &edges {
            for v in [e.s, e.t] {
                if v == 0 || v > n_nodes {
                    return Err(Error::MalformedQuiver(format!(
                        "edge {} references node {v} outside 1..={n_nodes}",
                        e.id
                    )));
                }
            }
            if e.id == 0 {
                return Err(Error::MalformedQuiver("edge ids must be positive".into()));
            }
        }
        Ok(Quiver { n_nodes, edges })
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: u32) -> Option<&Edge> {
        self.edges.binary_search_by_key(&id, |e| e.id).ok().map(|i| &self.edges[i])
    }

    pub fn black_cells(&self) -> Vec<u32> {
        self.edges.iter().map(|e| e.black).collect::<BTreeSet<_>>().into_iter().collect()
    }

    pub fn white_cells(&self) -> Vec<u32> {
        self.edges.iter().map(|e| e.white).collect::<BTreeSet<_>>().into_iter().collect()
    }

    pub fn cell_edges(&self, cell: CellRef) -> Vec<&Edge> {
        self.edges
            .iter()
            .filter(|e| match cell {
                CellRef::Black(b) => e.black == b,
                CellRef::White(w) => e.white == w,
            })
            .collect()
    }

    /// Orders the cell's edges as `e_1, ..., e_r` with `t(e_i) = s(e_{i+1})`
    /// cyclically, starting at the smallest edge id. When a node repeats on
    /// the boundary the smallest available id is taken at each branch.
    pub fn cell_cycle(&self, cell: CellRef) -> Result<Vec<u32>> {
        let edges = self.cell_edges(cell);
        let fail = |reason: String| Error::NotACycle {
            cell: cell.to_string(),
            reason,
        };
        if edges.is_empty() {
            return Err(Error::UnknownCell(cell.to_string()));
        }
        let mut out_deg: HashMap<usize, usize> = HashMap::new();
        let mut in_deg: HashMap<usize, usize> = HashMap::new();
        for e in &edges {
            *out_deg.entry(e.s).or_default() += 1;
            *in_deg.entry(e.t).or_default() += 1;
        }
        let mut nodes: BTreeSet<usize> = out_deg.keys().copied().collect();
        nodes.extend(in_deg.keys().copied());
        for v in &nodes {
            let (i, o) = (in_deg.get(v).copied().unwrap_or(0), out_deg.get(v).copied().unwrap_or(0));
            if i != o {
                return Err(fail(format!("node {v} enters {i} times but leaves {o} times")));
            }
        }

        // Hierholzer's algorithm; outgoing lists sorted so the smallest id is
        // consumed first.
        let mut outgoing: BTreeMap<usize, VecDeque<&Edge>> = BTreeMap::new();
        for e in &edges {
            outgoing.entry(e.s).or_default().push_back(e);
        }
        let start = edges[0];
        let mut stack: Vec<(usize, Option<u32>)> = vec![(start.s, None)];
        let mut circuit: Vec<u32> = Vec::new();
        while let Some(&(v, via)) = stack.last() {
            let next = outgoing.get_mut(&v).and_then(VecDeque::pop_front);
            match next {
                Some(e) => stack.push((e.t, Some(e.id))),
                None => {
                    stack.pop();
                    if let Some(id) = via {
                        circuit.push(id);
                    }
                }
            }
        }
        circuit.reverse();
        if circuit.len() != edges.len() {
            return Err(fail(format!(
                "edges split into several cycles ({} of {} reachable)",
                circuit.len(),
                edges.len()
            )));
        }
        let pos = circuit.iter().position(|&id| id == start.id).unwrap_or(0);
        circuit.rotate_left(pos);
        Ok(circuit)
    }

    /// Cell conditions: connectivity, no oriented cycles of length ≤ 2, balanced
    /// nodes, equal cell counts, and every cell boundary an oriented cycle.
    pub fn check_condition1(&self) -> ValidationReport<QuiverViolation> {
        let mut report = ValidationReport::new();

        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); self.n_nodes + 1];
        for e in &self.edges {
            adj[e.s].push(e.t);
            adj[e.t].push(e.s);
        }
        let mut seen = vec![false; self.n_nodes + 1];
        if self.n_nodes > 0 {
            let mut queue = VecDeque::from([1usize]);
            seen[1] = true;
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        let unreachable: Vec<usize> = (1..=self.n_nodes).filter(|&v| !seen[v]).collect();
        if !unreachable.is_empty() {
            report.push(QuiverViolation::Disconnected { unreachable });
        }

        let mut by_arc: HashMap<(usize, usize), u32> = HashMap::new();
        for e in &self.edges {
            if e.s == e.t {
                report.push(QuiverViolation::Loop { edge: e.id });
                continue;
            }
            by_arc.entry((e.s, e.t)).or_insert(e.id);
        }
        for e in &self.edges {
            if let Some(&back) = by_arc.get(&(e.t, e.s)) {
                if e.s != e.t && e.id < back {
                    report.push(QuiverViolation::TwoCycle { a: e.id, b: back });
                }
            }
        }

        let mut incoming = vec![0usize; self.n_nodes + 1];
        let mut outgoing = vec![0usize; self.n_nodes + 1];
        for e in &self.edges {
            outgoing[e.s] += 1;
            incoming[e.t] += 1;
        }
        for v in 1..=self.n_nodes {
            if incoming[v] != outgoing[v] {
                report.push(QuiverViolation::Unbalanced {
                    node: v,
                    incoming: incoming[v],
                    outgoing: outgoing[v],
                });
            }
        }

        let (black, white) = (self.black_cells(), self.white_cells());
        if black.len() != white.len() {
            report.push(QuiverViolation::CellCountMismatch {
                black: black.len(),
                white: white.len(),
            });
        }

        let cells = black.iter().map(|&b| CellRef::Black(b)).chain(white.iter().map(|&w| CellRef::White(w)));
        for cell in cells {
            if let Err(err) = self.cell_cycle(cell) {
                let reason = match err {
                    Error::NotACycle { reason, .. } => reason,
                    other => other.to_string(),
                };
                report.push(QuiverViolation::NotACycle { cell, reason });
            }
        }
        report
    }

    /// `#P^0 - #P^1 + #P^2• + #P^2∘` of the glued surface.
    pub fn euler_characteristic(&self) -> i64 {
        self.n_nodes as i64 - self.edges.len() as i64
            + self.black_cells().len() as i64
            + self.white_cells().len() as i64
    }

    /// A copy with edge `id` reversed.
    pub fn with_reversed_edge(&self, id: u32) -> Result<Quiver> {
        let mut edges = self.edges.clone();
        let e = edges.iter_mut().find(|e| e.id == id).ok_or(Error::UnknownEdge(id))?;
        std::mem::swap(&mut e.s, &mut e.t);
        Quiver::new(self.n_nodes, edges)
    }

    /// A copy with edge `id` moved to black cell `black`.
    pub fn with_black_label(&self, id: u32, black: u32) -> Result<Quiver> {
        let mut edges = self.edges.clone();
        edges.iter_mut().find(|e| e.id == id).ok_or(Error::UnknownEdge(id))?.black = black;
        Quiver::new(self.n_nodes, edges)
    }
}
