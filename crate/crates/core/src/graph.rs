//! Finite simple undirected graphs on dense vertex indices.

use std::collections::VecDeque;
use std::fmt;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};

/// Largest vertex count accepted by [`Graph::from_edges`].
pub const DEFAULT_VERTEX_CAP: usize = 4096;

/// Undirected simple graph on `0..n`, one adjacency bitset per vertex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    rows: Vec<VertexSet>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            rows: vec![VertexSet::new(n); n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n {
            g.rows[u] = VertexSet::full(n);
            g.rows[u].remove(u);
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::from_edges_capped(n, edges, DEFAULT_VERTEX_CAP)
    }

    /// Like [`Graph::from_edges`] with an explicit vertex cap.
    pub fn from_edges_capped(n: usize, edges: &[(usize, usize)], cap: usize) -> Result<Self> {
        if n > cap {
            return Err(Error::TooManyVertices { n, cap });
        }
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            g.add_edge(u, v);
        }
        g.check_invariants();
        Ok(g)
    }

    /// Builds a graph from a symmetric adjacency predicate.
    pub fn from_fn(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if adjacent(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g.check_invariants();
        g
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.rows[u].insert(v);
        self.rows[v].insert(u);
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.rows[v]
    }

    pub fn closed_neighborhood(&self, v: usize) -> VertexSet {
        let mut s = self.rows[v].clone();
        s.insert(v);
        s
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            out.extend(self.rows[u].iter().filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    /// Vertex pairs `u < v` that are not edges.
    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() * 2 == self.n * self.n.saturating_sub(1)
    }

    pub fn complement(&self) -> Self {
        Self::from_fn(self.n, |u, v| !self.has_edge(u, v))
    }

    /// Shortest-path edge counts from `s`; `None` marks unreachable vertices.
    pub fn bfs_distances(&self, s: usize) -> Vec<Option<usize>> {
        assert!(s < self.n, "source {s} out of range");
        let mut dist = vec![None; self.n];
        dist[s] = Some(0);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for w in self.rows[u].iter() {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// All-pairs distances by repeated BFS.
    pub fn distance_matrix(&self) -> Vec<Vec<Option<usize>>> {
        (0..self.n).map(|s| self.bfs_distances(s)).collect()
    }

    /// Two-colors every component, starting each component's lowest vertex on side A.
    ///
    /// On failure the error carries an odd cycle.
    pub fn bipartition(&self) -> std::result::Result<Bipartition, Vec<usize>> {
        let mut color: Vec<Option<bool>> = vec![None; self.n];
        let mut parent = vec![usize::MAX; self.n];
        for start in 0..self.n {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].unwrap();
                for w in self.rows[u].iter() {
                    match color[w] {
                        None => {
                            color[w] = Some(!cu);
                            parent[w] = u;
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cu => {
                            return Err(odd_cycle_from_tree(&parent, u, w));
                        }
                        _ => {}
                    }
                }
            }
        }
        let in_a = VertexSet::from_iter_with_capacity(
            self.n,
            (0..self.n).filter(|&v| color[v] == Some(false)),
        );
        Ok(Bipartition { in_a })
    }

    /// Subgraph induced by `subset`; vertices are renumbered in ascending order.
    pub fn induced_subgraph(&self, subset: &[usize]) -> Result<InducedSubgraph> {
        let mut original: Vec<usize> = subset.to_vec();
        original.sort_unstable();
        original.dedup();
        if let Some(&bad) = original.iter().find(|&&v| v >= self.n) {
            return Err(Error::VertexOutOfRange { vertex: bad, n: self.n });
        }
        let graph = Graph::from_fn(original.len(), |a, b| {
            self.has_edge(original[a], original[b])
        });
        Ok(InducedSubgraph { graph, original })
    }

    /// `self - {v}` with the remaining vertices renumbered.
    pub fn remove_vertex(&self, v: usize) -> Result<InducedSubgraph> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        let keep: Vec<usize> = (0..self.n).filter(|&u| u != v).collect();
        self.induced_subgraph(&keep)
    }

    /// Checks that `cycle` is an induced (chordless) cycle of length at least 3.
    pub fn is_induced_cycle(&self, cycle: &[usize]) -> bool {
        let len = cycle.len();
        if len < 3 || cycle.iter().any(|&v| v >= self.n) {
            return false;
        }
        let mut seen = VertexSet::new(self.n);
        if !cycle.iter().all(|&v| seen.insert(v)) {
            return false;
        }
        for i in 0..len {
            for j in i + 1..len {
                let consecutive = j == i + 1 || (i == 0 && j == len - 1);
                if self.has_edge(cycle[i], cycle[j]) != consecutive {
                    return false;
                }
            }
        }
        true
    }

    pub(crate) fn check_invariants(&self) {
        for u in 0..self.n {
            debug_assert!(!self.rows[u].contains(u));
            for v in self.rows[u].iter() {
                debug_assert!(self.rows[v].contains(u));
            }
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

fn odd_cycle_from_tree(parent: &[usize], u: usize, w: usize) -> Vec<usize> {
    let chain = |mut x: usize| {
        let mut out = vec![x];
        while parent[x] != usize::MAX {
            x = parent[x];
            out.push(x);
        }
        out
    };
    let pu = chain(u);
    let pw = chain(w);
    // strip the shared suffix, keeping the meeting vertex once
    let mut i = pu.len();
    let mut j = pw.len();
    while i > 1 && j > 1 && pu[i - 2] == pw[j - 2] {
        i -= 1;
        j -= 1;
    }
    let mut cycle: Vec<usize> = pu[..i].to_vec();
    cycle.extend(pw[..j - 1].iter().rev());
    normalize_cycle(cycle)
}

/// Rotates a cycle to start at its smallest vertex, oriented so the second
/// entry is smaller than the last.
pub fn normalize_cycle(mut cycle: Vec<usize>) -> Vec<usize> {
    if cycle.is_empty() {
        return cycle;
    }
    let pos = cycle
        .iter()
        .enumerate()
        .min_by_key(|&(_, &v)| v)
        .map(|(i, _)| i)
        .unwrap();
    cycle.rotate_left(pos);
    if cycle.len() > 2 && cycle[1] > cycle[cycle.len() - 1] {
        cycle[1..].reverse();
    }
    cycle
}

/// Result of [`Graph::induced_subgraph`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedSubgraph {
    pub graph: Graph,
    /// `original[i]` is the vertex of the parent graph that became vertex `i`.
    pub original: Vec<usize>,
}

impl InducedSubgraph {
    pub fn position(&self, original_vertex: usize) -> Option<usize> {
        self.original.binary_search(&original_vertex).ok()
    }
}

/// One side of a [`Bipartition`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

/// Partition of the vertex set into two independent sides A and B.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bipartition {
    in_a: VertexSet,
}

impl Bipartition {
    /// Validates `side_a` (with B its complement) against `g`.
    pub fn new(g: &Graph, side_a: &[usize]) -> Result<Self> {
        let mut in_a = VertexSet::new(g.n());
        for &v in side_a {
            if v >= g.n() {
                return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
            }
            in_a.insert(v);
        }
        let p = Self { in_a };
        p.validate(g)?;
        Ok(p)
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.in_a.capacity() != g.n() {
            return Err(Error::InvalidBipartition(format!(
                "bipartition covers {} vertices, graph has {}",
                self.in_a.capacity(),
                g.n()
            )));
        }
        for (u, v) in g.edges() {
            if self.side(u) == self.side(v) {
                return Err(Error::InvalidBipartition(format!(
                    "edge ({u}, {v}) lies inside side {:?}",
                    self.side(u)
                )));
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.in_a.capacity()
    }

    pub fn side(&self, v: usize) -> Side {
        if self.in_a.contains(v) {
            Side::A
        } else {
            Side::B
        }
    }

    pub fn members(&self, side: Side) -> VertexSet {
        match side {
            Side::A => self.in_a.clone(),
            Side::B => VertexSet::full(self.n()).difference(&self.in_a),
        }
    }

    pub fn a(&self) -> Vec<usize> {
        self.members(Side::A).to_vec()
    }

    pub fn b(&self) -> Vec<usize> {
        self.members(Side::B).to_vec()
    }

    /// Restricts to an induced subgraph's vertices.
    pub fn restrict(&self, sub: &InducedSubgraph) -> Bipartition {
        let in_a = VertexSet::from_iter_with_capacity(
            sub.original.len(),
            sub.original
                .iter()
                .enumerate()
                .filter(|&(_, &o)| self.in_a.contains(o))
                .map(|(i, _)| i),
        );
        Bipartition { in_a }
    }
}
