//! Interval representations, their realized graphs, and interval-graph recognition.

use std::collections::HashSet;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::recognition::{is_chordal, ChordalVerdict};

/// Closed integer interval `[l, r]` with `l <= r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    pub l: i64,
    pub r: i64,
}

impl Interval {
    pub fn new(l: i64, r: i64) -> Option<Self> {
        (l <= r).then_some(Self { l, r })
    }

    /// Closed intervals intersect unless one ends strictly before the other starts.
    #[inline]
    pub fn intersects(&self, other: &Interval) -> bool {
        !(self.r < other.l || other.r < self.l)
    }

    pub fn contains(&self, other: &Interval) -> bool {
        self.l <= other.l && other.r <= self.r
    }
}

/// An interval for every vertex `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntervalRep {
    intervals: Vec<Interval>,
}

impl IntervalRep {
    pub fn new(endpoints: &[(i64, i64)]) -> Result<Self> {
        let intervals = endpoints
            .iter()
            .enumerate()
            .map(|(vertex, &(l, r))| Interval::new(l, r).ok_or(Error::InvalidInterval { vertex, l, r }))
            .collect::<Result<_>>()?;
        Ok(Self { intervals })
    }

    pub fn from_intervals(intervals: Vec<Interval>) -> Self {
        Self { intervals }
    }

    pub fn n(&self) -> usize {
        self.intervals.len()
    }

    pub fn get(&self, v: usize) -> Interval {
        self.intervals[v]
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    /// Leftmost left endpoint.
    pub fn min_left(&self) -> Option<i64> {
        self.intervals.iter().map(|i| i.l).min()
    }

    /// Rightmost right endpoint.
    pub fn max_right(&self) -> Option<i64> {
        self.intervals.iter().map(|i| i.r).max()
    }

    /// Intervals for the given vertices, renumbered in the order given.
    pub fn restrict(&self, vertices: &[usize]) -> IntervalRep {
        Self::from_intervals(vertices.iter().map(|&v| self.intervals[v]).collect())
    }

    /// The interval graph this representation realizes.
    pub fn realize(&self) -> Graph {
        let n = self.n();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (self.intervals[v].l, v));
        let mut g = Graph::empty(n);
        for (a, &u) in order.iter().enumerate() {
            let ru = self.intervals[u].r;
            for &v in &order[a + 1..] {
                if self.intervals[v].l > ru {
                    break;
                }
                g.add_edge(u, v);
            }
        }
        g
    }

    /// Common region `[max l, min r]` over `set`, or `None` when empty.
    ///
    /// Pairwise-intersecting intervals always share a point, so the result is
    /// `Some` whenever `set` is a clique of [`IntervalRep::realize`].
    pub fn helly_region(&self, set: &[usize]) -> Result<Option<Interval>> {
        if set.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        let mut lo = i64::MIN;
        let mut hi = i64::MAX;
        for &v in set {
            if v >= self.n() {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n() });
            }
            lo = lo.max(self.intervals[v].l);
            hi = hi.min(self.intervals[v].r);
        }
        Ok(Interval::new(lo, hi))
    }
}

/// Nonempty list of interval representations over one vertex set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoxRep {
    reps: Vec<IntervalRep>,
}

impl BoxRep {
    pub fn new(reps: Vec<IntervalRep>) -> Result<Self> {
        let first = reps.first().ok_or(Error::EmptyBoxRep)?;
        if let Some(bad) = reps.iter().find(|r| r.n() != first.n()) {
            return Err(Error::VertexCountMismatch(first.n(), bad.n()));
        }
        Ok(Self { reps })
    }

    /// Number of coordinates.
    pub fn b(&self) -> usize {
        self.reps.len()
    }

    pub fn n(&self) -> usize {
        self.reps[0].n()
    }

    pub fn reps(&self) -> &[IntervalRep] {
        &self.reps
    }

    pub fn into_reps(self) -> Vec<IntervalRep> {
        self.reps
    }

    pub fn restrict(&self, vertices: &[usize]) -> BoxRep {
        Self {
            reps: self.reps.iter().map(|r| r.restrict(vertices)).collect(),
        }
    }

    pub fn realize(&self) -> Graph {
        let graphs: Vec<Graph> = self.reps.iter().map(IntervalRep::realize).collect();
        intersect(&graphs).expect("reps share a vertex count")
    }
}

/// Edge-wise intersection of graphs on a common vertex count.
pub fn intersect(graphs: &[Graph]) -> Result<Graph> {
    let first = graphs.first().ok_or(Error::EmptyBoxRep)?;
    let mut out = first.clone();
    for g in &graphs[1..] {
        if g.n() != out.n() {
            return Err(Error::VertexCountMismatch(out.n(), g.n()));
        }
        out = Graph::from_fn(out.n(), |u, v| out.has_edge(u, v) && g.has_edge(u, v));
    }
    Ok(out)
}

/// A pair on which a representation and a graph disagree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Disagreement {
    pub u: usize,
    pub v: usize,
    /// True when `(u, v)` is an edge of the graph but not of the representation.
    pub in_graph: bool,
}

impl From<Disagreement> for Error {
    fn from(d: Disagreement) -> Self {
        Error::RepresentationMismatch {
            u: d.u,
            v: d.v,
            in_graph: d.in_graph,
        }
    }
}

/// Edge-for-edge comparison of `rep` against `g`; `Ok(None)` means exact match.
pub fn verify_box_representation(g: &Graph, rep: &BoxRep) -> Result<Option<Disagreement>> {
    if g.n() != rep.n() {
        return Err(Error::VertexCountMismatch(g.n(), rep.n()));
    }
    Ok(first_disagreement(g, &rep.realize()))
}

pub(crate) fn first_disagreement(g: &Graph, h: &Graph) -> Option<Disagreement> {
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            let in_graph = g.has_edge(u, v);
            if in_graph != h.has_edge(u, v) {
                return Some(Disagreement { u, v, in_graph });
            }
        }
    }
    None
}

/// Outcome of [`is_interval_graph`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntervalVerdict {
    Interval(IntervalRep),
    /// Chordless cycle of length at least 4.
    NotChordal(Vec<usize>),
    /// Chordal, but no ordering of the maximal cliques keeps every vertex's cliques consecutive.
    NoConsecutiveArrangement { cliques: usize, states_explored: u64 },
}

impl IntervalVerdict {
    pub fn is_interval(&self) -> bool {
        matches!(self, IntervalVerdict::Interval(_))
    }
}

/// Maximal cliques of a chordal graph given a perfect elimination ordering.
pub fn maximal_cliques_from_peo(g: &Graph, ordering: &[usize]) -> Vec<VertexSet> {
    let n = g.n();
    let mut position = vec![0; n];
    for (i, &v) in ordering.iter().enumerate() {
        position[v] = i;
    }
    let candidates: Vec<VertexSet> = ordering
        .iter()
        .map(|&v| {
            let mut c = VertexSet::from_iter_with_capacity(
                n,
                g.neighbors(v).iter().filter(|&w| position[w] > position[v]),
            );
            c.insert(v);
            c
        })
        .collect();
    let mut out: Vec<VertexSet> = Vec::new();
    for (i, c) in candidates.iter().enumerate() {
        let dominated = candidates
            .iter()
            .enumerate()
            .any(|(j, d)| j != i && c.is_subset(d) && (c != d || j < i));
        if !dominated {
            out.push(c.clone());
        }
    }
    out.sort();
    out
}

/// Interval-graph recognition with a checkable certificate either way.
///
/// Chordality is tested first; then the maximal cliques are searched for a
/// consecutive arrangement, and each vertex gets the span of its cliques.
pub fn is_interval_graph(g: &Graph) -> IntervalVerdict {
    let peo = match is_chordal(g) {
        ChordalVerdict::Chordal(cert) => cert.ordering,
        ChordalVerdict::NotChordal(cycle) => return IntervalVerdict::NotChordal(cycle),
    };
    let cliques = maximal_cliques_from_peo(g, &peo);
    let mut search = CliqueArrangement::new(g.n(), &cliques);
    match search.run() {
        Some(order) => {
            let mut first = vec![i64::MAX; g.n()];
            let mut last = vec![i64::MIN; g.n()];
            for (pos, &c) in order.iter().enumerate() {
                for v in cliques[c].iter() {
                    first[v] = first[v].min(pos as i64);
                    last[v] = last[v].max(pos as i64);
                }
            }
            let endpoints: Vec<(i64, i64)> = first.into_iter().zip(last).collect();
            let rep = IntervalRep::new(&endpoints).expect("every vertex lies in a maximal clique");
            assert_eq!(rep.realize(), *g, "clique arrangement must realize the input graph");
            IntervalVerdict::Interval(rep)
        }
        None => IntervalVerdict::NoConsecutiveArrangement {
            cliques: cliques.len(),
            states_explored: search.states,
        },
    }
}

/// Backtracking over clique orders. A state is the set of placed cliques plus
/// the last one placed; everything else is derived from those.
struct CliqueArrangement<'a> {
    n: usize,
    cliques: &'a [VertexSet],
    dead: HashSet<(Vec<bool>, usize)>,
    states: u64,
}

impl<'a> CliqueArrangement<'a> {
    fn new(n: usize, cliques: &'a [VertexSet]) -> Self {
        Self {
            n,
            cliques,
            dead: HashSet::new(),
            states: 0,
        }
    }

    fn run(&mut self) -> Option<Vec<usize>> {
        if self.cliques.is_empty() {
            return Some(Vec::new());
        }
        let mut placed = vec![false; self.cliques.len()];
        let mut order = Vec::with_capacity(self.cliques.len());
        for start in 0..self.cliques.len() {
            placed[start] = true;
            order.push(start);
            let finished = VertexSet::new(self.n);
            if self.extend(&mut placed, &mut order, &finished) {
                return Some(order);
            }
            order.pop();
            placed[start] = false;
        }
        None
    }

    fn extend(&mut self, placed: &mut Vec<bool>, order: &mut Vec<usize>, finished: &VertexSet) -> bool {
        self.states += 1;
        if order.len() == self.cliques.len() {
            return true;
        }
        let last = *order.last().unwrap();
        let key = (placed.clone(), last);
        if self.dead.contains(&key) {
            return false;
        }
        let active = &self.cliques[last];
        // active vertices that still occur in an unplaced clique must continue into the next one
        let mut must_continue = VertexSet::new(self.n);
        for (c, clique) in self.cliques.iter().enumerate() {
            if !placed[c] {
                must_continue.union_with(&clique.intersection(active));
            }
        }
        for next in 0..self.cliques.len() {
            if placed[next] {
                continue;
            }
            let clique = &self.cliques[next];
            if !clique.is_disjoint(finished) || !must_continue.is_subset(clique) {
                continue;
            }
            let mut now_finished = finished.clone();
            now_finished.union_with(&active.difference(clique));
            placed[next] = true;
            order.push(next);
            if self.extend(placed, order, &now_finished) {
                return true;
            }
            order.pop();
            placed[next] = false;
        }
        self.dead.insert(key);
        false
    }
}
