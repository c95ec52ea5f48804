//! Chordal, strongly chordal and chordal bipartite recognition.
//!
//! Every positive answer carries an elimination ordering that is re-checked
//! against the definition before it is returned; negative answers carry an
//! induced cycle or the residual graph in which elimination got stuck.

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::{normalize_cycle, Bipartition, Graph, Side};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EliminationKind {
    /// Later neighbours of each vertex form a clique.
    Perfect,
    /// Each vertex is simple in the graph induced by itself and the later vertices.
    Simple,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationCertificate {
    pub ordering: Vec<usize>,
    pub kind: EliminationKind,
}

impl EliminationCertificate {
    /// Re-checks every elimination step. Returns the position of the first failing step.
    pub fn verify(&self, g: &Graph) -> std::result::Result<(), usize> {
        let n = g.n();
        let mut seen = VertexSet::new(n);
        if self.ordering.len() != n || !self.ordering.iter().all(|&v| v < n && seen.insert(v)) {
            return Err(0);
        }
        let mut alive = VertexSet::full(n);
        for (step, &v) in self.ordering.iter().enumerate() {
            let ok = match self.kind {
                EliminationKind::Perfect => {
                    let later = g.neighbors(v).intersection(&alive);
                    later
                        .iter()
                        .all(|x| later.iter().all(|y| x == y || g.has_edge(x, y)))
                }
                EliminationKind::Simple => simple_pair_violation_pairwise(g, &alive, v).is_none(),
            };
            if !ok {
                return Err(step);
            }
            alive.remove(v);
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChordalVerdict {
    Chordal(EliminationCertificate),
    /// Induced cycle of length at least 4.
    NotChordal(Vec<usize>),
}

impl ChordalVerdict {
    pub fn is_chordal(&self) -> bool {
        matches!(self, ChordalVerdict::Chordal(_))
    }
}

/// Maximum cardinality search order, reversed into an elimination ordering.
fn mcs_elimination_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut numbered = vec![false; n];
    let mut visit = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !numbered[v])
            .max_by(|&a, &b| weight[a].cmp(&weight[b]).then(b.cmp(&a)))
            .unwrap();
        numbered[v] = true;
        visit.push(v);
        for w in g.neighbors(v).iter() {
            if !numbered[w] {
                weight[w] += 1;
            }
        }
    }
    visit.reverse();
    visit
}

pub fn is_chordal(g: &Graph) -> ChordalVerdict {
    let ordering = mcs_elimination_order(g);
    let cert = EliminationCertificate {
        ordering,
        kind: EliminationKind::Perfect,
    };
    match cert.verify(g) {
        Ok(()) => ChordalVerdict::Chordal(cert),
        Err(_) => ChordalVerdict::NotChordal(
            chordless_cycle(g).expect("a graph without a perfect elimination ordering has a chordless cycle"),
        ),
    }
}

/// Finds an induced cycle of length at least 4, if any.
///
/// A chordless cycle through `v` with neighbours `u, w` on it is exactly a
/// `u`–`w` path avoiding the rest of `N[v]`; shortest such paths are chordless.
pub fn chordless_cycle(g: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    for v in 0..n {
        let nbrs = g.neighbors(v).to_vec();
        for (i, &u) in nbrs.iter().enumerate() {
            for &w in &nbrs[i + 1..] {
                if g.has_edge(u, w) {
                    continue;
                }
                let mut blocked = g.closed_neighborhood(v);
                blocked.remove(u);
                blocked.remove(w);
                if let Some(path) = shortest_path_avoiding(g, u, w, &blocked) {
                    let mut cycle = vec![v];
                    cycle.extend(path);
                    debug_assert!(g.is_induced_cycle(&cycle));
                    return Some(normalize_cycle(cycle));
                }
            }
        }
    }
    None
}

fn shortest_path_avoiding(g: &Graph, s: usize, t: usize, blocked: &VertexSet) -> Option<Vec<usize>> {
    let n = g.n();
    let mut prev = vec![usize::MAX; n];
    let mut seen = blocked.clone();
    seen.insert(s);
    let mut queue = std::collections::VecDeque::from([s]);
    while let Some(x) = queue.pop_front() {
        if x == t {
            let mut path = vec![t];
            let mut y = t;
            while y != s {
                y = prev[y];
                path.push(y);
            }
            path.reverse();
            return Some(path);
        }
        for y in g.neighbors(x).iter() {
            if seen.insert(y) {
                prev[y] = x;
                queue.push_back(y);
            }
        }
    }
    None
}

/// Closed neighbourhood of `x` within `alive`.
fn closed_in(g: &Graph, alive: &VertexSet, x: usize) -> VertexSet {
    let mut s = g.neighbors(x).intersection(alive);
    s.insert(x);
    s
}

/// Pairwise definition: every two members of `N[v]` are compatible.
fn simple_pair_violation_pairwise(g: &Graph, alive: &VertexSet, v: usize) -> Option<(usize, usize)> {
    let members = closed_in(g, alive, v).to_vec();
    let hoods: Vec<VertexSet> = members.iter().map(|&x| closed_in(g, alive, x)).collect();
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            if !hoods[i].is_subset(&hoods[j]) && !hoods[j].is_subset(&hoods[i]) {
                return Some((members[i], members[j]));
            }
        }
    }
    None
}

/// Pairwise compatibility is a chain under inclusion: sort by size and check neighbours.
fn simple_pair_violation(g: &Graph, alive: &VertexSet, v: usize) -> Option<(usize, usize)> {
    let mut hoods: Vec<(usize, usize, VertexSet)> = closed_in(g, alive, v)
        .iter()
        .map(|x| {
            let h = closed_in(g, alive, x);
            (h.len(), x, h)
        })
        .collect();
    hoods.sort_by_key(|&(len, x, _)| (len, x));
    hoods
        .windows(2)
        .find(|w| !w[0].2.is_subset(&w[1].2))
        .map(|w| (w[0].1.min(w[1].1), w[0].1.max(w[1].1)))
}

/// `Ok(())` when `v` is simple in `g`; otherwise a non-compatible pair from `N[v]`.
pub fn is_simple_vertex(g: &Graph, v: usize) -> std::result::Result<(), (usize, usize)> {
    let alive = VertexSet::full(g.n());
    match simple_pair_violation(g, &alive, v) {
        None => Ok(()),
        Some(pair) => Err(pair),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StronglyChordalVerdict {
    StronglyChordal(EliminationCertificate),
    /// Greedy elimination stopped: no vertex of `residual` is simple in the graph it induces.
    Stuck { eliminated: Vec<usize>, residual: Vec<usize> },
}

impl StronglyChordalVerdict {
    pub fn is_strongly_chordal(&self) -> bool {
        matches!(self, StronglyChordalVerdict::StronglyChordal(_))
    }
}

/// Greedy simple-vertex elimination, lowest index first.
pub fn is_strongly_chordal(g: &Graph) -> StronglyChordalVerdict {
    is_strongly_chordal_with(g, |candidates| candidates[0])
}

/// Greedy simple-vertex elimination with a caller-chosen tie-break among the current simple vertices.
pub fn is_strongly_chordal_with(
    g: &Graph,
    mut pick: impl FnMut(&[usize]) -> usize,
) -> StronglyChordalVerdict {
    let n = g.n();
    let mut alive = VertexSet::full(n);
    let mut ordering = Vec::with_capacity(n);
    while !alive.is_empty() {
        let candidates: Vec<usize> = alive
            .iter()
            .filter(|&v| simple_pair_violation(g, &alive, v).is_none())
            .collect();
        if candidates.is_empty() {
            return StronglyChordalVerdict::Stuck {
                eliminated: ordering,
                residual: alive.to_vec(),
            };
        }
        let v = pick(&candidates);
        debug_assert!(candidates.contains(&v));
        alive.remove(v);
        ordering.push(v);
    }
    let cert = EliminationCertificate {
        ordering,
        kind: EliminationKind::Simple,
    };
    cert.verify(g).expect("greedy simple elimination ordering must re-verify");
    StronglyChordalVerdict::StronglyChordal(cert)
}

/// `G` plus every pair inside the chosen side.
pub fn split_completion(g: &Graph, p: &Bipartition, side: Side) -> Result<Graph> {
    p.validate(g)?;
    Ok(Graph::from_fn(g.n(), |u, v| {
        g.has_edge(u, v) || (p.side(u) == side && p.side(v) == side)
    }))
}

/// Induced cycle of length greater than `bound`, if one exists.
pub fn induced_cycle_exceeding(g: &Graph, bound: usize) -> Option<Vec<usize>> {
    induced_cycle_search(g, bound, usize::MAX)
}

/// Depth-first search over chordless paths, looking for an induced cycle whose
/// length lies in `(bound, max_len]`. Each cycle is rooted at its smallest vertex.
pub fn induced_cycle_search(g: &Graph, bound: usize, max_len: usize) -> Option<Vec<usize>> {
    let n = g.n();
    for s in 0..n {
        let allowed = VertexSet::from_iter_with_capacity(n, s + 1..n);
        let mut path = vec![s];
        let mut search = CycleSearch {
            g,
            s,
            bound: bound.max(2),
            max_len,
            allowed,
        };
        for p1 in g.neighbors(s).iter().filter(|&x| x > s) {
            path.push(p1);
            if let Some(c) = search.extend(&mut path) {
                return Some(normalize_cycle(c));
            }
            path.pop();
        }
    }
    None
}

struct CycleSearch<'a> {
    g: &'a Graph,
    s: usize,
    bound: usize,
    max_len: usize,
    allowed: VertexSet,
}

impl CycleSearch<'_> {
    /// `path` = s, p1, ..., pk is chordless and only p1 touches s.
    fn extend(&mut self, path: &mut Vec<usize>) -> Option<Vec<usize>> {
        let k = path.len() - 1;
        let tail = path[k];
        if path.len() >= self.max_len {
            return None;
        }
        // usable next vertices: adjacent to tail, above s, not adjacent to p1..p_{k-1}
        let mut next = self.g.neighbors(tail).intersection(&self.allowed);
        for &p in &path[1..k] {
            next.difference_with(self.g.neighbors(p));
            next.remove(p);
        }
        next.remove(tail);
        if !self.can_return(path, &next) {
            return None;
        }
        for x in next.iter() {
            if self.g.has_edge(x, self.s) {
                if k >= 1 && path.len() + 1 > self.bound {
                    let mut c = path.clone();
                    c.push(x);
                    return Some(c);
                }
                continue;
            }
            path.push(x);
            if let Some(c) = self.extend(path) {
                return Some(c);
            }
            path.pop();
        }
        None
    }

    /// Some candidate must still be able to reach a neighbour of `s` through
    /// vertices not adjacent to the path interior.
    fn can_return(&self, path: &[usize], next: &VertexSet) -> bool {
        let k = path.len() - 1;
        let mut free = self.allowed.clone();
        for &p in &path[1..=k] {
            free.difference_with(self.g.neighbors(p));
            free.remove(p);
        }
        let mut frontier = next.clone();
        let mut seen = next.clone();
        while let Some(x) = frontier.first() {
            frontier.remove(x);
            if self.g.has_edge(x, self.s) {
                return true;
            }
            let mut step = self.g.neighbors(x).intersection(&free);
            step.difference_with(&seen);
            seen.union_with(&step);
            frontier.union_with(&step);
        }
        false
    }
}

/// Limits for the direct induced-cycle route inside [`is_chordal_bipartite`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrossCheckConfig {
    pub max_n: usize,
    pub max_cycle_len: usize,
}

impl Default for CrossCheckConfig {
    fn default() -> Self {
        Self {
            max_n: 64,
            max_cycle_len: 12,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CrossCheck {
    /// Both routes ran to a conclusive answer and agreed.
    Agreed,
    /// The direct search was bounded in cycle length and found nothing, so it
    /// could not confirm a negative answer.
    Inconclusive,
    /// Graph above the size cap; only the split-completion route ran.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CbgWitness {
    OddCycle(Vec<usize>),
    /// Induced cycle of length at least 6.
    LongCycle(Vec<usize>),
    /// Greedy elimination of `C_A(G)` got stuck on this residual vertex set.
    Stuck(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CbgVerdict {
    pub is_cbg: bool,
    /// Simple elimination ordering of `C_A(G)` when the answer is yes.
    pub certificate: Option<EliminationCertificate>,
    pub bipartition: Option<Bipartition>,
    pub witness: Option<CbgWitness>,
    pub cross_check: CrossCheck,
}

pub fn is_chordal_bipartite(g: &Graph) -> Result<CbgVerdict> {
    is_chordal_bipartite_with(g, CrossCheckConfig::default())
}

/// Recognizes chordal bipartite graphs through the strong chordality of
/// `C_A(G)` and, within `config`, an independent induced-cycle search.
///
/// Disagreement between the two routes is reported as [`Error::CrossCheck`].
pub fn is_chordal_bipartite_with(g: &Graph, config: CrossCheckConfig) -> Result<CbgVerdict> {
    let p = match g.bipartition() {
        Ok(p) => p,
        Err(cycle) => {
            return Ok(CbgVerdict {
                is_cbg: false,
                certificate: None,
                bipartition: None,
                witness: Some(CbgWitness::OddCycle(cycle)),
                cross_check: CrossCheck::Agreed,
            })
        }
    };
    let split = split_completion(g, &p, Side::A)?;
    let (is_cbg, certificate, stuck) = match is_strongly_chordal(&split) {
        StronglyChordalVerdict::StronglyChordal(cert) => (true, Some(cert), None),
        StronglyChordalVerdict::Stuck { residual, .. } => (false, None, Some(residual)),
    };
    let mut witness = stuck.map(CbgWitness::Stuck);
    let cross_check = if g.n() > config.max_n {
        CrossCheck::Skipped
    } else {
        let direct = induced_cycle_search(g, 4, config.max_cycle_len);
        let exhaustive = config.max_cycle_len >= g.n();
        match (is_cbg, direct) {
            (true, Some(c)) => {
                return Err(Error::CrossCheck(format!(
                    "split completion is strongly chordal but induced cycle {c:?} exists"
                )))
            }
            (true, None) => CrossCheck::Agreed,
            (false, Some(c)) => {
                witness = Some(CbgWitness::LongCycle(c));
                CrossCheck::Agreed
            }
            (false, None) if exhaustive => {
                return Err(Error::CrossCheck(
                    "split completion is not strongly chordal but no long induced cycle exists".into(),
                ))
            }
            (false, None) => CrossCheck::Inconclusive,
        }
    };
    Ok(CbgVerdict {
        is_cbg,
        certificate,
        bipartition: Some(p),
        witness,
        cross_check,
    })
}
