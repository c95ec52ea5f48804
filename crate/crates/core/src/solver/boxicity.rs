//! Exact boxicity by exhaustive kill-set assignment.
//!
//! `box(G) <= b` iff every non-edge can be given to one of `b` coordinates so
//! that, per coordinate, some interval supergraph of `G` avoids all non-edges
//! given to it. Coordinates are interchangeable, so a non-edge may open a new
//! coordinate only if it is the lowest unused one. Each step branches on the
//! unassigned non-edge with the fewest coordinates still able to take it.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};

use rayon::prelude::*;

use super::sandwich::{intervals_from_order, opening_order, SandwichInstance};
use crate::certificate::graph_hash;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::interval::{is_interval_graph, verify_box_representation, BoxRep, IntervalRep, IntervalVerdict};

pub const DEFAULT_BUDGET: u64 = 50_000_000;
pub const DEFAULT_REFUTE_CAP: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    /// Largest `b` tried by [`exact_boxicity`]; `None` means `max(1, n / 2)`.
    pub max_b: Option<usize>,
    /// Search-node budget shared by every refutation in one call.
    pub budget: u64,
    pub threads: usize,
    /// Largest vertex count accepted for exhaustive refutation.
    pub refute_cap: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            max_b: None,
            budget: DEFAULT_BUDGET,
            threads: 1,
            refute_cap: DEFAULT_REFUTE_CAP,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertificateKind {
    /// Box representation with `b` coordinates; empty only for complete graphs (`b = 0`).
    Upper(Vec<IntervalRep>),
    /// Exhaustive search found no representation with `b` coordinates.
    Refutation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxicityCertificate {
    pub kind: CertificateKind,
    pub b: usize,
    pub nodes_explored: u64,
    pub graph_hash: String,
}

impl BoxicityCertificate {
    pub fn is_upper(&self) -> bool {
        matches!(self.kind, CertificateKind::Upper(_))
    }

    /// Re-checks an upper certificate against `g`. Refutations only check the hash.
    pub fn verify_upper(&self, g: &Graph) -> Result<bool> {
        if self.graph_hash != graph_hash(g) {
            return Ok(false);
        }
        match &self.kind {
            CertificateKind::Upper(reps) if reps.is_empty() => Ok(self.b == 0 && g.is_complete()),
            CertificateKind::Upper(reps) => {
                let rep = BoxRep::new(reps.clone())?;
                Ok(rep.b() == self.b && verify_box_representation(g, &rep)?.is_none())
            }
            CertificateKind::Refutation => Ok(true),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RefuteOutcome {
    Refuted { nodes: u64 },
    /// A representation with at most `b` coordinates.
    Representation { rep: BoxRep, nodes: u64 },
    Exceeded { nodes: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoxicityOutcome {
    Exact {
        boxicity: usize,
        upper: BoxicityCertificate,
        refutations: Vec<BoxicityCertificate>,
    },
    /// Every `b <= max_b` was refuted.
    AboveMax {
        max_b: usize,
        refutations: Vec<BoxicityCertificate>,
    },
    /// Budget ran out while deciding `b`.
    Exceeded {
        b: usize,
        nodes: u64,
        refutations: Vec<BoxicityCertificate>,
    },
}

/// Wraps externally supplied interval representations as an upper certificate.
pub fn boxicity_upper_from_parts(g: &Graph, reps: Vec<IntervalRep>) -> Result<BoxicityCertificate> {
    let rep = BoxRep::new(reps)?;
    if let Some(d) = verify_box_representation(g, &rep)? {
        return Err(d.into());
    }
    Ok(BoxicityCertificate {
        b: rep.b(),
        kind: CertificateKind::Upper(rep.into_reps()),
        nodes_explored: 0,
        graph_hash: graph_hash(g),
    })
}

/// Decides `box(g) <= b` exhaustively. Requires `n <= config.refute_cap`.
pub fn refute_boxicity_at_most(g: &Graph, b: usize, config: &SolverConfig) -> Result<RefuteOutcome> {
    if g.n() > config.refute_cap {
        return Err(Error::SolverCap {
            n: g.n(),
            cap: config.refute_cap,
        });
    }
    search_box_representation(g, b, config)
}

/// Same search as [`refute_boxicity_at_most`] without the refutation cap, for
/// finding upper bounds on graphs with up to 64 vertices.
pub fn search_box_representation(g: &Graph, b: usize, config: &SolverConfig) -> Result<RefuteOutcome> {
    if b == 0 {
        return Err(Error::InvalidInstance("b must be at least 1".into()));
    }
    if g.n() > super::sandwich::SANDWICH_MAX_N {
        return Err(Error::SolverCap {
            n: g.n(),
            cap: super::sandwich::SANDWICH_MAX_N,
        });
    }
    let problem = KillProblem::new(g, b);
    let shared = Shared {
        nodes: AtomicU64::new(0),
        budget: config.budget,
        winner: AtomicUsize::new(usize::MAX),
    };
    let outcome = if config.threads <= 1 {
        let mut worker = Worker::new(&problem, &shared, 0);
        worker.run_root()
    } else {
        run_parallel(&problem, &shared, config.threads)
    };
    let nodes = shared.nodes.load(Ordering::Relaxed);
    Ok(match outcome {
        Step::Found(assign) => RefuteOutcome::Representation {
            rep: problem.representation(&assign),
            nodes,
        },
        Step::Exhausted => RefuteOutcome::Refuted { nodes },
        Step::Exceeded | Step::Cancelled => RefuteOutcome::Exceeded { nodes },
    })
}

/// Least `b` with a representation, with refutation certificates for every smaller `b >= 1`.
pub fn exact_boxicity(g: &Graph, config: &SolverConfig) -> Result<BoxicityOutcome> {
    let hash = graph_hash(g);
    if g.is_complete() {
        return Ok(BoxicityOutcome::Exact {
            boxicity: 0,
            upper: BoxicityCertificate {
                kind: CertificateKind::Upper(Vec::new()),
                b: 0,
                nodes_explored: 0,
                graph_hash: hash,
            },
            refutations: Vec::new(),
        });
    }
    let mut refutations = Vec::new();
    match is_interval_graph(g) {
        IntervalVerdict::Interval(rep) => {
            return Ok(BoxicityOutcome::Exact {
                boxicity: 1,
                upper: BoxicityCertificate {
                    kind: CertificateKind::Upper(vec![rep]),
                    b: 1,
                    nodes_explored: 0,
                    graph_hash: hash,
                },
                refutations,
            })
        }
        IntervalVerdict::NotChordal(_) => {}
        IntervalVerdict::NoConsecutiveArrangement { states_explored, .. } => {
            refutations.push(BoxicityCertificate {
                kind: CertificateKind::Refutation,
                b: 1,
                nodes_explored: states_explored,
                graph_hash: hash.clone(),
            });
        }
    }
    if refutations.is_empty() {
        refutations.push(BoxicityCertificate {
            kind: CertificateKind::Refutation,
            b: 1,
            nodes_explored: 0,
            graph_hash: hash.clone(),
        });
    }
    if g.n() > config.refute_cap {
        return Err(Error::SolverCap {
            n: g.n(),
            cap: config.refute_cap,
        });
    }
    let max_b = config.max_b.unwrap_or((g.n() / 2).max(1));
    let mut spent = 0u64;
    for b in 2..=max_b {
        let local = SolverConfig {
            budget: config.budget.saturating_sub(spent),
            ..*config
        };
        match refute_boxicity_at_most(g, b, &local)? {
            RefuteOutcome::Refuted { nodes } => {
                spent += nodes;
                refutations.push(BoxicityCertificate {
                    kind: CertificateKind::Refutation,
                    b,
                    nodes_explored: nodes,
                    graph_hash: hash.clone(),
                });
            }
            RefuteOutcome::Representation { rep, nodes } => {
                let reps = rep.into_reps();
                return Ok(BoxicityOutcome::Exact {
                    boxicity: reps.len(),
                    upper: BoxicityCertificate {
                        b: reps.len(),
                        kind: CertificateKind::Upper(reps),
                        nodes_explored: nodes,
                        graph_hash: hash,
                    },
                    refutations,
                });
            }
            RefuteOutcome::Exceeded { nodes } => {
                return Ok(BoxicityOutcome::Exceeded {
                    b,
                    nodes: spent + nodes,
                    refutations,
                })
            }
        }
    }
    Ok(BoxicityOutcome::AboveMax { max_b, refutations })
}

/// Static data of one `box(G) <= b` question.
struct KillProblem {
    n: usize,
    b: usize,
    required: Vec<u64>,
    non_edges: Vec<(usize, usize)>,
    words: usize,
}

impl KillProblem {
    fn new(g: &Graph, b: usize) -> Self {
        let n = g.n();
        let required: Vec<u64> = (0..n)
            .map(|u| g.neighbors(u).iter().fold(0u64, |m, v| m | 1 << v))
            .collect();
        let mut non_edges = g.non_edges();
        // most-constrained first: non-edges whose endpoints touch many other non-edges
        let mut non_degree = vec![0usize; n];
        for &(u, v) in &non_edges {
            non_degree[u] += 1;
            non_degree[v] += 1;
        }
        non_edges.sort_by_key(|&(u, v)| (std::cmp::Reverse(non_degree[u] + non_degree[v]), u, v));
        let words = non_edges.len().div_ceil(64).max(1);
        Self {
            n,
            b,
            required,
            non_edges,
            words,
        }
    }

    fn instance(&self, set: &[u64]) -> SandwichInstance {
        let mut forbidden = vec![0u64; self.n];
        for (i, &(u, v)) in self.non_edges.iter().enumerate() {
            if set[i / 64] >> (i % 64) & 1 == 1 {
                forbidden[u] |= 1 << v;
                forbidden[v] |= 1 << u;
            }
        }
        SandwichInstance::from_masks(self.required.clone(), forbidden)
    }

    fn coordinate_sets(&self, assign: &[u8]) -> Vec<Vec<u64>> {
        let used = assign.iter().filter(|&&c| c != UNASSIGNED).map(|&c| c as usize + 1).max().unwrap_or(0);
        let mut sets = vec![vec![0u64; self.words]; used];
        for (i, &c) in assign.iter().enumerate() {
            if c != UNASSIGNED {
                sets[c as usize][i / 64] |= 1 << (i % 64);
            }
        }
        sets
    }

    fn representation(&self, assign: &[u8]) -> BoxRep {
        let sets = self.coordinate_sets(assign);
        let reps: Vec<IntervalRep> = if sets.is_empty() {
            let inst = self.instance(&vec![0; self.words]);
            vec![intervals_from_order(&inst, &(0..self.n).collect::<Vec<_>>())]
        } else {
            sets.iter()
                .map(|s| {
                    let inst = self.instance(s);
                    let order = opening_order(&inst).0.expect("assigned coordinate is feasible");
                    intervals_from_order(&inst, &order)
                })
                .collect()
        };
        BoxRep::new(reps).expect("at least one coordinate")
    }
}

const UNASSIGNED: u8 = u8::MAX;

struct Shared {
    nodes: AtomicU64,
    budget: u64,
    /// Lowest frontier index that has found a representation.
    winner: AtomicUsize,
}

enum Step {
    Found(Vec<u8>),
    Exhausted,
    Exceeded,
    Cancelled,
}

struct Worker<'a> {
    problem: &'a KillProblem,
    shared: &'a Shared,
    index: usize,
    memo: HashMap<Vec<u64>, bool>,
    assign: Vec<u8>,
    sets: Vec<Vec<u64>>,
    /// When set, states at this depth are recorded instead of expanded.
    split_depth: Option<usize>,
    frontier: Vec<Vec<u8>>,
}

impl<'a> Worker<'a> {
    fn new(problem: &'a KillProblem, shared: &'a Shared, index: usize) -> Self {
        Self {
            problem,
            shared,
            index,
            memo: HashMap::new(),
            assign: vec![UNASSIGNED; problem.non_edges.len()],
            sets: Vec::new(),
            split_depth: None,
            frontier: Vec::new(),
        }
    }

    fn load(&mut self, assign: &[u8]) {
        self.assign = assign.to_vec();
        self.sets = self.problem.coordinate_sets(assign);
    }

    fn run_root(&mut self) -> Step {
        self.search(0)
    }

    fn feasible(&mut self, coord: usize, e: usize) -> bool {
        let mut set = match self.sets.get(coord) {
            Some(s) => s.clone(),
            None => vec![0u64; self.problem.words],
        };
        set[e / 64] |= 1 << (e % 64);
        if let Some(&ok) = self.memo.get(&set) {
            return ok;
        }
        let ok = opening_order(&self.problem.instance(&set)).0.is_some();
        self.memo.insert(set, ok);
        ok
    }

    fn set_bit(&mut self, coord: usize, e: usize, on: bool) {
        if coord == self.sets.len() {
            self.sets.push(vec![0u64; self.problem.words]);
        }
        if on {
            self.sets[coord][e / 64] |= 1 << (e % 64);
        } else {
            self.sets[coord][e / 64] &= !(1 << (e % 64));
            if coord + 1 == self.sets.len() && self.sets[coord].iter().all(|&w| w == 0) {
                self.sets.pop();
            }
        }
    }

    fn search(&mut self, depth: usize) -> Step {
        let nodes = self.shared.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if nodes > self.shared.budget {
            return Step::Exceeded;
        }
        if self.shared.winner.load(Ordering::Relaxed) < self.index {
            return Step::Cancelled;
        }
        if self.split_depth == Some(depth) {
            self.frontier.push(self.assign.clone());
            return Step::Exhausted;
        }
        let used = self.sets.len();
        let mut best: Option<(usize, Vec<usize>)> = None;
        for e in 0..self.problem.non_edges.len() {
            if self.assign[e] != UNASSIGNED {
                continue;
            }
            let mut options: Vec<usize> = (0..used).filter(|&c| self.feasible(c, e)).collect();
            if used < self.problem.b && self.feasible(used, e) {
                options.push(used);
            }
            if options.is_empty() {
                return Step::Exhausted;
            }
            if best.as_ref().is_none_or(|(_, o)| options.len() < o.len()) {
                best = Some((e, options));
            }
        }
        let Some((e, options)) = best else {
            return Step::Found(self.assign.clone());
        };
        for c in options {
            self.assign[e] = c as u8;
            self.set_bit(c, e, true);
            let step = self.search(depth + 1);
            self.set_bit(c, e, false);
            self.assign[e] = UNASSIGNED;
            match step {
                Step::Exhausted => {}
                other => return other,
            }
        }
        Step::Exhausted
    }
}

/// Expands the search tree to a frontier of subproblems and solves them in
/// parallel. The first subproblem (in sequential order) that succeeds wins,
/// so the answer matches the single-threaded search.
fn run_parallel(problem: &KillProblem, shared: &Shared, threads: usize) -> Step {
    let target = threads * 4;
    let mut frontier = Vec::new();
    for depth in 1..=problem.non_edges.len().max(1) {
        let mut splitter = Worker::new(problem, shared, 0);
        splitter.split_depth = Some(depth);
        match splitter.run_root() {
            Step::Exhausted => {}
            other => return other,
        }
        frontier = splitter.frontier;
        if frontier.len() >= target {
            break;
        }
    }
    if frontier.is_empty() {
        return Step::Exhausted;
    }
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool,
        Err(_) => {
            let mut worker = Worker::new(problem, shared, 0);
            return worker.run_root();
        }
    };
    let results: Vec<Step> = pool.install(|| {
        frontier
            .par_iter()
            .enumerate()
            .map(|(i, assign)| {
                let mut worker = Worker::new(problem, shared, i);
                worker.load(assign);
                let depth = assign.iter().filter(|&&c| c != UNASSIGNED).count();
                let step = worker.search(depth);
                if matches!(step, Step::Found(_)) {
                    shared.winner.fetch_min(i, Ordering::Relaxed);
                }
                step
            })
            .collect()
    });
    for step in results {
        match step {
            Step::Exhausted => {}
            other => return other,
        }
    }
    Step::Exhausted
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c4() -> Graph {
        Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    fn exact(g: &Graph) -> (usize, BoxicityCertificate) {
        match exact_boxicity(g, &SolverConfig::default()).unwrap() {
            BoxicityOutcome::Exact { boxicity, upper, .. } => (boxicity, upper),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn complete_graph_is_zero() {
        let (b, cert) = exact(&Graph::complete(6));
        assert_eq!(b, 0);
        assert!(cert.verify_upper(&Graph::complete(6)).unwrap());
        assert_eq!(exact(&Graph::empty(1)).0, 0);
    }

    #[test]
    fn c4_is_two() {
        let g = c4();
        let (b, cert) = exact(&g);
        assert_eq!(b, 2);
        assert!(cert.verify_upper(&g).unwrap());
        assert!(matches!(
            refute_boxicity_at_most(&g, 1, &SolverConfig::default()).unwrap(),
            RefuteOutcome::Refuted { .. }
        ));
    }

    #[test]
    fn octahedron_is_three() {
        let g = Graph::from_fn(6, |u, v| u / 2 != v / 2);
        let (b, cert) = exact(&g);
        assert_eq!(b, 3);
        assert!(cert.verify_upper(&g).unwrap());
    }

    #[test]
    fn upper_from_parts() {
        let k4 = Graph::complete(4);
        let one = IntervalRep::new(&[(0, 1); 4]).unwrap();
        let cert = boxicity_upper_from_parts(&k4, vec![one]).unwrap();
        assert_eq!(cert.b, 1);
        let path = IntervalRep::new(&[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert!(matches!(
            boxicity_upper_from_parts(&c4(), vec![path]),
            Err(Error::RepresentationMismatch { u: 0, v: 3, in_graph: true })
        ));
    }

    #[test]
    fn budget_exhaustion_is_not_a_refutation() {
        let g = Graph::from_fn(6, |u, v| u / 2 != v / 2);
        let tight = SolverConfig {
            budget: 1,
            ..SolverConfig::default()
        };
        assert!(matches!(
            refute_boxicity_at_most(&g, 2, &tight).unwrap(),
            RefuteOutcome::Exceeded { .. }
        ));
        assert!(matches!(
            exact_boxicity(&g, &tight).unwrap(),
            BoxicityOutcome::Exceeded { b: 2, .. }
        ));
    }

    #[test]
    fn caps_and_bad_b() {
        let big = Graph::empty(20).complement();
        let mut g = big.clone();
        g = Graph::from_fn(g.n(), |u, v| g.has_edge(u, v) && !(u == 0 && v == 1) && !(u == 2 && v == 3));
        assert!(matches!(
            refute_boxicity_at_most(&g, 2, &SolverConfig::default()),
            Err(Error::SolverCap { n: 20, cap: 16 })
        ));
        assert!(refute_boxicity_at_most(&c4(), 0, &SolverConfig::default()).is_err());
        // uppers are still available above the cap
        match search_box_representation(&g, 2, &SolverConfig::default()).unwrap() {
            RefuteOutcome::Representation { rep, .. } => {
                assert_eq!(verify_box_representation(&g, &rep).unwrap(), None)
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn threads_do_not_change_answers() {
        let g = Graph::from_fn(8, |u, v| u / 2 != v / 2);
        let one = refute_boxicity_at_most(&g, 4, &SolverConfig::default()).unwrap();
        let four = refute_boxicity_at_most(
            &g,
            4,
            &SolverConfig {
                threads: 4,
                ..SolverConfig::default()
            },
        )
        .unwrap();
        match (one, four) {
            (
                RefuteOutcome::Representation { rep: a, .. },
                RefuteOutcome::Representation { rep: b, .. },
            ) => assert_eq!(a, b),
            other => panic!("{other:?}"),
        }
        let refuted = refute_boxicity_at_most(
            &g,
            3,
            &SolverConfig {
                threads: 3,
                ..SolverConfig::default()
            },
        )
        .unwrap();
        assert!(matches!(refuted, RefuteOutcome::Refuted { .. }));
    }
}
