//! Interval sandwich: an interval graph containing every required pair and no
//! forbidden pair.
//!
//! A model is a sequence of left and right endpoint events. Closing a vertex
//! as soon as all of its required neighbours have opened never hurts, so a
//! model is fixed by the order in which vertices open, and the open set at any
//! moment is determined by the set of vertices opened so far. Feasibility is
//! therefore a reachability question over subsets, which is memoized.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::interval::{Interval, IntervalRep};

/// Largest vertex count a sandwich instance can hold.
pub const SANDWICH_MAX_N: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SandwichInstance {
    n: usize,
    required: Vec<u64>,
    forbidden: Vec<u64>,
}

impl SandwichInstance {
    pub fn new(n: usize, required: &[(usize, usize)], forbidden: &[(usize, usize)]) -> Result<Self> {
        if n > SANDWICH_MAX_N {
            return Err(Error::SolverCap {
                n,
                cap: SANDWICH_MAX_N,
            });
        }
        let mut inst = Self {
            n,
            required: vec![0; n],
            forbidden: vec![0; n],
        };
        for (list, is_required) in [(required, true), (forbidden, false)] {
            for &(u, v) in list {
                for w in [u, v] {
                    if w >= n {
                        return Err(Error::VertexOutOfRange { vertex: w, n });
                    }
                }
                if u == v {
                    return Err(Error::SelfLoop(u));
                }
                let rows = if is_required {
                    &mut inst.required
                } else {
                    &mut inst.forbidden
                };
                rows[u] |= 1 << v;
                rows[v] |= 1 << u;
            }
        }
        if let Some(u) = (0..n).find(|&u| inst.required[u] & inst.forbidden[u] != 0) {
            let v = (inst.required[u] & inst.forbidden[u]).trailing_zeros();
            return Err(Error::InvalidInstance(format!(
                "pair ({u}, {v}) is both required and forbidden"
            )));
        }
        Ok(inst)
    }

    /// Required pairs are the edges of `g`.
    pub fn with_required_graph(g: &Graph, forbidden: &[(usize, usize)]) -> Result<Self> {
        Self::new(g.n(), &g.edges(), forbidden)
    }

    pub(crate) fn from_masks(required: Vec<u64>, forbidden: Vec<u64>) -> Self {
        debug_assert_eq!(required.len(), forbidden.len());
        Self {
            n: required.len(),
            required,
            forbidden,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_required(&self, u: usize, v: usize) -> bool {
        self.required[u] >> v & 1 == 1
    }

    pub fn is_forbidden(&self, u: usize, v: usize) -> bool {
        self.forbidden[u] >> v & 1 == 1
    }

    /// Pairs that are neither required nor forbidden.
    pub fn free_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.is_required(u, v) && !self.is_forbidden(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Searches opening orders; returns one or `None` when the instance is unsatisfiable.
pub(crate) fn opening_order(inst: &SandwichInstance) -> (Option<Vec<usize>>, u64) {
    let mut search = OrderSearch {
        inst,
        full: full_mask(inst.n),
        dead: HashSet::new(),
        order: Vec::with_capacity(inst.n),
        states: 0,
    };
    let found = search.dfs(0);
    (found.then_some(search.order), search.states)
}

struct OrderSearch<'a> {
    inst: &'a SandwichInstance,
    full: u64,
    dead: HashSet<u64>,
    order: Vec<usize>,
    states: u64,
}

impl OrderSearch<'_> {
    fn dfs(&mut self, opened: u64) -> bool {
        if opened == self.full {
            return true;
        }
        if self.dead.contains(&opened) {
            return false;
        }
        self.states += 1;
        let mut active = 0u64;
        let mut rest = opened;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if self.inst.required[v] & !opened != 0 {
                active |= 1 << v;
            }
        }
        let mut candidates = self.full & !opened;
        while candidates != 0 {
            let w = candidates.trailing_zeros() as usize;
            candidates &= candidates - 1;
            if self.inst.forbidden[w] & active != 0 {
                continue;
            }
            self.order.push(w);
            if self.dfs(opened | 1 << w) {
                return true;
            }
            self.order.pop();
        }
        self.dead.insert(opened);
        false
    }
}

/// Turns an opening order into integer intervals, closing each vertex right
/// after its last required neighbour opens.
pub(crate) fn intervals_from_order(inst: &SandwichInstance, order: &[usize]) -> IntervalRep {
    let n = inst.n;
    let mut left = vec![0i64; n];
    let mut right = vec![0i64; n];
    let mut opened = 0u64;
    let mut closed = 0u64;
    let mut t = 0i64;
    for &w in order {
        left[w] = t;
        t += 1;
        opened |= 1 << w;
        let mut open = opened & !closed;
        while open != 0 {
            let v = open.trailing_zeros() as usize;
            open &= open - 1;
            if inst.required[v] & !opened == 0 {
                right[v] = t;
                t += 1;
                closed |= 1 << v;
            }
        }
    }
    IntervalRep::from_intervals(
        left.into_iter()
            .zip(right)
            .map(|(l, r)| Interval { l, r })
            .collect(),
    )
}

/// An interval model sandwiched between the required and forbidden pairs, or
/// `None` when none exists.
pub fn interval_sandwich(inst: &SandwichInstance) -> Option<IntervalRep> {
    let (order, _) = opening_order(inst);
    order.map(|order| {
        let rep = intervals_from_order(inst, &order);
        debug_assert!(satisfies(inst, &rep));
        rep
    })
}

/// Does `rep` contain every required pair and avoid every forbidden pair?
pub fn satisfies(inst: &SandwichInstance, rep: &IntervalRep) -> bool {
    if rep.n() != inst.n {
        return false;
    }
    let g = rep.realize();
    (0..inst.n).all(|u| {
        (u + 1..inst.n).all(|v| {
            let e = g.has_edge(u, v);
            (!inst.is_required(u, v) || e) && (!inst.is_forbidden(u, v) || !e)
        })
    })
}
