//! Brute-force reference implementations shared by the integration suites.
//! Nothing here calls the solver or the recognizers under test.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use boxlab_core::Graph;

/// Index of the pair `u < v` among the `n(n-1)/2` pairs, row-major.
pub fn pair_index(n: usize, u: usize, v: usize) -> usize {
    let (u, v) = if u < v { (u, v) } else { (v, u) };
    u * (2 * n - u - 1) / 2 + (v - u - 1)
}

pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

pub fn graph_mask(g: &Graph) -> u32 {
    let n = g.n();
    pairs(n)
        .into_iter()
        .enumerate()
        .filter(|&(_, (u, v))| g.has_edge(u, v))
        .fold(0, |m, (i, _)| m | 1 << i)
}

pub fn mask_graph(n: usize, mask: u32) -> Graph {
    let p = pairs(n);
    let edges: Vec<_> = p.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
    Graph::from_edges(n, &edges).unwrap()
}

/// Every labelled interval graph on `n <= 6` vertices, as pair masks, found by
/// walking all sequences of interval open/close events.
pub fn interval_graph_masks(n: usize) -> HashSet<u32> {
    fn walk(n: usize, opened: u32, closed: u32, edges: u32, seen: &mut HashSet<(u32, u32, u32)>, out: &mut HashSet<u32>) {
        if !seen.insert((opened, closed, edges)) {
            return;
        }
        let full = (1u32 << n) - 1;
        if closed == full {
            out.insert(edges);
            return;
        }
        let open = opened & !closed;
        for v in 0..n {
            if opened >> v & 1 == 0 {
                let mut e = edges;
                for w in 0..n {
                    if open >> w & 1 == 1 {
                        e |= 1 << pair_index(n, v, w);
                    }
                }
                walk(n, opened | 1 << v, closed, e, seen, out);
            } else if open >> v & 1 == 1 {
                walk(n, opened, closed | 1 << v, edges, seen, out);
            }
        }
    }
    let mut out = HashSet::new();
    walk(n, 0, 0, 0, &mut HashSet::new(), &mut out);
    out
}

/// Reference boxicity: the least number of interval supergraphs whose
/// intersection is `g`, with `box(complete) = 0`.
pub struct BoxicityOracle {
    n: usize,
    intervals: Vec<u32>,
}

impl BoxicityOracle {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            intervals: interval_graph_masks(n).into_iter().collect(),
        }
    }

    pub fn boxicity(&self, edges: u32) -> usize {
        let all = if self.n < 2 { 0 } else { (1u32 << (self.n * (self.n - 1) / 2)) - 1 };
        let missing = all & !edges;
        if missing == 0 {
            return 0;
        }
        // kill sets of interval supergraphs, reduced to the maximal ones
        let mut kills: Vec<u32> = self
            .intervals
            .iter()
            .filter(|&&i| i & edges == edges)
            .map(|&i| missing & !i)
            .collect();
        kills.sort_unstable();
        kills.dedup();
        let maximal: Vec<u32> = kills
            .iter()
            .copied()
            .filter(|&k| !kills.iter().any(|&o| o != k && o & k == k))
            .collect();
        let mut memo = HashMap::new();
        (1..).find(|&b| coverable(missing, b, &maximal, &mut memo)).unwrap()
    }
}

fn coverable(rest: u32, b: usize, kills: &[u32], memo: &mut HashMap<(u32, usize), bool>) -> bool {
    if rest == 0 {
        return true;
    }
    if b == 0 {
        return false;
    }
    if let Some(&r) = memo.get(&(rest, b)) {
        return r;
    }
    let low = rest & rest.wrapping_neg();
    // some kill set must cover the lowest remaining pair
    let r = kills
        .iter()
        .filter(|&&k| k & low != 0)
        .any(|&k| coverable(rest & !k, b - 1, kills, memo));
    memo.insert((rest, b), r);
    r
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// One representative pair mask per isomorphism class of graphs on `n` vertices.
pub fn nonisomorphic_masks(n: usize) -> Vec<u32> {
    let ps = pairs(n);
    let perms = permutations(n);
    let maps: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| ps.iter().map(|&(u, v)| pair_index(n, p[u], p[v])).collect())
        .collect();
    let total = 1u32 << ps.len();
    let mut canon_seen = HashSet::new();
    let mut reps = Vec::new();
    for mask in 0..total {
        let canon = maps
            .iter()
            .map(|m| {
                m.iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .fold(0u32, |acc, (_, &j)| acc | 1 << j)
            })
            .min()
            .unwrap();
        if canon_seen.insert(canon) {
            reps.push(canon);
        }
    }
    reps
}

/// Does some ordering of all vertices eliminate simple vertices one by one?
/// Checks compatibility pairwise from the definition.
pub fn has_simple_ordering(g: &Graph) -> bool {
    let n = g.n();
    let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
    let adj: Vec<u32> = (0..n)
        .map(|u| (0..n).filter(|&v| g.has_edge(u, v)).fold(0, |m, v| m | 1 << v))
        .collect();
    let simple = |alive: u32, v: usize| {
        let closed = |x: usize| (adj[x] | 1 << x) & alive;
        let nv = closed(v);
        (0..n).filter(|&x| nv >> x & 1 == 1).all(|x| {
            (0..n).filter(|&y| nv >> y & 1 == 1).all(|y| {
                let (a, b) = (closed(x), closed(y));
                a & b == a || a & b == b
            })
        })
    };
    let mut memo = HashMap::new();
    fn go(alive: u32, n: usize, simple: &dyn Fn(u32, usize) -> bool, memo: &mut HashMap<u32, bool>) -> bool {
        if alive == 0 {
            return true;
        }
        if let Some(&r) = memo.get(&alive) {
            return r;
        }
        let r = (0..n).any(|v| alive >> v & 1 == 1 && simple(alive, v) && go(alive & !(1 << v), n, simple, memo));
        memo.insert(alive, r);
        r
    }
    go(full, n, &simple, &mut memo)
}

/// Every ordering of the vertices, tried literally.
pub fn every_ordering_fails(g: &Graph) -> bool {
    let n = g.n();
    permutations(n).into_iter().all(|order| {
        let mut alive: Vec<bool> = vec![true; n];
        for &v in &order {
            let closed = |x: usize, alive: &[bool]| -> Vec<usize> {
                (0..n).filter(|&y| alive[y] && (y == x || g.has_edge(x, y))).collect()
            };
            let nv = closed(v, &alive);
            for &x in &nv {
                for &y in &nv {
                    let (a, b) = (closed(x, &alive), closed(y, &alive));
                    if !a.iter().all(|w| b.contains(w)) && !b.iter().all(|w| a.contains(w)) {
                        return true;
                    }
                }
            }
            alive[v] = false;
        }
        false
    })
}

/// Triangle 0,1,2 with 3 on {0,1}, 4 on {1,2}, 5 on {2,0}.
pub fn three_sun() -> Graph {
    Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 0), (3, 1), (4, 1), (4, 2), (5, 2), (5, 0)]).unwrap()
}

/// `K_{2,2,2}`: six vertices, non-adjacent exactly within the pairs {0,1}, {2,3}, {4,5}.
pub fn octahedron() -> Graph {
    Graph::from_fn(6, |u, v| u / 2 != v / 2)
}

/// All-pairs BFS distances on an adjacency list, without the library's BFS.
pub fn distances(g: &Graph) -> Vec<Vec<Option<usize>>> {
    let n = g.n();
    let adj: Vec<Vec<usize>> = (0..n).map(|u| (0..n).filter(|&v| g.has_edge(u, v)).collect()).collect();
    (0..n)
        .map(|s| {
            let mut d = vec![None; n];
            d[s] = Some(0);
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &adj[u] {
                    if d[v].is_none() {
                        d[v] = Some(d[u].unwrap() + 1);
                        queue.push_back(v);
                    }
                }
            }
            d
        })
        .collect()
}
