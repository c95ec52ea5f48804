//! Bipartite powers and the layered tree family `T_k`, `G_k`, `G_k'`, `X_k'`.
//!
//! `T_k` is a root `v_0` joined to `g(k)` disjoint paths ("columns"), each
//! with vertices in layers `1..=k+1`. Vertex `v_{i,j}` (layer `i`, column `j`,
//! both 1-based) gets index `1 + (i-1)*g(k) + (j-1)`; the root is index 0.

use crate::error::{Error, Result};
use crate::graph::{Bipartition, Graph, Side};
use crate::interval::{first_disagreement, verify_box_representation, BoxRep, Interval, IntervalRep};
use crate::tree::RootedTree;

/// Family builders refuse `k >= GUARDRAIL_K` unless forced.
pub const GUARDRAIL_K: usize = 9;

fn check_k(k: usize) -> Result<()> {
    if k == 0 || k % 2 == 0 {
        return Err(Error::InvalidK(k as i64));
    }
    Ok(())
}

/// `g(1) = 2`, `g(k) = ((k+1)/2) * (g(k-2) - 1) + 1` for odd `k`.
pub fn g_value(k: usize) -> Result<u64> {
    check_k(k)?;
    let mut g: u64 = 2;
    let mut j = 3;
    while j <= k {
        let half = ((j + 1) / 2) as u64;
        g = half
            .checked_mul(g - 1)
            .and_then(|x| x.checked_add(1))
            .ok_or(Error::Overflow("g(k)"))?;
        j += 2;
    }
    Ok(g)
}

/// Layer and column of a family vertex; the root is `(0, 0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    pub layer: usize,
    pub column: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    T,
    G,
    GPrime,
    X,
}

/// A family member together with its vertex labels and `{A, B}` bipartition
/// (A = odd layers, B = even layers).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyGraph {
    pub k: usize,
    pub family: Family,
    pub graph: Graph,
    pub labels: Vec<Label>,
    pub bipartition: Bipartition,
}

impl FamilyGraph {
    pub fn columns(&self) -> usize {
        g_value(self.k).expect("k validated at construction") as usize
    }

    pub fn vertex(&self, layer: usize, column: usize) -> Option<usize> {
        self.labels
            .iter()
            .position(|l| l.layer == layer && l.column == column)
    }

    pub fn side(&self, v: usize) -> Side {
        if self.labels[v].layer % 2 == 1 {
            Side::A
        } else {
            Side::B
        }
    }
}

fn t_index(g: usize, layer: usize, column: usize) -> usize {
    1 + (layer - 1) * g + (column - 1)
}

fn layer_bipartition(labels: &[Label]) -> Vec<usize> {
    labels
        .iter()
        .enumerate()
        .filter(|(_, l)| l.layer % 2 == 1)
        .map(|(v, _)| v)
        .collect()
}

/// The tree `T_k`, self-checked against the distance facts the family relies on.
pub fn build_t(k: usize) -> Result<(RootedTree, FamilyGraph)> {
    check_k(k)?;
    let g = usize::try_from(g_value(k)?).map_err(|_| Error::Overflow("g(k)"))?;
    let n = (k + 1)
        .checked_mul(g)
        .and_then(|x| x.checked_add(1))
        .ok_or(Error::Overflow("vertex count"))?;
    let mut labels = vec![Label { layer: 0, column: 0 }; n];
    let mut edges = Vec::with_capacity(n - 1);
    for column in 1..=g {
        for layer in 1..=k + 1 {
            let v = t_index(g, layer, column);
            labels[v] = Label { layer, column };
            let up = if layer == 1 { 0 } else { t_index(g, layer - 1, column) };
            edges.push((up, v));
        }
    }
    let graph = Graph::from_edges(n, &edges)?;
    let tree = RootedTree::new(graph.clone(), 0)?;
    for u in 0..n {
        let lu = labels[u];
        assert_eq!(tree.depth(u), lu.layer, "layer of {u} must equal its depth");
        for v in u + 1..n {
            let lv = labels[v];
            let expected = if lu.layer == 0 || lv.layer == 0 || lu.column != lv.column {
                lu.layer + lv.layer
            } else {
                lu.layer.abs_diff(lv.layer)
            };
            assert_eq!(tree.distance(u, v), expected, "distance between {u} and {v}");
        }
    }
    let bipartition = Bipartition::new(&graph, &layer_bipartition(&labels))?;
    let family = FamilyGraph {
        k,
        family: Family::T,
        graph,
        labels,
        bipartition,
    };
    Ok((tree, family))
}

/// Edges between vertices at odd distance at most `k`.
pub fn bipartite_power(g: &Graph, k: usize) -> Result<Graph> {
    check_k(k)?;
    g.bipartition().map_err(Error::NotBipartite)?;
    let mut out = Graph::empty(g.n());
    for u in 0..g.n() {
        for (v, d) in g.bfs_distances(u).into_iter().enumerate() {
            if let Some(d) = d {
                if v > u && d % 2 == 1 && d <= k {
                    out.add_edge(u, v);
                }
            }
        }
    }
    Ok(out)
}

fn guard(k: usize, force: bool) -> Result<()> {
    check_k(k)?;
    if k >= GUARDRAIL_K && !force {
        return Err(Error::GuardrailExceeded {
            k: k as u64,
            limit: GUARDRAIL_K as u64,
        });
    }
    Ok(())
}

/// `G_k = T_k^[k]`.
pub fn build_g(k: usize, force: bool) -> Result<FamilyGraph> {
    guard(k, force)?;
    let (_, t) = build_t(k)?;
    let graph = bipartite_power(&t.graph, k)?;
    let bipartition = Bipartition::new(&graph, &t.bipartition.a())?;
    Ok(FamilyGraph {
        k,
        family: Family::G,
        graph,
        labels: t.labels,
        bipartition,
    })
}

/// Both sides of the bipartition become cliques; cross edges are kept.
pub fn cobip_completion(g: &Graph, p: &Bipartition) -> Result<Graph> {
    p.validate(g)?;
    Ok(Graph::from_fn(g.n(), |u, v| g.has_edge(u, v) || p.side(u) == p.side(v)))
}

/// `G_k'`: co-bipartite completion of `G_k`.
pub fn build_g_prime(k: usize, force: bool) -> Result<FamilyGraph> {
    let gk = build_g(k, force)?;
    let graph = cobip_completion(&gk.graph, &gk.bipartition)?;
    Ok(FamilyGraph {
        family: Family::GPrime,
        graph,
        ..gk
    })
}

/// `X_k' = G_k' - v_0`. The bipartition is kept as a layer-parity labelling
/// even though both sides are cliques here.
pub fn build_x(k: usize, force: bool) -> Result<FamilyGraph> {
    let gp = build_g_prime(k, force)?;
    let sub = gp.graph.remove_vertex(0)?;
    let labels: Vec<Label> = sub.original.iter().map(|&v| gp.labels[v]).collect();
    let bipartition = gp.bipartition.restrict(&sub);
    Ok(FamilyGraph {
        k,
        family: Family::X,
        graph: sub.graph,
        labels,
        bipartition,
    })
}

/// Doubles a box representation of bipartite `g` into one of its co-bipartite
/// completion: each coordinate `f` yields one copy where A stretches left to
/// `min l` and B right to `max r`, and a mirrored copy.
pub fn lift_box_representation(g: &Graph, rep: &BoxRep, p: &Bipartition) -> Result<BoxRep> {
    p.validate(g)?;
    if let Some(d) = verify_box_representation(g, rep)? {
        return Err(d.into());
    }
    let stretch = |f: &IntervalRep, left_side: Side| {
        let s = f.min_left().unwrap_or(0);
        let t = f.max_right().unwrap_or(0);
        IntervalRep::from_intervals(
            f.intervals()
                .iter()
                .enumerate()
                .map(|(v, iv)| {
                    if p.side(v) == left_side {
                        Interval { l: s, r: iv.r }
                    } else {
                        Interval { l: iv.l, r: t }
                    }
                })
                .collect(),
        )
    };
    let mut reps: Vec<IntervalRep> = rep.reps().iter().map(|f| stretch(f, Side::A)).collect();
    reps.extend(rep.reps().iter().map(|f| stretch(f, Side::B)));
    let lifted = BoxRep::new(reps)?;
    let target = cobip_completion(g, p)?;
    if let Some(d) = first_disagreement(&target, &lifted.realize()) {
        return Err(Error::CrossCheck(format!("lifted representation disagrees on {d:?}")));
    }
    Ok(lifted)
}

/// Outcome of the layer-shift comparison inside `X_m'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerShift {
    /// Vertices of `X_m'` in columns `1..=g(m-2)`, layers `2..=m`.
    pub domain: Vec<usize>,
    /// Image of each domain vertex in `X_{m-2}'` under `v_{i,j} -> v_{i-1,j}`.
    pub image: Vec<usize>,
    pub edges_checked: usize,
    /// First pair whose adjacency differs between the two graphs.
    pub mismatch: Option<(usize, usize)>,
}

impl LayerShift {
    pub fn is_isomorphism(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// Compares the subgraph of `X_m'` induced by columns `1..=g(m-2)` and layers
/// `2..=m` with `X_{m-2}'` under the explicit map `h(v_{i,j}) = v_{i-1,j}`.
pub fn layer_shift(m: usize) -> Result<LayerShift> {
    check_k(m)?;
    if m < 3 {
        return Err(Error::InvalidK(m as i64));
    }
    let big = build_x(m, false)?;
    let small = build_x(m - 2, false)?;
    let width = small.columns();
    let mut domain = Vec::new();
    let mut image = Vec::new();
    for (v, l) in big.labels.iter().enumerate() {
        if (2..=m).contains(&l.layer) && (1..=width).contains(&l.column) {
            domain.push(v);
            image.push(
                small
                    .vertex(l.layer - 1, l.column)
                    .expect("shifted label exists in the smaller graph"),
            );
        }
    }
    let mut mismatch = None;
    let mut edges_checked = 0;
    'outer: for a in 0..domain.len() {
        for b in a + 1..domain.len() {
            edges_checked += 1;
            if big.graph.has_edge(domain[a], domain[b]) != small.graph.has_edge(image[a], image[b]) {
                mismatch = Some((domain[a], domain[b]));
                break 'outer;
            }
        }
    }
    if image.len() != small.graph.n() && mismatch.is_none() {
        mismatch = Some((usize::MAX, usize::MAX));
    }
    Ok(LayerShift {
        domain,
        image,
        edges_checked,
        mismatch,
    })
}
