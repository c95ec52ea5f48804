//! Seeded generators for property tests and the CLI `check` command.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::Graph;
use crate::tree::RootedTree;

/// Uniform random recursive tree on a shuffled labelling.
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Graph {
    let mut label: Vec<usize> = (0..n).collect();
    label.shuffle(rng);
    let edges: Vec<(usize, usize)> = (1..n).map(|i| (label[i], label[rng.gen_range(0..i)])).collect();
    Graph::from_edges(n, &edges).expect("labels are in range")
}

/// Random tree with a random root; `n >= 1`.
pub fn random_rooted_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> RootedTree {
    let g = random_tree(n, rng);
    let root = rng.gen_range(0..n);
    RootedTree::new(g, root).expect("generated graph is a tree")
}

/// Random bipartite graph: each vertex picks a side, each cross pair is an edge with probability `p`.
pub fn random_bipartite<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let side: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    Graph::from_fn(n, |u, v| side[u] != side[v] && rng.gen_bool(p))
}

/// Erdős–Rényi `G(n, p)`.
pub fn random_graph<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    Graph::from_fn(n, |_, _| rng.gen_bool(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn generators_respect_their_classes() {
        let mut rng = StdRng::seed_from_u64(7);
        for n in 1..20 {
            let t = random_rooted_tree(n, &mut rng);
            assert_eq!(t.graph().edge_count(), n - 1);
            assert!(random_bipartite(n, 0.5, &mut rng).bipartition().is_ok());
        }
    }
}
