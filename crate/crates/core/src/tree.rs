//! Rooted trees over [`Graph`] with ancestor queries.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A tree with a designated root and parent links.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedTree {
    graph: Graph,
    root: usize,
    parent: Vec<Option<usize>>,
    depth: Vec<usize>,
}

impl RootedTree {
    /// Roots the tree `graph` at `root`. Fails unless `graph` is connected with n-1 edges.
    pub fn new(graph: Graph, root: usize) -> Result<Self> {
        let n = graph.n();
        if root >= n {
            return Err(Error::VertexOutOfRange { vertex: root, n });
        }
        if graph.edge_count() + 1 != n {
            return Err(Error::NotATree(format!(
                "{} edges on {} vertices",
                graph.edge_count(),
                n
            )));
        }
        let mut parent = vec![None; n];
        let mut depth = vec![usize::MAX; n];
        depth[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for w in graph.neighbors(u).iter() {
                if depth[w] == usize::MAX {
                    depth[w] = depth[u] + 1;
                    parent[w] = Some(u);
                    queue.push_back(w);
                }
            }
        }
        if let Some(v) = depth.iter().position(|&d| d == usize::MAX) {
            return Err(Error::NotATree(format!("vertex {v} unreachable from root")));
        }
        Ok(Self {
            graph,
            root,
            parent,
            depth,
        })
    }

    pub fn from_parents(root: usize, parent: &[Option<usize>]) -> Result<Self> {
        let edges: Vec<(usize, usize)> = parent
            .iter()
            .enumerate()
            .filter_map(|(v, p)| p.map(|p| (v, p)))
            .collect();
        let graph = Graph::from_edges(parent.len(), &edges)?;
        let tree = Self::new(graph, root)?;
        if tree.parent != parent {
            return Err(Error::NotATree("parent links disagree with root".into()));
        }
        Ok(tree)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.graph.degree(v) <= 1
    }

    pub fn leaves(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.is_leaf(v)).collect()
    }

    /// `u ⪯ v`: `v` lies on the path from the root to `u`.
    pub fn is_below(&self, u: usize, v: usize) -> bool {
        let mut x = u;
        loop {
            if x == v {
                return true;
            }
            match self.parent[x] {
                Some(p) if self.depth[x] > self.depth[v] => x = p,
                _ => return false,
            }
        }
    }

    pub fn lca(&self, u: usize, v: usize) -> usize {
        let (mut a, mut b) = (u, v);
        while self.depth[a] > self.depth[b] {
            a = self.parent[a].unwrap();
        }
        while self.depth[b] > self.depth[a] {
            b = self.parent[b].unwrap();
        }
        while a != b {
            a = self.parent[a].unwrap();
            b = self.parent[b].unwrap();
        }
        a
    }

    pub fn distance(&self, u: usize, v: usize) -> usize {
        let w = self.lca(u, v);
        self.depth[u] + self.depth[v] - 2 * self.depth[w]
    }

    /// Vertices of the unique u–v path, in order.
    pub fn path(&self, u: usize, v: usize) -> Vec<usize> {
        let w = self.lca(u, v);
        let mut up = vec![u];
        let mut x = u;
        while x != w {
            x = self.parent[x].unwrap();
            up.push(x);
        }
        let mut down = Vec::new();
        let mut y = v;
        while y != w {
            down.push(y);
            y = self.parent[y].unwrap();
        }
        up.extend(down.into_iter().rev());
        up
    }

    /// A vertex at maximum distance from `v`, lowest index on ties.
    pub fn farthest_from(&self, v: usize) -> usize {
        let dist = self.graph.bfs_distances(v);
        let mut best = v;
        let mut best_d = 0;
        for (u, d) in dist.iter().enumerate() {
            let d = d.expect("tree is connected");
            if d > best_d {
                best = u;
                best_d = d;
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star(leaves: usize) -> RootedTree {
        let edges: Vec<_> = (1..=leaves).map(|l| (0, l)).collect();
        RootedTree::new(Graph::from_edges(leaves + 1, &edges).unwrap(), 0).unwrap()
    }

    #[test]
    fn rejects_non_trees() {
        let c3 = Graph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(RootedTree::new(c3, 0).is_err());
        let forest = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(RootedTree::new(forest, 0).is_err());
    }

    #[test]
    fn lca_basics() {
        let t = star(3);
        for v in 0..4 {
            assert_eq!(t.lca(0, v), 0);
            assert_eq!(t.lca(v, v), v);
        }
        assert_eq!(t.lca(1, 2), 0);
    }

    #[test]
    fn farthest_on_path_and_star() {
        let path = RootedTree::new(Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap(), 0).unwrap();
        assert_eq!(path.farthest_from(0), 2);
        assert_eq!(star(4).farthest_from(0), 1);
        assert_eq!(star(4).farthest_from(3), 1);
    }

    #[test]
    fn ancestor_relation_and_paths() {
        // 0 - 1 - 2, 1 - 3
        let t = RootedTree::new(
            Graph::from_edges(4, &[(0, 1), (1, 2), (1, 3)]).unwrap(),
            0,
        )
        .unwrap();
        assert!(t.is_below(2, 1));
        assert!(t.is_below(2, 0));
        assert!(!t.is_below(1, 2));
        assert!(!t.is_below(3, 2));
        assert_eq!(t.path(2, 3), vec![2, 1, 3]);
        assert_eq!(t.distance(2, 3), 2);
        assert_eq!(t.leaves(), vec![0, 2, 3]);
    }

    #[test]
    fn from_parents_roundtrip() {
        let t = RootedTree::from_parents(0, &[None, Some(0), Some(1)]).unwrap();
        assert_eq!(t.depth(2), 2);
        assert!(RootedTree::from_parents(1, &[None, Some(0), Some(1)]).is_err());
    }
}
