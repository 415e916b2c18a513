use crate::{Error, Result};

/// Simple undirected graph on vertices `0..n`.
///
/// Keeps sorted adjacency lists next to a bit matrix so both neighbor
/// iteration and adjacency queries are cheap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    m: usize,
    adj: Vec<Vec<usize>>,
    words: usize,
    matrix: Vec<u64>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicate edges and out-of-range endpoints.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let words = n.div_ceil(64).max(1);
        let mut g = Graph {
            n,
            m: 0,
            adj: vec![Vec::new(); n],
            words,
            matrix: vec![0; words * n],
        };
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidInstance(format!(
                    "edge ({u}, {v}) has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidInstance(format!("self-loop at vertex {u}")));
            }
            if g.has_edge(u, v) {
                return Err(Error::InvalidInstance(format!("duplicate edge ({u}, {v})")));
            }
            g.set(u, v);
            g.set(v, u);
            g.adj[u].push(v);
            g.adj[v].push(u);
            g.m += 1;
        }
        for list in &mut g.adj {
            list.sort_unstable();
        }
        Ok(g)
    }

    /// Graph with no edges.
    pub fn empty(n: usize) -> Self {
        Self::new(n, std::iter::empty()).expect("edgeless graph is valid")
    }

    fn set(&mut self, u: usize, v: usize) {
        self.matrix[u * self.words + v / 64] |= 1 << (v % 64);
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.matrix[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.adj[u]
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Copy of the graph with the given edges deleted. Missing edges are ignored.
    pub fn without_edges(&self, removed: &[(usize, usize)]) -> Graph {
        let mut drop = std::collections::HashSet::new();
        for &(u, v) in removed {
            drop.insert((u.min(v), u.max(v)));
        }
        let kept: Vec<_> = self.edges().filter(|e| !drop.contains(e)).collect();
        Graph::new(self.n, kept).expect("subgraph of a valid graph")
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for &y in &self.adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                        stack.push(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Whether the subgraph induced by `vertices` is connected (empty sets count as connected).
    pub fn induces_connected(&self, vertices: &[usize]) -> bool {
        let Some(&start) = vertices.first() else {
            return true;
        };
        let inside: std::collections::HashSet<usize> = vertices.iter().copied().collect();
        let mut seen = std::collections::HashSet::from([start]);
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &y in &self.adj[x] {
                if inside.contains(&y) && seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        seen.len() == inside.len()
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        Graph::new(self.n, self.edges().map(|(u, v)| (perm[u], perm[v]))).expect("permutation")
    }
}
