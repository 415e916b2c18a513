use std::collections::HashMap;

use crate::{Error, Graph, Result};

/// Rooted forest whose ancestor relation covers every graph edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreedepthForest {
    parent: Vec<Option<usize>>,
}

impl TreedepthForest {
    /// Builds a forest from parent pointers; acyclicity is checked here, edge
    /// coverage by [`validate`](Self::validate).
    pub fn new(parent: Vec<Option<usize>>) -> Result<Self> {
        let n = parent.len();
        if let Some(v) = (0..n).find(|&v| parent[v].is_some_and(|p| p >= n)) {
            return Err(Error::InvalidDecomposition(format!(
                "parent of vertex {v} is out of range"
            )));
        }
        let forest = TreedepthForest { parent };
        for v in 0..n {
            let mut steps = 0;
            let mut x = v;
            while let Some(p) = forest.parent[x] {
                x = p;
                steps += 1;
                if steps > n {
                    return Err(Error::InvalidDecomposition(format!(
                        "vertex {v} lies on a cycle"
                    )));
                }
            }
        }
        Ok(forest)
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parent
    }

    pub fn roots(&self) -> Vec<usize> {
        (0..self.n())
            .filter(|&v| self.parent[v].is_none())
            .collect()
    }

    /// Children of each vertex, ascending.
    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut ch = vec![Vec::new(); self.n()];
        for v in 0..self.n() {
            if let Some(p) = self.parent[v] {
                ch[p].push(v);
            }
        }
        ch
    }

    /// Number of vertices on the path from the root to `v`, inclusive.
    pub fn depth(&self, v: usize) -> usize {
        self.ancestors(v).len() + 1
    }

    /// Proper ancestors of `v`, nearest first.
    pub fn ancestors(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut x = v;
        while let Some(p) = self.parent[x] {
            out.push(p);
            x = p;
        }
        out
    }

    pub fn is_ancestor(&self, a: usize, v: usize) -> bool {
        let mut x = v;
        while let Some(p) = self.parent[x] {
            if p == a {
                return true;
            }
            x = p;
        }
        false
    }

    pub fn height(&self) -> usize {
        (0..self.n()).map(|v| self.depth(v)).max().unwrap_or(0)
    }

    pub fn validate(&self, graph: &Graph) -> Result<()> {
        if self.n() != graph.n() {
            return Err(Error::InvalidDecomposition(format!(
                "forest has {} vertices, graph has {}",
                self.n(),
                graph.n()
            )));
        }
        for (u, v) in graph.edges() {
            if !self.is_ancestor(u, v) && !self.is_ancestor(v, u) {
                return Err(Error::InvalidDecomposition(format!(
                    "edge ({u}, {v}) joins two vertices that are not in ancestor relation"
                )));
            }
        }
        Ok(())
    }

    /// Assigns `parent` to `v`; used to detach subtrees during reduction.
    pub(crate) fn set_parent(&mut self, v: usize, parent: Option<usize>) {
        self.parent[v] = parent;
    }
}

#[derive(Debug, Clone)]
pub enum TreedepthMode {
    Exact { max_vertices: usize },
    Heuristic,
    Given(TreedepthForest),
}

impl TreedepthMode {
    pub const DEFAULT_EXACT_LIMIT: usize = 20;

    pub fn exact() -> Self {
        TreedepthMode::Exact {
            max_vertices: Self::DEFAULT_EXACT_LIMIT,
        }
    }
}

pub fn treedepth_forest(graph: &Graph, mode: TreedepthMode) -> Result<TreedepthForest> {
    let forest = match mode {
        TreedepthMode::Exact { max_vertices } => exact_forest(graph, max_vertices)?,
        TreedepthMode::Heuristic => dfs_forest(graph),
        TreedepthMode::Given(f) => f,
    };
    forest.validate(graph)?;
    Ok(forest)
}

/// Forest of depth-first search trees, started at the smallest vertex of each
/// component. Every non-tree edge of a DFS is a back edge.
pub fn dfs_forest(graph: &Graph) -> TreedepthForest {
    let n = graph.n();
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut stack = vec![(s, 0usize)];
        while let Some(top) = stack.last_mut() {
            let (v, i) = *top;
            if let Some(&w) = graph.neighbors(v).get(i) {
                top.1 += 1;
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(v);
                    stack.push((w, 0));
                }
            } else {
                stack.pop();
            }
        }
    }
    TreedepthForest { parent }
}

struct ExactTd {
    adj: Vec<u32>,
    memo: HashMap<u32, (u8, u8)>,
}

impl ExactTd {
    fn components(&self, set: u32) -> Vec<u32> {
        let mut out = Vec::new();
        let mut rest = set;
        while rest != 0 {
            let mut comp = rest & rest.wrapping_neg();
            let mut frontier = comp;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let new = self.adj[v] & set & !comp;
                comp |= new;
                frontier |= new;
            }
            out.push(comp);
            rest &= !comp;
        }
        out
    }

    fn depth_of(&mut self, set: u32) -> u8 {
        self.components(set)
            .into_iter()
            .map(|c| self.connected(c).0)
            .max()
            .unwrap_or(0)
    }

    /// (treedepth, best root) of a connected vertex set.
    fn connected(&mut self, set: u32) -> (u8, u8) {
        if set.count_ones() == 1 {
            return (1, set.trailing_zeros() as u8);
        }
        if let Some(&hit) = self.memo.get(&set) {
            return hit;
        }
        let mut best = (u8::MAX, 0u8);
        let mut rest = set;
        while rest != 0 {
            let v = rest.trailing_zeros();
            rest &= rest - 1;
            let d = 1 + self.depth_of(set & !(1 << v));
            if d < best.0 {
                best = (d, v as u8);
            }
        }
        self.memo.insert(set, best);
        best
    }

    fn build(&mut self, set: u32, above: Option<usize>, parent: &mut [Option<usize>]) {
        for comp in self.components(set) {
            let (_, root) = self.connected(comp);
            let root = root as usize;
            parent[root] = above;
            self.build(comp & !(1 << root), Some(root), parent);
        }
    }
}

/// Minimum-height forest by exhaustive search over connected vertex subsets.
pub fn exact_forest(graph: &Graph, max_vertices: usize) -> Result<TreedepthForest> {
    let n = graph.n();
    let limit = max_vertices.min(31);
    if n > limit {
        return Err(Error::SizeLimit {
            what: "exact treedepth vertices",
            actual: n,
            limit,
        });
    }
    let adj = (0..n)
        .map(|v| graph.neighbors(v).iter().fold(0u32, |m, &u| m | (1 << u)))
        .collect();
    let mut search = ExactTd {
        adj,
        memo: HashMap::new(),
    };
    let mut parent = vec![None; n];
    let full = if n == 0 { 0 } else { u32::MAX >> (32 - n) };
    search.build(full, None, &mut parent);
    Ok(TreedepthForest { parent })
}

/// Treedepth of the graph by exact search.
pub fn exact_treedepth(graph: &Graph, max_vertices: usize) -> Result<usize> {
    Ok(exact_forest(graph, max_vertices)?.height())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    #[test]
    fn small_families() {
        let star = Graph::new(6, (1..6).map(|i| (0, i))).unwrap();
        assert_eq!(exact_treedepth(&star, 20).unwrap(), 2);
        assert_eq!(exact_treedepth(&path(4), 20).unwrap(), 3);
        assert_eq!(exact_treedepth(&Graph::empty(5), 20).unwrap(), 1);
        for n in 1usize..=15 {
            let expect = (usize::BITS - n.leading_zeros()) as usize;
            assert_eq!(exact_treedepth(&path(n), 20).unwrap(), expect, "P{n}");
        }
    }

    #[test]
    fn dfs_forest_is_valid() {
        let g = crate::model::figure_one();
        let f = dfs_forest(g.graph());
        f.validate(g.graph()).unwrap();
        let e = exact_forest(g.graph(), 20).unwrap();
        e.validate(g.graph()).unwrap();
        assert!(e.height() <= f.height());
    }

    #[test]
    fn rejects_cycles_and_uncovered_edges() {
        assert!(TreedepthForest::new(vec![Some(1), Some(0)]).is_err());
        let f = TreedepthForest::new(vec![None, None]).unwrap();
        let g = path(2);
        let msg = f.validate(&g).unwrap_err().to_string();
        assert!(msg.contains("edge (0, 1)"), "{msg}");
    }
}
