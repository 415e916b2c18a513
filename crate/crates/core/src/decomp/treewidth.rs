use crate::{Error, Graph, Result};

/// A tree decomposition as a list of bags plus the tree edges between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    /// Sorted vertex lists.
    pub bags: Vec<Vec<usize>>,
    pub edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    pub fn new(bags: Vec<Vec<usize>>, edges: Vec<(usize, usize)>) -> Self {
        let bags = bags
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        Self { bags, edges }
    }

    /// Largest bag size minus one (0 for a decomposition of only tiny bags).
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(1).max(1) - 1
    }

    /// Checks the tree shape, vertex and edge coverage, and the connectivity
    /// of each vertex's occurrences.
    pub fn validate(&self, graph: &Graph) -> Result<()> {
        let b = self.bags.len();
        let fail = |msg: String| Err(Error::InvalidDecomposition(msg));
        if b == 0 {
            return fail("no bags".into());
        }
        if self.edges.len() != b - 1 {
            return fail(format!("{} tree edges for {b} bags", self.edges.len()));
        }
        let mut adj = vec![Vec::new(); b];
        for &(x, y) in &self.edges {
            if x >= b || y >= b || x == y {
                return fail(format!("tree edge ({x}, {y}) is invalid"));
            }
            adj[x].push(y);
            adj[y].push(x);
        }
        let mut seen = vec![false; b];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !std::mem::replace(&mut seen[y], true) {
                    stack.push(y);
                }
            }
        }
        if seen.iter().any(|&s| !s) {
            return fail("bags do not form a tree".into());
        }
        let n = graph.n();
        let mut holders = vec![Vec::new(); n];
        for (i, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                if v >= n {
                    return fail(format!("bag {i} holds unknown vertex {v}"));
                }
                holders[v].push(i);
            }
        }
        for (v, hs) in holders.iter().enumerate() {
            if hs.is_empty() {
                return fail(format!("vertex {v} is in no bag"));
            }
            let inside: std::collections::HashSet<usize> = hs.iter().copied().collect();
            let mut reached = std::collections::HashSet::from([hs[0]]);
            let mut stack = vec![hs[0]];
            while let Some(x) = stack.pop() {
                for &y in &adj[x] {
                    if inside.contains(&y) && reached.insert(y) {
                        stack.push(y);
                    }
                }
            }
            if reached.len() != inside.len() {
                return fail(format!("bags containing vertex {v} are not connected"));
            }
        }
        for (u, v) in graph.edges() {
            let covered = holders[u]
                .iter()
                .any(|&i| self.bags[i].binary_search(&v).is_ok());
            if !covered {
                return fail(format!("edge ({u}, {v}) is in no bag"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeDecompositionMode {
    /// Width-minimal decomposition; refused above `max_vertices`.
    Exact { max_vertices: usize },
    /// Min-fill elimination ordering.
    Heuristic,
    /// A decomposition supplied by the caller, validated against the graph.
    Given(TreeDecomposition),
}

impl TreeDecompositionMode {
    pub const DEFAULT_EXACT_LIMIT: usize = 25;

    pub fn exact() -> Self {
        Self::Exact {
            max_vertices: Self::DEFAULT_EXACT_LIMIT,
        }
    }
}

pub fn tree_decomposition(graph: &Graph, mode: TreeDecompositionMode) -> Result<TreeDecomposition> {
    let td = match mode {
        TreeDecompositionMode::Exact { max_vertices } => {
            let (_, order) = exact_elimination_order(graph, max_vertices)?;
            decomposition_from_order(graph, &order)
        }
        TreeDecompositionMode::Heuristic => decomposition_from_order(graph, &min_fill_order(graph)),
        TreeDecompositionMode::Given(td) => td,
    };
    td.validate(graph)?;
    Ok(td)
}

/// Width of the elimination ordering (max number of later neighbors in the fill-in graph).
pub fn elimination_width(graph: &Graph, order: &[usize]) -> usize {
    let n = graph.n();
    let mut position = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let mut nbrs: Vec<std::collections::BTreeSet<usize>> = (0..n)
        .map(|v| graph.neighbors(v).iter().copied().collect())
        .collect();
    let mut width = 0;
    for &v in order {
        let later: Vec<usize> = nbrs[v]
            .iter()
            .copied()
            .filter(|&u| position[u] > position[v])
            .collect();
        width = width.max(later.len());
        for (i, &a) in later.iter().enumerate() {
            for &b in &later[i + 1..] {
                nbrs[a].insert(b);
                nbrs[b].insert(a);
            }
        }
    }
    width
}

/// Exact treewidth via dynamic programming over vertex subsets:
/// `TW(S) = min_{v in S} max(TW(S - v), |Q(S - v, v)|)` where `Q(S, v)` is the
/// set of vertices outside `S + v` reachable from `v` through `S`.
///
/// Returns the width and an optimal elimination ordering.
pub fn exact_elimination_order(graph: &Graph, max_vertices: usize) -> Result<(usize, Vec<usize>)> {
    let n = graph.n();
    if n > max_vertices || n > 30 {
        return Err(Error::SizeLimit {
            what: "vertex count for exact treewidth",
            actual: n,
            limit: max_vertices.min(30),
        });
    }
    let adj: Vec<u32> = (0..n)
        .map(|v| graph.neighbors(v).iter().fold(0u32, |m, &u| m | 1 << u))
        .collect();
    let q = |set: u32, v: usize| -> u32 {
        // vertices outside set + v reachable from v via set
        let mut visited = 1u32 << v;
        let mut frontier = 1u32 << v;
        let mut outside = 0u32;
        while frontier != 0 {
            let x = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let nb = adj[x] & !visited;
            visited |= nb;
            outside |= nb & !set;
            frontier |= nb & set;
        }
        outside.count_ones()
    };
    let full: u32 = (1u32 << n) - 1;
    let mut tw = vec![u8::MAX; 1usize << n];
    tw[0] = 0;
    for s in 1..=full {
        let mut best = u8::MAX;
        let mut bits = s;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let rest = s & !(1 << v);
            let cand = tw[rest as usize].max(q(rest, v) as u8);
            best = best.min(cand);
        }
        tw[s as usize] = best;
    }
    let mut order = vec![0; n];
    let mut s = full;
    for slot in (0..n).rev() {
        let target = tw[s as usize];
        let mut bits = s;
        loop {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let rest = s & !(1 << v);
            if tw[rest as usize].max(q(rest, v) as u8) == target {
                order[slot] = v;
                s = rest;
                break;
            }
        }
    }
    Ok((tw[full as usize] as usize, order))
}

/// Greedy ordering that eliminates the vertex adding the fewest fill edges
/// (ties to the lowest index).
pub fn min_fill_order(graph: &Graph) -> Vec<usize> {
    let n = graph.n();
    let mut nbrs: Vec<std::collections::BTreeSet<usize>> = (0..n)
        .map(|v| graph.neighbors(v).iter().copied().collect())
        .collect();
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| {
                let list: Vec<usize> = nbrs[v].iter().copied().collect();
                let mut fill = 0usize;
                for (i, &a) in list.iter().enumerate() {
                    fill += list[i + 1..]
                        .iter()
                        .filter(|&&b| !nbrs[a].contains(&b))
                        .count();
                }
                (fill, v)
            })
            .unwrap();
        let list: Vec<usize> = nbrs[v].iter().copied().collect();
        for (i, &a) in list.iter().enumerate() {
            nbrs[a].remove(&v);
            for &b in &list[i + 1..] {
                nbrs[a].insert(b);
                nbrs[b].insert(a);
            }
        }
        nbrs[v].clear();
        alive[v] = false;
        order.push(v);
    }
    order
}

/// Tree decomposition induced by an elimination ordering: one bag per vertex
/// holding it and its later fill-in neighbors.
pub fn decomposition_from_order(graph: &Graph, order: &[usize]) -> TreeDecomposition {
    let n = graph.n();
    let mut position = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let mut nbrs: Vec<std::collections::BTreeSet<usize>> = (0..n)
        .map(|v| graph.neighbors(v).iter().copied().collect())
        .collect();
    let mut bags = Vec::with_capacity(n);
    let mut parent: Vec<Option<usize>> = vec![None; n];
    for (i, &v) in order.iter().enumerate() {
        let later: Vec<usize> = nbrs[v]
            .iter()
            .copied()
            .filter(|&u| position[u] > i)
            .collect();
        for (j, &a) in later.iter().enumerate() {
            for &b in &later[j + 1..] {
                nbrs[a].insert(b);
                nbrs[b].insert(a);
            }
        }
        parent[i] = later.iter().map(|&u| position[u]).min();
        let mut bag = later;
        bag.push(v);
        bags.push(bag);
    }
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    let mut last_root: Option<usize> = None;
    for i in 0..n {
        match parent[i] {
            Some(p) => edges.push((i, p)),
            None => {
                // chain independent components together
                if let Some(r) = last_root {
                    edges.push((r, i));
                }
                last_root = Some(i);
            }
        }
    }
    TreeDecomposition::new(bags, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force_treewidth(graph: &Graph) -> usize {
        fn permute(k: usize, order: &mut Vec<usize>, graph: &Graph, best: &mut usize) {
            if k == order.len() {
                *best = (*best).min(elimination_width(graph, order));
                return;
            }
            for i in k..order.len() {
                order.swap(k, i);
                permute(k + 1, order, graph, best);
                order.swap(k, i);
            }
        }
        let mut order: Vec<usize> = (0..graph.n()).collect();
        let mut best = usize::MAX;
        permute(0, &mut order, graph, &mut best);
        best
    }

    #[test]
    fn trees_and_cliques() {
        let tree = Graph::new(6, [(0, 1), (1, 2), (1, 3), (3, 4), (3, 5)]).unwrap();
        let td = tree_decomposition(&tree, TreeDecompositionMode::exact()).unwrap();
        assert_eq!(td.width(), 1);
        let tri = Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let td = tree_decomposition(&tri, TreeDecompositionMode::exact()).unwrap();
        assert_eq!(td.width(), 2);
        let td = tree_decomposition(&Graph::empty(3), TreeDecompositionMode::Heuristic).unwrap();
        assert_eq!(td.width(), 0);
    }

    #[test]
    fn figure_graph_width_matches_permutation_search() {
        let g = crate::model::figure_one().graph().clone();
        let (w, order) = exact_elimination_order(&g, 25).unwrap();
        assert_eq!(elimination_width(&g, &order), w);
        assert_eq!(w, brute_force_treewidth(&g));
        let heuristic = tree_decomposition(&g, TreeDecompositionMode::Heuristic).unwrap();
        assert!(w <= heuristic.width());
    }

    #[test]
    fn exact_mode_respects_limit() {
        let g = Graph::empty(12);
        assert!(matches!(
            tree_decomposition(&g, TreeDecompositionMode::Exact { max_vertices: 10 }),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn validation_reports_violations() {
        let g = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        let missing_edge = TreeDecomposition::new(vec![vec![0, 1], vec![2]], vec![(0, 1)]);
        let err = missing_edge.validate(&g).unwrap_err().to_string();
        assert!(err.contains("edge (1, 2)"), "{err}");
        let split =
            TreeDecomposition::new(vec![vec![0, 1], vec![2], vec![1, 2]], vec![(0, 1), (1, 2)]);
        let err = split.validate(&g).unwrap_err().to_string();
        assert!(err.contains("vertex 1"), "{err}");
    }
}
