use std::collections::BTreeMap;

use super::types::{bottom_up, type_of, VertexType};
use crate::decomp::TreedepthForest;
use crate::{ColoredInstance, Graph};

#[derive(Debug, Clone)]
pub struct ReducedInstance {
    pub graph: Graph,
    pub forest: TreedepthForest,
    /// Removed edges, `u < v`, ascending.
    pub removed: Vec<(usize, usize)>,
    /// Remaining budget when the instance carried one.
    pub budget: Option<i64>,
}

impl ReducedInstance {
    pub fn rejected(&self) -> bool {
        self.budget.is_some_and(|b| b < 0)
    }
}

fn subtree(children: &[Vec<usize>], w: usize) -> Vec<usize> {
    let mut out = vec![w];
    let mut i = 0;
    while i < out.len() {
        out.extend(children[out[i]].iter().copied());
        i += 1;
    }
    out
}

/// Layer by layer from the deepest, the children of every vertex are grouped
/// by type and only the `gamma` smallest of each group stay attached. Every
/// other child is detached together with its subtree, whose edges to the
/// former ancestors are deleted.
pub fn reduce_by_types(
    instance: &ColoredInstance,
    forest: &TreedepthForest,
    gamma: usize,
) -> ReducedInstance {
    assert!(gamma >= 1, "gamma must be positive");
    let n = instance.n();
    let mut graph = instance.graph().clone();
    let mut forest = forest.clone();
    let mut removed = Vec::new();
    let mut types: Vec<Option<VertexType>> = vec![None; n];
    let order = bottom_up(&forest);
    let depth: Vec<usize> = (0..n).map(|v| forest.depth(v)).collect();
    let mut start = 0;
    while start < order.len() {
        let d = depth[order[start]];
        let end = start
            + order[start..]
                .iter()
                .take_while(|&&v| depth[v] == d)
                .count();
        let children = forest.children();
        for &v in &order[start..end] {
            types[v] = Some(type_of(
                &graph,
                instance.colors(),
                &forest,
                v,
                &children[v],
                &types,
            ));
        }
        // group this layer by (parent, type)
        let mut groups: BTreeMap<(usize, &VertexType), Vec<usize>> = BTreeMap::new();
        for &v in &order[start..end] {
            if let Some(p) = forest.parent(v) {
                groups
                    .entry((p, types[v].as_ref().unwrap()))
                    .or_default()
                    .push(v);
            }
        }
        let mut detach: Vec<usize> = groups
            .into_values()
            .flat_map(|mut members| {
                members.sort_unstable();
                members.split_off(gamma.min(members.len()))
            })
            .collect();
        detach.sort_unstable();
        let mut cut = Vec::new();
        for &w in &detach {
            let ancestors = forest.ancestors(w);
            for x in subtree(&children, w) {
                for &a in &ancestors {
                    if graph.has_edge(x, a) {
                        cut.push((x.min(a), x.max(a)));
                    }
                }
            }
            forest.set_parent(w, None);
        }
        if !cut.is_empty() {
            graph = graph.without_edges(&cut);
            removed.extend(cut);
        }
        start = end;
    }
    removed.sort_unstable();
    let budget = instance.budget().map(|b| b as i64 - removed.len() as i64);
    ReducedInstance {
        graph,
        forest,
        removed,
        budget,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star(m: usize) -> (ColoredInstance, TreedepthForest) {
        let i = ColoredInstance::from_edges(m + 1, (1..=m).map(|v| (0, v)), vec![0; m + 1])
            .unwrap()
            .with_budget(Some(10));
        let f = TreedepthForest::new((0..=m).map(|v| (v > 0).then_some(0)).collect()).unwrap();
        (i, f)
    }

    #[test]
    fn surplus_leaves_are_cut_off() {
        let (i, f) = star(5);
        let r = reduce_by_types(&i, &f, 3);
        assert_eq!(r.removed, vec![(0, 4), (0, 5)]);
        assert_eq!(r.budget, Some(8));
        assert_eq!(r.graph.m(), 3);
        assert_eq!(r.forest.parent(4), None);
        r.forest.validate(&r.graph).unwrap();
    }

    #[test]
    fn large_gamma_changes_nothing() {
        let (i, f) = star(5);
        let r = reduce_by_types(&i, &f, 5);
        assert!(r.removed.is_empty());
        assert_eq!(r.budget, Some(10));
        assert!(!r.rejected());
    }

    #[test]
    fn whole_subtree_loses_its_ancestor_edges() {
        // root 0 with two identical children 1, 2; each has a leaf (3, 4) adjacent to the root
        let i = ColoredInstance::from_edges(
            5,
            [(0, 1), (0, 2), (1, 3), (2, 4), (0, 3), (0, 4)],
            vec![0; 5],
        )
        .unwrap()
        .with_budget(Some(1));
        let f = TreedepthForest::new(vec![None, Some(0), Some(0), Some(1), Some(2)]).unwrap();
        let r = reduce_by_types(&i, &f, 1);
        assert_eq!(r.removed, vec![(0, 2), (0, 4)]);
        assert!(r.rejected());
        r.forest.validate(&r.graph).unwrap();
    }
}
