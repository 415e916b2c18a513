use std::rc::Rc;

use crate::decomp::TreedepthForest;
use crate::{ColoredInstance, Graph};

#[derive(Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct TypeNode {
    color: usize,
    /// Depths (root = 1) of the ancestors adjacent to the vertex, ascending.
    ancestor_depths: Vec<usize>,
    /// Sorted.
    children: Vec<VertexType>,
}

/// Recursive description of a vertex and its forest subtree. Equality and
/// ordering are structural, so codes do not depend on vertex numbering.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexType(Rc<TypeNode>);

impl VertexType {
    pub fn color(&self) -> usize {
        self.0.color
    }

    pub fn ancestor_depths(&self) -> &[usize] {
        &self.0.ancestor_depths
    }

    pub fn children(&self) -> &[VertexType] {
        &self.0.children
    }
}

/// Vertices ordered by decreasing depth, ties by index.
pub(crate) fn bottom_up(forest: &TreedepthForest) -> Vec<usize> {
    let depth: Vec<usize> = (0..forest.n()).map(|v| forest.depth(v)).collect();
    let mut order: Vec<usize> = (0..forest.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(depth[v]), v));
    order
}

pub(crate) fn type_of(
    graph: &Graph,
    colors: &[usize],
    forest: &TreedepthForest,
    v: usize,
    children: &[usize],
    types: &[Option<VertexType>],
) -> VertexType {
    let ancestors = forest.ancestors(v);
    let depth = ancestors.len() + 1;
    let mut ancestor_depths: Vec<usize> = ancestors
        .iter()
        .enumerate()
        .filter(|&(_, &a)| graph.has_edge(v, a))
        .map(|(i, _)| depth - 1 - i)
        .collect();
    ancestor_depths.sort_unstable();
    let mut child_types: Vec<VertexType> = children
        .iter()
        .map(|&c| types[c].clone().expect("children are typed first"))
        .collect();
    child_types.sort();
    VertexType(Rc::new(TypeNode {
        color: colors[v],
        ancestor_depths,
        children: child_types,
    }))
}

pub(crate) fn types_in(
    graph: &Graph,
    colors: &[usize],
    forest: &TreedepthForest,
) -> Vec<VertexType> {
    let children = forest.children();
    let mut types: Vec<Option<VertexType>> = vec![None; forest.n()];
    for v in bottom_up(forest) {
        types[v] = Some(type_of(graph, colors, forest, v, &children[v], &types));
    }
    types.into_iter().map(Option::unwrap).collect()
}

/// Type of every vertex with respect to `forest`.
pub fn vertex_types(instance: &ColoredInstance, forest: &TreedepthForest) -> Vec<VertexType> {
    types_in(instance.graph(), instance.colors(), forest)
}
