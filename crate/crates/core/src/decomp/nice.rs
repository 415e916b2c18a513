use super::TreeDecomposition;
use crate::{Error, Graph, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    Leaf,
    Introduce(usize),
    Forget(usize),
    Join,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceNode {
    pub kind: NodeKind,
    /// Sorted.
    pub bag: Vec<usize>,
    pub children: Vec<usize>,
}

/// Rooted tree decomposition with singleton leaf bags, an empty root bag, and
/// only introduce / forget / join inner nodes.
///
/// Nodes are stored children-first, so iterating `nodes` in index order is a
/// valid bottom-up schedule; the root is the last node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceTreeDecomposition {
    pub nodes: Vec<NiceNode>,
}

impl NiceTreeDecomposition {
    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn width(&self) -> usize {
        self.nodes
            .iter()
            .map(|x| x.bag.len())
            .max()
            .unwrap_or(1)
            .max(1)
            - 1
    }

    /// Number of vertices forgotten strictly below or at each node.
    pub fn past_counts(&self) -> Vec<usize> {
        let mut past = vec![0; self.nodes.len()];
        for (i, node) in self.nodes.iter().enumerate() {
            let below: usize = node.children.iter().map(|&c| past[c]).sum();
            past[i] = below + usize::from(matches!(node.kind, NodeKind::Forget(_)));
        }
        past
    }

    pub fn validate(&self, graph: &Graph) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidDecomposition(msg));
        if self.nodes.is_empty() {
            return fail("no nodes".into());
        }
        let mut parent_count = vec![0usize; self.nodes.len()];
        for (i, node) in self.nodes.iter().enumerate() {
            if node.bag.windows(2).any(|w| w[0] >= w[1]) {
                return fail(format!("bag of node {i} is not strictly sorted"));
            }
            for &c in &node.children {
                if c >= i {
                    return fail(format!("node {i} has child {c} stored after it"));
                }
                parent_count[c] += 1;
            }
            let child_bag = |k: usize| &self.nodes[node.children[k]].bag;
            let ok = match node.kind {
                NodeKind::Leaf => node.children.is_empty() && node.bag.len() == 1,
                NodeKind::Introduce(v) => {
                    node.children.len() == 1 && {
                        let mut expect = child_bag(0).clone();
                        !expect.contains(&v) && {
                            expect.push(v);
                            expect.sort_unstable();
                            expect == node.bag
                        }
                    }
                }
                NodeKind::Forget(v) => {
                    node.children.len() == 1 && child_bag(0).contains(&v) && {
                        let expect: Vec<usize> =
                            child_bag(0).iter().copied().filter(|&u| u != v).collect();
                        expect == node.bag
                    }
                }
                NodeKind::Join => {
                    node.children.len() == 2
                        && child_bag(0) == &node.bag
                        && child_bag(1) == &node.bag
                }
            };
            if !ok {
                return fail(format!("node {i} violates its {:?} rule", node.kind));
            }
        }
        let root = self.root();
        if !self.nodes[root].bag.is_empty() {
            return fail("root bag is not empty".into());
        }
        if let Some(i) = (0..root).find(|&i| parent_count[i] != 1) {
            return fail(format!("node {i} has {} parents", parent_count[i]));
        }
        let bags: Vec<Vec<usize>> = self.nodes.iter().map(|x| x.bag.clone()).collect();
        let edges: Vec<(usize, usize)> = self
            .nodes
            .iter()
            .enumerate()
            .flat_map(|(i, x)| x.children.iter().map(move |&c| (c, i)))
            .collect();
        TreeDecomposition { bags, edges }.validate(graph)
    }
}

struct Builder {
    nodes: Vec<NiceNode>,
}

impl Builder {
    fn push(&mut self, kind: NodeKind, bag: Vec<usize>, children: Vec<usize>) -> usize {
        self.nodes.push(NiceNode {
            kind,
            bag,
            children,
        });
        self.nodes.len() - 1
    }

    /// Forgets `from \ to` then introduces `to \ from`, both ascending.
    fn chain(&mut self, mut node: usize, to: &[usize]) -> usize {
        let from = self.nodes[node].bag.clone();
        let mut bag = from.clone();
        for &v in from.iter().filter(|v| to.binary_search(v).is_err()) {
            bag.retain(|&u| u != v);
            node = self.push(NodeKind::Forget(v), bag.clone(), vec![node]);
        }
        for &v in to.iter().filter(|v| from.binary_search(v).is_err()) {
            bag.push(v);
            bag.sort_unstable();
            node = self.push(NodeKind::Introduce(v), bag.clone(), vec![node]);
        }
        node
    }

    fn leaf_chain(&mut self, bag: &[usize]) -> usize {
        let node = self.push(NodeKind::Leaf, vec![bag[0]], Vec::new());
        self.chain(node, bag)
    }
}

/// Converts a valid tree decomposition into a nice one of the same width.
pub fn to_nice(td: &TreeDecomposition, graph: &Graph) -> Result<NiceTreeDecomposition> {
    td.validate(graph)?;
    let b = td.bags.len();
    let mut adj = vec![Vec::new(); b];
    for &(x, y) in &td.edges {
        adj[x].push(y);
        adj[y].push(x);
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    // iterative post-order from bag 0
    let mut order = Vec::with_capacity(b);
    let mut parent = vec![usize::MAX; b];
    let mut stack = vec![0];
    parent[0] = 0;
    while let Some(x) = stack.pop() {
        order.push(x);
        for &y in &adj[x] {
            if parent[y] == usize::MAX {
                parent[y] = x;
                stack.push(y);
            }
        }
    }
    let mut builder = Builder { nodes: Vec::new() };
    let mut built: Vec<Option<usize>> = vec![None; b];
    for &x in order.iter().rev() {
        let bag = &td.bags[x];
        let children: Vec<usize> = adj[x]
            .iter()
            .copied()
            .filter(|&y| parent[y] == x && y != x)
            .filter_map(|y| built[y])
            .collect();
        let tops: Vec<usize> = children
            .into_iter()
            .map(|c| builder.chain(c, bag))
            .collect();
        built[x] = match tops.split_first() {
            None if bag.is_empty() => None,
            None => Some(builder.leaf_chain(bag)),
            Some((&first, rest)) => Some(rest.iter().fold(first, |acc, &t| {
                builder.push(NodeKind::Join, bag.clone(), vec![acc, t])
            })),
        };
    }
    let top = built[0].expect("a valid decomposition of a nonempty graph has a nonempty bag");
    builder.chain(top, &[]);
    Ok(NiceTreeDecomposition {
        nodes: builder.nodes,
    })
}
