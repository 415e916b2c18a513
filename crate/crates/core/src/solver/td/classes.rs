use std::collections::HashMap;

use crate::{Error, Graph, Result};

/// Color sequence plus adjacency bits in column order (`(0,1), (0,2), (1,2),
/// (0,3), ...`) under a canonical vertex order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode {
    pub colors: Vec<usize>,
    pub adjacency: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentClass {
    pub code: CanonicalCode,
    /// Every member listed in its canonical order; position `i` of each
    /// member plays the same role.
    pub members: Vec<Vec<usize>>,
}

impl ComponentClass {
    pub fn multiplicity(&self) -> usize {
        self.members.len()
    }

    pub fn size(&self) -> usize {
        self.code.colors.len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        let (i, j) = (i.min(j), i.max(j));
        i != j && self.code.adjacency[j * (j - 1) / 2 + i]
    }
}

/// Colors refined by neighbor multisets until stable. Labels are ranks of
/// sorted signatures and hence invariant under relabeling.
fn refine(adj: &[Vec<bool>], colors: &[usize]) -> Vec<usize> {
    let s = colors.len();
    let mut label = colors.to_vec();
    let mut classes = 0;
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..s)
            .map(|i| {
                let mut nb: Vec<usize> = (0..s).filter(|&j| adj[i][j]).map(|j| label[j]).collect();
                nb.sort_unstable();
                (label[i], nb)
            })
            .collect();
        let mut distinct = sigs.clone();
        distinct.sort();
        distinct.dedup();
        label = sigs
            .iter()
            .map(|sig| distinct.binary_search(sig).unwrap())
            .collect();
        if distinct.len() == classes {
            return label;
        }
        classes = distinct.len();
    }
}

struct Canon<'a> {
    adj: &'a [Vec<bool>],
    /// Refined cell of each canonical position.
    cell_of_position: Vec<usize>,
    cell: Vec<usize>,
    order: Vec<usize>,
    used: Vec<bool>,
    bits: Vec<bool>,
    best: Option<(Vec<bool>, Vec<usize>)>,
}

impl Canon<'_> {
    fn search(&mut self) {
        let j = self.order.len();
        if j == self.cell.len() {
            if self.best.as_ref().is_none_or(|(b, _)| self.bits < *b) {
                self.best = Some((self.bits.clone(), self.order.clone()));
            }
            return;
        }
        let want = self.cell_of_position[j];
        for v in 0..self.cell.len() {
            if self.used[v] || self.cell[v] != want {
                continue;
            }
            let mark = self.bits.len();
            self.bits.extend(self.order.iter().map(|&u| self.adj[u][v]));
            let worse = self
                .best
                .as_ref()
                .is_some_and(|(b, _)| self.bits[..] > b[..self.bits.len()]);
            if !worse {
                self.used[v] = true;
                self.order.push(v);
                self.search();
                self.order.pop();
                self.used[v] = false;
            }
            self.bits.truncate(mark);
        }
    }
}

/// Canonical code of the subgraph induced by `vertices` and the vertex order
/// realizing it.
pub fn canonical_form(
    graph: &Graph,
    colors: &[usize],
    vertices: &[usize],
) -> (CanonicalCode, Vec<usize>) {
    let s = vertices.len();
    let adj: Vec<Vec<bool>> = vertices
        .iter()
        .map(|&u| vertices.iter().map(|&v| graph.has_edge(u, v)).collect())
        .collect();
    let local_colors: Vec<usize> = vertices.iter().map(|&v| colors[v]).collect();
    let cell = refine(&adj, &local_colors);
    let mut cell_of_position = cell.clone();
    cell_of_position.sort_unstable();
    let mut canon = Canon {
        adj: &adj,
        cell_of_position,
        cell,
        order: Vec::with_capacity(s),
        used: vec![false; s],
        bits: Vec::new(),
        best: None,
    };
    canon.search();
    let (adjacency, order) = canon.best.expect("at least one order exists");
    let order: Vec<usize> = order.into_iter().map(|i| vertices[i]).collect();
    let code = CanonicalCode {
        colors: order.iter().map(|&v| colors[v]).collect(),
        adjacency,
    };
    (code, order)
}

/// Connected components grouped into isomorphism classes that respect
/// colors, in order of their smallest vertex.
pub fn component_classes(
    graph: &Graph,
    colors: &[usize],
    cap: usize,
) -> Result<Vec<ComponentClass>> {
    let mut classes: Vec<ComponentClass> = Vec::new();
    let mut index: HashMap<CanonicalCode, usize> = HashMap::new();
    for comp in graph.components() {
        if comp.len() > cap {
            return Err(Error::SizeLimit {
                what: "component vertices",
                actual: comp.len(),
                limit: cap,
            });
        }
        let (code, order) = canonical_form(graph, colors, &comp);
        match index.get(&code) {
            Some(&i) => classes[i].members.push(order),
            None => {
                index.insert(code.clone(), classes.len());
                classes.push(ComponentClass {
                    code,
                    members: vec![order],
                });
            }
        }
    }
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn matching_edges_form_one_class() {
        let g = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        let c = component_classes(&g, &[0, 1, 1, 0], 10).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].multiplicity(), 2);
        let c = component_classes(&g, &[0, 1, 1, 1], 10).unwrap();
        assert_eq!(c.len(), 2);
    }

    #[test]
    fn edge_and_non_edge_differ() {
        let g = Graph::new(4, [(0, 1)]).unwrap();
        let c = component_classes(&g, &[0; 4], 10).unwrap();
        // one edge class and one singleton class with multiplicity two
        assert_eq!(c.len(), 2);
        assert_eq!(c[1].multiplicity(), 2);
    }

    #[test]
    fn cap_is_enforced() {
        let g = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert!(component_classes(&g, &[0; 3], 2).is_err());
    }

    proptest! {
        #[test]
        fn code_ignores_relabeling(
            n in 1usize..=7,
            bits in any::<u32>(),
            color_bits in any::<u8>(),
            seed in any::<u64>(),
        ) {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits >> (k % 32) & 1 == 1 {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            let g = Graph::new(n, edges).unwrap();
            let colors: Vec<usize> = (0..n).map(|v| (color_bits >> v & 1) as usize).collect();
            let mut perm: Vec<usize> = (0..n).collect();
            let mut state = seed;
            for i in (1..n).rev() {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                perm.swap(i, (state >> 33) as usize % (i + 1));
            }
            let h = g.permuted(&perm);
            let mut permuted_colors = vec![0; n];
            for v in 0..n {
                permuted_colors[perm[v]] = colors[v];
            }
            let all: Vec<usize> = (0..n).collect();
            let (a, order) = canonical_form(&g, &colors, &all);
            let (b, _) = canonical_form(&h, &permuted_colors, &all);
            prop_assert_eq!(&a, &b);
            for j in 1..n {
                for i in 0..j {
                    prop_assert_eq!(a.adjacency[j * (j - 1) / 2 + i], g.has_edge(order[i], order[j]));
                }
            }
        }
    }
}
