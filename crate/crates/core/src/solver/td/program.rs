use std::collections::{BTreeMap, HashMap};

use super::classes::ComponentClass;
use crate::bip::{self, Program, Relation};
use crate::partitions::{blocks, SetPartitions};
use crate::{Cost, FairletVector};

/// Per-color vertex counts of a vertex set.
pub type TypeVector = Vec<usize>;

/// One way of splitting the members of a class, cheapest for its multiset of
/// part types.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutOption {
    /// Part types, sorted.
    pub signature: Vec<TypeVector>,
    /// Cut edges plus missing edges inside parts.
    pub cost: Cost,
    /// Parts as positions of the canonical order.
    pub parts: Vec<Vec<usize>>,
}

/// Partitions of a class representative whose parts have at most `max_part`
/// vertices, one cheapest partition per signature.
pub fn cut_options(class: &ComponentClass, kappa: usize, max_part: usize) -> Vec<CutOption> {
    let s = class.size();
    let colors = &class.code.colors;
    let mut best: BTreeMap<Vec<TypeVector>, CutOption> = BTreeMap::new();
    for labels in SetPartitions::new(s) {
        let parts = blocks(&labels);
        if parts.iter().any(|p| p.len() > max_part) {
            continue;
        }
        let mut cost = 0;
        for j in 1..s {
            for i in 0..j {
                if (labels[i] == labels[j]) != class.has_edge(i, j) {
                    cost += 1;
                }
            }
        }
        let mut signature: Vec<TypeVector> = parts
            .iter()
            .map(|p| {
                let mut t = vec![0; kappa];
                p.iter().for_each(|&i| t[colors[i]] += 1);
                t
            })
            .collect();
        signature.sort();
        match best.get(&signature) {
            Some(o) if o.cost <= cost => {}
            _ => {
                best.insert(
                    signature.clone(),
                    CutOption {
                        signature,
                        cost,
                        parts,
                    },
                );
            }
        }
    }
    best.into_values().collect()
}

/// Pairs of vertices lying in different parts of one cluster.
pub fn cluster_cost(part_sizes: &[usize]) -> Cost {
    let total: usize = part_sizes.iter().sum();
    let squares: usize = part_sizes.iter().map(|s| s * s).sum();
    ((total * total - squares) / 2) as Cost
}

/// A fair cluster assembled from `count` parts of each listed type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shape {
    /// `(type index, count)`, ascending type index, counts positive.
    pub counts: Vec<(usize, usize)>,
    pub cost: Cost,
}

/// Multisets of the given types with total size at most `max_size` whose
/// color vector is a positive multiple of the fairlet; no type is used more
/// than `available[t]` times.
pub fn fair_shapes(
    types: &[TypeVector],
    available: &[usize],
    fairlet: &FairletVector,
    max_size: usize,
) -> Vec<Shape> {
    let kappa = fairlet.kappa();
    let d_max = max_size / fairlet.size();
    let cap: Vec<usize> = (0..kappa).map(|i| fairlet.count(i) * d_max).collect();
    let sizes: Vec<usize> = types.iter().map(|t| t.iter().sum()).collect();
    let mut out = Vec::new();
    let mut chosen: Vec<(usize, usize)> = Vec::new();
    let mut colors = vec![0; kappa];
    #[allow(clippy::too_many_arguments)]
    fn go(
        t: usize,
        types: &[TypeVector],
        sizes: &[usize],
        available: &[usize],
        fairlet: &FairletVector,
        cap: &[usize],
        chosen: &mut Vec<(usize, usize)>,
        colors: &mut Vec<usize>,
        out: &mut Vec<Shape>,
    ) {
        if t == types.len() {
            if fairlet.multiple_of(colors).is_some() {
                let parts: Vec<usize> = chosen
                    .iter()
                    .flat_map(|&(t, c)| std::iter::repeat_n(sizes[t], c))
                    .collect();
                out.push(Shape {
                    counts: chosen.clone(),
                    cost: cluster_cost(&parts),
                });
            }
            return;
        }
        go(
            t + 1,
            types,
            sizes,
            available,
            fairlet,
            cap,
            chosen,
            colors,
            out,
        );
        let mut c = 0;
        loop {
            c += 1;
            if c > available[t] {
                break;
            }
            let fits = (0..colors.len()).all(|i| colors[i] + c * types[t][i] <= cap[i]);
            if !fits {
                break;
            }
            (0..colors.len()).for_each(|i| colors[i] += c * types[t][i]);
            chosen.push((t, c));
            go(
                t + 1,
                types,
                sizes,
                available,
                fairlet,
                cap,
                chosen,
                colors,
                out,
            );
            chosen.pop();
            (0..colors.len()).for_each(|i| colors[i] -= c * types[t][i]);
        }
    }
    go(
        0,
        types,
        &sizes,
        available,
        fairlet,
        &cap,
        &mut chosen,
        &mut colors,
        &mut out,
    );
    out
}

/// The program over component, cut and cluster counts, with the index of
/// every variable.
#[derive(Debug, Clone)]
pub struct TdProgram {
    pub program: Program,
    pub types: Vec<TypeVector>,
    pub options: Vec<Vec<CutOption>>,
    pub shapes: Vec<Shape>,
    pub comp_vars: Vec<usize>,
    /// `cut_vars[class][option]`.
    pub cut_vars: Vec<Vec<usize>>,
    pub cluster_vars: Vec<usize>,
}

pub fn build_program(
    classes: &[ComponentClass],
    fairlet: &FairletVector,
    max_cluster: usize,
) -> TdProgram {
    let kappa = fairlet.kappa();
    let options: Vec<Vec<CutOption>> = classes
        .iter()
        .map(|c| cut_options(c, kappa, max_cluster))
        .collect();
    let mut type_index: HashMap<TypeVector, usize> = HashMap::new();
    let mut types: Vec<TypeVector> = options
        .iter()
        .flatten()
        .flat_map(|o| o.signature.iter().cloned())
        .collect();
    types.sort();
    types.dedup();
    for (i, t) in types.iter().enumerate() {
        type_index.insert(t.clone(), i);
    }
    let count_in = |o: &CutOption| {
        let mut m: BTreeMap<usize, usize> = BTreeMap::new();
        for t in &o.signature {
            *m.entry(type_index[t]).or_default() += 1;
        }
        m
    };
    let mut available = vec![0usize; types.len()];
    for (class, opts) in classes.iter().zip(&options) {
        let mut most = vec![0usize; types.len()];
        for o in opts {
            for (t, c) in count_in(o) {
                most[t] = most[t].max(c);
            }
        }
        for t in 0..types.len() {
            available[t] += most[t] * class.multiplicity();
        }
    }
    let shapes = fair_shapes(&types, &available, fairlet, max_cluster);

    let mut program = Program::new();
    let comp_vars: Vec<usize> = available
        .iter()
        .map(|&a| program.add_variable(a as i64, 0))
        .collect();
    let cut_vars: Vec<Vec<usize>> = classes
        .iter()
        .zip(&options)
        .map(|(class, opts)| {
            opts.iter()
                .map(|o| program.add_variable(class.multiplicity() as i64, o.cost as i64))
                .collect()
        })
        .collect();
    let cluster_vars: Vec<usize> = shapes
        .iter()
        .map(|s| {
            let ub = s
                .counts
                .iter()
                .map(|&(t, c)| available[t] / c)
                .min()
                .unwrap_or(0);
            program.add_variable(ub as i64, s.cost as i64)
        })
        .collect();

    for (k, class) in classes.iter().enumerate() {
        let terms = cut_vars[k].iter().map(|&v| (v, 1)).collect();
        program.add_constraint(terms, Relation::Eq, class.multiplicity() as i64);
    }
    let mut from_cuts: Vec<Vec<(usize, i64)>> = comp_vars.iter().map(|&v| vec![(v, 1)]).collect();
    for (k, opts) in options.iter().enumerate() {
        for (j, o) in opts.iter().enumerate() {
            for (t, c) in count_in(o) {
                from_cuts[t].push((cut_vars[k][j], -(c as i64)));
            }
        }
    }
    let mut from_clusters: Vec<Vec<(usize, i64)>> =
        comp_vars.iter().map(|&v| vec![(v, 1)]).collect();
    for (s, shape) in shapes.iter().enumerate() {
        for &(t, c) in &shape.counts {
            from_clusters[t].push((cluster_vars[s], -(c as i64)));
        }
    }
    for terms in from_cuts.into_iter().chain(from_clusters) {
        program.add_constraint(terms, Relation::Eq, 0);
    }
    TdProgram {
        program,
        types,
        options,
        shapes,
        comp_vars,
        cut_vars,
        cluster_vars,
    }
}

impl TdProgram {
    pub fn solve(&self) -> Option<bip::BipSolution> {
        bip::solve(&self.program)
    }

    /// Clusters described by a solution: members of each class are split
    /// as the cut counts say, the parts are pooled by type, and every shape
    /// draws its parts from the pools in order.
    pub fn realize(&self, classes: &[ComponentClass], values: &[i64]) -> Vec<Vec<usize>> {
        let kappa = self.types.first().map_or(0, Vec::len);
        let mut pools: Vec<Vec<Vec<usize>>> = vec![Vec::new(); self.types.len()];
        for (k, class) in classes.iter().enumerate() {
            let mut members = class.members.iter();
            for (j, o) in self.options[k].iter().enumerate() {
                for _ in 0..values[self.cut_vars[k][j]] {
                    let member = members.next().expect("cut counts sum to the class size");
                    for part in &o.parts {
                        let vertices: Vec<usize> = part.iter().map(|&i| member[i]).collect();
                        let mut t = vec![0; kappa];
                        part.iter().for_each(|&i| t[class.code.colors[i]] += 1);
                        let ti = self.types.binary_search(&t).expect("part type is known");
                        pools[ti].push(vertices);
                    }
                }
            }
        }
        let mut next = vec![0usize; self.types.len()];
        let mut clusters = Vec::new();
        for (s, shape) in self.shapes.iter().enumerate() {
            for _ in 0..values[self.cluster_vars[s]] {
                let mut cluster = Vec::new();
                for &(t, c) in &shape.counts {
                    for _ in 0..c {
                        cluster.extend(pools[t][next[t]].iter().copied());
                        next[t] += 1;
                    }
                }
                cluster.sort_unstable();
                clusters.push(cluster);
            }
        }
        debug_assert!(next.iter().zip(&pools).all(|(&n, p)| n == p.len()));
        clusters
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::td::classes::component_classes;
    use crate::Graph;

    #[test]
    fn cross_part_pairs() {
        assert_eq!(cluster_cost(&[4, 5, 6]), 74);
        assert_eq!(cluster_cost(&[7]), 0);
    }

    #[test]
    fn keeping_a_component_whole_costs_its_missing_edges() {
        let g = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        let classes = component_classes(&g, &[0, 0, 0], 10).unwrap();
        let opts = cut_options(&classes[0], 1, 3);
        let whole = opts.iter().find(|o| o.signature == vec![vec![3]]).unwrap();
        assert_eq!(whole.cost, 1);
        // {0,1},{2}: one cut edge; the cheapest split of this signature
        let split = opts
            .iter()
            .find(|o| o.signature == vec![vec![1], vec![2]])
            .unwrap();
        assert_eq!(split.cost, 1);
        assert!(cut_options(&classes[0], 1, 2)
            .iter()
            .all(|o| o.signature != vec![vec![3]]));
    }

    #[test]
    fn shapes_are_fair_and_bounded() {
        let f = FairletVector::from_color_counts(&[1, 1]);
        let types = vec![vec![0, 1], vec![1, 0], vec![1, 1]];
        let shapes = fair_shapes(&types, &[2, 2, 1], &f, 4);
        for s in &shapes {
            let mut colors = [0, 0];
            for &(t, c) in &s.counts {
                colors[0] += types[t][0] * c;
                colors[1] += types[t][1] * c;
            }
            assert_eq!(colors[0], colors[1]);
            assert!(colors[0] + colors[1] <= 4);
        }
        // {ab}, {a,b}, {a,a,b,b} and {ab,a,b}; a second ab is not available
        let sigs: Vec<Vec<(usize, usize)>> = shapes.iter().map(|s| s.counts.clone()).collect();
        assert!(sigs.contains(&vec![(2, 1)]));
        assert!(sigs.contains(&vec![(0, 1), (1, 1)]));
        assert!(sigs.contains(&vec![(0, 2), (1, 2)]));
        assert!(sigs.contains(&vec![(0, 1), (1, 1), (2, 1)]));
        assert_eq!(sigs.len(), 4);
    }
}
