use super::{ColoredInstance, FairletVector};
use crate::{Error, Result};

pub type Cost = u64;

/// A partition of `0..n` into nonempty clusters.
///
/// Stored canonically: members ascending within each cluster, clusters
/// ordered by smallest member.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Clustering {
    n: usize,
    clusters: Vec<Vec<usize>>,
}

impl Clustering {
    pub fn new(n: usize, clusters: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n];
        for cluster in &clusters {
            if cluster.is_empty() {
                return Err(Error::InvalidPartition("empty cluster".into()));
            }
            for &v in cluster {
                if v >= n {
                    return Err(Error::InvalidPartition(format!(
                        "vertex {v} outside 0..{n}"
                    )));
                }
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::InvalidPartition(format!("vertex {v} appears twice")));
                }
            }
        }
        if let Some(v) = seen.iter().position(|&s| !s) {
            return Err(Error::InvalidPartition(format!("vertex {v} is uncovered")));
        }
        let mut clusters = clusters;
        for c in &mut clusters {
            c.sort_unstable();
        }
        clusters.sort_unstable_by_key(|c| c[0]);
        Ok(Self { n, clusters })
    }

    /// Clustering from per-vertex block labels (any label values).
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut index = std::collections::HashMap::new();
        let mut clusters: Vec<Vec<usize>> = Vec::new();
        for (v, &l) in labels.iter().enumerate() {
            let slot = *index.entry(l).or_insert_with(|| {
                clusters.push(Vec::new());
                clusters.len() - 1
            });
            clusters[slot].push(v);
        }
        Self::new(labels.len(), clusters).expect("labels cover every vertex once")
    }

    pub fn singletons(n: usize) -> Self {
        Self {
            n,
            clusters: (0..n).map(|v| vec![v]).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn clusters(&self) -> &[Vec<usize>] {
        &self.clusters
    }

    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }

    pub fn max_cluster_size(&self) -> usize {
        self.clusters.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Cluster index per vertex.
    pub fn labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.n];
        for (i, c) in self.clusters.iter().enumerate() {
            for &v in c {
                labels[v] = i;
            }
        }
        labels
    }
}

fn check_size(instance: &ColoredInstance, clustering: &Clustering) -> Result<()> {
    if clustering.n() != instance.n() {
        return Err(Error::InvalidPartition(format!(
            "clustering covers {} vertices, instance has {}",
            clustering.n(),
            instance.n()
        )));
    }
    Ok(())
}

/// Edges between clusters plus non-adjacent pairs inside clusters.
pub fn clustering_cost(instance: &ColoredInstance, clustering: &Clustering) -> Result<Cost> {
    check_size(instance, clustering)?;
    let g = instance.graph();
    let labels = clustering.labels();
    let cut = g.edges().filter(|&(u, v)| labels[u] != labels[v]).count();
    let mut missing = 0;
    for c in clustering.clusters() {
        for (i, &u) in c.iter().enumerate() {
            missing += c[i + 1..].iter().filter(|&&v| !g.has_edge(u, v)).count();
        }
    }
    Ok((cut + missing) as Cost)
}

/// The same cost via `|E| + a - 2b`, where `a` counts co-clustered pairs and
/// `b` co-clustered edges.
pub fn cost_from_pair_counts(instance: &ColoredInstance, clustering: &Clustering) -> Result<Cost> {
    check_size(instance, clustering)?;
    let g = instance.graph();
    let labels = clustering.labels();
    let a: usize = clustering
        .clusters()
        .iter()
        .map(|c| c.len() * (c.len() - 1) / 2)
        .sum();
    let b = g.edges().filter(|&(u, v)| labels[u] == labels[v]).count();
    Ok((g.m() + a - 2 * b) as Cost)
}

/// Every cluster's color-count vector is a positive multiple of the fairlet.
pub fn is_fair(clustering: &Clustering, fairlet: &FairletVector, colors: &[usize]) -> bool {
    let mut counts = vec![0; fairlet.kappa()];
    clustering.clusters().iter().all(|c| {
        counts.iter_mut().for_each(|x| *x = 0);
        for &v in c {
            match counts.get_mut(colors[v]) {
                Some(x) => *x += 1,
                None => return false,
            }
        }
        fairlet.multiple_of(&counts).is_some()
    })
}

/// Cluster-size cap `max(24 * width, fairlet_size)`; sound for any upper bound on treewidth.
pub fn max_cluster_size_bound(width_upper_bound: usize, fairlet_size: usize) -> usize {
    (24 * width_upper_bound).max(fairlet_size)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_validation() {
        assert!(Clustering::new(3, vec![vec![0, 1], vec![2]]).is_ok());
        assert!(Clustering::new(3, vec![vec![0, 1]]).is_err());
        assert!(Clustering::new(3, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(Clustering::new(3, vec![vec![0, 1, 2], vec![]]).is_err());
        assert!(Clustering::new(2, vec![vec![0, 1, 2]]).is_err());
    }

    #[test]
    fn canonical_order() {
        let c = Clustering::new(4, vec![vec![3, 1], vec![2, 0]]).unwrap();
        assert_eq!(c.clusters(), &[vec![0, 2], vec![1, 3]]);
        assert_eq!(Clustering::from_labels(&[7, 3, 7, 3]), c);
    }

    #[test]
    fn bound_examples() {
        assert_eq!(max_cluster_size_bound(1, 3), 24);
        assert_eq!(max_cluster_size_bound(0, 5), 5);
        assert_eq!(max_cluster_size_bound(2, 2), 48);
    }

    #[test]
    fn cost_rejects_mismatched_sizes() {
        let inst = ColoredInstance::from_edges(3, [(0, 1)], vec![0, 0, 0]).unwrap();
        assert!(clustering_cost(&inst, &Clustering::singletons(2)).is_err());
        assert!(cost_from_pair_counts(&inst, &Clustering::singletons(4)).is_err());
    }
}
