//! Solver parameterized by the vertex cover number.
//!
//! Cover vertices are partitioned and every part gets a guessed final size.
//! The missing vertices of each part, all outside the cover and hence
//! pairwise non-adjacent, are chosen by a maximum-weight matching of spots to
//! vertices; whatever is left is cut into fairlets.

use crate::decomp::min_vertex_cover;
use crate::matching::{max_weight_saturating_matching, Spot, SpotGraph};
use crate::partitions::{blocks, SetPartitions};
use crate::{
    clustering_cost, max_cluster_size_bound, Clustering, ColoredInstance, FairletVector, Solution,
};

use super::tile_fairlets;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreClustering {
    /// Partition of the cover, each part sorted.
    pub parts: Vec<Vec<usize>>,
    /// Guessed final size of each part, a multiple of the fairlet size.
    pub sizes: Vec<usize>,
}

/// Every partition of `cover` combined with every admissible size guess.
pub fn enumerate_preclusterings(
    cover: &[usize],
    instance: &ColoredInstance,
    fairlet: &FairletVector,
) -> Vec<PreClustering> {
    let n = instance.n();
    let c = fairlet.size();
    let max_size = max_cluster_size_bound(cover.len(), c).min(n);
    let totals = instance.color_counts();
    let mut cover = cover.to_vec();
    cover.sort_unstable();
    let mut out = Vec::new();
    for labels in SetPartitions::new(cover.len()) {
        let parts: Vec<Vec<usize>> = blocks(&labels)
            .into_iter()
            .map(|b| b.into_iter().map(|i| cover[i]).collect())
            .collect();
        let part_counts: Vec<Vec<usize>> = parts
            .iter()
            .map(|p| {
                let mut cnt = vec![0; fairlet.kappa()];
                p.iter().for_each(|&v| cnt[instance.color(v)] += 1);
                cnt
            })
            .collect();
        let mut sizes = Vec::with_capacity(parts.len());
        let mut demand = vec![0; fairlet.kappa()];
        assign_sizes(
            &part_counts,
            fairlet,
            max_size / c,
            &totals,
            &mut demand,
            &mut sizes,
            &mut |sizes| {
                out.push(PreClustering {
                    parts: parts.clone(),
                    sizes: sizes.iter().map(|d| d * c).collect(),
                })
            },
        );
    }
    out
}

fn assign_sizes(
    part_counts: &[Vec<usize>],
    fairlet: &FairletVector,
    max_d: usize,
    totals: &[usize],
    demand: &mut [usize],
    chosen: &mut Vec<usize>,
    emit: &mut impl FnMut(&[usize]),
) {
    let i = chosen.len();
    if i == part_counts.len() {
        emit(chosen);
        return;
    }
    let cnt = &part_counts[i];
    let min_d = cnt
        .iter()
        .zip(fairlet.counts())
        .map(|(&x, &ci)| {
            if ci == 0 {
                usize::from(x > 0) * usize::MAX
            } else {
                x.div_ceil(ci)
            }
        })
        .max()
        .unwrap_or(1)
        .max(1);
    for d in min_d..=max_d {
        let fits = (0..demand.len()).all(|k| demand[k] + fairlet.count(k) * d <= totals[k]);
        if !fits {
            break;
        }
        (0..demand.len()).for_each(|k| demand[k] += fairlet.count(k) * d);
        chosen.push(d);
        assign_sizes(part_counts, fairlet, max_d, totals, demand, chosen, emit);
        chosen.pop();
        (0..demand.len()).for_each(|k| demand[k] -= fairlet.count(k) * d);
    }
}

/// Spots of a pre-clustering against the vertices outside the cover.
/// Returns the graph and the vertex behind each right index.
pub fn build_spot_graph(
    pre: &PreClustering,
    instance: &ColoredInstance,
    fairlet: &FairletVector,
) -> (SpotGraph, Vec<usize>) {
    let in_cover: Vec<bool> = {
        let mut flag = vec![false; instance.n()];
        pre.parts.iter().flatten().for_each(|&v| flag[v] = true);
        flag
    };
    let mut spots = Vec::new();
    for (owner, (part, &size)) in pre.parts.iter().zip(&pre.sizes).enumerate() {
        let d = size / fairlet.size();
        for color in 0..fairlet.kappa() {
            let have = part.iter().filter(|&&v| instance.color(v) == color).count();
            for _ in have..fairlet.count(color) * d {
                spots.push(Spot { color, owner });
            }
        }
    }
    let right: Vec<usize> = (0..instance.n()).filter(|&v| !in_cover[v]).collect();
    let right_colors = right.iter().map(|&v| instance.color(v)).collect();
    let g = instance.graph();
    let graph = SpotGraph::new(spots.clone(), right_colors, |s, r| {
        pre.parts[spots[s].owner]
            .iter()
            .filter(|&&u| g.has_edge(u, right[r]))
            .count() as u64
    });
    (graph, right)
}

/// Completes a pre-clustering, or `None` when its spots cannot all be filled.
pub fn complete_preclustering(
    pre: &PreClustering,
    instance: &ColoredInstance,
    fairlet: &FairletVector,
) -> Option<Clustering> {
    let (graph, right) = build_spot_graph(pre, instance, fairlet);
    let matching = max_weight_saturating_matching(&graph)?;
    let mut clusters = pre.parts.clone();
    let mut used = vec![false; right.len()];
    for (s, &r) in matching.assignment.iter().enumerate() {
        clusters[graph.spots()[s].owner].push(right[r]);
        used[r] = true;
    }
    let rest: Vec<usize> = (0..right.len())
        .filter(|&r| !used[r])
        .map(|r| right[r])
        .collect();
    let tiles = tile_fairlets(&rest, instance.colors(), fairlet)
        .expect("leftover color counts of a completed pre-clustering are a fairlet multiple");
    clusters.extend(tiles);
    Some(Clustering::new(instance.n(), clusters).expect("clusters partition the vertices"))
}

pub fn solve_vc(instance: &ColoredInstance) -> Solution {
    let cover = min_vertex_cover(instance.graph()).cover;
    solve_vc_with_cover(instance, &cover)
}

/// As [`solve_vc`] with a caller-supplied vertex cover.
pub fn solve_vc_with_cover(instance: &ColoredInstance, cover: &[usize]) -> Solution {
    let fairlet = instance.fairlet();
    let mut best: Option<Solution> = None;
    for pre in enumerate_preclusterings(cover, instance, &fairlet) {
        let Some(clustering) = complete_preclustering(&pre, instance, &fairlet) else {
            continue;
        };
        let cost = clustering_cost(instance, &clustering).expect("sizes agree");
        if best.as_ref().is_none_or(|b| cost < b.cost) {
            best = Some(Solution { cost, clustering });
        }
    }
    best.expect("the single all-vertex cluster is always reachable")
}
