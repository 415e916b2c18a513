//! Exhaustive reference solver.
//!
//! Every fair clustering is enumerated as a restricted growth string; the
//! search keeps per-block color counts and discards a prefix as soon as the
//! blocks opened so far can no longer be completed to fair clusters with the
//! vertices that remain.

use crate::{
    clustering_cost, is_fair, Clustering, ColoredInstance, Cost, Error, FairletVector, Result,
    Solution,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    /// Largest instance the oracle accepts.
    pub cap: usize,
    /// Optional upper bound on the size of every cluster.
    pub max_cluster_size: Option<usize>,
}

impl OracleConfig {
    pub const DEFAULT_CAP: usize = 12;

    pub fn with_max_cluster_size(self, max_cluster_size: Option<usize>) -> Self {
        Self {
            max_cluster_size,
            ..self
        }
    }
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            cap: Self::DEFAULT_CAP,
            max_cluster_size: None,
        }
    }
}

struct Search<'a> {
    instance: &'a ColoredInstance,
    fairlet: FairletVector,
    max_size: usize,
    labels: Vec<usize>,
    cursor: Vec<usize>,
    /// Per block, per color.
    counts: Vec<Vec<usize>>,
    remaining: Vec<usize>,
    cost: Vec<Cost>,
    /// Prefixes whose partial cost exceeds this are discarded.
    limit: Option<Cost>,
    done: bool,
}

impl<'a> Search<'a> {
    fn new(instance: &'a ColoredInstance, config: &OracleConfig) -> Result<Self> {
        let n = instance.n();
        if n > config.cap {
            return Err(Error::SizeLimit {
                what: "oracle vertices",
                actual: n,
                limit: config.cap,
            });
        }
        Ok(Self {
            instance,
            fairlet: instance.fairlet(),
            max_size: config.max_cluster_size.unwrap_or(n),
            labels: Vec::with_capacity(n),
            cursor: vec![0; n + 1],
            counts: Vec::new(),
            remaining: instance.color_counts(),
            cost: vec![0],
            limit: None,
            done: false,
        })
    }

    fn partial_cost(&self) -> Cost {
        *self.cost.last().unwrap()
    }

    fn completable(&self) -> bool {
        let c = self.fairlet.counts();
        let mut need = vec![0usize; c.len()];
        for block in &self.counts {
            let d = block
                .iter()
                .zip(c)
                .map(|(&x, &ci)| x.div_ceil(ci.max(1)))
                .max()
                .unwrap_or(1)
                .max(1);
            if d * self.fairlet.size() > self.max_size {
                return false;
            }
            for (i, &x) in block.iter().enumerate() {
                if x > c[i] * d {
                    return false;
                }
                need[i] += c[i] * d - x;
            }
        }
        need.iter().zip(&self.remaining).all(|(a, b)| a <= b)
    }

    fn push(&mut self, label: usize) -> bool {
        let v = self.labels.len();
        let g = self.instance.graph();
        let added = self
            .labels
            .iter()
            .enumerate()
            .filter(|&(u, &l)| (l == label) != g.has_edge(u, v))
            .count() as Cost;
        let cost = self.partial_cost() + added;
        let color = self.instance.color(v);
        if label == self.counts.len() {
            self.counts.push(vec![0; self.fairlet.kappa()]);
        }
        self.counts[label][color] += 1;
        self.remaining[color] -= 1;
        self.labels.push(label);
        self.cost.push(cost);
        if self.limit.is_some_and(|lim| cost > lim) || !self.completable() {
            self.pop();
            return false;
        }
        true
    }

    fn pop(&mut self) {
        let v = self.labels.len() - 1;
        let label = self.labels.pop().unwrap();
        self.cost.pop();
        let color = self.instance.color(v);
        self.counts[label][color] -= 1;
        self.remaining[color] += 1;
        if self.counts[label].iter().all(|&x| x == 0) {
            self.counts.pop();
        }
    }

    fn next_labels(&mut self) -> Option<(Vec<usize>, Cost)> {
        let n = self.instance.n();
        while !self.done {
            let pos = self.labels.len();
            if pos == n {
                let found = self
                    .counts
                    .iter()
                    .all(|b| self.fairlet.multiple_of(b).is_some())
                    .then(|| (self.labels.clone(), self.partial_cost()));
                self.pop();
                if found.is_some() {
                    return found;
                }
                continue;
            }
            let cand = self.cursor[pos];
            if cand > self.counts.len() {
                self.cursor[pos] = 0;
                if pos == 0 {
                    self.done = true;
                } else {
                    self.pop();
                }
                continue;
            }
            self.cursor[pos] += 1;
            self.push(cand);
        }
        None
    }
}

/// Iterator over all fair clusterings in restricted-growth-string order.
pub struct FairClusterings<'a> {
    search: Search<'a>,
}

impl Iterator for FairClusterings<'_> {
    type Item = Clustering;

    fn next(&mut self) -> Option<Clustering> {
        self.search
            .next_labels()
            .map(|(labels, _)| Clustering::from_labels(&labels))
    }
}

pub fn enumerate_fair_clusterings<'a>(
    instance: &'a ColoredInstance,
    config: &OracleConfig,
) -> Result<FairClusterings<'a>> {
    Ok(FairClusterings {
        search: Search::new(instance, config)?,
    })
}

/// Minimum-cost fair clustering; among optimal ones the lexicographically
/// least restricted growth string is returned.
pub fn brute_force_optimum(instance: &ColoredInstance, config: &OracleConfig) -> Result<Solution> {
    let mut search = Search::new(instance, config)?;
    let mut best: Option<(Vec<usize>, Cost)> = None;
    while let Some((labels, cost)) = search.next_labels() {
        if cost == 0 {
            best = Some((labels, cost));
            break;
        }
        search.limit = Some(cost - 1);
        best = Some((labels, cost));
    }
    let (labels, cost) = best.ok_or_else(|| {
        Error::Parameter("no fair clustering satisfies the cluster-size bound".into())
    })?;
    Ok(Solution {
        cost,
        clustering: Clustering::from_labels(&labels),
    })
}

/// An optimal fair clustering whose clusters of more than two vertices all
/// induce connected subgraphs. Requires fairlet size 2.
pub fn find_nice_optimum(
    instance: &ColoredInstance,
    config: &OracleConfig,
) -> Result<Option<Clustering>> {
    let size = instance.fairlet().size();
    if size != 2 {
        return Err(Error::Parameter(format!(
            "nice optima are defined for fairlet size 2, got {size}"
        )));
    }
    let opt = brute_force_optimum(instance, config)?.cost;
    let mut search = Search::new(instance, config)?;
    search.limit = Some(opt);
    let g = instance.graph();
    while let Some((labels, cost)) = search.next_labels() {
        if cost != opt {
            continue;
        }
        let clustering = Clustering::from_labels(&labels);
        if clustering
            .clusters()
            .iter()
            .all(|c| c.len() <= 2 || g.induces_connected(c))
        {
            return Ok(Some(clustering));
        }
    }
    Ok(None)
}

/// Valid partition of the instance's vertices, fair, and within `budget`.
pub fn verify_solution(instance: &ColoredInstance, clustering: &Clustering, budget: Cost) -> bool {
    is_fair(clustering, &instance.fairlet(), instance.colors())
        && clustering_cost(instance, clustering).is_ok_and(|c| c <= budget)
}
