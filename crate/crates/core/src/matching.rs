//! Maximum-weight bipartite matching that saturates the left side.

/// A slot of a pre-cluster that still has to be filled by a vertex of `color`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Spot {
    pub color: usize,
    pub owner: usize,
}

/// Spots on the left, candidate vertices on the right. Only pairs of equal
/// color may be matched.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpotGraph {
    spots: Vec<Spot>,
    right_colors: Vec<usize>,
    /// `weights[s][r]`, ignored for pairs of different color.
    weights: Vec<Vec<u64>>,
}

impl SpotGraph {
    pub fn new(
        spots: Vec<Spot>,
        right_colors: Vec<usize>,
        mut weight: impl FnMut(usize, usize) -> u64,
    ) -> Self {
        let weights = spots
            .iter()
            .enumerate()
            .map(|(i, s)| {
                (0..right_colors.len())
                    .map(|r| {
                        if right_colors[r] == s.color {
                            weight(i, r)
                        } else {
                            0
                        }
                    })
                    .collect()
            })
            .collect();
        Self {
            spots,
            right_colors,
            weights,
        }
    }

    pub fn spots(&self) -> &[Spot] {
        &self.spots
    }

    pub fn right_colors(&self) -> &[usize] {
        &self.right_colors
    }

    /// `None` for pairs of different color.
    pub fn weight(&self, spot: usize, right: usize) -> Option<u64> {
        (self.spots[spot].color == self.right_colors[right]).then(|| self.weights[spot][right])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    pub weight: u64,
    /// Right index matched to each spot.
    pub assignment: Vec<usize>,
}

/// Minimum-cost assignment of every row to a distinct column (rows ≤ cols),
/// by shortest augmenting paths with potentials.
fn assign(cost: &[Vec<i64>], cols: usize) -> Option<Vec<usize>> {
    let rows = cost.len();
    if rows == 0 {
        return Some(Vec::new());
    }
    if rows > cols {
        return None;
    }
    const INF: i64 = i64::MAX / 4;
    // 1-based internal indexing; column 0 is the virtual start
    let mut u = vec![0i64; rows + 1];
    let mut v = vec![0i64; cols + 1];
    let mut owner = vec![0usize; cols + 1];
    let mut way = vec![0usize; cols + 1];
    for i in 1..=rows {
        owner[0] = i;
        let mut j0 = 0;
        let mut minv = vec![INF; cols + 1];
        let mut used = vec![false; cols + 1];
        loop {
            used[j0] = true;
            let i0 = owner[j0];
            let mut delta = INF;
            let mut j1 = 0;
            for j in 1..=cols {
                if used[j] {
                    continue;
                }
                let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            if delta >= INF {
                return None;
            }
            for j in 0..=cols {
                if used[j] {
                    u[owner[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if owner[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            owner[j0] = owner[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut out = vec![0; rows];
    for j in 1..=cols {
        if owner[j] != 0 {
            out[owner[j] - 1] = j - 1;
        }
    }
    Some(out)
}

/// Among matchings covering every spot, one of maximum total weight, or
/// `None` when no such matching exists. Colors are solved independently.
pub fn max_weight_saturating_matching(graph: &SpotGraph) -> Option<Matching> {
    let kappa = graph
        .spots
        .iter()
        .map(|s| s.color + 1)
        .chain(graph.right_colors.iter().map(|&c| c + 1))
        .max()
        .unwrap_or(0);
    let mut assignment = vec![usize::MAX; graph.spots.len()];
    let mut weight = 0;
    for color in 0..kappa {
        let rows: Vec<usize> = (0..graph.spots.len())
            .filter(|&s| graph.spots[s].color == color)
            .collect();
        if rows.is_empty() {
            continue;
        }
        let cols: Vec<usize> = (0..graph.right_colors.len())
            .filter(|&r| graph.right_colors[r] == color)
            .collect();
        let cost: Vec<Vec<i64>> = rows
            .iter()
            .map(|&s| {
                cols.iter()
                    .map(|&r| -(graph.weights[s][r] as i64))
                    .collect()
            })
            .collect();
        let local = assign(&cost, cols.len())?;
        for (k, &s) in rows.iter().enumerate() {
            let r = cols[local[k]];
            assignment[s] = r;
            weight += graph.weights[s][r];
        }
    }
    Some(Matching { weight, assignment })
}
