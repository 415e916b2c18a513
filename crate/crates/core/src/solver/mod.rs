//! Parameterized exact solvers.

pub mod td;
pub mod tw;
pub mod vc;

use crate::FairletVector;

/// Splits `vertices` into fairlets, taking each color's vertices in ascending
/// order. `None` unless the color counts are a multiple of the fairlet.
pub(crate) fn tile_fairlets(
    vertices: &[usize],
    colors: &[usize],
    fairlet: &FairletVector,
) -> Option<Vec<Vec<usize>>> {
    let mut buckets = vec![Vec::new(); fairlet.kappa()];
    let mut sorted = vertices.to_vec();
    sorted.sort_unstable();
    for v in sorted {
        buckets[colors[v]].push(v);
    }
    let counts: Vec<usize> = buckets.iter().map(Vec::len).collect();
    if counts.iter().all(|&c| c == 0) {
        return Some(Vec::new());
    }
    let d = fairlet.multiple_of(&counts)?;
    Some(
        (0..d)
            .map(|j| {
                let mut cluster: Vec<usize> = buckets
                    .iter()
                    .zip(fairlet.counts())
                    .flat_map(|(b, &c)| b[j * c..(j + 1) * c].iter().copied())
                    .collect();
                cluster.sort_unstable();
                cluster
            })
            .collect(),
    )
}
