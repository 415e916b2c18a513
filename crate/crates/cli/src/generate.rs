//! Seeded random instance families.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fcc_core::{ColoredInstance, Graph};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    /// Every pair independently with probability `p`.
    Gnp { p: f64 },
    /// Uniform random recursive tree.
    Tree,
    /// Random `k`-tree: a `(k+1)`-clique, then each vertex joins a random
    /// existing `k`-clique.
    Ktree { k: usize },
    /// Each non-center vertex attaches to a random one of `stars` centers.
    StarForest { stars: usize },
}

/// An instance whose color counts are exactly `(n / |fairlet|) * fairlet`,
/// with colors shuffled over the vertices. Same inputs, same instance.
pub fn generate(
    family: Family,
    n: usize,
    fairlet: &[usize],
    seed: u64,
) -> Result<ColoredInstance, CliError> {
    let size: usize = fairlet.iter().sum();
    if fairlet.is_empty() || fairlet.contains(&0) {
        return Err(CliError::Precondition(
            "fairlet entries must be positive".into(),
        ));
    }
    if n == 0 || !n.is_multiple_of(size) {
        return Err(CliError::Precondition(format!(
            "n = {n} is not a positive multiple of the fairlet size {size}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges = match family {
        Family::Gnp { p } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(CliError::Precondition(format!(
                    "p = {p} is not a probability"
                )));
            }
            let mut e = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.random_bool(p) {
                        e.push((u, v));
                    }
                }
            }
            e
        }
        Family::Tree => (1..n).map(|v| (rng.random_range(0..v), v)).collect(),
        Family::Ktree { k } => ktree(n, k, &mut rng)?,
        Family::StarForest { stars } => {
            if stars == 0 || stars > n {
                return Err(CliError::Precondition(format!(
                    "star count {stars} must lie in 1..={n}"
                )));
            }
            (stars..n)
                .map(|v| (rng.random_range(0..stars), v))
                .collect()
        }
    };
    // hide the construction order
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    let edges = edges.into_iter().map(|(u, v)| {
        let (a, b) = (perm[u], perm[v]);
        (a.min(b), a.max(b))
    });
    let q = n / size;
    let mut colors: Vec<usize> = fairlet
        .iter()
        .enumerate()
        .flat_map(|(c, &k)| std::iter::repeat_n(c, k * q))
        .collect();
    colors.shuffle(&mut rng);
    let graph = Graph::new(n, edges)?;
    Ok(ColoredInstance::new(graph, colors, None)?)
}

fn ktree(n: usize, k: usize, rng: &mut ChaCha8Rng) -> Result<Vec<(usize, usize)>, CliError> {
    if k == 0 {
        return Err(CliError::Precondition("k-tree needs k >= 1".into()));
    }
    let base = n.min(k + 1);
    let mut edges = Vec::new();
    for u in 0..base {
        for v in u + 1..base {
            edges.push((u, v));
        }
    }
    let mut cliques: Vec<Vec<usize>> = Vec::new();
    if base == k + 1 {
        for skip in 0..base {
            cliques.push((0..base).filter(|&x| x != skip).collect());
        }
    }
    for v in base..n {
        let c = cliques[rng.random_range(0..cliques.len())].clone();
        for &u in &c {
            edges.push((u, v));
        }
        for skip in 0..k {
            let mut next: Vec<usize> = c.iter().copied().filter(|&x| x != c[skip]).collect();
            next.push(v);
            cliques.push(next);
        }
    }
    Ok(edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::write_instance;
    use fcc_core::decomp::{tree_decomposition, TreeDecompositionMode};

    #[test]
    fn tree_counts_are_forced() {
        let i = generate(Family::Tree, 9, &[2, 1], 5).unwrap();
        assert_eq!(i.color_counts(), vec![6, 3]);
        assert_eq!(i.graph().m(), 8);
        assert_eq!(i.graph().components().len(), 1);
    }

    #[test]
    fn deterministic() {
        for family in [
            Family::Gnp { p: 0.4 },
            Family::Tree,
            Family::Ktree { k: 2 },
            Family::StarForest { stars: 2 },
        ] {
            let a = write_instance(&generate(family, 12, &[1, 1, 1], 42).unwrap());
            let b = write_instance(&generate(family, 12, &[1, 1, 1], 42).unwrap());
            assert_eq!(a, b);
        }
    }

    #[test]
    fn gnp_zero_is_edgeless() {
        assert_eq!(
            generate(Family::Gnp { p: 0.0 }, 6, &[1, 1], 1)
                .unwrap()
                .graph()
                .m(),
            0
        );
        assert_eq!(
            generate(Family::Gnp { p: 1.0 }, 6, &[1, 1], 1)
                .unwrap()
                .graph()
                .m(),
            15
        );
    }

    #[test]
    fn ktree_width() {
        let i = generate(Family::Ktree { k: 3 }, 14, &[1], 3).unwrap();
        assert_eq!(i.graph().m(), 6 + 3 * 10);
        let td = tree_decomposition(i.graph(), TreeDecompositionMode::exact()).unwrap();
        assert_eq!(td.width(), 3);
    }

    #[test]
    fn star_forest_components() {
        let i = generate(Family::StarForest { stars: 3 }, 12, &[1, 2], 9).unwrap();
        assert_eq!(i.graph().m(), 9);
        assert!(i.graph().components().len() == 3);
    }

    #[test]
    fn incompatible_size() {
        assert!(matches!(
            generate(Family::Tree, 7, &[2, 1], 0),
            Err(CliError::Precondition(_))
        ));
    }
}
