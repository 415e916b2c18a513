/// Per-color counts of the minimal fair multiset.
///
/// For color counts `n_i` with `g = gcd(n_1, ..., n_k)`, the fairlet is
/// `(n_1 / g, ..., n_k / g)`; a vertex set is fair when its color counts are
/// a positive integer multiple of this vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FairletVector {
    counts: Vec<usize>,
    size: usize,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl FairletVector {
    pub fn from_color_counts(counts: &[usize]) -> Self {
        let g = counts.iter().fold(0, |acc, &c| gcd(acc, c));
        assert!(g > 0, "fairlet of an empty color multiset");
        let counts: Vec<usize> = counts.iter().map(|&c| c / g).collect();
        let size = counts.iter().sum();
        Self { counts, size }
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// `c̃`, the number of vertices in one fairlet.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn kappa(&self) -> usize {
        self.counts.len()
    }

    pub fn count(&self, color: usize) -> usize {
        self.counts[color]
    }

    /// `Some(d)` when `color_counts == d * fairlet` for some `d >= 1`.
    pub fn multiple_of(&self, color_counts: &[usize]) -> Option<usize> {
        debug_assert_eq!(color_counts.len(), self.counts.len());
        let total: usize = color_counts.iter().sum();
        if total == 0 || !total.is_multiple_of(self.size) {
            return None;
        }
        let d = total / self.size;
        self.counts
            .iter()
            .zip(color_counts)
            .all(|(&c, &x)| c * d == x)
            .then_some(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_by_gcd() {
        let f = FairletVector::from_color_counts(&[6, 3]);
        assert_eq!(f.counts(), &[2, 1]);
        assert_eq!(f.size(), 3);
        assert_eq!(FairletVector::from_color_counts(&[4, 4]).counts(), &[1, 1]);
        let f = FairletVector::from_color_counts(&[6, 4]);
        assert_eq!((f.counts(), f.size()), (&[3, 2][..], 5));
    }

    #[test]
    fn multiples() {
        let f = FairletVector::from_color_counts(&[2, 1]);
        assert_eq!(f.multiple_of(&[4, 2]), Some(2));
        assert_eq!(f.multiple_of(&[2, 2]), None);
        assert_eq!(f.multiple_of(&[0, 0]), None);
    }
}
