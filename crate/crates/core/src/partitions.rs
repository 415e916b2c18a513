//! Set partitions in restricted-growth-string order.
//!
//! A restricted growth string `a` of length `m` has `a[0] = 0` and
//! `a[i] <= 1 + max(a[..i])`; each string names one partition of `0..m`
//! (element `i` lies in block `a[i]`). Lexicographic order over these
//! strings is the canonical partition order used across the crate.

/// Iterator over all restricted growth strings of a given length.
#[derive(Debug, Clone)]
pub struct SetPartitions {
    labels: Vec<usize>,
    // prefix maxima: max_before[i] = max(labels[..i]) + 1
    max_before: Vec<usize>,
    started: bool,
    done: bool,
}

impl SetPartitions {
    pub fn new(m: usize) -> Self {
        Self {
            labels: vec![0; m],
            max_before: vec![0; m],
            started: false,
            done: false,
        }
    }
}

impl Iterator for SetPartitions {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let m = self.labels.len();
        if !self.started {
            self.started = true;
            for i in 0..m {
                self.max_before[i] = usize::from(i > 0);
            }
            if m == 0 {
                self.done = true;
                return Some(Vec::new());
            }
            return Some(self.labels.clone());
        }
        // find rightmost position that can be incremented
        let mut i = m;
        while i > 1 {
            i -= 1;
            if self.labels[i] < self.max_before[i] {
                self.labels[i] += 1;
                let mut running = self.max_before[i].max(self.labels[i] + 1);
                for j in i + 1..m {
                    self.labels[j] = 0;
                    self.max_before[j] = running;
                    running = running.max(1);
                }
                return Some(self.labels.clone());
            }
        }
        self.done = true;
        None
    }
}

/// Groups element indices by block label; blocks are ordered by first element.
pub fn blocks(labels: &[usize]) -> Vec<Vec<usize>> {
    let count = labels.iter().map(|&l| l + 1).max().unwrap_or(0);
    let mut out = vec![Vec::new(); count];
    for (i, &l) in labels.iter().enumerate() {
        out[l].push(i);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const BELL: [usize; 9] = [1, 1, 2, 5, 15, 52, 203, 877, 4140];

    #[test]
    fn counts_match_bell_numbers() {
        for (m, &bell) in BELL.iter().enumerate() {
            assert_eq!(SetPartitions::new(m).count(), bell, "m = {m}");
        }
    }

    #[test]
    fn strings_are_restricted_and_increasing() {
        let all: Vec<_> = SetPartitions::new(5).collect();
        for w in all.windows(2) {
            assert!(w[0] < w[1]);
        }
        for s in &all {
            let mut top = 0;
            for (i, &x) in s.iter().enumerate() {
                if i == 0 {
                    assert_eq!(x, 0);
                } else {
                    assert!(x <= top + 1);
                }
                top = top.max(x);
            }
        }
    }

    #[test]
    fn blocks_follow_first_occurrence() {
        assert_eq!(blocks(&[0, 1, 0, 2]), vec![vec![0, 2], vec![1], vec![3]]);
    }
}
