//! Subsets of `[n]` as bitmasks; bit `i - 1` stands for the label `i`.

pub type Subset = u64;

pub fn from_labels<I: IntoIterator<Item = usize>>(labels: I) -> Subset {
    labels.into_iter().fold(0, |m, i| m | (1 << (i - 1)))
}

pub fn labels(s: Subset) -> Vec<usize> {
    (0..64).filter(|b| s >> b & 1 == 1).map(|b| b + 1).collect()
}

pub fn contains(s: Subset, i: usize) -> bool {
    s >> (i - 1) & 1 == 1
}

pub fn size(s: Subset) -> usize {
    s.count_ones() as usize
}

pub fn full(n: usize) -> Subset {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// All `k`-subsets of `[n]` in colex order of masks.
pub fn k_subsets(n: usize, k: usize) -> Vec<Subset> {
    (0..=full(n)).filter(|&m| size(m) == k).collect()
}
