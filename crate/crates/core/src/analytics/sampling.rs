use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `k` distinct indices out of `0..n`, ascending, reproducible for a given seed.
/// Returns all indices when `k >= n`.
pub fn sample_indices(n: usize, k: usize, seed: u64) -> Vec<usize> {
    if k >= n {
        return (0..n).collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut idx = rand::seq::index::sample(&mut rng, n, k).into_vec();
    idx.sort_unstable();
    idx
}

pub fn take_indices<T: Copy>(values: &[T], idx: &[usize]) -> Vec<T> {
    idx.iter().map(|&i| values[i]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible_and_sorted() {
        let a = sample_indices(1_000_000, 1000, 0);
        let b = sample_indices(1_000_000, 1000, 0);
        assert_eq!(a, b);
        assert_eq!(a.len(), 1000);
        assert!(a.windows(2).all(|w| w[0] < w[1]));
        assert_ne!(a, sample_indices(1_000_000, 1000, 1));
        assert_eq!(sample_indices(5, 10, 0), vec![0, 1, 2, 3, 4]);
    }
}
