use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Seeds used for the three demo runs.
pub const DEMO_SEEDS: [u64; 3] = [101, 202, 303];

pub const DEFAULT_FRACTIONS: [f64; 3] = [0.8, 0.1, 0.1];

#[derive(Debug, Clone, PartialEq)]
pub struct Split<T> {
    pub train: Vec<T>,
    pub validation: Vec<T>,
    pub test: Vec<T>,
}

/// Shuffles `items` with a seeded ChaCha8 generator and cuts the result into
/// three contiguous parts. Part sizes are the rounded cumulative fractions,
/// so (0.8, 0.1, 0.1) over 100 items gives exactly (80, 10, 10).
pub fn split_corpus<T: Clone>(items: &[T], fractions: [f64; 3], seed: u64) -> Result<Split<T>> {
    if fractions.iter().any(|f| !(f.is_finite() && *f > 0.0)) {
        return Err(Error::input(format!(
            "split fractions must be positive, got {fractions:?}"
        )));
    }
    let sum: f64 = fractions.iter().sum();
    if (sum - 1.0).abs() > 1e-9 {
        return Err(Error::input(format!(
            "split fractions must sum to 1, got {sum}"
        )));
    }
    let mut order: Vec<usize> = (0..items.len()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    order.shuffle(&mut rng);

    let n = items.len() as f64;
    let first = ((fractions[0] * n).round() as usize).min(items.len());
    let second = (((fractions[0] + fractions[1]) * n).round() as usize).clamp(first, items.len());
    let pick = |range: &[usize]| range.iter().map(|&i| items[i].clone()).collect();
    Ok(Split {
        train: pick(&order[..first]),
        validation: pick(&order[first..second]),
        test: pick(&order[second..]),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_follow_fractions() {
        let items: Vec<u32> = (0..100).collect();
        let s = split_corpus(&items, DEFAULT_FRACTIONS, 101).unwrap();
        assert_eq!(
            (s.train.len(), s.validation.len(), s.test.len()),
            (80, 10, 10)
        );
    }

    #[test]
    fn partition_is_disjoint_and_exhaustive() {
        let items: Vec<u32> = (0..37).collect();
        let s = split_corpus(&items, [0.5, 0.25, 0.25], 7).unwrap();
        let mut all: Vec<u32> = s
            .train
            .iter()
            .chain(&s.validation)
            .chain(&s.test)
            .copied()
            .collect();
        all.sort();
        assert_eq!(all, items);
    }

    #[test]
    fn seeded_and_reproducible() {
        let items: Vec<u32> = (0..50).collect();
        let a = split_corpus(&items, DEFAULT_FRACTIONS, 101).unwrap();
        let b = split_corpus(&items, DEFAULT_FRACTIONS, 101).unwrap();
        let c = split_corpus(&items, DEFAULT_FRACTIONS, 202).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn rejects_bad_fractions() {
        let items = [1, 2, 3];
        assert!(split_corpus(&items, [0.8, 0.1, 0.2], 1).is_err());
        assert!(split_corpus(&items, [1.0, 0.0, 0.0], 1).is_err());
        assert!(split_corpus(&items, [1.2, -0.1, -0.1], 1).is_err());
    }
}
