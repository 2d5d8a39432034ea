mod common;

use cpccms_core::cpc::WeightVector;
use cpccms_core::decision::{rank, weighted_scores, DecisionMatrix, ModelScore};
use proptest::prelude::*;

use common::names;

fn models(m: usize) -> Vec<String> {
    (0..m).map(|i| format!("m{i}")).collect()
}

/// Matrix plus nonnegative weights summing to one.
fn matrix_and_weights() -> impl Strategy<Value = (DecisionMatrix, WeightVector)> {
    (1usize..=8, 1usize..=8).prop_flat_map(|(m, n)| {
        let scores = prop::collection::vec(prop::collection::vec(0.0f64..=1.0, n), m);
        let raw = prop::collection::vec(0.01f64..1.0, n);
        (scores, raw).prop_map(move |(scores, raw)| {
            let total: f64 = raw.iter().sum();
            let weights = raw.iter().map(|w| w / total).collect();
            (
                DecisionMatrix::new(models(m), names(n), scores).unwrap(),
                WeightVector::new(names(n), weights).unwrap(),
            )
        })
    })
}

fn argsort_desc(g: &[ModelScore]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..g.len()).collect();
    idx.sort_by(|&a, &b| g[b].score.total_cmp(&g[a].score).then(a.cmp(&b)));
    idx
}

proptest! {
    #[test]
    fn scaling_weights_keeps_the_order((matrix, weights) in matrix_and_weights(), c in 0.01f64..100.0) {
        let scaled = WeightVector::new(
            weights.criteria().to_vec(),
            weights.weights().iter().map(|w| w * c).collect(),
        ).unwrap();
        let a = weighted_scores(&matrix, &weights).unwrap();
        let b = weighted_scores(&matrix, &scaled).unwrap();
        prop_assert_eq!(argsort_desc(&a), argsort_desc(&b));
    }

    #[test]
    fn zero_weight_criterion_changes_nothing((matrix, weights) in matrix_and_weights(), fill in 0.0f64..=1.0) {
        let mut criteria = matrix.criteria().to_vec();
        criteria.push("extra".into());
        let scores = matrix.scores().iter().map(|r| {
            let mut r = r.clone();
            r.push(fill);
            r
        }).collect();
        let wider = DecisionMatrix::new(matrix.models().to_vec(), criteria.clone(), scores).unwrap();
        let mut w = weights.weights().to_vec();
        w.push(0.0);
        let wider_weights = WeightVector::new(criteria, w).unwrap();
        let a = weighted_scores(&matrix, &weights).unwrap();
        let b = weighted_scores(&wider, &wider_weights).unwrap();
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x.score - y.score).abs() <= 1e-12);
        }
    }

    #[test]
    fn scores_lie_between_row_extremes((matrix, weights) in matrix_and_weights()) {
        let g = weighted_scores(&matrix, &weights).unwrap();
        for (row, s) in matrix.scores().iter().zip(&g) {
            let lo = row.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = row.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            prop_assert!(lo - 1e-12 <= s.score && s.score <= hi + 1e-12);
        }
    }

    #[test]
    fn model_order_does_not_change_ranks((matrix, weights) in matrix_and_weights(), seed in any::<u64>()) {
        let m = matrix.models().len();
        let mut perm: Vec<usize> = (0..m).collect();
        perm.rotate_left((seed as usize) % m);
        let shuffled = DecisionMatrix::new(
            perm.iter().map(|&i| matrix.models()[i].clone()).collect(),
            matrix.criteria().to_vec(),
            perm.iter().map(|&i| matrix.scores()[i].clone()).collect(),
        ).unwrap();
        let a = rank(&weighted_scores(&matrix, &weights).unwrap()).unwrap();
        let b = rank(&weighted_scores(&shuffled, &weights).unwrap()).unwrap();
        for model in matrix.models() {
            prop_assert_eq!(a.rank_of(model), b.rank_of(model));
            prop_assert_eq!(a.score_of(model), b.score_of(model));
        }
        let mut best_a = a.best.clone();
        let mut best_b = b.best.clone();
        best_a.sort();
        best_b.sort();
        prop_assert_eq!(best_a, best_b);
    }

    #[test]
    fn ranks_are_competition_ranks((matrix, weights) in matrix_and_weights()) {
        let r = rank(&weighted_scores(&matrix, &weights).unwrap()).unwrap();
        let keys: Vec<i64> = r.entries.iter().map(|e| (e.score * 1000.0).round() as i64).collect();
        for (pos, e) in r.entries.iter().enumerate() {
            let better = keys.iter().filter(|&&k| k > keys[pos]).count();
            prop_assert_eq!(e.rank, better + 1);
            if pos > 0 {
                prop_assert!(r.entries[pos - 1].rank <= e.rank);
            }
        }
        let best: Vec<&str> = r.entries.iter().filter(|e| e.rank == 1).map(|e| e.model.as_str()).collect();
        prop_assert_eq!(best, r.best.iter().map(String::as_str).collect::<Vec<_>>());
    }
}

#[test]
fn all_equal_scores_share_first_place() {
    let scores: Vec<ModelScore> = models(4)
        .into_iter()
        .map(|model| ModelScore { model, score: 0.5 })
        .collect();
    let r = rank(&scores).unwrap();
    assert!(r.entries.iter().all(|e| e.rank == 1));
    assert_eq!(r.best.len(), 4);
    assert!(rank(&[]).is_err());
}
