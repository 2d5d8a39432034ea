mod common;

use cpccms_core::metrics::{criterion_scores, efficiency, ConfusionMatrix, TimingSet};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{binary_mcc, enumerate_one_vs_rest, kappa_by_tally, names, tally};

fn labels(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Vec<usize> {
    (0..n).map(|_| rng.random_range(0..k)).collect()
}

fn named(idx: &[usize]) -> Vec<String> {
    idx.iter().map(|i| format!("c{i}")).collect()
}

#[test]
fn confusion_matches_naive_tally() {
    let mut rng = ChaCha8Rng::seed_from_u64(200);
    for _ in 0..20 {
        let truth = labels(&mut rng, 200, 3);
        let pred = labels(&mut rng, 200, 3);
        let cm = ConfusionMatrix::from_labels(&named(&truth), &named(&pred), &names(3)).unwrap();
        assert_eq!(cm.counts(), tally(&truth, &pred, 3));
        assert_eq!(cm.total(), 200);
    }
}

#[test]
fn one_vs_rest_matches_pair_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..50 {
        let counts: Vec<Vec<u64>> = (0..4)
            .map(|_| (0..4).map(|_| rng.random_range(0..30)).collect())
            .collect();
        let cm = ConfusionMatrix::new(names(4), counts.clone()).unwrap();
        for k in 0..4 {
            let o = cm.one_vs_rest(k).unwrap();
            assert_eq!((o.tp, o.fp, o.fn_, o.tn), enumerate_one_vs_rest(&counts, k));
        }
    }
}

#[test]
fn binary_mcc_agrees_on_every_small_two_by_two() {
    for tp in 0..=20u64 {
        for fp in 0..=20u64 {
            for fn_ in 0..=20u64 {
                for tn in 0..=20u64 {
                    let Some(expected) = binary_mcc(tp as f64, fp as f64, fn_ as f64, tn as f64)
                    else {
                        continue;
                    };
                    // Class 0 is the positive class: rows are truth, columns predictions.
                    let cm =
                        ConfusionMatrix::new(names(2), vec![vec![tp, fn_], vec![fp, tn]]).unwrap();
                    let got = criterion_scores(&cm).unwrap().mcc;
                    assert!(
                        (got - expected).abs() <= 1e-12,
                        "tp={tp} fp={fp} fn={fn_} tn={tn}: {got} vs {expected}"
                    );
                }
            }
        }
    }
}

#[test]
fn kappa_matches_sample_tally() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for k in 2..=5 {
        for _ in 0..40 {
            let n = rng.random_range(1..300);
            let truth = labels(&mut rng, n, k);
            let pred: Vec<usize> = truth
                .iter()
                .map(|&t| {
                    if rng.random_bool(0.6) {
                        t
                    } else {
                        rng.random_range(0..k)
                    }
                })
                .collect();
            let cm =
                ConfusionMatrix::from_labels(&named(&truth), &named(&pred), &names(k)).unwrap();
            let got = criterion_scores(&cm).unwrap().kappa;
            assert!((got - kappa_by_tally(&truth, &pred, k)).abs() <= 1e-12);
        }
    }
}

#[test]
fn perfect_classifiers_score_one() {
    for k in 2..=6 {
        let counts = (0..k)
            .map(|r| {
                (0..k)
                    .map(|c| if r == c { 3 + r as u64 } else { 0 })
                    .collect()
            })
            .collect();
        let s = criterion_scores(&ConfusionMatrix::new(names(k), counts).unwrap()).unwrap();
        assert_eq!(s.values(), [1.0; 7], "{k} classes");
    }
}

fn counts_strategy() -> impl Strategy<Value = (Vec<Vec<u64>>, Vec<usize>)> {
    (2usize..=6).prop_flat_map(|k| {
        let counts = prop::collection::vec(prop::collection::vec(0u64..40, k), k);
        let perm = Just((0..k).collect::<Vec<_>>()).prop_shuffle();
        (counts, perm)
    })
}

proptest! {
    #[test]
    fn class_order_does_not_matter((counts, perm) in counts_strategy()) {
        prop_assume!(counts.iter().flatten().sum::<u64>() > 0);
        let k = counts.len();
        let cm = ConfusionMatrix::new(names(k), counts).unwrap();
        let a = criterion_scores(&cm).unwrap().values();
        let b = criterion_scores(&cm.permuted(&perm).unwrap()).unwrap().values();
        for (x, y) in a.iter().zip(b) {
            prop_assert!((x - y).abs() <= 1e-12);
        }
    }

    #[test]
    fn scores_stay_in_range((counts, _) in counts_strategy()) {
        prop_assume!(counts.iter().flatten().sum::<u64>() > 0);
        let k = counts.len();
        let cm = ConfusionMatrix::new(names(k), counts).unwrap();
        let s = criterion_scores(&cm).unwrap();
        prop_assert_eq!(s.accuracy, cm.trace() as f64 / cm.total() as f64);
        for v in [s.accuracy, s.precision, s.recall, s.f1, s.specificity] {
            prop_assert!((0.0..=1.0).contains(&v));
        }
        prop_assert!((-1.0..=1.0).contains(&s.mcc));
        prop_assert!(s.kappa <= 1.0);
    }

    #[test]
    fn efficiency_is_monotone(times in prop::collection::vec(0.001f64..5000.0, 1..12)) {
        let set = TimingSet::new(times.iter().enumerate().map(|(i, t)| (format!("m{i}"), *t))).unwrap();
        let eff = efficiency(&set);
        let pairs: Vec<(f64, f64)> = times.iter().zip(eff.values()).map(|(t, e)| (*t, *e)).collect();
        for (ta, ea) in &pairs {
            prop_assert!((0.0..=1.0).contains(ea));
            for (tb, eb) in &pairs {
                if ta < tb {
                    prop_assert!(ea >= eb);
                }
            }
        }
        let max = times.iter().copied().fold(f64::MIN, f64::max);
        let min = times.iter().copied().fold(f64::MAX, f64::min);
        if max > min {
            prop_assert!(eff.values().any(|e| *e == 1.0));
            prop_assert!(eff.values().any(|e| *e == 0.0));
        }
    }
}
