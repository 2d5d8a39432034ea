//! Reference implementations written straight from the formulas, sharing no
//! code with the library. Used as oracles by the integration tests.
#![allow(dead_code)]

use std::path::PathBuf;

use rand::{Rng, RngCore};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

pub fn names(n: usize) -> Vec<String> {
    (0..n).map(|k| format!("c{k}")).collect()
}

/// Triple loop over the accordance index definition.
pub fn brute_accordance_index(b: &[Vec<f64>], kappa: f64) -> f64 {
    let n = b.len();
    let mut outer = 0.0;
    for i in 0..n {
        for j in 0..n {
            let mut inner = 0.0;
            for p in 0..n {
                let residual = (b[i][p] + b[p][j] - b[i][j]) / kappa;
                inner += residual.powi(2);
            }
            outer += (inner / n as f64).sqrt();
        }
    }
    outer / (n * n) as f64
}

/// Random valid integer POM: upper triangle drawn from `-kappa..=kappa`.
pub fn random_pom_entries(rng: &mut impl RngCore, n: usize, kappa: i64) -> Vec<Vec<f64>> {
    let mut b = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v = rng.random_range(-kappa..=kappa) as f64;
            b[i][j] = v;
            b[j][i] = -v;
        }
    }
    b
}

/// Consistent POM `b_ij = u_i - u_j` with every difference inside `[-kappa, kappa]`.
pub fn consistent_pom_entries(rng: &mut impl RngCore, n: usize, kappa: f64) -> Vec<Vec<f64>> {
    let u: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..=kappa)).collect();
    (0..n)
        .map(|i| (0..n).map(|j| u[i] - u[j]).collect())
        .collect()
}

/// Naive pair-by-pair tally.
pub fn tally(truth: &[usize], pred: &[usize], k: usize) -> Vec<Vec<u64>> {
    let mut m = vec![vec![0u64; k]; k];
    for r in 0..k {
        for c in 0..k {
            for s in 0..truth.len() {
                if truth[s] == r && pred[s] == c {
                    m[r][c] += 1;
                }
            }
        }
    }
    m
}

/// One-vs-rest counts by classifying every `(true, pred)` pair.
pub fn enumerate_one_vs_rest(m: &[Vec<u64>], k: usize) -> (u64, u64, u64, u64) {
    let (mut tp, mut fp, mut fn_, mut tn) = (0, 0, 0, 0);
    for (r, row) in m.iter().enumerate() {
        for (c, &count) in row.iter().enumerate() {
            match (r == k, c == k) {
                (true, true) => tp += count,
                (false, true) => fp += count,
                (true, false) => fn_ += count,
                (false, false) => tn += count,
            }
        }
    }
    (tp, fp, fn_, tn)
}

/// Binary MCC from the four cells; `None` when the denominator is zero.
pub fn binary_mcc(tp: f64, fp: f64, fn_: f64, tn: f64) -> Option<f64> {
    let den = ((tp + fp) * (tp + fn_) * (tn + fp) * (tn + fn_)).sqrt();
    (den != 0.0).then(|| (tp * tn - fp * fn_) / den)
}

/// Cohen's kappa from observed agreement and chance agreement, tallied sample by sample.
pub fn kappa_by_tally(truth: &[usize], pred: &[usize], k: usize) -> f64 {
    let n = truth.len() as f64;
    let agree = truth.iter().zip(pred).filter(|(t, p)| t == p).count() as f64;
    let p_o = agree / n;
    let mut p_e = 0.0;
    for class in 0..k {
        let t = truth.iter().filter(|&&x| x == class).count() as f64;
        let p = pred.iter().filter(|&&x| x == class).count() as f64;
        p_e += (t / n) * (p / n);
    }
    if p_e == 1.0 {
        return if p_o == 1.0 { 1.0 } else { 0.0 };
    }
    (p_o - p_e) / (1.0 - p_e)
}

/// Bernoulli naive Bayes posterior (unnormalised, not logged) for every class,
/// by direct multiplication of the smoothed probabilities over the whole
/// vocabulary. `docs[d][t]` says whether term `t` is present in document `d`.
pub fn nb_joint_probabilities(
    docs: &[Vec<bool>],
    labels: &[usize],
    n_classes: usize,
    alpha: f64,
    balanced: bool,
    pattern: &[bool],
) -> Vec<f64> {
    let n_docs = docs.len() as f64;
    (0..n_classes)
        .map(|c| {
            let members: Vec<&Vec<bool>> = docs
                .iter()
                .zip(labels)
                .filter(|(_, &l)| l == c)
                .map(|(d, _)| d)
                .collect();
            let n_c = members.len() as f64;
            let prior = if balanced {
                1.0 / n_classes as f64
            } else {
                n_c / n_docs
            };
            let mut joint = prior;
            for (t, &x) in pattern.iter().enumerate() {
                let with_term = members.iter().filter(|d| d[t]).count() as f64;
                let p = (with_term + alpha) / (n_c + 2.0 * alpha);
                joint *= if x { p } else { 1.0 - p };
            }
            joint
        })
        .collect()
}
