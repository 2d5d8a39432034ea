//! Multiclass confusion matrices and the evaluation criteria computed from them.
//!
//! Precision, recall, F1 and specificity are macro averages of the per-class
//! one-vs-rest values (F1 is computed per class, then averaged). MCC uses the
//! multiclass generalisation, which reduces to the binary formula for two
//! classes. Any zero denominator contributes 0; see [`criterion_scores`].

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Canonical criterion names, in decision-matrix column order.
pub const CRITERIA: [&str; 7] = [
    "accuracy",
    "precision",
    "recall",
    "f1",
    "specificity",
    "mcc",
    "kappa",
];

pub const EFFICIENCY: &str = "efficiency";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    classes: Vec<String>,
    /// `counts[r][c]`: samples of true class `r` predicted as class `c`.
    counts: Vec<Vec<u64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OneVsRestCounts {
    pub tp: u64,
    pub fp: u64,
    pub fn_: u64,
    pub tn: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriterionScores {
    pub accuracy: f64,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub specificity: f64,
    pub mcc: f64,
    pub kappa: f64,
}

impl CriterionScores {
    /// Values in [`CRITERIA`] order.
    pub fn values(&self) -> [f64; 7] {
        [
            self.accuracy,
            self.precision,
            self.recall,
            self.f1,
            self.specificity,
            self.mcc,
            self.kappa,
        ]
    }

    pub fn from_values(v: [f64; 7]) -> Self {
        Self {
            accuracy: v[0],
            precision: v[1],
            recall: v[2],
            f1: v[3],
            specificity: v[4],
            mcc: v[5],
            kappa: v[6],
        }
    }

    pub fn rounded(&self, decimals: u32) -> Self {
        Self::from_values(self.values().map(|v| crate::report::round_to(v, decimals)))
    }
}

/// Scores for one named model, serialised flat as
/// `{"model": ..., "accuracy": ..., ..., "kappa": ...}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationRecord {
    pub model: String,
    #[serde(flatten)]
    pub scores: CriterionScores,
}

impl ConfusionMatrix {
    pub fn new(classes: Vec<String>, counts: Vec<Vec<u64>>) -> Result<Self> {
        let k = classes.len();
        if k == 0 {
            return Err(Error::input("confusion matrix needs at least one class"));
        }
        if counts.len() != k || counts.iter().any(|r| r.len() != k) {
            return Err(Error::input(format!("counts must be {k}x{k}")));
        }
        for (i, c) in classes.iter().enumerate() {
            if classes[..i].contains(c) {
                return Err(Error::input(format!("duplicate class `{c}`")));
            }
        }
        Ok(Self { classes, counts })
    }

    /// Tallies paired label sequences over the given class list.
    pub fn from_labels<S: AsRef<str>>(
        true_labels: &[S],
        predicted_labels: &[S],
        classes: &[String],
    ) -> Result<Self> {
        if true_labels.len() != predicted_labels.len() {
            return Err(Error::input(format!(
                "{} true labels but {} predictions",
                true_labels.len(),
                predicted_labels.len()
            )));
        }
        if true_labels.is_empty() {
            return Err(Error::input("no samples"));
        }
        let index: IndexMap<&str, usize> = classes
            .iter()
            .enumerate()
            .map(|(i, c)| (c.as_str(), i))
            .collect();
        let lookup = |label: &str| {
            index
                .get(label)
                .copied()
                .ok_or_else(|| Error::UnknownLabel(label.to_string()))
        };
        let mut cm = Self::new(
            classes.to_vec(),
            vec![vec![0; classes.len()]; classes.len()],
        )?;
        for (t, p) in true_labels.iter().zip(predicted_labels) {
            let (r, c) = (lookup(t.as_ref())?, lookup(p.as_ref())?);
            cm.counts[r][c] += 1;
        }
        Ok(cm)
    }

    pub fn classes(&self) -> &[String] {
        &self.classes
    }

    pub fn counts(&self) -> &[Vec<u64>] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    pub fn trace(&self) -> u64 {
        (0..self.classes.len()).map(|k| self.counts[k][k]).sum()
    }

    pub fn row_sum(&self, k: usize) -> u64 {
        self.counts[k].iter().sum()
    }

    pub fn col_sum(&self, k: usize) -> u64 {
        self.counts.iter().map(|r| r[k]).sum()
    }

    /// Reorders classes; position `k` of the result is class `perm[k]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let k = self.classes.len();
        let mut sorted = perm.to_vec();
        sorted.sort_unstable();
        if sorted != (0..k).collect::<Vec<_>>() {
            return Err(Error::input("not a permutation of the classes"));
        }
        Self::new(
            perm.iter().map(|&p| self.classes[p].clone()).collect(),
            perm.iter()
                .map(|&r| perm.iter().map(|&c| self.counts[r][c]).collect())
                .collect(),
        )
    }

    pub fn one_vs_rest(&self, class_index: usize) -> Result<OneVsRestCounts> {
        if class_index >= self.classes.len() {
            return Err(Error::input(format!(
                "class index {class_index} out of range for {} classes",
                self.classes.len()
            )));
        }
        let tp = self.counts[class_index][class_index];
        let fp = self.col_sum(class_index) - tp;
        let fn_ = self.row_sum(class_index) - tp;
        let tn = self.total() - tp - fp - fn_;
        Ok(OneVsRestCounts { tp, fp, fn_, tn })
    }

    pub fn criterion_scores(&self) -> Result<CriterionScores> {
        criterion_scores(self)
    }
}

fn ratio(num: f64, den: f64) -> f64 {
    if den == 0.0 {
        0.0
    } else {
        num / den
    }
}

/// Computes the seven classification criteria.
///
/// Zero-denominator conventions: a per-class precision, recall, F1 or
/// specificity with a zero denominator contributes 0 to its macro mean; MCC
/// with a zero denominator is 0; kappa with `p_e = 1` is 1 when `p_o = 1` and
/// 0 otherwise.
pub fn criterion_scores(cm: &ConfusionMatrix) -> Result<CriterionScores> {
    let total = cm.total();
    if total == 0 {
        return Err(Error::input("confusion matrix is empty"));
    }
    let k = cm.classes.len();
    let s = total as f64;

    let (mut precision, mut recall, mut f1, mut specificity) = (0.0, 0.0, 0.0, 0.0);
    for c in 0..k {
        let OneVsRestCounts { tp, fp, fn_, tn } = cm.one_vs_rest(c)?;
        let (tp, fp, fn_, tn) = (tp as f64, fp as f64, fn_ as f64, tn as f64);
        let p = ratio(tp, tp + fp);
        let r = ratio(tp, tp + fn_);
        precision += p;
        recall += r;
        f1 += ratio(2.0 * p * r, p + r);
        specificity += ratio(tn, tn + fp);
    }
    let kf = k as f64;

    let trace = cm.trace() as f64;
    let accuracy = trace / s;

    let rows: Vec<f64> = (0..k).map(|c| cm.row_sum(c) as f64).collect();
    let cols: Vec<f64> = (0..k).map(|c| cm.col_sum(c) as f64).collect();

    let p_e: f64 = rows.iter().zip(&cols).map(|(t, p)| (t / s) * (p / s)).sum();
    let kappa = if p_e >= 1.0 {
        if accuracy == 1.0 {
            1.0
        } else {
            0.0
        }
    } else {
        (accuracy - p_e) / (1.0 - p_e)
    };

    let cov_tp = trace * s - rows.iter().zip(&cols).map(|(t, p)| t * p).sum::<f64>();
    let cov_pp = s * s - cols.iter().map(|p| p * p).sum::<f64>();
    let cov_tt = s * s - rows.iter().map(|t| t * t).sum::<f64>();
    let den = (cov_pp * cov_tt).sqrt();
    let mcc = if den == 0.0 {
        0.0
    } else {
        (cov_tp / den).clamp(-1.0, 1.0)
    };

    Ok(CriterionScores {
        accuracy,
        precision: precision / kf,
        recall: recall / kf,
        f1: f1 / kf,
        specificity: specificity / kf,
        mcc,
        kappa: kappa.min(1.0),
    })
}

/// Running times in seconds, keyed by model name in insertion order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "IndexMap<String, f64>", into = "IndexMap<String, f64>")]
pub struct TimingSet(IndexMap<String, f64>);

impl TimingSet {
    pub fn new<I, S>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, f64)>,
        S: Into<String>,
    {
        let mut map = IndexMap::new();
        for (model, secs) in entries {
            let model = model.into();
            if !(secs.is_finite() && secs > 0.0) {
                return Err(Error::input(format!(
                    "running time of `{model}` must be finite and positive, got {secs}"
                )));
            }
            if map.insert(model.clone(), secs).is_some() {
                return Err(Error::input(format!("duplicate timing for `{model}`")));
            }
        }
        if map.is_empty() {
            return Err(Error::input("timing set is empty"));
        }
        Ok(Self(map))
    }

    pub fn get(&self, model: &str) -> Option<f64> {
        self.0.get(model).copied()
    }

    pub fn models(&self) -> impl Iterator<Item = &str> {
        self.0.keys().map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl TryFrom<IndexMap<String, f64>> for TimingSet {
    type Error = Error;

    fn try_from(map: IndexMap<String, f64>) -> Result<Self> {
        Self::new(map)
    }
}

impl From<TimingSet> for IndexMap<String, f64> {
    fn from(t: TimingSet) -> Self {
        t.0
    }
}

/// Reverse min-max normalisation of running time: the fastest model scores
/// 1 and the slowest 0. When every time is equal all models score 1.
pub fn efficiency(timings: &TimingSet) -> IndexMap<String, f64> {
    let (min, max) = timings
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), (_, t)| {
            (lo.min(t), hi.max(t))
        });
    let span = max - min;
    timings
        .iter()
        .map(|(m, t)| {
            let e = if span > 0.0 { (max - t) / span } else { 1.0 };
            (m.to_string(), e)
        })
        .collect()
}
