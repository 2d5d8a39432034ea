//! Bernoulli naive Bayes over binary term-presence features.
//!
//! Every vocabulary term contributes to the class likelihood, present terms
//! through `p` and absent ones through `1 - p`, with
//! `p = (docs of the class containing the term + alpha) / (docs of the class + 2 alpha)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PriorMode {
    /// Class frequencies in the training data.
    #[default]
    Empirical,
    /// Uniform over classes, the prior-side counterpart of class weighting.
    Balanced,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NbConfig {
    pub alpha: f64,
    /// A feature is present iff its weight is strictly greater than this.
    pub binarize: f64,
    pub prior_mode: PriorMode,
}

impl Default for NbConfig {
    fn default() -> Self {
        Self {
            alpha: 0.1,
            binarize: 0.0,
            prior_mode: PriorMode::Empirical,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NbModel {
    classes: Vec<String>,
    vocab_size: usize,
    log_priors: Vec<f64>,
    /// `log p` per class, per term.
    log_present: Vec<Vec<f64>>,
    /// `log (1 - p)` per class, per term.
    log_absent: Vec<Vec<f64>>,
    /// Score of the all-absent pattern per class, excluding the prior.
    absent_total: Vec<f64>,
    binarize_threshold: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Prediction {
    pub label: String,
    pub class_index: usize,
    /// Unnormalised log posterior per class, in class order.
    pub log_scores: Vec<f64>,
    /// More than one class reached the maximum; the earliest class won.
    pub tied: bool,
}

impl NbModel {
    /// Trains on documents given as lists of present vocabulary indices.
    /// Classes are the distinct labels in lexicographic order.
    pub fn fit<S: AsRef<str>>(
        features: &[Vec<usize>],
        labels: &[S],
        vocab_size: usize,
        config: NbConfig,
    ) -> Result<Self> {
        if !(config.alpha.is_finite() && config.alpha > 0.0) {
            return Err(Error::input(format!(
                "smoothing alpha must be positive, got {}",
                config.alpha
            )));
        }
        if features.is_empty() {
            return Err(Error::input("no training documents"));
        }
        if features.len() != labels.len() {
            return Err(Error::input(format!(
                "{} documents but {} labels",
                features.len(),
                labels.len()
            )));
        }
        let mut classes: Vec<String> = labels.iter().map(|l| l.as_ref().to_string()).collect();
        classes.sort();
        classes.dedup();

        let k = classes.len();
        let mut doc_counts = vec![0u64; k];
        let mut term_counts = vec![vec![0u64; vocab_size]; k];
        for (doc, label) in features.iter().zip(labels) {
            let c = classes
                .binary_search_by(|x| x.as_str().cmp(label.as_ref()))
                .unwrap();
            doc_counts[c] += 1;
            let mut seen = doc.clone();
            seen.sort_unstable();
            seen.dedup();
            for i in seen {
                if i >= vocab_size {
                    return Err(Error::input(format!(
                        "feature index {i} outside vocabulary of {vocab_size}"
                    )));
                }
                term_counts[c][i] += 1;
            }
        }

        let total = features.len() as f64;
        let log_priors = doc_counts
            .iter()
            .map(|&n| match config.prior_mode {
                PriorMode::Empirical => (n as f64 / total).ln(),
                PriorMode::Balanced => (1.0 / k as f64).ln(),
            })
            .collect();

        let alpha = config.alpha;
        let mut log_present = Vec::with_capacity(k);
        let mut log_absent = Vec::with_capacity(k);
        for c in 0..k {
            let denom = doc_counts[c] as f64 + 2.0 * alpha;
            let p: Vec<f64> = term_counts[c]
                .iter()
                .map(|&n| (n as f64 + alpha) / denom)
                .collect();
            log_present.push(p.iter().map(|p| p.ln()).collect::<Vec<_>>());
            log_absent.push(p.iter().map(|p| (1.0 - p).ln()).collect::<Vec<_>>());
        }
        let absent_total = log_absent.iter().map(|row| row.iter().sum()).collect();

        Ok(Self {
            classes,
            vocab_size,
            log_priors,
            log_present,
            log_absent,
            absent_total,
            binarize_threshold: config.binarize,
        })
    }

    pub fn classes(&self) -> &[String] {
        &self.classes
    }

    pub fn vocab_size(&self) -> usize {
        self.vocab_size
    }

    pub fn log_priors(&self) -> &[f64] {
        &self.log_priors
    }

    pub fn binarize_threshold(&self) -> f64 {
        self.binarize_threshold
    }

    /// Smoothed `P(term present | class)`.
    pub fn feature_prob(&self, class_index: usize, term: usize) -> f64 {
        self.log_present[class_index][term].exp()
    }

    /// Predicts from present vocabulary indices; indices outside the
    /// vocabulary are ignored.
    pub fn predict(&self, present: &[usize]) -> Prediction {
        let mut present: Vec<usize> = present
            .iter()
            .copied()
            .filter(|&i| i < self.vocab_size)
            .collect();
        present.sort_unstable();
        present.dedup();

        let log_scores: Vec<f64> = (0..self.classes.len())
            .map(|c| {
                let swap: f64 = present
                    .iter()
                    .map(|&i| self.log_present[c][i] - self.log_absent[c][i])
                    .sum();
                self.log_priors[c] + self.absent_total[c] + swap
            })
            .collect();

        let best = log_scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let class_index = log_scores.iter().position(|&s| s == best).unwrap_or(0);
        let tied = log_scores.iter().filter(|&&s| s == best).count() > 1;
        Prediction {
            label: self.classes[class_index].clone(),
            class_index,
            log_scores,
            tied,
        }
    }

    /// Predicts from a weighted feature vector binarised at the model's threshold.
    pub fn predict_weighted(&self, vector: &super::TfidfVector) -> Prediction {
        self.predict(&vector.binarize(self.binarize_threshold))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smoothing_rule() {
        // Class "a": 3 docs, term 0 in two of them.
        let features = vec![vec![0], vec![0], vec![], vec![1]];
        let labels = ["a", "a", "a", "b"];
        let m = NbModel::fit(&features, &labels, 2, NbConfig::default()).unwrap();
        assert!((m.feature_prob(0, 0) - 2.1 / 3.2).abs() < 1e-12);
        assert!((m.feature_prob(0, 0) - 0.65625).abs() < 1e-12);
    }

    #[test]
    fn heavy_smoothing_tends_to_one_half() {
        let features = vec![vec![0, 1], vec![], vec![1]];
        let m = NbModel::fit(
            &features,
            &["x", "y", "x"],
            2,
            NbConfig {
                alpha: 1e9,
                ..NbConfig::default()
            },
        )
        .unwrap();
        for c in 0..2 {
            for t in 0..2 {
                assert!((m.feature_prob(c, t) - 0.5).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn single_class_corpus() {
        let m = NbModel::fit(
            &[vec![0], vec![]],
            &["only", "only"],
            3,
            NbConfig::default(),
        )
        .unwrap();
        assert_eq!(m.log_priors(), [0.0]);
        assert_eq!(m.predict(&[1, 2]).label, "only");
    }

    #[test]
    fn symmetric_training_gives_a_tie() {
        let m = NbModel::fit(&[vec![0], vec![1]], &["neg", "pos"], 2, NbConfig::default()).unwrap();
        for input in [vec![], vec![0, 1]] {
            let p = m.predict(&input);
            assert_eq!(p.log_scores[0], p.log_scores[1]);
            assert!(p.tied);
            assert_eq!(p.label, "neg");
        }
        assert!(!m.predict(&[1]).tied);
        assert_eq!(m.predict(&[1]).label, "pos");
    }

    #[test]
    fn balanced_priors_are_uniform() {
        let m = NbModel::fit(
            &[vec![0], vec![0], vec![0], vec![1]],
            &["a", "a", "a", "b"],
            2,
            NbConfig {
                prior_mode: PriorMode::Balanced,
                ..NbConfig::default()
            },
        )
        .unwrap();
        assert_eq!(m.log_priors()[0], m.log_priors()[1]);
    }

    #[test]
    fn rejects_bad_training_input() {
        let bad_alpha = NbConfig {
            alpha: 0.0,
            ..NbConfig::default()
        };
        assert!(NbModel::fit(&[vec![0]], &["a"], 1, bad_alpha).is_err());
        let empty: [&str; 0] = [];
        assert!(NbModel::fit(&[], &empty, 1, NbConfig::default()).is_err());
        assert!(NbModel::fit(&[vec![5]], &["a"], 1, NbConfig::default()).is_err());
    }
}
