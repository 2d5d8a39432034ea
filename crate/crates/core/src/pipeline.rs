//! End-to-end demo: split a labelled corpus, fit TF-IDF and Bernoulli naive
//! Bayes on the training part, and score the validation and test parts.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::{ConfusionMatrix, CriterionScores, EvaluationRecord};
use crate::textpipe::{
    preprocess, split_corpus, tfidf_vector, CorpusStats, NbConfig, NbModel, PreprocessConfig,
    RawDocument, TokenSequence, DEFAULT_FRACTIONS,
};

pub const DEMO_MODEL_NAME: &str = "BernoulliNB";
pub const MIN_DOCUMENTS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DemoConfig {
    pub seed: u64,
    pub fractions: [f64; 3],
    pub preprocess: PreprocessConfig,
    pub nb: NbConfig,
}

impl Default for DemoConfig {
    fn default() -> Self {
        Self {
            seed: 101,
            fractions: DEFAULT_FRACTIONS,
            preprocess: PreprocessConfig::default(),
            nb: NbConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PredictionRow {
    pub true_label: String,
    pub predicted_label: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DemoOutcome {
    pub classes: Vec<String>,
    pub sizes: [usize; 3],
    pub vocabulary_size: usize,
    pub validation: CriterionScores,
    pub record: EvaluationRecord,
    /// Test-set predictions.
    pub predictions: Vec<PredictionRow>,
    /// Validation and test predictions decided by a tie on the log scores.
    pub ties: usize,
    /// Wall-clock training, validation and test time.
    pub elapsed_seconds: f64,
}

#[derive(Clone)]
struct Prepared {
    tokens: TokenSequence,
    label: String,
}

pub fn run_demo(corpus: &[RawDocument], config: &DemoConfig) -> Result<DemoOutcome> {
    if corpus.len() < MIN_DOCUMENTS {
        return Err(Error::input(format!(
            "corpus has {} documents, need at least {MIN_DOCUMENTS}",
            corpus.len()
        )));
    }
    let mut classes: Vec<String> = Vec::new();
    let mut prepared = Vec::with_capacity(corpus.len());
    for (i, doc) in corpus.iter().enumerate() {
        let label = doc
            .label
            .clone()
            .ok_or_else(|| Error::input(format!("document {} has no label", i + 1)))?;
        if !classes.contains(&label) {
            classes.push(label.clone());
        }
        prepared.push(Prepared {
            tokens: preprocess(&doc.text, &config.preprocess)?,
            label,
        });
    }
    classes.sort();
    if classes.len() < 2 {
        return Err(Error::input("corpus needs at least two classes"));
    }

    let split = split_corpus(&prepared, config.fractions, config.seed)?;
    if split.train.is_empty() || split.validation.is_empty() || split.test.is_empty() {
        return Err(Error::input("split leaves an empty partition"));
    }

    let started = Instant::now();
    let train_tokens: Vec<TokenSequence> = split.train.iter().map(|d| d.tokens.clone()).collect();
    let stats = CorpusStats::fit(&train_tokens)?;
    let features: Vec<Vec<usize>> = train_tokens
        .iter()
        .map(|t| tfidf_vector(t, &stats).binarize(config.nb.binarize))
        .collect();
    let labels: Vec<&str> = split.train.iter().map(|d| d.label.as_str()).collect();
    let model = NbModel::fit(&features, &labels, stats.len(), config.nb)?;

    let mut ties = 0;
    let mut predict = |docs: &[&Prepared]| -> Vec<PredictionRow> {
        docs.iter()
            .map(|d| {
                let p = model.predict_weighted(&tfidf_vector(&d.tokens, &stats));
                ties += usize::from(p.tied);
                PredictionRow {
                    true_label: d.label.clone(),
                    predicted_label: p.label,
                }
            })
            .collect()
    };
    let validation_rows = predict(&split.validation.iter().collect::<Vec<_>>());
    let test_rows = predict(&split.test.iter().collect::<Vec<_>>());
    let elapsed_seconds = started.elapsed().as_secs_f64();

    let validation = scores_of(&validation_rows, &classes)?;
    let test = scores_of(&test_rows, &classes)?;
    Ok(DemoOutcome {
        sizes: [split.train.len(), split.validation.len(), split.test.len()],
        vocabulary_size: stats.len(),
        classes,
        validation,
        record: EvaluationRecord {
            model: DEMO_MODEL_NAME.to_string(),
            scores: test,
        },
        predictions: test_rows,
        ties,
        elapsed_seconds,
    })
}

fn scores_of(rows: &[PredictionRow], classes: &[String]) -> Result<CriterionScores> {
    let truth: Vec<&str> = rows.iter().map(|r| r.true_label.as_str()).collect();
    let predicted: Vec<&str> = rows.iter().map(|r| r.predicted_label.as_str()).collect();
    ConfusionMatrix::from_labels(&truth, &predicted, classes)?.criterion_scores()
}
