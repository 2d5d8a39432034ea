//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Every export takes and returns JSON or CSV strings; errors come back as
//! a rejected string the page shows verbatim.

use cpccms_core::io::{parse_decision_matrix, parse_pom, parse_timings};
use cpccms_core::metrics::EFFICIENCY;
use cpccms_core::textpipe::{preprocess as run_preprocess, PreprocessConfig};
use cpccms_core::{evaluate, PairwiseOppositeMatrix, Verdict};
use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use wasm_bindgen::prelude::*;

#[derive(Debug, Serialize)]
struct WeightsView {
    criteria: Vec<String>,
    utilities: Vec<f64>,
    weights: Vec<f64>,
    ranks: Vec<usize>,
    accordance_index: f64,
    verdict: Verdict,
    warnings: Vec<String>,
}

fn to_json<T: Serialize>(value: &T) -> Result<String, String> {
    serde_json::to_string(value).map_err(|e| e.to_string())
}

/// `{"kappa", "criteria", "entries"}` in, weights and accordance out.
#[wasm_bindgen]
pub fn evaluate_pom(pom_json: &str) -> Result<String, String> {
    let pom = parse_pom(pom_json).map_err(|e| e.to_string())?;
    let report = evaluate(&pom).map_err(|e| e.to_string())?;
    to_json(&WeightsView {
        criteria: report.weights.criteria().to_vec(),
        utilities: report.utilities.values().to_vec(),
        weights: report.weights.weights().to_vec(),
        ranks: report.ranks,
        accordance_index: report.accordance_index,
        verdict: report.verdict,
        warnings: report.warnings,
    })
}

/// Ranks the models in `scores_csv`. With `with_efficiency`, the efficiency
/// column is derived from `timings_csv` (`model,seconds`).
#[wasm_bindgen]
pub fn rank_models(
    pom_json: &str,
    scores_csv: &str,
    timings_csv: &str,
    with_efficiency: bool,
) -> Result<String, String> {
    let pom = parse_pom(pom_json).map_err(|e| e.to_string())?;
    let scores =
        parse_decision_matrix(scores_csv.as_bytes()).map_err(|e| format!("scores: {e}"))?;
    let matrix = if with_efficiency {
        let timings = parse_timings(timings_csv.as_bytes()).map_err(|e| format!("timings: {e}"))?;
        scores
            .with_efficiency(&timings)
            .map_err(|e| e.to_string())?
    } else {
        scores.without(EFFICIENCY)
    };
    let report = cpccms_core::rank_models(&pom, &matrix).map_err(|e| e.to_string())?;
    to_json(&report)
}

#[derive(Debug, Deserialize)]
#[serde(default)]
struct PreprocessOptions {
    keep_punctuation: bool,
    stem: bool,
    ngram_min: usize,
    ngram_max: usize,
}

impl Default for PreprocessOptions {
    fn default() -> Self {
        let d = PreprocessConfig::default();
        Self {
            keep_punctuation: d.keep_punctuation,
            stem: d.stem,
            ngram_min: d.ngram_range.0,
            ngram_max: d.ngram_range.1,
        }
    }
}

/// Clean, tokenize, stem and expand n-grams. `options_json` may be empty.
#[wasm_bindgen]
pub fn preprocess(text: &str, options_json: &str) -> Result<String, String> {
    let o: PreprocessOptions = if options_json.trim().is_empty() {
        PreprocessOptions::default()
    } else {
        serde_json::from_str(options_json).map_err(|e| e.to_string())?
    };
    let config = PreprocessConfig {
        keep_punctuation: o.keep_punctuation,
        stem: o.stem,
        ngram_range: (o.ngram_min, o.ngram_max),
    };
    let tokens = run_preprocess(text, &config).map_err(|e| e.to_string())?;
    to_json(&tokens)
}

/// A zero matrix over `criteria_json` (a JSON array of names), for seeding the editor.
#[wasm_bindgen]
pub fn empty_pom(criteria_json: &str, kappa: f64) -> Result<String, String> {
    let criteria: Vec<String> = serde_json::from_str(criteria_json).map_err(|e| e.to_string())?;
    let pom = PairwiseOppositeMatrix::zeros(criteria, kappa).map_err(|e| e.to_string())?;
    let mut out = IndexMap::new();
    out.insert("kappa", serde_json::json!(pom.kappa()));
    out.insert("criteria", serde_json::json!(pom.criteria()));
    out.insert("entries", serde_json::json!(pom.entries()));
    to_json(&out)
}
