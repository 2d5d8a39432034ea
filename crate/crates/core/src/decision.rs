//! Weighted decision matrix: comprehensive scores and competition ranking of models.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::cpc::{self, CpcReport, PairwiseOppositeMatrix, Verdict, WeightVector};
use crate::error::{Error, Result};
use crate::metrics::{self, EvaluationRecord, TimingSet, CRITERIA, EFFICIENCY};
use crate::report::{round_to, rounded_key, DEFAULT_PRECISION};

/// `m` models scored on `n` named criteria.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMatrix")]
pub struct DecisionMatrix {
    models: Vec<String>,
    criteria: Vec<String>,
    scores: Vec<Vec<f64>>,
}

#[derive(Deserialize)]
struct RawMatrix {
    models: Vec<String>,
    criteria: Vec<String>,
    scores: Vec<Vec<f64>>,
}

impl TryFrom<RawMatrix> for DecisionMatrix {
    type Error = Error;

    fn try_from(raw: RawMatrix) -> Result<Self> {
        Self::new(raw.models, raw.criteria, raw.scores)
    }
}

fn first_duplicate(names: &[String]) -> Option<&String> {
    names
        .iter()
        .enumerate()
        .find(|(i, n)| names[..*i].contains(n))
        .map(|(_, n)| n)
}

impl DecisionMatrix {
    pub fn new(models: Vec<String>, criteria: Vec<String>, scores: Vec<Vec<f64>>) -> Result<Self> {
        if models.is_empty() || criteria.is_empty() {
            return Err(Error::input(
                "decision matrix needs at least one model and one criterion",
            ));
        }
        if let Some(d) = first_duplicate(&models) {
            return Err(Error::input(format!("duplicate model `{d}`")));
        }
        if let Some(d) = first_duplicate(&criteria) {
            return Err(Error::input(format!("duplicate criterion `{d}`")));
        }
        if scores.len() != models.len() {
            return Err(Error::input(format!(
                "{} models but {} score rows",
                models.len(),
                scores.len()
            )));
        }
        for (model, row) in models.iter().zip(&scores) {
            if row.len() != criteria.len() {
                return Err(Error::input(format!(
                    "row `{model}` has {} scores, expected {}",
                    row.len(),
                    criteria.len()
                )));
            }
            if row.iter().any(|v| !v.is_finite()) {
                return Err(Error::input(format!(
                    "row `{model}` has a non-finite score"
                )));
            }
        }
        Ok(Self {
            models,
            criteria,
            scores,
        })
    }

    pub fn models(&self) -> &[String] {
        &self.models
    }

    pub fn criteria(&self) -> &[String] {
        &self.criteria
    }

    pub fn scores(&self) -> &[Vec<f64>] {
        &self.scores
    }

    pub fn row(&self, model: &str) -> Option<&[f64]> {
        let i = self.models.iter().position(|m| m == model)?;
        Some(&self.scores[i])
    }

    pub fn get(&self, model: &str, criterion: &str) -> Option<f64> {
        let j = self.criteria.iter().position(|c| c == criterion)?;
        self.row(model).map(|r| r[j])
    }

    pub fn set(&mut self, model: &str, criterion: &str, value: f64) -> Result<()> {
        if !value.is_finite() {
            return Err(Error::input(format!(
                "score for `{model}`/`{criterion}` must be finite"
            )));
        }
        let i = self
            .models
            .iter()
            .position(|m| m == model)
            .ok_or_else(|| Error::input(format!("unknown model `{model}`")))?;
        let j = self
            .criteria
            .iter()
            .position(|c| c == criterion)
            .ok_or_else(|| Error::input(format!("unknown criterion `{criterion}`")))?;
        self.scores[i][j] = value;
        Ok(())
    }

    pub fn has_criterion(&self, criterion: &str) -> bool {
        self.criteria.iter().any(|c| c == criterion)
    }

    /// Columns reordered to `order`. Both sides must name exactly the same criteria.
    pub fn aligned_to(&self, order: &[String]) -> Result<Self> {
        let missing: Vec<String> = order
            .iter()
            .filter(|c| !self.has_criterion(c))
            .cloned()
            .collect();
        let unexpected: Vec<String> = self
            .criteria
            .iter()
            .filter(|c| !order.contains(c))
            .cloned()
            .collect();
        if !missing.is_empty() || !unexpected.is_empty() {
            return Err(Error::CriteriaMismatch {
                missing,
                unexpected,
            });
        }
        let idx: Vec<usize> = order
            .iter()
            .map(|c| self.criteria.iter().position(|x| x == c).unwrap())
            .collect();
        Ok(Self {
            models: self.models.clone(),
            criteria: order.to_vec(),
            scores: self
                .scores
                .iter()
                .map(|row| idx.iter().map(|&j| row[j]).collect())
                .collect(),
        })
    }

    /// Drops a column if present.
    pub fn without(&self, criterion: &str) -> Self {
        let Some(j) = self.criteria.iter().position(|c| c == criterion) else {
            return self.clone();
        };
        let mut out = self.clone();
        out.criteria.remove(j);
        for row in &mut out.scores {
            row.remove(j);
        }
        out
    }

    /// Appends (or replaces) the efficiency column computed from running
    /// times. The timing set must cover exactly the matrix's models.
    pub fn with_efficiency(&self, timings: &TimingSet) -> Result<Self> {
        let missing: Vec<&str> = self
            .models
            .iter()
            .map(String::as_str)
            .filter(|m| timings.get(m).is_none())
            .collect();
        if !missing.is_empty() {
            return Err(Error::input(format!("no running time for {missing:?}")));
        }
        let extra: Vec<&str> = timings
            .models()
            .filter(|m| !self.models.iter().any(|x| x == m))
            .collect();
        if !extra.is_empty() {
            return Err(Error::input(format!(
                "running times for unknown models {extra:?}"
            )));
        }
        let eff = metrics::efficiency(timings);
        let mut out = self.without(EFFICIENCY);
        out.criteria.push(EFFICIENCY.to_string());
        for (model, row) in out.models.iter().zip(out.scores.iter_mut()) {
            row.push(eff[model.as_str()]);
        }
        Ok(out)
    }
}

/// Builds the matrix with columns `accuracy, precision, recall, f1,
/// specificity, mcc, kappa` and, when requested, `efficiency`.
pub fn assemble_matrix(
    records: &[EvaluationRecord],
    timings: Option<&TimingSet>,
    include_efficiency: bool,
) -> Result<DecisionMatrix> {
    let base = DecisionMatrix::new(
        records.iter().map(|r| r.model.clone()).collect(),
        CRITERIA.iter().map(|c| c.to_string()).collect(),
        records.iter().map(|r| r.scores.values().to_vec()).collect(),
    )?;
    if !include_efficiency {
        return Ok(base);
    }
    let timings =
        timings.ok_or_else(|| Error::input("efficiency requested but no running times given"))?;
    base.with_efficiency(timings)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelScore {
    pub model: String,
    pub score: f64,
}

/// Comprehensive scores `G_i = sum_j w_j * s_ij`, with columns matched to
/// weights by criterion name.
pub fn weighted_scores(matrix: &DecisionMatrix, weights: &WeightVector) -> Result<Vec<ModelScore>> {
    let aligned = matrix.aligned_to(weights.criteria())?;
    Ok(aligned
        .models
        .iter()
        .zip(&aligned.scores)
        .map(|(model, row)| ModelScore {
            model: model.clone(),
            score: row.iter().zip(weights.weights()).map(|(s, w)| s * w).sum(),
        })
        .collect())
}

/// Competition ranks ("1224") of `values`, larger is better, with ties
/// detected after rounding to `decimals`. Returned in input order.
pub fn competition_ranks(values: &[f64], decimals: u32) -> Vec<usize> {
    let keys: Vec<i64> = values.iter().map(|&v| rounded_key(v, decimals)).collect();
    keys.iter()
        .map(|k| 1 + keys.iter().filter(|o| *o > k).count())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedModel {
    pub model: String,
    pub score: f64,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ranking {
    /// Sorted by descending score.
    pub entries: Vec<RankedModel>,
    /// Every model at rank 1.
    pub best: Vec<String>,
}

impl Ranking {
    pub fn rank_of(&self, model: &str) -> Option<usize> {
        self.entries
            .iter()
            .find(|e| e.model == model)
            .map(|e| e.rank)
    }

    pub fn score_of(&self, model: &str) -> Option<f64> {
        self.entries
            .iter()
            .find(|e| e.model == model)
            .map(|e| e.score)
    }
}

/// Competition ranking on scores compared at three decimals.
pub fn rank(scores: &[ModelScore]) -> Result<Ranking> {
    rank_at(scores, DEFAULT_PRECISION)
}

pub fn rank_at(scores: &[ModelScore], decimals: u32) -> Result<Ranking> {
    if scores.is_empty() {
        return Err(Error::input("nothing to rank"));
    }
    let values: Vec<f64> = scores.iter().map(|s| s.score).collect();
    let ranks = competition_ranks(&values, decimals);
    let mut entries: Vec<RankedModel> = scores
        .iter()
        .zip(ranks)
        .map(|(s, rank)| RankedModel {
            model: s.model.clone(),
            score: s.score,
            rank,
        })
        .collect();
    entries.sort_by(|a, b| a.rank.cmp(&b.rank).then(b.score.total_cmp(&a.score)));
    let best = entries
        .iter()
        .filter(|e| e.rank == 1)
        .map(|e| e.model.clone())
        .collect();
    Ok(Ranking { entries, best })
}

/// The ranking report written by the CLI and returned by the service.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankingReport {
    pub weights: IndexMap<String, f64>,
    pub accordance_index: f64,
    pub verdict: Verdict,
    pub results: Vec<RankedModel>,
    pub best: Vec<String>,
}

impl RankingReport {
    pub fn new(cpc: &CpcReport, ranking: Ranking) -> Self {
        Self {
            weights: cpc
                .weights
                .iter()
                .map(|(c, w)| (c.to_string(), w))
                .collect(),
            accordance_index: cpc.accordance_index,
            verdict: cpc.verdict,
            results: ranking.entries,
            best: ranking.best,
        }
    }

    /// Presentation copy: weights and scores at `decimals`, the accordance
    /// index at one extra decimal.
    pub fn rounded(&self, decimals: u32) -> Self {
        Self {
            weights: self
                .weights
                .iter()
                .map(|(c, w)| (c.clone(), round_to(*w, decimals)))
                .collect(),
            accordance_index: round_to(self.accordance_index, decimals + 1),
            verdict: self.verdict,
            results: self
                .results
                .iter()
                .map(|r| RankedModel {
                    score: round_to(r.score, decimals),
                    ..r.clone()
                })
                .collect(),
            best: self.best.clone(),
        }
    }

    pub fn rank_of(&self, model: &str) -> Option<usize> {
        self.results
            .iter()
            .find(|e| e.model == model)
            .map(|e| e.rank)
    }

    pub fn score_of(&self, model: &str) -> Option<f64> {
        self.results
            .iter()
            .find(|e| e.model == model)
            .map(|e| e.score)
    }
}

/// Weights from the expert matrix, then scores and ranks for every model.
pub fn rank_models(pom: &PairwiseOppositeMatrix, matrix: &DecisionMatrix) -> Result<RankingReport> {
    let cpc = cpc::evaluate(pom)?;
    let scores = weighted_scores(matrix, &cpc.weights)?;
    Ok(RankingReport::new(&cpc, rank(&scores)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::CriterionScores;

    fn s(v: &[&str]) -> Vec<String> {
        v.iter().map(|x| x.to_string()).collect()
    }

    fn ms(pairs: &[(&str, f64)]) -> Vec<ModelScore> {
        pairs
            .iter()
            .map(|(m, g)| ModelScore {
                model: m.to_string(),
                score: *g,
            })
            .collect()
    }

    #[test]
    fn single_criterion_passes_column_through() {
        let m = DecisionMatrix::new(s(&["a", "b"]), s(&["x"]), vec![vec![0.3], vec![0.9]]).unwrap();
        let w = WeightVector::new(s(&["x"]), vec![1.0]).unwrap();
        let g = weighted_scores(&m, &w).unwrap();
        assert_eq!(g[0].score, 0.3);
        assert_eq!(g[1].score, 0.9);
    }

    #[test]
    fn alignment_is_by_name() {
        let m = DecisionMatrix::new(s(&["a"]), s(&["x", "y"]), vec![vec![1.0, 0.0]]).unwrap();
        let w = WeightVector::new(s(&["y", "x"]), vec![0.25, 0.75]).unwrap();
        assert_eq!(weighted_scores(&m, &w).unwrap()[0].score, 0.75);
        let w = WeightVector::new(s(&["x", "z"]), vec![0.5, 0.5]).unwrap();
        match weighted_scores(&m, &w) {
            Err(Error::CriteriaMismatch {
                missing,
                unexpected,
            }) => {
                assert_eq!(missing, s(&["z"]));
                assert_eq!(unexpected, s(&["y"]));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn competition_ranking_examples() {
        let r = rank(&ms(&[
            ("LSVC", 0.88174),
            ("NB", 0.569),
            ("RF", 0.702),
            ("LR", 0.88182),
            ("XGB", 0.863),
            ("LSTM", 0.884),
            ("ALBERT", 0.895),
        ]))
        .unwrap();
        let ranks: Vec<usize> = ["LSVC", "NB", "RF", "LR", "XGB", "LSTM", "ALBERT"]
            .iter()
            .map(|m| r.rank_of(m).unwrap())
            .collect();
        assert_eq!(ranks, [3, 7, 6, 3, 5, 2, 1]);
        assert_eq!(r.best, ["ALBERT"]);

        let r = rank(&ms(&[("only", 0.2)])).unwrap();
        assert_eq!(r.entries[0].rank, 1);

        let r = rank(&ms(&[("a", 0.5), ("b", 0.5), ("c", 0.5), ("d", 0.5)])).unwrap();
        assert!(r.entries.iter().all(|e| e.rank == 1));
        assert_eq!(r.best.len(), 4);

        assert!(rank(&[]).is_err());
    }

    #[test]
    fn assemble_with_and_without_efficiency() {
        let rec = |m: &str| EvaluationRecord {
            model: m.into(),
            scores: CriterionScores::from_values([0.5; 7]),
        };
        let records = vec![rec("a"), rec("b")];
        let t = TimingSet::new([("a", 3.0), ("b", 3.0)]).unwrap();
        let m = assemble_matrix(&records, Some(&t), false).unwrap();
        assert_eq!(m.criteria().len(), 7);
        let m = assemble_matrix(&records, Some(&t), true).unwrap();
        assert_eq!(m.criteria().last().unwrap(), EFFICIENCY);
        assert_eq!(m.get("a", EFFICIENCY), Some(1.0));
        assert_eq!(m.get("b", EFFICIENCY), Some(1.0));

        let partial = TimingSet::new([("a", 3.0)]).unwrap();
        assert!(assemble_matrix(&records, Some(&partial), true).is_err());
        let extra = TimingSet::new([("a", 3.0), ("b", 1.0), ("c", 2.0)]).unwrap();
        assert!(assemble_matrix(&records, Some(&extra), true).is_err());
        assert!(assemble_matrix(&records, None, true).is_err());
        assert!(assemble_matrix(&[rec("a"), rec("a")], None, false).is_err());
    }

    #[test]
    fn report_rounding_keeps_extra_ai_digit() {
        let report = RankingReport {
            weights: [("x".to_string(), 0.23716)].into_iter().collect(),
            accordance_index: 0.0746818,
            verdict: Verdict::Acceptable,
            results: vec![RankedModel {
                model: "m".into(),
                score: 0.81067,
                rank: 1,
            }],
            best: vec!["m".into()],
        };
        let r = report.rounded(3);
        assert_eq!(r.weights["x"], 0.237);
        assert_eq!(r.accordance_index, 0.0747);
        assert_eq!(r.results[0].score, 0.811);
    }
}
