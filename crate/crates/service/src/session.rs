//! Elicitation sessions: a pairwise opposite matrix filled in one judgment at
//! a time, plus optional model scores and running times to rank against.

use std::time::{SystemTime, UNIX_EPOCH};

use cpccms_core::cpc::{evaluate, CpcReport, PairwiseOppositeMatrix, Verdict};
use cpccms_core::decision::{rank, weighted_scores, DecisionMatrix, RankingReport};
use cpccms_core::metrics::{TimingSet, EFFICIENCY};
use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::ServiceError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Session {
    pub id: String,
    pom: PairwiseOppositeMatrix,
    pub scores: Option<DecisionMatrix>,
    pub timings: Option<TimingSet>,
    pub revision: u64,
    /// Milliseconds since the Unix epoch.
    pub created_at: u64,
    pub updated_at: u64,
}

/// Live state returned after every judgment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Snapshot {
    pub ai: f64,
    pub verdict: Verdict,
    pub weights: IndexMap<String, f64>,
    pub revision: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JudgmentOverride {
    pub i: usize,
    pub j: usize,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreOverride {
    pub model: String,
    pub criterion: String,
    pub value: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct WhatIf {
    pub judgment_overrides: Vec<JudgmentOverride>,
    pub score_overrides: Vec<ScoreOverride>,
    pub efficiency: bool,
}

fn now_millis() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_millis() as u64)
        .unwrap_or(0)
}

impl Session {
    /// A zero-filled matrix: every pair starts at "equally important".
    pub fn new(id: String, criteria: Vec<String>, kappa: f64) -> Result<Self, ServiceError> {
        let pom = PairwiseOppositeMatrix::zeros(criteria, kappa)?;
        let now = now_millis();
        Ok(Self {
            id,
            pom,
            scores: None,
            timings: None,
            revision: 0,
            created_at: now,
            updated_at: now,
        })
    }

    pub fn pom(&self) -> &PairwiseOppositeMatrix {
        &self.pom
    }

    pub fn criteria(&self) -> &[String] {
        self.pom.criteria()
    }

    pub fn kappa(&self) -> f64 {
        self.pom.kappa()
    }

    fn touch(&mut self) {
        self.revision += 1;
        self.updated_at = now_millis();
    }

    /// Writes `b_ij = value` and `b_ji = -value` together. Rejected writes
    /// leave the session untouched.
    pub fn set_judgment(
        &mut self,
        i: usize,
        j: usize,
        value: f64,
    ) -> Result<Snapshot, ServiceError> {
        self.pom.set_judgment(i, j, value)?;
        self.touch();
        self.snapshot()
    }

    pub fn set_scores(&mut self, scores: DecisionMatrix) {
        self.scores = Some(scores);
        self.touch();
    }

    pub fn set_timings(&mut self, timings: TimingSet) {
        self.timings = Some(timings);
        self.touch();
    }

    pub fn report(&self) -> Result<CpcReport, ServiceError> {
        Ok(evaluate(&self.pom)?)
    }

    pub fn snapshot(&self) -> Result<Snapshot, ServiceError> {
        let report = self.report()?;
        Ok(Snapshot {
            ai: report.accordance_index,
            verdict: report.verdict,
            weights: report
                .weights
                .iter()
                .map(|(c, w)| (c.to_string(), w))
                .collect(),
            revision: self.revision,
        })
    }

    pub fn ranking(&self, include_efficiency: bool) -> Result<RankingReport, ServiceError> {
        rank_state(
            &self.pom,
            self.scores.as_ref(),
            self.timings.as_ref(),
            include_efficiency,
        )
    }

    /// Ranks a modified copy of the current state; the session itself is not touched.
    pub fn whatif(&self, edits: &WhatIf) -> Result<RankingReport, ServiceError> {
        let mut pom = self.pom.clone();
        for o in &edits.judgment_overrides {
            pom.set_judgment(o.i, o.j, o.value)?;
        }
        let mut scores = self.scores.clone();
        if !edits.score_overrides.is_empty() {
            let matrix = scores.as_mut().ok_or_else(no_scores)?;
            for o in &edits.score_overrides {
                if !o.value.is_finite() {
                    return Err(ServiceError::bad_request(format!(
                        "score override for `{}`/`{}` is not a finite number",
                        o.model, o.criterion
                    )));
                }
                matrix.set(&o.model, &o.criterion, o.value)?;
            }
        }
        rank_state(
            &pom,
            scores.as_ref(),
            self.timings.as_ref(),
            edits.efficiency,
        )
    }
}

fn no_scores() -> ServiceError {
    ServiceError::conflict(
        "scores_missing",
        "no decision matrix attached to this session",
    )
}

fn rank_state(
    pom: &PairwiseOppositeMatrix,
    scores: Option<&DecisionMatrix>,
    timings: Option<&TimingSet>,
    include_efficiency: bool,
) -> Result<RankingReport, ServiceError> {
    let scores = scores.ok_or_else(no_scores)?;
    let matrix = if include_efficiency {
        let timings = timings.ok_or_else(|| {
            ServiceError::conflict(
                "timings_missing",
                "efficiency requested but no running times attached",
            )
        })?;
        scores.with_efficiency(timings)?
    } else {
        scores.without(EFFICIENCY)
    };
    let cpc = evaluate(pom)?;
    let g = weighted_scores(&matrix, &cpc.weights)?;
    Ok(RankingReport::new(&cpc, rank(&g)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn session(n: usize) -> Session {
        let criteria = (0..n).map(|k| format!("c{k}")).collect();
        Session::new("s".into(), criteria, 8.0).unwrap()
    }

    #[test]
    fn starts_uniform_and_consistent() {
        let s = session(7);
        let snap = s.snapshot().unwrap();
        assert_eq!(snap.verdict, Verdict::Consistent);
        assert!(snap.weights.values().all(|w| (w - 1.0 / 7.0).abs() < 1e-12));
        assert_eq!(snap.revision, 0);
    }

    #[test]
    fn rejected_writes_do_not_bump_revision() {
        let mut s = session(3);
        assert!(s.set_judgment(0, 1, 9.0).is_err());
        assert!(s.set_judgment(1, 1, 1.0).is_err());
        assert!(s.set_judgment(0, 3, 1.0).is_err());
        assert_eq!(s.revision, 0);
        s.set_judgment(0, 1, -3.0).unwrap();
        assert_eq!(s.revision, 1);
        assert_eq!(s.pom().get(1, 0), 3.0);
    }

    #[test]
    fn ranking_needs_scores_and_timings() {
        let mut s = session(2);
        assert_eq!(s.ranking(false).unwrap_err().code(), "scores_missing");
        s.set_scores(
            DecisionMatrix::new(
                vec!["m".into()],
                vec!["c0".into(), "c1".into()],
                vec![vec![0.5, 1.0]],
            )
            .unwrap(),
        );
        assert!((s.ranking(false).unwrap().results[0].score - 0.75).abs() < 1e-12);
        assert_eq!(s.ranking(true).unwrap_err().code(), "timings_missing");
    }
}
