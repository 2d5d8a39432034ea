//! Model selection by expert-weighted evaluation criteria.
//!
//! Criterion weights come from a pairwise opposite matrix of expert
//! judgments ([`cpc`]); models are scored on multiclass metrics
//! ([`metrics`]) and ranked by the weighted sum of those scores
//! ([`decision`]). [`textpipe`] and [`pipeline`] provide a small text
//! classification pipeline that produces evaluation records to rank.

pub mod cpc;
pub mod decision;
pub mod error;
pub mod io;
pub mod metrics;
pub mod pipeline;
pub mod report;
pub mod textpipe;

pub use cpc::{
    accordance_index, classify_accordance, evaluate, normalize_weights, rau_utilities,
    validate_pom, AccordanceReport, CpcReport, PairwiseOppositeMatrix, UtilityVector, Verdict,
    Violation, WeightVector,
};
pub use decision::{
    assemble_matrix, rank, rank_models, weighted_scores, DecisionMatrix, Ranking, RankingReport,
};
pub use error::{Error, Result};
pub use metrics::{
    criterion_scores, efficiency, ConfusionMatrix, CriterionScores, EvaluationRecord, TimingSet,
};
