//! Criterion weights and accordance from a pairwise opposite matrix (POM).
//!
//! An expert states, for every pair of criteria, how many scale units one
//! criterion is more (positive) or less (negative) important than the other.
//! The matrix is antisymmetric with a zero diagonal and its entries are bounded
//! by the normal utility `kappa`. Weights come from the row average plus
//! normal utility (RAU) operator, and the accordance index (AI) measures how
//! far the judgments are from a perfectly consistent difference matrix.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::decision::competition_ranks;
use crate::error::{Error, Result};

/// Default normal utility; also the largest judgment magnitude on the default scale.
pub const DEFAULT_KAPPA: f64 = 8.0;

/// AI at or below this value counts as fully consistent.
pub const CONSISTENT_TOLERANCE: f64 = 1e-9;

/// AI above this value means the matrix should go back to the expert.
pub const REVISION_THRESHOLD: f64 = 0.1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPom")]
pub struct PairwiseOppositeMatrix {
    kappa: f64,
    criteria: Vec<String>,
    entries: Vec<Vec<f64>>,
}

#[derive(Deserialize)]
struct RawPom {
    #[serde(default = "default_kappa")]
    kappa: f64,
    criteria: Vec<String>,
    entries: Vec<Vec<f64>>,
}

fn default_kappa() -> f64 {
    DEFAULT_KAPPA
}

impl TryFrom<RawPom> for PairwiseOppositeMatrix {
    type Error = Error;

    fn try_from(raw: RawPom) -> Result<Self> {
        Self::new(raw.criteria, raw.kappa, raw.entries)
    }
}

impl PairwiseOppositeMatrix {
    /// Builds a matrix after structural checks only (shape, `n >= 2`,
    /// `kappa > 0`, finite cells, unique criterion names). Cell invariants are
    /// reported by [`validate`](Self::validate).
    pub fn new(criteria: Vec<String>, kappa: f64, entries: Vec<Vec<f64>>) -> Result<Self> {
        let n = criteria.len();
        if n < 2 {
            return Err(Error::Structure(format!(
                "need at least 2 criteria, got {n}"
            )));
        }
        if !(kappa.is_finite() && kappa > 0.0) {
            return Err(Error::Structure(format!(
                "kappa must be positive, got {kappa}"
            )));
        }
        if entries.len() != n {
            return Err(Error::Structure(format!(
                "{n} criteria but {} rows",
                entries.len()
            )));
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Structure(format!(
                    "row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
            if let Some(j) = row.iter().position(|v| !v.is_finite()) {
                return Err(Error::Structure(format!(
                    "non-finite entry at ({}, {})",
                    i + 1,
                    j + 1
                )));
            }
        }
        for (i, name) in criteria.iter().enumerate() {
            if criteria[..i].contains(name) {
                return Err(Error::Structure(format!("duplicate criterion `{name}`")));
            }
        }
        Ok(Self {
            kappa,
            criteria,
            entries,
        })
    }

    /// All-zero ("equal to") matrix.
    pub fn zeros(criteria: Vec<String>, kappa: f64) -> Result<Self> {
        let n = criteria.len();
        Self::new(criteria, kappa, vec![vec![0.0; n]; n])
    }

    /// Structural construction followed by [`validate`](Self::validate);
    /// any cell violation is returned as [`Error::Invalid`].
    pub fn checked(criteria: Vec<String>, kappa: f64, entries: Vec<Vec<f64>>) -> Result<Self> {
        let pom = Self::new(criteria, kappa, entries)?;
        pom.ensure_valid()?;
        Ok(pom)
    }

    pub fn n(&self) -> usize {
        self.criteria.len()
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn criteria(&self) -> &[String] {
        &self.criteria
    }

    pub fn entries(&self) -> &[Vec<f64>] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i][j]
    }

    pub fn index_of(&self, criterion: &str) -> Option<usize> {
        self.criteria.iter().position(|c| c == criterion)
    }

    /// Writes `b_ij = value` and `b_ji = -value` together.
    pub fn set_judgment(&mut self, i: usize, j: usize, value: f64) -> Result<()> {
        self.check_judgment(i, j, value)?;
        self.entries[i][j] = value;
        self.entries[j][i] = -value;
        Ok(())
    }

    /// Checks a prospective judgment without applying it.
    pub fn check_judgment(&self, i: usize, j: usize, value: f64) -> Result<()> {
        let n = self.n();
        if i >= n || j >= n {
            return Err(Error::input(format!(
                "cell ({i}, {j}) outside a {n}x{n} matrix"
            )));
        }
        if i == j {
            return Err(Error::input("diagonal judgments are fixed at 0"));
        }
        if !value.is_finite() || value.abs() > self.kappa {
            return Err(Error::input(format!(
                "judgment {value} outside [-{k}, {k}]",
                k = self.kappa
            )));
        }
        Ok(())
    }

    /// Every violated cell invariant; empty when the matrix is a valid POM.
    /// Antisymmetry is reported once per unordered pair.
    pub fn validate(&self) -> Vec<Violation> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 0..n {
            if self.entries[i][i] != 0.0 {
                out.push(Violation::Diagonal {
                    row: i,
                    value: self.entries[i][i],
                });
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let (upper, lower) = (self.entries[i][j], self.entries[j][i]);
                if upper != -lower {
                    out.push(Violation::Antisymmetry {
                        row: i,
                        col: j,
                        upper,
                        lower,
                    });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let value = self.entries[i][j];
                if value.abs() > self.kappa {
                    out.push(Violation::OutOfRange {
                        row: i,
                        col: j,
                        value,
                        kappa: self.kappa,
                    });
                }
            }
        }
        out
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let violations = self.validate();
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::Invalid(violations))
        }
    }

    /// Relabels criteria: position `k` of the result is criterion `perm[k]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let n = self.n();
        let mut seen = vec![false; n];
        if perm.len() != n
            || perm
                .iter()
                .any(|&p| p >= n || std::mem::replace(&mut seen[p], true))
        {
            return Err(Error::input("not a permutation of the criteria"));
        }
        let criteria = perm.iter().map(|&p| self.criteria[p].clone()).collect();
        let entries = perm
            .iter()
            .map(|&r| perm.iter().map(|&c| self.entries[r][c]).collect())
            .collect();
        Ok(Self {
            kappa: self.kappa,
            criteria,
            entries,
        })
    }

    /// The matrix with every judgment reversed.
    pub fn negated(&self) -> Self {
        Self {
            kappa: self.kappa,
            criteria: self.criteria.clone(),
            entries: self
                .entries
                .iter()
                .map(|row| row.iter().map(|v| -v).collect())
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Diagonal {
        row: usize,
        value: f64,
    },
    Antisymmetry {
        row: usize,
        col: usize,
        upper: f64,
        lower: f64,
    },
    OutOfRange {
        row: usize,
        col: usize,
        value: f64,
        kappa: f64,
    },
}

// Coordinates print 1-based, as a reader of the matrix would count them.
impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::Diagonal { row, value } => {
                write!(f, "diagonal ({r}, {r}) is {value}, expected 0", r = row + 1)
            }
            Violation::Antisymmetry {
                row,
                col,
                upper,
                lower,
            } => write!(
                f,
                "antisymmetry violated at ({}, {}): {upper} vs {lower}",
                row + 1,
                col + 1
            ),
            Violation::OutOfRange {
                row,
                col,
                value,
                kappa,
            } => write!(
                f,
                "entry ({}, {}) = {value} exceeds kappa {kappa}",
                row + 1,
                col + 1
            ),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Consistent,
    Acceptable,
    NeedsRevision,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Consistent => "Consistent",
            Verdict::Acceptable => "Acceptable",
            Verdict::NeedsRevision => "NeedsRevision",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AccordanceReport {
    pub ai: f64,
    pub verdict: Verdict,
}

/// Row utilities `v_i`, in judgment units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct UtilityVector(pub Vec<f64>);

impl UtilityVector {
    pub fn values(&self) -> &[f64] {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightVector {
    criteria: Vec<String>,
    weights: Vec<f64>,
}

impl WeightVector {
    /// Pairs names with weights. No normalization is imposed here; weights
    /// produced by [`normalize_weights`] sum to one.
    pub fn new(criteria: Vec<String>, weights: Vec<f64>) -> Result<Self> {
        if criteria.len() != weights.len() {
            return Err(Error::input(format!(
                "{} criteria but {} weights",
                criteria.len(),
                weights.len()
            )));
        }
        Ok(Self { criteria, weights })
    }

    pub fn criteria(&self) -> &[String] {
        &self.criteria
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn get(&self, criterion: &str) -> Option<f64> {
        self.criteria
            .iter()
            .position(|c| c == criterion)
            .map(|k| self.weights[k])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.criteria
            .iter()
            .map(String::as_str)
            .zip(self.weights.iter().copied())
    }

    pub fn sum(&self) -> f64 {
        self.weights.iter().sum()
    }
}

/// Validation entry point mirroring the file loader: `Ok(())` or the full
/// list of violated cells.
pub fn validate_pom(pom: &PairwiseOppositeMatrix) -> std::result::Result<(), Vec<Violation>> {
    let v = pom.validate();
    if v.is_empty() {
        Ok(())
    } else {
        Err(v)
    }
}

/// Accordance index: mean over all cells `(i, j)` of the RMS (over `p`) of
/// the scaled transitivity residual `(b_ip + b_pj - b_ij) / kappa`.
///
/// Expects a valid POM.
pub fn accordance_index(pom: &PairwiseOppositeMatrix) -> f64 {
    let n = pom.n();
    let b = pom.entries();
    let kappa = pom.kappa();
    let nf = n as f64;
    let mut total = 0.0;
    for i in 0..n {
        for j in 0..n {
            let mean_sq = (0..n)
                .map(|p| {
                    let r = (b[i][p] + b[p][j] - b[i][j]) / kappa;
                    r * r
                })
                .sum::<f64>()
                / nf;
            total += mean_sq.sqrt();
        }
    }
    total / (nf * nf)
}

pub fn classify_accordance(ai: f64) -> Result<Verdict> {
    if ai.is_nan() || ai < 0.0 {
        return Err(Error::input(format!(
            "accordance index must be >= 0, got {ai}"
        )));
    }
    Ok(if ai <= CONSISTENT_TOLERANCE {
        Verdict::Consistent
    } else if ai > REVISION_THRESHOLD {
        Verdict::NeedsRevision
    } else {
        Verdict::Acceptable
    })
}

pub fn accordance(pom: &PairwiseOppositeMatrix) -> AccordanceReport {
    let ai = accordance_index(pom);
    // ai is a mean of square roots, never negative or NaN for a finite matrix
    let verdict = classify_accordance(ai).unwrap_or(Verdict::NeedsRevision);
    AccordanceReport { ai, verdict }
}

/// RAU operator: `v_i = kappa + mean_j b_ij`.
pub fn rau_utilities(pom: &PairwiseOppositeMatrix) -> UtilityVector {
    let nf = pom.n() as f64;
    let values = pom
        .entries()
        .iter()
        .map(|row| pom.kappa() + order_independent_sum(row) / nf)
        .collect();
    UtilityVector(values)
}

// Summing in sorted order makes the result independent of criterion order,
// so relabelling criteria permutes utilities bit-for-bit.
fn order_independent_sum(values: &[f64]) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    sorted.iter().sum()
}

/// `w_i = v_i / (n * kappa)`.
pub fn normalize_weights(
    utilities: &UtilityVector,
    criteria: &[String],
    kappa: f64,
) -> Result<WeightVector> {
    let n = utilities.0.len();
    if criteria.len() != n {
        return Err(Error::input(format!(
            "{} utilities for {} criteria",
            n,
            criteria.len()
        )));
    }
    let scale = n as f64 * kappa;
    if scale == 0.0 || !scale.is_finite() {
        return Err(Error::input("n * kappa must be a nonzero finite number"));
    }
    let weights = utilities.0.iter().map(|v| v / scale).collect();
    WeightVector::new(criteria.to_vec(), weights)
}

/// One message per criterion whose utility fell below zero.
pub fn negative_utility_warnings(criteria: &[String], utilities: &UtilityVector) -> Vec<String> {
    criteria
        .iter()
        .zip(utilities.values())
        .filter(|(_, v)| **v < 0.0)
        .map(|(c, v)| format!("utility of `{c}` is negative ({v:.4}); its weight is negative"))
        .collect()
}

/// Everything derived from one expert matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CpcReport {
    pub kappa: f64,
    pub utilities: UtilityVector,
    pub weights: WeightVector,
    /// Competition rank of each criterion by weight (3-decimal ties), in criteria order.
    pub ranks: Vec<usize>,
    pub accordance_index: f64,
    pub verdict: Verdict,
    pub warnings: Vec<String>,
}

/// Validates the matrix, then derives utilities, weights, ranks and the
/// accordance verdict. Weights are computed even when the verdict is
/// `NeedsRevision`.
pub fn evaluate(pom: &PairwiseOppositeMatrix) -> Result<CpcReport> {
    pom.ensure_valid()?;
    let utilities = rau_utilities(pom);
    let weights = normalize_weights(&utilities, pom.criteria(), pom.kappa())?;
    let AccordanceReport { ai, verdict } = accordance(pom);
    let warnings = negative_utility_warnings(pom.criteria(), &utilities);
    let ranks = competition_ranks(weights.weights(), crate::report::DEFAULT_PRECISION);
    Ok(CpcReport {
        kappa: pom.kappa(),
        utilities,
        weights,
        ranks,
        accordance_index: ai,
        verdict,
        warnings,
    })
}
