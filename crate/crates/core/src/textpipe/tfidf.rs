//! Term frequency times smoothed inverse document frequency, L2-normalised.
//!
//! `idf(t) = ln((1 + N) / (1 + df(t))) + 1`, `tf` is the raw in-document count.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::tokenize::TokenSequence;
use crate::error::{Error, Result};

/// Document frequencies fitted on a corpus. The vocabulary is sorted
/// lexicographically and a term's index is its position in it.
#[derive(Debug, Clone, PartialEq)]
pub struct CorpusStats {
    n_docs: u64,
    vocabulary: Vec<String>,
    df: Vec<u64>,
    index: HashMap<String, usize>,
}

impl CorpusStats {
    pub fn fit(corpus: &[TokenSequence]) -> Result<Self> {
        if corpus.is_empty() {
            return Err(Error::input(
                "cannot fit document frequencies on an empty corpus",
            ));
        }
        let mut df: BTreeMap<&str, u64> = BTreeMap::new();
        for doc in corpus {
            let unique: BTreeSet<&str> = doc.iter().collect();
            for term in unique {
                *df.entry(term).or_default() += 1;
            }
        }
        Self::from_document_frequencies(
            corpus.len() as u64,
            df.into_iter().map(|(t, d)| (t.to_string(), d)),
        )
    }

    /// Builds statistics from precomputed counts, e.g. from a reference corpus.
    pub fn from_document_frequencies<I>(n_docs: u64, df: I) -> Result<Self>
    where
        I: IntoIterator<Item = (String, u64)>,
    {
        if n_docs == 0 {
            return Err(Error::input("corpus size must be positive"));
        }
        let mut sorted = BTreeMap::new();
        for (term, d) in df {
            if d == 0 || d > n_docs {
                return Err(Error::input(format!(
                    "document frequency of `{term}` is {d}, expected 1..={n_docs}"
                )));
            }
            if sorted.insert(term.clone(), d).is_some() {
                return Err(Error::input(format!("duplicate term `{term}`")));
            }
        }
        let vocabulary: Vec<String> = sorted.keys().cloned().collect();
        let df = sorted.into_values().collect();
        let index = vocabulary
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        Ok(Self {
            n_docs,
            vocabulary,
            df,
            index,
        })
    }

    pub fn n_docs(&self) -> u64 {
        self.n_docs
    }

    pub fn vocabulary(&self) -> &[String] {
        &self.vocabulary
    }

    pub fn len(&self) -> usize {
        self.vocabulary.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vocabulary.is_empty()
    }

    pub fn index_of(&self, term: &str) -> Option<usize> {
        self.index.get(term).copied()
    }

    pub fn df(&self, term: &str) -> Option<u64> {
        self.index_of(term).map(|i| self.df[i])
    }

    pub fn idf_at(&self, index: usize) -> f64 {
        idf(self.n_docs, self.df[index])
    }

    pub fn idf(&self, term: &str) -> Option<f64> {
        self.index_of(term).map(|i| self.idf_at(i))
    }
}

pub fn idf(n_docs: u64, df: u64) -> f64 {
    ((1.0 + n_docs as f64) / (1.0 + df as f64)).ln() + 1.0
}

/// Per-term breakdown of one document's TF-IDF.
#[derive(Debug, Clone, PartialEq)]
pub struct TermWeight {
    pub term: String,
    pub index: usize,
    pub tf: u64,
    pub df: u64,
    pub idf: f64,
    pub tfidf: f64,
    pub normalized: f64,
}

/// Breakdown for every known term in the document, in vocabulary order.
/// Unknown terms are dropped.
pub fn term_weights(tokens: &TokenSequence, stats: &CorpusStats) -> Vec<TermWeight> {
    let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
    for t in tokens.iter() {
        if let Some(i) = stats.index_of(t) {
            *counts.entry(i).or_default() += 1;
        }
    }
    let mut rows: Vec<TermWeight> = counts
        .into_iter()
        .map(|(index, tf)| {
            let idf = stats.idf_at(index);
            TermWeight {
                term: stats.vocabulary[index].clone(),
                index,
                tf,
                df: stats.df[index],
                idf,
                tfidf: tf as f64 * idf,
                normalized: 0.0,
            }
        })
        .collect();
    let norm = rows.iter().map(|r| r.tfidf * r.tfidf).sum::<f64>().sqrt();
    if norm > 0.0 {
        for r in &mut rows {
            r.normalized = r.tfidf / norm;
        }
    }
    rows
}

/// Sparse, L2-normalised TF-IDF vector keyed by vocabulary index.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TfidfVector {
    entries: Vec<(usize, f64)>,
}

impl TfidfVector {
    /// `(vocabulary index, weight)` pairs in index order.
    pub fn entries(&self) -> &[(usize, f64)] {
        &self.entries
    }

    pub fn get(&self, index: usize) -> f64 {
        self.entries
            .binary_search_by_key(&index, |e| e.0)
            .map(|k| self.entries[k].1)
            .unwrap_or(0.0)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn norm(&self) -> f64 {
        self.entries.iter().map(|(_, w)| w * w).sum::<f64>().sqrt()
    }

    /// Indices whose weight is strictly above `threshold`.
    pub fn binarize(&self, threshold: f64) -> Vec<usize> {
        self.entries
            .iter()
            .filter(|(_, w)| *w > threshold)
            .map(|(i, _)| *i)
            .collect()
    }
}

/// A document with no known term maps to the empty (zero) vector.
pub fn tfidf_vector(tokens: &TokenSequence, stats: &CorpusStats) -> TfidfVector {
    TfidfVector {
        entries: term_weights(tokens, stats)
            .into_iter()
            .map(|r| (r.index, r.normalized))
            .collect(),
    }
}
