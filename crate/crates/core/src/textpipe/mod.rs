//! Document pipeline: cleaning, tokenization, stemming, n-grams, TF-IDF and
//! Bernoulli naive Bayes.

pub mod clean;
pub mod naive_bayes;
pub mod ngram;
pub mod porter;
pub mod split;
pub mod tfidf;
pub mod tokenize;

pub use clean::{clean, CleanDocument, RawDocument};
pub use naive_bayes::{NbConfig, NbModel, Prediction, PriorMode};
pub use ngram::expand_ngrams;
pub use porter::porter_stem;
pub use split::{split_corpus, Split, DEFAULT_FRACTIONS, DEMO_SEEDS};
pub use tfidf::{idf, term_weights, tfidf_vector, CorpusStats, TermWeight, TfidfVector};
pub use tokenize::{tokenize, tokenize_str, TokenSequence};

/// Stems every token.
pub fn stem_tokens(tokens: &TokenSequence) -> TokenSequence {
    tokens.iter().map(porter_stem).collect()
}

/// Preprocessing options shared by training and prediction.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct PreprocessConfig {
    pub keep_punctuation: bool,
    pub stem: bool,
    pub ngram_range: (usize, usize),
}

impl Default for PreprocessConfig {
    fn default() -> Self {
        Self {
            keep_punctuation: false,
            stem: true,
            ngram_range: (1, 2),
        }
    }
}

/// clean, tokenize, optionally stem, then expand n-grams.
pub fn preprocess(text: &str, config: &PreprocessConfig) -> crate::Result<TokenSequence> {
    let tokens = tokenize(&clean(text, config.keep_punctuation));
    let tokens = if config.stem {
        stem_tokens(&tokens)
    } else {
        tokens
    };
    expand_ngrams(&tokens, config.ngram_range.0, config.ngram_range.1)
}
