use super::tokenize::TokenSequence;
use crate::error::{Error, Result};

/// Contiguous n-grams for every `n` in `min_n..=max_n`, joined by single
/// spaces. All unigrams come first (in document order), then all bigrams,
/// and so on.
pub fn expand_ngrams(tokens: &TokenSequence, min_n: usize, max_n: usize) -> Result<TokenSequence> {
    if min_n == 0 || min_n > max_n {
        return Err(Error::Input(format!(
            "invalid n-gram range ({min_n}, {max_n})"
        )));
    }
    let t = tokens.tokens();
    let mut out = Vec::new();
    for n in min_n..=max_n {
        out.extend(t.windows(n).map(|w| w.join(" ")));
    }
    Ok(TokenSequence(out))
}
