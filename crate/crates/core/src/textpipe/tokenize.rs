use serde::{Deserialize, Serialize};

use super::clean::CleanDocument;

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TokenSequence(pub Vec<String>);

impl TokenSequence {
    pub fn tokens(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(String::as_str)
    }
}

impl<S: Into<String>> FromIterator<S> for TokenSequence {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        Self(iter.into_iter().map(Into::into).collect())
    }
}

/// Splits on whitespace and punctuation; separators are never emitted.
pub fn tokenize(doc: &CleanDocument) -> TokenSequence {
    tokenize_str(&doc.text)
}

pub fn tokenize_str(text: &str) -> TokenSequence {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textpipe::clean;

    #[test]
    fn sample_document_tokens() {
        let doc = clean(
            "My life is chaos. There is no solution. Fear of the uncertain. Restless direction.",
            false,
        );
        let expected = [
            "my",
            "life",
            "is",
            "chaos",
            "there",
            "is",
            "no",
            "solution",
            "fear",
            "of",
            "the",
            "uncertain",
            "restless",
            "direction",
        ];
        assert_eq!(tokenize(&doc).0, expected);
        // Punctuation is a separator, so the punctuation-preserving form tokenizes the same.
        let kept = clean(
            "My life is chaos. There is no solution. Fear of the uncertain. Restless direction.",
            true,
        );
        assert_eq!(tokenize(&kept).0, expected);
    }

    #[test]
    fn edge_cases() {
        assert!(tokenize_str("").is_empty());
        assert_eq!(tokenize_str("a  b").0, ["a", "b"]);
        assert_eq!(tokenize_str("wait... what?!").0, ["wait", "what"]);
    }
}
