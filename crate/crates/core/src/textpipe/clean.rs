use std::sync::LazyLock;

use regex::Regex;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawDocument {
    pub text: String,
    pub label: Option<String>,
}

impl RawDocument {
    pub fn new(text: impl Into<String>, label: Option<String>) -> Self {
        Self {
            text: text.into(),
            label,
        }
    }

    pub fn clean(&self, keep_punctuation: bool) -> CleanDocument {
        clean(&self.text, keep_punctuation)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CleanDocument {
    pub text: String,
    pub kept_punctuation: bool,
}

static LINK: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"(?i)\b(?:https?://|www\.)\S+").unwrap());
static RETWEET: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"\bRT\b:?").unwrap());
static MENTION: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"@\w+:?").unwrap());
// `&#39;` and friends are numeric entities, not hashtags.
static HASHTAG: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"(^|[^&\w])#\w+").unwrap());
static NON_ALPHA: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"[^a-z]+").unwrap());
static SPACES: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"\s+").unwrap());

const MAX_PASSES: usize = 8;

/// Normalises a raw document. Steps run in this order: remove links, `RT`
/// markers, @-mentions and #-tags; lowercase; optionally replace every
/// character outside `a-z` with a space; collapse whitespace; decode HTML
/// entities.
///
/// Decoding can surface text the earlier steps would have changed
/// (`&amp;lt;`, `&Eacute;`), so the steps repeat until the text stops
/// changing. The result is therefore idempotent.
pub fn clean(text: &str, keep_punctuation: bool) -> CleanDocument {
    let mut current = clean_pass(text, keep_punctuation);
    for _ in 0..MAX_PASSES {
        let next = clean_pass(&current, keep_punctuation);
        if next == current {
            break;
        }
        current = next;
    }
    CleanDocument {
        text: current,
        kept_punctuation: keep_punctuation,
    }
}

fn clean_pass(text: &str, keep_punctuation: bool) -> String {
    let s = LINK.replace_all(text, " ");
    let s = RETWEET.replace_all(&s, " ");
    let s = MENTION.replace_all(&s, " ");
    let s = HASHTAG.replace_all(&s, "$1 ");
    let mut s = s.to_lowercase();
    if !keep_punctuation {
        s = NON_ALPHA.replace_all(&s, " ").into_owned();
    }
    let s = SPACES.replace_all(&s, " ");
    html_escape::decode_html_entities(s.trim()).into_owned()
}
