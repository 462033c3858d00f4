//! Word tokenization shared by entity, lexicon and shingle matching.

/// A word token: a maximal run of alphanumeric characters or `_`, with its
/// byte span in the source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WordSpan<'a> {
    pub start: usize,
    pub end: usize,
    pub text: &'a str,
}

#[inline]
pub fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

pub fn word_spans(text: &str) -> Vec<WordSpan<'_>> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, c) in text.char_indices() {
        match (is_word_char(c), start) {
            (true, None) => start = Some(i),
            (false, Some(s)) => {
                out.push(WordSpan {
                    start: s,
                    end: i,
                    text: &text[s..i],
                });
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(WordSpan {
            start: s,
            end: text.len(),
            text: &text[s..],
        });
    }
    out
}

pub fn token_count(text: &str) -> usize {
    word_spans(text).len()
}

/// Case-folded word tokens.
pub fn folded_words(text: &str) -> Vec<String> {
    word_spans(text).iter().map(|w| fold(w.text)).collect()
}

#[inline]
pub fn fold(s: &str) -> String {
    s.to_lowercase()
}
