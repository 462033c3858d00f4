//! Agenda signals: propaganda-technique cue spotting with a lexicon.
//!
//! Cues are literal phrases matched case-insensitively on word boundaries;
//! a `*` cue token matches exactly one word. Within a technique, overlapping
//! matches resolve to the longest (in words), then the leftmost.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::text::{fold, word_spans};

pub const DEFAULT_LAMBDA: f64 = 0.5;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TechniqueHit {
    /// Post id or article URL.
    pub doc_id: String,
    pub technique: String,
    /// Byte span `[start, end)` in the document.
    pub span: (usize, usize),
    /// Document bytes at `span`, case-folded.
    pub matched_cue: String,
}

#[derive(Debug, Clone)]
struct Cue {
    /// `None` is a one-word wildcard.
    tokens: Vec<Option<String>>,
}

fn compile_cue(cue: &str) -> Option<Cue> {
    let mut tokens = Vec::new();
    for piece in cue.split_whitespace() {
        if piece == "*" {
            tokens.push(None);
        } else {
            tokens.extend(word_spans(piece).iter().map(|w| Some(fold(w.text))));
        }
    }
    (!tokens.is_empty()).then_some(Cue { tokens })
}

#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    techniques: Vec<(String, Vec<Cue>)>,
}

impl Lexicon {
    pub fn new(lexicon: &BTreeMap<String, Vec<String>>) -> Self {
        let techniques = lexicon
            .iter()
            .map(|(t, cues)| (t.clone(), cues.iter().filter_map(|c| compile_cue(c)).collect()))
            .collect();
        Self { techniques }
    }

    pub fn technique_count(&self) -> usize {
        self.techniques.len()
    }

    pub fn technique_names(&self) -> impl Iterator<Item = &str> {
        self.techniques.iter().map(|(t, _)| t.as_str())
    }

    pub fn detect(&self, doc_id: &str, text: &str) -> Vec<TechniqueHit> {
        if self.techniques.is_empty() {
            return Vec::new();
        }
        let spans = word_spans(text);
        let words: Vec<String> = spans.iter().map(|w| fold(w.text)).collect();
        let mut hits = Vec::new();
        for (technique, cues) in &self.techniques {
            // (len, start)
            let mut candidates: Vec<(usize, usize)> = Vec::new();
            for start in 0..words.len() {
                for cue in cues {
                    let len = cue.tokens.len();
                    if start + len > words.len() {
                        continue;
                    }
                    let ok = cue
                        .tokens
                        .iter()
                        .zip(&words[start..start + len])
                        .all(|(c, w)| c.as_ref().is_none_or(|c| c == w));
                    if ok {
                        candidates.push((len, start));
                    }
                }
            }
            candidates.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
            candidates.dedup();
            let mut taken = vec![false; words.len()];
            for (len, start) in candidates {
                if taken[start..start + len].iter().any(|&t| t) {
                    continue;
                }
                taken[start..start + len].iter_mut().for_each(|t| *t = true);
                let (s, e) = (spans[start].start, spans[start + len - 1].end);
                hits.push(TechniqueHit {
                    doc_id: doc_id.to_string(),
                    technique: technique.clone(),
                    span: (s, e),
                    matched_cue: fold(&text[s..e]),
                });
            }
        }
        hits.sort_by(|a, b| a.span.cmp(&b.span).then_with(|| a.technique.cmp(&b.technique)));
        hits
    }
}

pub fn detect_techniques(doc_id: &str, text: &str, lexicon: &BTreeMap<String, Vec<String>>) -> Vec<TechniqueHit> {
    Lexicon::new(lexicon).detect(doc_id, text)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgendaScore {
    pub narrative_id: String,
    pub hits_per_100_tokens: f64,
    pub technique_diversity: f64,
    pub score: f64,
}

/// Saturating rate term averaged with technique diversity:
/// `0.5 * (1 - exp(-lambda * rate)) + 0.5 * diversity`.
pub fn agenda_formula(hits_per_100_tokens: f64, technique_diversity: f64, lambda: f64) -> f64 {
    let s = 0.5 * (1.0 - (-lambda * hits_per_100_tokens).exp()) + 0.5 * technique_diversity;
    s.clamp(0.0, 1.0)
}

/// Aggregate hits over a narrative's documents.
///
/// `total_tokens` is the word count over the same documents; `n_techniques`
/// is the number of techniques in the lexicon.
pub fn fuse_agenda(
    narrative_id: &str,
    hits: &[TechniqueHit],
    total_tokens: usize,
    n_techniques: usize,
    lambda: f64,
) -> AgendaScore {
    let rate = if total_tokens == 0 {
        0.0
    } else {
        100.0 * hits.len() as f64 / total_tokens as f64
    };
    let distinct: BTreeSet<&str> = hits.iter().map(|h| h.technique.as_str()).collect();
    let diversity = if n_techniques == 0 {
        0.0
    } else {
        distinct.len() as f64 / n_techniques as f64
    };
    AgendaScore {
        narrative_id: narrative_id.to_string(),
        hits_per_100_tokens: rate,
        technique_diversity: diversity,
        score: agenda_formula(rate, diversity, lambda),
    }
}
