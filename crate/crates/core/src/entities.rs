//! Entity extraction and disambiguation.
//!
//! Entities are surface patterns only: hashtags, mentions, registrable
//! domains of shared URLs, and dictionary terms (longest alias match).

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::ingest::url::url_ranges;
use crate::ingest::{registrable_domain, Post, SourceLists};
use crate::text::{fold, is_word_char, word_spans};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EntityKind {
    Hashtag,
    Mention,
    Domain,
    Term,
}

impl EntityKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            EntityKind::Hashtag => "hashtag",
            EntityKind::Mention => "mention",
            EntityKind::Domain => "domain",
            EntityKind::Term => "term",
        }
    }
}

/// `(canonical_name, kind)`; ordered by name, then kind.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EntityKey {
    pub name: String,
    pub kind: EntityKind,
}

impl EntityKey {
    pub fn new(name: impl Into<String>, kind: EntityKind) -> Self {
        Self {
            name: name.into(),
            kind,
        }
    }
}

impl fmt::Display for EntityKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            EntityKind::Hashtag => write!(f, "#{}", self.name),
            EntityKind::Mention => write!(f, "@{}", self.name),
            EntityKind::Domain => write!(f, "domain:{}", self.name),
            EntityKind::Term => write!(f, "term:{}", self.name),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entity {
    pub canonical_name: String,
    pub kind: EntityKind,
    pub mentions: BTreeSet<String>,
}

impl Entity {
    pub fn key(&self) -> EntityKey {
        EntityKey::new(self.canonical_name.clone(), self.kind)
    }
}

#[derive(Debug, Clone)]
struct Alias {
    tokens: Vec<String>,
    /// tokens joined by a single space; used for tie-breaks
    joined: String,
    canonical: String,
}

/// Precompiled extractor for one set of source lists.
#[derive(Debug, Clone)]
pub struct EntityExtractor {
    by_first_token: HashMap<String, Vec<Alias>>,
}

impl EntityExtractor {
    pub fn new(lists: &SourceLists) -> Self {
        let mut by_first_token: HashMap<String, Vec<Alias>> = HashMap::new();
        for (alias, canonical) in &lists.entity_dictionary {
            let tokens: Vec<String> = word_spans(alias).iter().map(|w| fold(w.text)).collect();
            if tokens.is_empty() {
                continue;
            }
            by_first_token.entry(tokens[0].clone()).or_default().push(Alias {
                joined: tokens.join(" "),
                tokens,
                canonical: canonical.clone(),
            });
        }
        Self { by_first_token }
    }

    pub fn extract(&self, post: &Post) -> BTreeSet<EntityKey> {
        let mut out = BTreeSet::new();
        let masked = mask_ranges(&post.text, &url_ranges(&post.text));

        for (sigil, kind) in [('#', EntityKind::Hashtag), ('@', EntityKind::Mention)] {
            for name in sigil_tags(&masked, sigil) {
                out.insert(EntityKey::new(fold(name), kind));
            }
        }
        for url in &post.urls {
            out.insert(EntityKey::new(registrable_domain(url), EntityKind::Domain));
        }
        for canonical in self.match_terms(&masked) {
            out.insert(EntityKey::new(canonical, EntityKind::Term));
        }
        out
    }

    /// Canonical names of dictionary aliases found in `text`. Overlapping
    /// candidates resolve longest-first (in tokens), then lexicographically
    /// by alias, then leftmost.
    pub fn match_terms(&self, text: &str) -> Vec<String> {
        if self.by_first_token.is_empty() {
            return Vec::new();
        }
        let words: Vec<String> = word_spans(text).iter().map(|w| fold(w.text)).collect();
        // (len, alias, start, canonical)
        let mut candidates: Vec<(usize, &str, usize, &str)> = Vec::new();
        for start in 0..words.len() {
            let Some(aliases) = self.by_first_token.get(&words[start]) else {
                continue;
            };
            for a in aliases {
                let end = start + a.tokens.len();
                if end <= words.len() && words[start..end] == a.tokens[..] {
                    candidates.push((a.tokens.len(), &a.joined, start, &a.canonical));
                }
            }
        }
        candidates.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(y.1)).then(x.2.cmp(&y.2)));
        let mut taken = vec![false; words.len()];
        let mut hits = Vec::new();
        for (len, _, start, canonical) in candidates {
            if taken[start..start + len].iter().any(|&t| t) {
                continue;
            }
            taken[start..start + len].iter_mut().for_each(|t| *t = true);
            hits.push(canonical.to_string());
        }
        hits
    }
}

/// Replace the given byte ranges with spaces (keeps all other offsets).
fn mask_ranges(text: &str, ranges: &[std::ops::Range<usize>]) -> String {
    if ranges.is_empty() {
        return text.to_string();
    }
    let mut out = String::with_capacity(text.len());
    let mut pos = 0;
    for r in ranges {
        out.push_str(&text[pos..r.start]);
        out.extend(std::iter::repeat_n(' ', r.end - r.start));
        pos = r.end;
    }
    out.push_str(&text[pos..]);
    out
}

/// Names following `sigil` where the sigil is not itself preceded by a word
/// character (so `a@b.com` is not a mention).
fn sigil_tags(text: &str, sigil: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut prev: Option<char> = None;
    let mut iter = text.char_indices().peekable();
    while let Some((i, c)) = iter.next() {
        if c == sigil && !prev.is_some_and(is_word_char) {
            let start = i + c.len_utf8();
            let mut end = start;
            while let Some(&(j, d)) = iter.peek() {
                if !is_word_char(d) {
                    break;
                }
                end = j + d.len_utf8();
                prev = Some(d);
                iter.next();
            }
            if end > start {
                out.push(&text[start..end]);
                continue;
            }
        }
        prev = Some(c);
    }
    out
}

pub fn extract_entities(post: &Post, lists: &SourceLists) -> BTreeSet<EntityKey> {
    EntityExtractor::new(lists).extract(post)
}

/// Follows alias links to a fixpoint. Cycles resolve to their lexicographically
/// smallest member so the result does not depend on where the walk starts.
#[derive(Debug, Clone, Default)]
pub struct AliasResolver {
    aliases: BTreeMap<String, String>,
}

impl AliasResolver {
    pub fn new(aliases: &BTreeMap<String, String>) -> Self {
        Self {
            aliases: aliases.clone(),
        }
    }

    pub fn resolve(&self, name: &str) -> String {
        let mut seen: Vec<String> = Vec::new();
        let mut cur = fold(name);
        loop {
            match self.aliases.get(&cur) {
                Some(next) if *next != cur => {
                    if seen.contains(&cur) {
                        let start = seen.iter().position(|s| *s == cur).expect("in cycle");
                        return seen[start..].iter().min().expect("nonempty").clone();
                    }
                    seen.push(cur);
                    cur = next.clone();
                }
                _ => return cur,
            }
        }
    }
}

/// Merge raw `(name, kind, post_id)` mentions into entities. Names are
/// resolved through the alias map before merging; kinds stay separate.
pub fn disambiguate<I, N, P>(raw: I, aliases: &AliasResolver) -> Vec<Entity>
where
    I: IntoIterator<Item = (N, EntityKind, P)>,
    N: AsRef<str>,
    P: Into<String>,
{
    let mut merged: BTreeMap<EntityKey, BTreeSet<String>> = BTreeMap::new();
    for (name, kind, post_id) in raw {
        let name = aliases.resolve(name.as_ref());
        if name.is_empty() {
            continue;
        }
        merged
            .entry(EntityKey::new(name, kind))
            .or_default()
            .insert(post_id.into());
    }
    merged
        .into_iter()
        .map(|(k, mentions)| Entity {
            canonical_name: k.name,
            kind: k.kind,
            mentions,
        })
        .collect()
}

/// Per-post resolved entity sets, aligned with the input slice.
pub fn annotate_posts(posts: &[Post], lists: &SourceLists) -> Vec<Vec<EntityKey>> {
    use rayon::prelude::*;
    let extractor = EntityExtractor::new(lists);
    let resolver = AliasResolver::new(&lists.entity_dictionary);
    posts
        .par_iter()
        .map(|p| {
            let resolved: BTreeSet<EntityKey> = extractor
                .extract(p)
                .into_iter()
                .map(|k| EntityKey::new(resolver.resolve(&k.name), k.kind))
                .collect();
            resolved.into_iter().collect()
        })
        .collect()
}
