#![allow(dead_code)]

pub mod oracles;

use std::collections::{BTreeMap, BTreeSet};

use narratrace::ingest::{Engagement, Post};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn post(id: &str, author: &str, created_at: i64, text: &str) -> Post {
    Post {
        post_id: id.to_string(),
        platform: "alpha".into(),
        author_id: author.to_string(),
        author_created_at: None,
        author_followers: 0,
        author_following: 0,
        text: text.to_string(),
        created_at,
        urls: Vec::new(),
        engagement: Engagement::default(),
        reply_to: None,
        extra: BTreeMap::new(),
    }
}

pub fn jaccard<T: Ord>(a: &BTreeSet<T>, b: &BTreeSet<T>) -> f64 {
    let union = a.union(b).count();
    if union == 0 {
        0.0
    } else {
        a.intersection(b).count() as f64 / union as f64
    }
}

/// Pairs `(i, j)`, `i < j`, placed in the same group.
pub fn co_grouped(groups: &[Vec<usize>]) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    for g in groups {
        let mut g = g.clone();
        g.sort_unstable();
        for (x, &i) in g.iter().enumerate() {
            for &j in &g[x + 1..] {
                out.insert((i, j));
            }
        }
    }
    out
}

/// Pairwise precision, recall and F1 of `found` against `truth`.
pub fn pairwise_f1(found: &BTreeSet<(usize, usize)>, truth: &BTreeSet<(usize, usize)>) -> (f64, f64, f64) {
    let tp = found.intersection(truth).count() as f64;
    let p = if found.is_empty() { 1.0 } else { tp / found.len() as f64 };
    let r = if truth.is_empty() { 1.0 } else { tp / truth.len() as f64 };
    let f = if p + r == 0.0 { 0.0 } else { 2.0 * p * r / (p + r) };
    (p, r, f)
}
