//! Temporal co-posting between account pairs.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::ingest::Post;

pub const DEFAULT_SYNC_WINDOW_SECS: i64 = 60;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairSynchrony {
    pub a: String,
    pub b: String,
    /// `min(#a posts with a b post nearby, #b posts with an a post nearby)`.
    pub co_count: usize,
    /// `co_count / min(posts_a, posts_b)`, in `[0, 1]`.
    pub normalized: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Synchrony {
    /// Pairs with nonzero co-posting, sorted by `(a, b)`.
    pub pairs: Vec<PairSynchrony>,
    pub max: f64,
}

impl Synchrony {
    pub fn top_pair(&self) -> Option<&PairSynchrony> {
        self.pairs.iter().max_by(|x, y| {
            x.normalized
                .total_cmp(&y.normalized)
                .then(y.a.cmp(&x.a))
                .then(y.b.cmp(&x.b))
        })
    }
}

/// Co-posting counts for every account pair posting within `window_secs`
/// of each other (inclusive). Pairs where either account has fewer than
/// `min_posts` posts are left out of the maximum.
pub fn synchrony(posts: &[&Post], window_secs: i64, min_posts: usize) -> Synchrony {
    let mut order: Vec<&Post> = posts.to_vec();
    order.sort_by(|a, b| (a.created_at, &a.post_id).cmp(&(b.created_at, &b.post_id)));

    let mut accounts: BTreeMap<&str, usize> = BTreeMap::new();
    for p in &order {
        *accounts.entry(p.author_id.as_str()).or_insert(0) += 1;
    }
    let account_ids: HashMap<&str, usize> = accounts.keys().enumerate().map(|(i, a)| (*a, i)).collect();
    let counts: Vec<usize> = accounts.values().copied().collect();
    let names: Vec<&str> = accounts.keys().copied().collect();

    // (lo, hi) -> (lo's matched posts, hi's matched posts)
    let mut matched: HashMap<(usize, usize), (HashSet<usize>, HashSet<usize>)> = HashMap::new();
    for i in 0..order.len() {
        let ai = account_ids[order[i].author_id.as_str()];
        for j in i + 1..order.len() {
            if order[j].created_at - order[i].created_at > window_secs {
                break;
            }
            let aj = account_ids[order[j].author_id.as_str()];
            if ai == aj {
                continue;
            }
            let entry = matched.entry((ai.min(aj), ai.max(aj))).or_default();
            if ai < aj {
                entry.0.insert(i);
                entry.1.insert(j);
            } else {
                entry.0.insert(j);
                entry.1.insert(i);
            }
        }
    }

    let mut pairs: Vec<PairSynchrony> = matched
        .into_iter()
        .map(|((lo, hi), (ml, mh))| {
            let co_count = ml.len().min(mh.len());
            let denom = counts[lo].min(counts[hi]);
            PairSynchrony {
                a: names[lo].to_string(),
                b: names[hi].to_string(),
                co_count,
                normalized: co_count as f64 / denom as f64,
            }
        })
        .collect();
    pairs.sort_by(|x, y| (&x.a, &x.b).cmp(&(&y.a, &y.b)));

    let max = pairs
        .iter()
        .filter(|p| accounts[p.a.as_str()].min(accounts[p.b.as_str()]) >= min_posts)
        .map(|p| p.normalized)
        .fold(0.0, f64::max);
    Synchrony { pairs, max }
}
