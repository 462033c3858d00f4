//! Candidate actor groups: accounts with near-identical behavioral
//! fingerprints (posting hours, shared domains, propaganda techniques),
//! joined by single linkage on cosine similarity.
//!
//! This is exploratory. Groups are hypotheses for an analyst, not
//! attributions to any operator.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::agenda::TechniqueHit;
use crate::coordination::DuplicateCluster;
use crate::ingest::{registrable_domain, Post};
use crate::union_find::UnionFind;

pub const DEFAULT_COSINE_THRESHOLD: f64 = 0.8;
pub const HOURS: usize = 24;

/// Normalized behavior of one account. Blocks with no evidence stay empty.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AccountFingerprint {
    pub account_id: String,
    pub hour_histogram: Vec<f64>,
    pub domain_distribution: BTreeMap<String, f64>,
    pub technique_distribution: BTreeMap<String, f64>,
}

fn normalize(counts: BTreeMap<String, f64>) -> BTreeMap<String, f64> {
    let total: f64 = counts.values().sum();
    if total <= 0.0 {
        return BTreeMap::new();
    }
    counts.into_iter().map(|(k, v)| (k, v / total)).collect()
}

/// UTC hour of a unix timestamp.
pub fn hour_of(ts: i64) -> usize {
    ts.rem_euclid(86_400) as usize / 3600
}

/// Fingerprint of one account from its posts and the technique hits on them.
pub fn fingerprint<'a>(
    account_id: &str,
    posts: impl IntoIterator<Item = (&'a Post, &'a [TechniqueHit])>,
) -> AccountFingerprint {
    let mut hours = vec![0.0; HOURS];
    let mut domains: BTreeMap<String, f64> = BTreeMap::new();
    let mut techniques: BTreeMap<String, f64> = BTreeMap::new();
    for (p, hits) in posts {
        hours[hour_of(p.created_at)] += 1.0;
        for u in &p.urls {
            *domains.entry(registrable_domain(u)).or_insert(0.0) += 1.0;
        }
        for h in hits {
            *techniques.entry(h.technique.clone()).or_insert(0.0) += 1.0;
        }
    }
    let total: f64 = hours.iter().sum();
    if total > 0.0 {
        hours.iter_mut().for_each(|h| *h /= total);
    }
    AccountFingerprint {
        account_id: account_id.to_string(),
        hour_histogram: hours,
        domain_distribution: normalize(domains),
        technique_distribution: normalize(techniques),
    }
}

/// Dense vectors over a shared vocabulary: 24 hour bins, then every domain,
/// then every technique seen across `fps`, each in sorted order.
pub fn feature_vectors(fps: &[AccountFingerprint]) -> Vec<Vec<f64>> {
    let domains: BTreeSet<&str> = fps
        .iter()
        .flat_map(|f| f.domain_distribution.keys().map(String::as_str))
        .collect();
    let techniques: BTreeSet<&str> = fps
        .iter()
        .flat_map(|f| f.technique_distribution.keys().map(String::as_str))
        .collect();
    fps.iter()
        .map(|f| {
            let mut v = f.hour_histogram.clone();
            v.extend(
                domains
                    .iter()
                    .map(|d| f.domain_distribution.get(*d).copied().unwrap_or(0.0)),
            );
            v.extend(
                techniques
                    .iter()
                    .map(|t| f.technique_distribution.get(*t).copied().unwrap_or(0.0)),
            );
            v
        })
        .collect()
}

/// Cosine similarity; `None` when either vector is zero.
pub fn cosine(a: &[f64], b: &[f64]) -> Option<f64> {
    let (mut dot, mut na, mut nb) = (0.0, 0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        dot += x * y;
        na += x * x;
        nb += y * y;
    }
    (na > 0.0 && nb > 0.0).then(|| dot / (na.sqrt() * nb.sqrt()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ActorFingerprint {
    pub account_ids: Vec<String>,
    pub hour_histogram: Vec<f64>,
    pub domain_distribution: BTreeMap<String, f64>,
    pub technique_distribution: BTreeMap<String, f64>,
    /// Of the duplicate clusters touching this group, the fraction holding
    /// posts from at least two group accounts.
    pub dup_cluster_overlap: f64,
}

fn mean_histogram(members: &[&AccountFingerprint]) -> Vec<f64> {
    let mut h = vec![0.0; HOURS];
    for m in members {
        for (a, b) in h.iter_mut().zip(&m.hour_histogram) {
            *a += b;
        }
    }
    let total: f64 = h.iter().sum();
    if total > 0.0 {
        h.iter_mut().for_each(|x| *x /= total);
    }
    h
}

fn mean_distribution<'a>(maps: impl Iterator<Item = &'a BTreeMap<String, f64>>) -> BTreeMap<String, f64> {
    let mut acc: BTreeMap<String, f64> = BTreeMap::new();
    for m in maps {
        for (k, v) in m {
            *acc.entry(k.clone()).or_insert(0.0) += v;
        }
    }
    normalize(acc)
}

pub fn dup_cluster_overlap(accounts: &BTreeSet<&str>, dup_clusters: &[DuplicateCluster]) -> f64 {
    let (mut touching, mut shared) = (0usize, 0usize);
    for c in dup_clusters {
        let inside = c.accounts.iter().filter(|a| accounts.contains(a.as_str())).count();
        if inside > 0 {
            touching += 1;
            if inside >= 2 {
                shared += 1;
            }
        }
    }
    if touching == 0 {
        0.0
    } else {
        shared as f64 / touching as f64
    }
}

/// Single-linkage groups at `cosine >= threshold`. Every account lands in
/// exactly one group; accounts with an all-zero vector stay singletons.
/// Output is sorted by first account id, and independent of input order.
pub fn group_actors(
    fps: &[AccountFingerprint],
    threshold: f64,
    dup_clusters: &[DuplicateCluster],
) -> Vec<ActorFingerprint> {
    let mut sorted: Vec<&AccountFingerprint> = fps.iter().collect();
    sorted.sort_by(|a, b| a.account_id.cmp(&b.account_id));
    sorted.dedup_by(|a, b| a.account_id == b.account_id);
    let owned: Vec<AccountFingerprint> = sorted.iter().map(|f| (*f).clone()).collect();
    let vectors = feature_vectors(&owned);

    let links: Vec<(usize, usize)> = (0..vectors.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let vectors = &vectors;
            (i + 1..vectors.len()).filter_map(move |j| match cosine(&vectors[i], &vectors[j]) {
                Some(c) if c >= threshold => Some((i, j)),
                _ => None,
            })
        })
        .collect();
    let mut uf = UnionFind::new(vectors.len());
    for (i, j) in links {
        uf.union(i, j);
    }

    uf.groups()
        .into_iter()
        .map(|g| {
            let members: Vec<&AccountFingerprint> = g.iter().map(|&i| sorted[i]).collect();
            let ids: BTreeSet<&str> = members.iter().map(|m| m.account_id.as_str()).collect();
            ActorFingerprint {
                account_ids: ids.iter().map(|s| s.to_string()).collect(),
                hour_histogram: mean_histogram(&members),
                domain_distribution: mean_distribution(members.iter().map(|m| &m.domain_distribution)),
                technique_distribution: mean_distribution(members.iter().map(|m| &m.technique_distribution)),
                dup_cluster_overlap: dup_cluster_overlap(&ids, dup_clusters),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(id: &str, hour: usize) -> AccountFingerprint {
        let mut h = vec![0.0; HOURS];
        h[hour] = 1.0;
        AccountFingerprint {
            account_id: id.into(),
            hour_histogram: h,
            domain_distribution: BTreeMap::new(),
            technique_distribution: BTreeMap::new(),
        }
    }

    #[test]
    fn identical_vectors_group() {
        let g = group_actors(&[fp("b", 3), fp("a", 3)], 0.8, &[]);
        assert_eq!(g.len(), 1);
        assert_eq!(g[0].account_ids, ["a", "b"]);
    }

    #[test]
    fn orthogonal_vectors_stay_apart() {
        let g = group_actors(&[fp("a", 1), fp("b", 2), fp("c", 3)], 0.8, &[]);
        assert_eq!(g.len(), 3);
    }

    #[test]
    fn hour_bins_are_utc() {
        assert_eq!(hour_of(14 * 3600 + 59), 14);
        assert_eq!(hour_of(-1), 23);
    }

    #[test]
    fn zero_vector_is_singleton() {
        let mut z = fp("z", 0);
        z.hour_histogram = vec![0.0; HOURS];
        let g = group_actors(&[z.clone(), z.clone(), fp("a", 0)], 0.0, &[]);
        assert_eq!(g.len(), 2);
    }
}
