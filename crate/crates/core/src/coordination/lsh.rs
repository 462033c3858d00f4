//! Near-duplicate post clusters: LSH banding proposes candidate pairs, exact
//! shingle-set Jaccard verifies them, verified pairs are closed transitively.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coordination::minhash::{MinHasher, Signature};
use crate::coordination::shingle::shingle_hashes;
use crate::error::{Error, Result};
use crate::hashing::mix64;
use crate::ingest::Post;
use crate::narrative::chain::sorted_jaccard;
use crate::union_find::UnionFind;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LshParams {
    pub shingle_k: usize,
    pub num_hashes: usize,
    pub bands: usize,
    pub rows: usize,
    pub j_dup: f64,
    /// Set from the pipeline's top-level seed, not from config sections.
    #[serde(skip)]
    pub seed: u64,
}

impl Default for LshParams {
    fn default() -> Self {
        Self {
            shingle_k: 5,
            num_hashes: 128,
            bands: 32,
            rows: 4,
            j_dup: 0.7,
            seed: 0x5eed,
        }
    }
}

impl LshParams {
    pub fn validate(&self) -> Result<()> {
        if self.bands == 0 || self.rows == 0 || self.bands * self.rows != self.num_hashes {
            return Err(Error::Config(format!(
                "bands * rows must equal num_hashes (got {} * {} vs {})",
                self.bands, self.rows, self.num_hashes
            )));
        }
        if !(0.0..=1.0).contains(&self.j_dup) {
            return Err(Error::Config(format!("j_dup must be in [0, 1], got {}", self.j_dup)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DuplicateCluster {
    /// Post ids, sorted; at least two.
    pub texts: Vec<String>,
    /// MinHash signature of the cluster's first post.
    pub representative_shingles: Vec<u64>,
    pub accounts: Vec<String>,
    pub platforms: Vec<String>,
    pub span_seconds: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DuplicatePair {
    pub a: usize,
    pub b: usize,
    pub jaccard: f64,
}

/// Shingle sets and signatures for a document collection.
pub struct Sketches {
    pub shingles: Vec<Vec<u64>>,
    /// `None` for documents with no tokens.
    pub signatures: Vec<Option<Signature>>,
}

pub fn sketch_texts<S: AsRef<str> + Sync>(texts: &[S], params: &LshParams) -> Sketches {
    let hasher = MinHasher::new(params.num_hashes, params.seed);
    let shingles: Vec<Vec<u64>> = texts
        .par_iter()
        .map(|t| shingle_hashes(t.as_ref(), params.shingle_k))
        .collect();
    let signatures = shingles.par_iter().map(|s| hasher.signature(s).ok()).collect();
    Sketches { shingles, signatures }
}

/// Buckets with at least two members, per band, in deterministic order.
fn band_buckets(signatures: &[Option<Signature>], bands: usize, rows: usize) -> Vec<Vec<Vec<usize>>> {
    (0..bands)
        .into_par_iter()
        .map(|band| {
            let mut buckets: HashMap<u64, Vec<usize>> = HashMap::new();
            for (i, sig) in signatures.iter().enumerate() {
                let Some(sig) = sig else { continue };
                let key = sig.0[band * rows..(band + 1) * rows]
                    .iter()
                    .fold(band as u64, |h, &v| mix64(h ^ v).wrapping_add(v.rotate_left(17)));
                buckets.entry(key).or_default().push(i);
            }
            let mut out: Vec<Vec<usize>> = buckets.into_values().filter(|b| b.len() > 1).collect();
            out.sort_unstable_by_key(|b| b[0]);
            out
        })
        .collect()
}

/// Every LSH candidate pair whose exact Jaccard reaches `j_dup`, sorted.
pub fn verified_pairs(sketches: &Sketches, params: &LshParams) -> Result<Vec<DuplicatePair>> {
    params.validate()?;
    let mut candidates: BTreeSet<(usize, usize)> = BTreeSet::new();
    for buckets in band_buckets(&sketches.signatures, params.bands, params.rows) {
        for bucket in buckets {
            for i in 0..bucket.len() {
                for j in i + 1..bucket.len() {
                    candidates.insert((bucket[i], bucket[j]));
                }
            }
        }
    }
    Ok(candidates
        .into_iter()
        .filter_map(|(a, b)| {
            let jaccard = sorted_jaccard(&sketches.shingles[a], &sketches.shingles[b]);
            (jaccard >= params.j_dup).then_some(DuplicatePair { a, b, jaccard })
        })
        .collect())
}

/// Groups of documents connected by verified pairs (size >= 2), as sorted
/// index lists ordered by first member.
///
/// Pairs already joined are not re-verified; this does not change the
/// resulting components.
pub fn duplicate_groups(sketches: &Sketches, params: &LshParams) -> Result<Vec<Vec<usize>>> {
    params.validate()?;
    let n = sketches.shingles.len();
    let mut uf = UnionFind::new(n);
    for buckets in band_buckets(&sketches.signatures, params.bands, params.rows) {
        for bucket in buckets {
            for i in 0..bucket.len() {
                for j in i + 1..bucket.len() {
                    let (a, b) = (bucket[i], bucket[j]);
                    if uf.same(a, b) {
                        continue;
                    }
                    if sorted_jaccard(&sketches.shingles[a], &sketches.shingles[b]) >= params.j_dup {
                        uf.union(a, b);
                    }
                }
            }
        }
    }
    Ok(uf.groups().into_iter().filter(|g| g.len() > 1).collect())
}

pub fn find_duplicate_clusters(posts: &[Post], params: &LshParams) -> Result<Vec<DuplicateCluster>> {
    let texts: Vec<&str> = posts.iter().map(|p| p.text.as_str()).collect();
    let sketches = sketch_texts(&texts, params);
    let groups = duplicate_groups(&sketches, params)?;
    let mut clusters: Vec<DuplicateCluster> = groups
        .into_iter()
        .map(|g| {
            let members: Vec<&Post> = g.iter().map(|&i| &posts[i]).collect();
            let first = members
                .iter()
                .zip(&g)
                .min_by(|(a, _), (b, _)| a.post_id.cmp(&b.post_id))
                .map(|(_, &i)| i)
                .expect("nonempty group");
            let mut texts: Vec<String> = members.iter().map(|p| p.post_id.clone()).collect();
            texts.sort();
            let accounts: BTreeSet<&str> = members.iter().map(|p| p.author_id.as_str()).collect();
            let platforms: BTreeSet<&str> = members.iter().map(|p| p.platform.as_str()).collect();
            let tmin = members.iter().map(|p| p.created_at).min().expect("nonempty");
            let tmax = members.iter().map(|p| p.created_at).max().expect("nonempty");
            DuplicateCluster {
                texts,
                representative_shingles: sketches.signatures[first].clone().map(|s| s.0).unwrap_or_default(),
                accounts: accounts.into_iter().map(str::to_string).collect(),
                platforms: platforms.into_iter().map(str::to_string).collect(),
                span_seconds: tmax - tmin,
            }
        })
        .collect();
    clusters.sort_by(|a, b| a.texts[0].cmp(&b.texts[0]));
    Ok(clusters)
}
