//! Stage 1: normalize platform records into a unified post stream.

pub mod adapter;
pub mod lists;
pub mod post;
pub mod suffix;
pub mod url;

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashSet};
use std::io::{BufRead, BufReader};
use std::path::Path;

pub use adapter::{normalize, Adapter};
pub use lists::SourceLists;
pub use post::{Engagement, Post};
pub use suffix::{registrable_domain, SuffixList};
pub use url::canonicalize_url;

use crate::error::{Error, Result};

/// Normalize every record of a newline-delimited JSON file, preserving order.
/// Blank lines are skipped; any malformed record fails the file with its line number.
pub fn read_platform_file(path: &Path, adapter: &Adapter, shorteners: &BTreeMap<String, String>) -> Result<Vec<Post>> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut posts = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let record: serde_json::Value = serde_json::from_str(&line)
            .map_err(|e| Error::stage("ingest", format!("{}:{}: invalid record: {e}", path.display(), i + 1)))?;
        let post = normalize(&record, adapter, shorteners)
            .map_err(|e| Error::stage("ingest", format!("{}:{}: {e}", path.display(), i + 1)))?;
        posts.push(post);
    }
    Ok(posts)
}

fn sort_key(p: &Post) -> (i64, &str) {
    (p.created_at, p.post_id.as_str())
}

pub fn is_sorted(posts: &[Post]) -> bool {
    posts.windows(2).all(|w| sort_key(&w[0]) <= sort_key(&w[1]))
}

/// k-way merge of per-file streams. When each stream is sorted by
/// `(created_at, post_id)` the output is sorted by the same key.
pub fn merge_sorted(streams: Vec<Vec<Post>>) -> Vec<Post> {
    let total = streams.iter().map(Vec::len).sum();
    let mut iters: Vec<std::vec::IntoIter<Post>> = streams.into_iter().map(Vec::into_iter).collect();
    let mut heads: Vec<Option<Post>> = iters.iter_mut().map(Iterator::next).collect();
    let mut heap = BinaryHeap::new();
    for (i, head) in heads.iter().enumerate() {
        if let Some(p) = head {
            heap.push(Reverse((p.created_at, p.post_id.clone(), i)));
        }
    }
    let mut out = Vec::with_capacity(total);
    while let Some(Reverse((_, _, i))) = heap.pop() {
        let post = heads[i].take().expect("heap entry has a head");
        out.push(post);
        heads[i] = iters[i].next();
        if let Some(p) = &heads[i] {
            heap.push(Reverse((p.created_at, p.post_id.clone(), i)));
        }
    }
    out
}

/// Fails on the first repeated post id.
pub fn check_unique_ids(posts: &[Post]) -> Result<()> {
    let mut seen = HashSet::with_capacity(posts.len());
    for p in posts {
        if !seen.insert(p.post_id.as_str()) {
            return Err(Error::stage("ingest", format!("duplicate post_id {:?}", p.post_id)));
        }
    }
    Ok(())
}

/// Pre-fetched article bodies keyed by canonical URL, one JSON object
/// `{"url": ..., "text": ...}` per line. Nothing is fetched over the network.
pub fn read_articles(path: &Path) -> Result<BTreeMap<String, String>> {
    #[derive(serde::Deserialize)]
    struct Article {
        url: String,
        text: String,
    }
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut out = BTreeMap::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let a: Article = serde_json::from_str(&line)
            .map_err(|e| Error::stage("ingest", format!("{}:{}: {e}", path.display(), i + 1)))?;
        match canonicalize_url(&a.url) {
            Ok(u) => {
                out.insert(u, a.text);
            }
            Err(_) => log::warn!("{}:{}: skipping article with bad url", path.display(), i + 1),
        }
    }
    Ok(out)
}
