use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::entities::EntityKey;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoocEdge {
    pub a: EntityKey,
    pub b: EntityKey,
    /// Jaccard similarity of the two entities' in-window mention sets.
    pub weight: f64,
    pub cooc_count: usize,
}

/// Entity co-occurrence graph for one window.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoocGraph {
    pub window_index: usize,
    /// Entity -> posts in this window mentioning it.
    pub nodes: BTreeMap<EntityKey, BTreeSet<String>>,
    /// Sorted by `(a, b)`, with `a < b`.
    pub edges: Vec<CoocEdge>,
}

impl CoocGraph {
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }
}

pub fn jaccard_counts(intersection: usize, a: usize, b: usize) -> f64 {
    let union = a + b - intersection;
    if union == 0 {
        0.0
    } else {
        intersection as f64 / union as f64
    }
}

/// Build the co-occurrence graph of one window.
///
/// `posts` yields `(post_id, entities)` for each post in the window. An edge
/// `(a, b)` is kept when both `cooc_count >= c_min` and `weight >= theta_edge`.
pub fn build_cooc_graph<'a, I>(window_index: usize, posts: I, theta_edge: f64, c_min: usize) -> CoocGraph
where
    I: IntoIterator<Item = (&'a str, &'a [EntityKey])>,
{
    let mut nodes: BTreeMap<EntityKey, BTreeSet<String>> = BTreeMap::new();
    let mut per_post: Vec<Vec<&'a EntityKey>> = Vec::new();
    for (post_id, ents) in posts {
        let mut uniq: Vec<&EntityKey> = ents.iter().collect();
        uniq.sort();
        uniq.dedup();
        for e in &uniq {
            nodes.entry((*e).clone()).or_default().insert(post_id.to_string());
        }
        per_post.push(uniq);
    }

    let index: HashMap<&EntityKey, usize> = nodes.keys().enumerate().map(|(i, k)| (k, i)).collect();
    let keys: Vec<&EntityKey> = nodes.keys().collect();
    let sizes: Vec<usize> = nodes.values().map(BTreeSet::len).collect();

    let mut counts: HashMap<(usize, usize), usize> = HashMap::new();
    for ents in &per_post {
        let ids: Vec<usize> = ents.iter().map(|e| index[e]).collect();
        for i in 0..ids.len() {
            for j in i + 1..ids.len() {
                let (a, b) = (ids[i].min(ids[j]), ids[i].max(ids[j]));
                *counts.entry((a, b)).or_insert(0) += 1;
            }
        }
    }

    let mut edges = Vec::new();
    let mut push = |a: usize, b: usize, c: usize| {
        let weight = jaccard_counts(c, sizes[a], sizes[b]);
        if c >= c_min && weight >= theta_edge {
            edges.push(CoocEdge {
                a: keys[a].clone(),
                b: keys[b].clone(),
                weight,
                cooc_count: c,
            });
        }
    };
    if c_min == 0 {
        // zero-co-occurrence pairs can pass too
        for a in 0..keys.len() {
            for b in a + 1..keys.len() {
                push(a, b, counts.get(&(a, b)).copied().unwrap_or(0));
            }
        }
    } else {
        let mut pairs: Vec<_> = counts.into_iter().collect();
        pairs.sort_unstable();
        for ((a, b), c) in pairs {
            push(a, b, c);
        }
    }

    CoocGraph {
        window_index,
        nodes,
        edges,
    }
}
