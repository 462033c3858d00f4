//! Linking event clusters across consecutive windows into narratives.
//!
//! Each cluster in window `t + 1` picks the cluster in window `t` with the
//! highest entity-set Jaccard (ties: larger volume, then smaller cluster id).
//! The pick becomes a link when its Jaccard reaches `tau_link`. When several
//! children link to the same parent, the parent's narrative continues with the
//! child of largest volume (ties: higher Jaccard, then smaller cluster id);
//! the other children open new narratives that record `split_from`.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::entities::EntityKey;
use crate::narrative::cluster::EventCluster;

pub const DEFAULT_TAU_LINK: f64 = 0.3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Narrative {
    pub narrative_id: String,
    /// Cluster ids in window order, one per consecutive window.
    pub clusters: Vec<String>,
    pub windows: Vec<usize>,
    /// `link_scores[i]` is the Jaccard between `clusters[i]` and `clusters[i + 1]`.
    pub link_scores: Vec<f64>,
    pub entity_signature: Vec<EntityKey>,
    pub post_ids: Vec<String>,
    pub platforms: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split_from: Option<String>,
}

impl Narrative {
    pub fn first_window(&self) -> usize {
        self.windows[0]
    }

    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }

    /// Fill `platforms` from a post-id lookup.
    pub fn fill_platforms<'a>(&mut self, platform_of: impl Fn(&str) -> Option<&'a str>) {
        let set: BTreeSet<&str> = self.post_ids.iter().filter_map(|p| platform_of(p)).collect();
        self.platforms = set.into_iter().map(str::to_string).collect();
    }
}

/// Jaccard of two sorted, deduplicated slices.
pub fn sorted_jaccard<T: Ord>(a: &[T], b: &[T]) -> f64 {
    if a.is_empty() && b.is_empty() {
        return 0.0;
    }
    let (mut i, mut j, mut inter) = (0, 0, 0usize);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => i += 1,
            Ordering::Greater => j += 1,
            Ordering::Equal => {
                inter += 1;
                i += 1;
                j += 1;
            }
        }
    }
    inter as f64 / (a.len() + b.len() - inter) as f64
}

/// Is `(j1, c1)` a better parent than `(j2, c2)`?
fn better_parent(j1: f64, c1: &EventCluster, j2: f64, c2: &EventCluster) -> bool {
    j1.total_cmp(&j2)
        .then(c1.volume.cmp(&c2.volume))
        .then(c2.cluster_id.cmp(&c1.cluster_id))
        == Ordering::Greater
}

/// Best parent for `child` in `prev`, as `(parent index, jaccard)`.
fn best_parent(
    child: &EventCluster,
    prev: &[EventCluster],
    entity_owner: &HashMap<&EntityKey, usize>,
) -> Option<(usize, f64)> {
    let mut sharing: Vec<usize> = child
        .entities
        .iter()
        .filter_map(|e| entity_owner.get(e).copied())
        .collect();
    sharing.sort_unstable();
    sharing.dedup();
    let mut best: Option<(usize, f64)> = None;
    for p in sharing {
        let j = sorted_jaccard(&child.entities, &prev[p].entities);
        if best.is_none_or(|(b, bj)| better_parent(j, &prev[p], bj, &prev[b])) {
            best = Some((p, j));
        }
    }
    if best.is_none() {
        // every parent scores 0; only matters when tau_link <= 0
        for (p, cand) in prev.iter().enumerate() {
            if best.is_none_or(|(b, bj)| better_parent(0.0, cand, bj, &prev[b])) {
                best = Some((p, 0.0));
            }
        }
    }
    best
}

struct Builder {
    clusters: Vec<String>,
    windows: Vec<usize>,
    link_scores: Vec<f64>,
    entities: BTreeSet<EntityKey>,
    posts: BTreeSet<String>,
    split_from: Option<String>,
}

impl Builder {
    fn start(c: &EventCluster, split_from: Option<String>) -> Self {
        let mut b = Builder {
            clusters: Vec::new(),
            windows: Vec::new(),
            link_scores: Vec::new(),
            entities: BTreeSet::new(),
            posts: BTreeSet::new(),
            split_from,
        };
        b.absorb(c);
        b
    }

    fn absorb(&mut self, c: &EventCluster) {
        self.clusters.push(c.cluster_id.clone());
        self.windows.push(c.window_index);
        self.entities.extend(c.entities.iter().cloned());
        self.posts.extend(c.post_ids.iter().cloned());
    }

    fn id(&self) -> String {
        narrative_id(&self.clusters[0])
    }
}

pub fn narrative_id(first_cluster_id: &str) -> String {
    format!("n-{}", first_cluster_id.trim_start_matches("c-"))
}

/// Chain clusters grouped by window. `windows[i]` holds the clusters of
/// window index `i` (possibly empty); only consecutive windows are linked.
pub fn chain_clusters(windows: &[Vec<EventCluster>], tau_link: f64) -> Vec<Narrative> {
    let mut builders: Vec<Builder> = Vec::new();
    // narrative builder index per cluster of the previous window
    let mut prev_owner: Vec<usize> = Vec::new();
    let empty: Vec<EventCluster> = Vec::new();

    for (t, current) in windows.iter().enumerate() {
        let prev = if t == 0 { &empty } else { &windows[t - 1] };
        let entity_owner: HashMap<&EntityKey, usize> = prev
            .iter()
            .enumerate()
            .flat_map(|(i, c)| c.entities.iter().map(move |e| (e, i)))
            .collect();

        // parent index -> linked children (child index, jaccard)
        let mut children_of: HashMap<usize, Vec<(usize, f64)>> = HashMap::new();
        let mut linked = vec![false; current.len()];
        if !prev.is_empty() {
            for (ci, child) in current.iter().enumerate() {
                if let Some((p, j)) = best_parent(child, prev, &entity_owner) {
                    if j >= tau_link {
                        children_of.entry(p).or_default().push((ci, j));
                        linked[ci] = true;
                    }
                }
            }
        }

        let mut owner = vec![usize::MAX; current.len()];
        let mut parents: Vec<usize> = children_of.keys().copied().collect();
        parents.sort_unstable();
        for p in parents {
            let kids = &children_of[&p];
            let &(winner, wj) = kids
                .iter()
                .max_by(|(a, ja), (b, jb)| {
                    let (ca, cb) = (&current[*a], &current[*b]);
                    ca.volume
                        .cmp(&cb.volume)
                        .then(ja.total_cmp(jb))
                        .then(cb.cluster_id.cmp(&ca.cluster_id))
                })
                .expect("nonempty children");
            let narrative = prev_owner[p];
            builders[narrative].link_scores.push(wj);
            builders[narrative].absorb(&current[winner]);
            owner[winner] = narrative;
            let parent_narrative_id = builders[narrative].id();
            for &(ci, _) in kids {
                if ci != winner {
                    builders.push(Builder::start(&current[ci], Some(parent_narrative_id.clone())));
                    owner[ci] = builders.len() - 1;
                }
            }
        }
        for (ci, c) in current.iter().enumerate() {
            if !linked[ci] {
                builders.push(Builder::start(c, None));
                owner[ci] = builders.len() - 1;
            }
        }
        prev_owner = owner;
    }

    let mut narratives: Vec<Narrative> = builders
        .into_iter()
        .map(|b| Narrative {
            narrative_id: b.id(),
            clusters: b.clusters,
            windows: b.windows,
            link_scores: b.link_scores,
            entity_signature: b.entities.into_iter().collect(),
            post_ids: b.posts.into_iter().collect(),
            platforms: Vec::new(),
            split_from: b.split_from,
        })
        .collect();
    narratives.sort_by(|a, b| {
        a.first_window()
            .cmp(&b.first_window())
            .then_with(|| a.narrative_id.cmp(&b.narrative_id))
    });
    narratives
}
