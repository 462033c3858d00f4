//! Slow, obviously-correct reference implementations.

use std::collections::{BTreeMap, BTreeSet};

use narratrace::entities::{EntityKey, EntityKind};
use narratrace::narrative::cluster::cluster_id;
use narratrace::narrative::{cluster_graph, CoocEdge, CoocGraph, EventCluster, Narrative};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Union-find by label relabeling: every union rewrites one whole class.
pub fn components(n: usize, edges: &[(usize, usize)]) -> BTreeSet<BTreeSet<usize>> {
    let mut label: Vec<usize> = (0..n).collect();
    for &(a, b) in edges {
        let (from, to) = (label[a], label[b]);
        if from != to {
            for l in label.iter_mut() {
                if *l == from {
                    *l = to;
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for (i, l) in label.into_iter().enumerate() {
        groups.entry(l).or_default().insert(i);
    }
    groups.into_values().collect()
}

pub fn term(name: &str) -> EntityKey {
    EntityKey::new(name, EntityKind::Term)
}

/// A random graph with mention sets, plus its edge list by node index.
pub fn random_graph(rng: &mut ChaCha8Rng, window_index: usize) -> (CoocGraph, Vec<(usize, usize)>) {
    let n = rng.random_range(1..40);
    let density = rng.random_range(0.0..0.15);
    let keys: Vec<EntityKey> = (0..n).map(|i| term(&format!("e{i:02}"))).collect();
    let mut nodes = BTreeMap::new();
    for k in &keys {
        let posts: BTreeSet<String> = (0..rng.random_range(1..5))
            .map(|_| format!("p{}", rng.random_range(0..60)))
            .collect();
        nodes.insert(k.clone(), posts);
    }
    let mut edges = Vec::new();
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.random_bool(density) {
                edges.push(CoocEdge {
                    a: keys[a].clone(),
                    b: keys[b].clone(),
                    weight: rng.random_range(0.0..=1.0),
                    cooc_count: 1,
                });
                pairs.push((a, b));
            }
        }
    }
    (
        CoocGraph {
            window_index,
            nodes,
            edges,
        },
        pairs,
    )
}

/// True when `cluster_graph` agrees with the oracle components exactly,
/// including each cluster's post union and volume.
pub fn clusters_match_oracle(g: &CoocGraph, pairs: &[(usize, usize)]) -> bool {
    let keys: Vec<&EntityKey> = g.nodes.keys().collect();
    let want: BTreeSet<BTreeSet<EntityKey>> = components(keys.len(), pairs)
        .into_iter()
        .map(|c| c.into_iter().map(|i| keys[i].clone()).collect())
        .collect();
    let clusters = cluster_graph(g);
    let got: BTreeSet<BTreeSet<EntityKey>> = clusters.iter().map(|c| c.entities.iter().cloned().collect()).collect();
    let posts_ok = clusters.iter().all(|c| {
        let union: BTreeSet<&String> = c.entities.iter().flat_map(|e| &g.nodes[e]).collect();
        let listed: BTreeSet<&String> = c.post_ids.iter().collect();
        union == listed && c.volume == union.len()
    });
    got == want && clusters.len() == want.len() && posts_ok
}

fn jaccard(a: &[EntityKey], b: &[EntityKey]) -> f64 {
    let a: BTreeSet<&EntityKey> = a.iter().collect();
    let b: BTreeSet<&EntityKey> = b.iter().collect();
    let union = a.union(&b).count();
    if union == 0 {
        0.0
    } else {
        a.intersection(&b).count() as f64 / union as f64
    }
}

/// Clusters for `n_windows` windows; each window partitions a random subset
/// of a small entity universe so consecutive windows overlap often.
pub fn random_windows(rng: &mut ChaCha8Rng, n_windows: usize) -> Vec<Vec<EventCluster>> {
    let universe: Vec<EntityKey> = (0..14).map(|i| term(&format!("u{i:02}"))).collect();
    (0..n_windows)
        .map(|w| {
            let mut present: Vec<EntityKey> = universe.iter().filter(|_| rng.random_bool(0.7)).cloned().collect();
            present.shuffle(rng);
            let mut clusters = Vec::new();
            while !present.is_empty() {
                let take = rng.random_range(1..=present.len().min(4));
                let mut entities: Vec<EntityKey> = present.drain(..take).collect();
                entities.sort();
                let volume = rng.random_range(1..4);
                clusters.push(EventCluster {
                    cluster_id: cluster_id(w, &entities),
                    window_index: w,
                    post_ids: (0..volume).map(|i| format!("w{w}-{}-{i}", entities[0].name)).collect(),
                    volume,
                    entities,
                    burst_z: 0.0,
                    is_event: false,
                });
            }
            clusters
        })
        .collect()
}

/// Chains as `(cluster ids, split_from)` from an exhaustive best-match scan.
pub fn chain_oracle(windows: &[Vec<EventCluster>], tau: f64) -> BTreeSet<(Vec<String>, Option<String>)> {
    // parent of every linked child, by scanning every previous-window cluster
    let mut parent_of: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for t in 1..windows.len() {
        for (ci, child) in windows[t].iter().enumerate() {
            let mut best: Option<(usize, f64)> = None;
            for (pi, p) in windows[t - 1].iter().enumerate() {
                let j = jaccard(&child.entities, &p.entities);
                let better = match best {
                    None => true,
                    Some((bi, bj)) => {
                        let b = &windows[t - 1][bi];
                        j > bj
                            || (j == bj
                                && (p.volume > b.volume || (p.volume == b.volume && p.cluster_id < b.cluster_id)))
                    }
                };
                if better {
                    best = Some((pi, j));
                }
            }
            if let Some((pi, j)) = best {
                if j >= tau {
                    parent_of.insert((t, ci), pi);
                }
            }
        }
    }
    // among siblings, the continuing child: larger volume, then Jaccard, then smaller id
    let mut continues: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (&(t, ci), &pi) in &parent_of {
        let c = &windows[t][ci];
        let jc = jaccard(&c.entities, &windows[t - 1][pi].entities);
        let keep = match continues.get(&(t, pi)) {
            None => true,
            Some(&oi) => {
                let o = &windows[t][oi];
                let jo = jaccard(&o.entities, &windows[t - 1][pi].entities);
                c.volume > o.volume || (c.volume == o.volume && (jc > jo || (jc == jo && c.cluster_id < o.cluster_id)))
            }
        };
        if keep {
            continues.insert((t, pi), ci);
        }
    }
    let successor = |t: usize, pi: usize| continues.get(&(t + 1, pi)).copied();
    let is_continuation = |t: usize, ci: usize| parent_of.get(&(t, ci)).is_some_and(|&pi| continues[&(t, pi)] == ci);

    let mut chain_of: BTreeMap<(usize, usize), Vec<String>> = BTreeMap::new();
    for t in 0..windows.len() {
        for ci in 0..windows[t].len() {
            if is_continuation(t, ci) {
                continue;
            }
            let mut ids = vec![windows[t][ci].cluster_id.clone()];
            let (mut tt, mut cc) = (t, ci);
            while let Some(next) = successor(tt, cc) {
                tt += 1;
                cc = next;
                ids.push(windows[tt][cc].cluster_id.clone());
            }
            chain_of.insert((t, ci), ids);
        }
    }
    // narrative id of the chain holding cluster (t, ci)
    let head_of = |t: usize, ci: usize| -> String {
        let (mut tt, mut cc) = (t, ci);
        while is_continuation(tt, cc) {
            cc = parent_of[&(tt, cc)];
            tt -= 1;
        }
        narratrace::narrative::chain::narrative_id(&windows[tt][cc].cluster_id)
    };
    chain_of
        .into_iter()
        .map(|((t, ci), ids)| {
            let split = parent_of.get(&(t, ci)).map(|&pi| head_of(t - 1, pi));
            (ids, split)
        })
        .collect()
}

pub fn chain_summary(narratives: &[Narrative]) -> BTreeSet<(Vec<String>, Option<String>)> {
    narratives
        .iter()
        .map(|n| (n.clusters.clone(), n.split_from.clone()))
        .collect()
}
