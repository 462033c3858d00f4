use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::entities::EntityKey;
use crate::hashing::short_id;
use crate::narrative::graph::CoocGraph;
use crate::union_find::UnionFind;

/// Entities that co-occur in one window, with their posts and volume statistics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EventCluster {
    pub cluster_id: String,
    pub window_index: usize,
    /// Sorted, nonempty.
    pub entities: Vec<EntityKey>,
    /// Sorted union of member mention sets within the window.
    pub post_ids: Vec<String>,
    pub volume: usize,
    #[serde(default)]
    pub burst_z: f64,
    #[serde(default)]
    pub is_event: bool,
}

pub fn cluster_id(window_index: usize, entities: &[EntityKey]) -> String {
    let parts = std::iter::once(format!("w{window_index}")).chain(entities.iter().map(|e| e.to_string()));
    format!("c-{}", short_id(parts))
}

/// Connected components of the thresholded graph, isolated nodes included.
/// Output is ordered by each cluster's smallest entity.
pub fn cluster_graph(g: &CoocGraph) -> Vec<EventCluster> {
    let keys: Vec<&EntityKey> = g.nodes.keys().collect();
    let mut uf = UnionFind::new(keys.len());
    for e in &g.edges {
        let a = keys.binary_search(&&e.a).expect("edge endpoint is a node");
        let b = keys.binary_search(&&e.b).expect("edge endpoint is a node");
        uf.union(a, b);
    }
    uf.groups()
        .into_iter()
        .map(|members| {
            let entities: Vec<EntityKey> = members.iter().map(|&i| keys[i].clone()).collect();
            let posts: BTreeSet<&String> = entities.iter().flat_map(|e| g.nodes[e].iter()).collect();
            let post_ids: Vec<String> = posts.into_iter().cloned().collect();
            EventCluster {
                cluster_id: cluster_id(g.window_index, &entities),
                window_index: g.window_index,
                volume: post_ids.len(),
                entities,
                post_ids,
                burst_z: 0.0,
                is_event: false,
            }
        })
        .collect()
}
