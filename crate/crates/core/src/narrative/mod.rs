//! Stage 2: windowed entity co-occurrence graphs, event clusters, and
//! narratives chained across windows.

pub mod burst;
pub mod chain;
pub mod cluster;
pub mod graph;
pub mod window;

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use burst::{burst_scores, burst_z};
pub use chain::{chain_clusters, Narrative};
pub use cluster::{cluster_graph, EventCluster};
pub use graph::{build_cooc_graph, CoocEdge, CoocGraph};
pub use window::{window_posts, Window};

use crate::entities::EntityKey;
use crate::error::Result;
use crate::ingest::Post;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NarrativeParams {
    pub window_len: i64,
    pub stride: i64,
    pub theta_edge: f64,
    pub c_min: usize,
    pub tau_link: f64,
    pub z_event: f64,
    pub k_trailing: usize,
}

impl Default for NarrativeParams {
    fn default() -> Self {
        Self {
            window_len: 3600,
            stride: 3600,
            theta_edge: 0.1,
            c_min: 3,
            tau_link: chain::DEFAULT_TAU_LINK,
            z_event: burst::DEFAULT_Z_EVENT,
            k_trailing: 6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WindowSummary {
    pub index: usize,
    pub start: i64,
    pub posts: usize,
    pub nodes: usize,
    pub edges: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct NarrativeSet {
    pub windows: Vec<WindowSummary>,
    pub clusters: Vec<EventCluster>,
    pub narratives: Vec<Narrative>,
}

impl NarrativeSet {
    pub fn cluster(&self, id: &str) -> Option<&EventCluster> {
        self.clusters.iter().find(|c| c.cluster_id == id)
    }

    pub fn cluster_index(&self) -> HashMap<&str, &EventCluster> {
        self.clusters.iter().map(|c| (c.cluster_id.as_str(), c)).collect()
    }
}

/// Run windowing, graph construction, clustering, burst scoring and chaining.
///
/// `posts` must be sorted by `created_at`; `entities[i]` are the resolved
/// entities of `posts[i]`.
pub fn detect_narratives(
    posts: &[Post],
    entities: &[Vec<EntityKey>],
    params: &NarrativeParams,
) -> Result<NarrativeSet> {
    assert_eq!(posts.len(), entities.len(), "one entity list per post");
    let times: Vec<i64> = posts.iter().map(|p| p.created_at).collect();
    let windows = window_posts(&times, params.window_len, params.stride)?;

    let graphs: Vec<CoocGraph> = windows
        .par_iter()
        .map(|w| {
            build_cooc_graph(
                w.index,
                w.posts
                    .iter()
                    .map(|&i| (posts[i].post_id.as_str(), entities[i].as_slice())),
                params.theta_edge,
                params.c_min,
            )
        })
        .collect();

    let mut by_window: Vec<Vec<EventCluster>> = graphs
        .par_iter()
        .enumerate()
        .map(|(t, g)| {
            let mut clusters = cluster_graph(g);
            for c in &mut clusters {
                let series = trailing_volume(&graphs, t, &c.entities, params.k_trailing);
                let z = burst_z(&series, series.len() - 1, params.k_trailing);
                c.burst_z = z;
                c.is_event = burst::is_event(z, params.z_event);
            }
            clusters
        })
        .collect();

    let mut narratives = chain_clusters(&by_window, params.tau_link);
    let platform_of: HashMap<&str, &str> = posts
        .iter()
        .map(|p| (p.post_id.as_str(), p.platform.as_str()))
        .collect();
    for n in &mut narratives {
        n.fill_platforms(|id| platform_of.get(id).copied());
    }

    let summaries = windows
        .iter()
        .zip(&graphs)
        .map(|(w, g)| WindowSummary {
            index: w.index,
            start: w.start,
            posts: w.posts.len(),
            nodes: g.nodes.len(),
            edges: g.edges.len(),
        })
        .collect();

    Ok(NarrativeSet {
        windows: summaries,
        clusters: by_window.drain(..).flatten().collect(),
        narratives,
    })
}

/// Volumes of the entity group over windows `t - k ..= t` (clipped at 0):
/// posts mentioning any of `entities` in each window.
fn trailing_volume(graphs: &[CoocGraph], t: usize, entities: &[EntityKey], k: usize) -> Vec<f64> {
    let from = t.saturating_sub(k);
    (from..=t)
        .map(|s| {
            let posts: BTreeSet<&String> = entities
                .iter()
                .filter_map(|e| graphs[s].nodes.get(e))
                .flatten()
                .collect();
            posts.len() as f64
        })
        .collect()
}

/// Graphviz description of narratives: one node per cluster, one edge per link.
pub fn to_dot(set: &NarrativeSet) -> String {
    let index = set.cluster_index();
    let mut out = String::from("digraph narratives {\n  rankdir=LR;\n  node [shape=box, fontsize=10];\n");
    for n in &set.narratives {
        let _ = writeln!(
            out,
            "  subgraph \"cluster_{}\" {{\n    label=\"{}\";",
            n.narrative_id, n.narrative_id
        );
        for cid in &n.clusters {
            let c = index[cid.as_str()];
            let label: Vec<String> = c
                .entities
                .iter()
                .take(6)
                .map(|e| e.to_string().replace('"', "'"))
                .collect();
            let more = if c.entities.len() > 6 { "\\n..." } else { "" };
            let _ = writeln!(
                out,
                "    \"{cid}\" [label=\"w{} v={}\\n{}{more}\"];",
                c.window_index,
                c.volume,
                label.join("\\n")
            );
        }
        out.push_str("  }\n");
        for (i, score) in n.link_scores.iter().enumerate() {
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\" [label=\"{score:.3}\"];",
                n.clusters[i],
                n.clusters[i + 1]
            );
        }
        if let Some(parent) = &n.split_from {
            let _ = writeln!(out, "  // {} split from {parent}", n.narrative_id);
        }
    }
    out.push_str("}\n");
    out
}
