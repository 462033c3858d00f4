//! Per-narrative reach, engagement and conversion-proxy metrics.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::ingest::Post;
use crate::narrative::{EventCluster, Narrative};

/// Measurement limits carried in every impact report.
pub const IMPACT_CAVEAT: &str = "These metrics count online activity only. Seeing or sharing content online \
is not evidence that anyone changed how they act offline, and reach is an upper bound built from follower counts.";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImpactReport {
    pub narrative_id: String,
    /// Sum of follower counts over distinct posting accounts.
    pub reach_upper_bound: u64,
    pub engagement_total: u64,
    pub amplification: f64,
    pub platform_spread: usize,
    /// Seconds from the first post to the first post of the largest cluster.
    pub time_to_peak: i64,
    /// Distinct accounts re-sharing a narrative URL after its first share.
    pub conversion_proxy: usize,
}

/// `clusters` resolves the narrative's cluster ids; missing ids are skipped.
pub fn impact_metrics(narrative: &Narrative, posts: &[&Post], clusters: &HashMap<&str, &EventCluster>) -> ImpactReport {
    let mut order: Vec<&Post> = posts.to_vec();
    order.sort_by(|a, b| (a.created_at, &a.post_id).cmp(&(b.created_at, &b.post_id)));

    // followers: the largest value seen per account
    let mut followers: BTreeMap<&str, u64> = BTreeMap::new();
    for p in &order {
        let f = followers.entry(p.author_id.as_str()).or_insert(0);
        *f = (*f).max(p.author_followers);
    }
    let reach_upper_bound = followers.values().sum();
    let engagement_total: u64 = order.iter().map(|p| p.engagement.total()).sum();
    let amplification = engagement_total as f64 / order.len().max(1) as f64;
    let platforms: BTreeSet<&str> = order.iter().map(|p| p.platform.as_str()).collect();

    let first = order.first().map(|p| p.created_at).unwrap_or(0);
    let time: HashMap<&str, i64> = order.iter().map(|p| (p.post_id.as_str(), p.created_at)).collect();
    let peak = narrative
        .clusters
        .iter()
        .filter_map(|id| clusters.get(id.as_str()))
        .max_by(|a, b| a.volume.cmp(&b.volume).then(b.window_index.cmp(&a.window_index)));
    let time_to_peak = peak
        .and_then(|c| c.post_ids.iter().filter_map(|id| time.get(id.as_str())).min())
        .map(|t| (t - first).max(0))
        .unwrap_or(0);

    // url -> first sharer, then later distinct sharers
    let mut first_sharer: HashMap<&str, &str> = HashMap::new();
    let mut converts: BTreeSet<&str> = BTreeSet::new();
    for p in &order {
        for u in &p.urls {
            match first_sharer.get(u.as_str()) {
                None => {
                    first_sharer.insert(u, &p.author_id);
                }
                Some(&a) if a != p.author_id => {
                    converts.insert(&p.author_id);
                }
                Some(_) => {}
            }
        }
    }

    ImpactReport {
        narrative_id: narrative.narrative_id.clone(),
        reach_upper_bound,
        engagement_total,
        amplification,
        platform_spread: platforms.len(),
        time_to_peak,
        conversion_proxy: converts.len(),
    }
}
