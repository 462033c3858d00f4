use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::coordination::lsh::DuplicateCluster;
use crate::stats::logistic;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CoordinationWeights {
    pub dup: f64,
    pub sync: f64,
    pub span: f64,
    pub bias: f64,
}

impl Default for CoordinationWeights {
    fn default() -> Self {
        Self {
            dup: 4.0,
            sync: 4.0,
            span: 2.0,
            bias: -4.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoordinationScore {
    pub narrative_id: String,
    pub dup_fraction: f64,
    pub synchrony: f64,
    pub platform_span: usize,
    pub score: f64,
}

/// Platform-span term: `min(span - 1, 3) / 3`.
pub fn span_term(platform_span: usize) -> f64 {
    (platform_span.saturating_sub(1).min(3)) as f64 / 3.0
}

pub fn coordination_score(
    narrative_id: &str,
    dup_fraction: f64,
    synchrony: f64,
    platform_span: usize,
    w: &CoordinationWeights,
) -> CoordinationScore {
    let z = w.dup * dup_fraction + w.sync * synchrony + w.span * span_term(platform_span) + w.bias;
    CoordinationScore {
        narrative_id: narrative_id.to_string(),
        dup_fraction,
        synchrony,
        platform_span,
        score: logistic(z),
    }
}

/// Post ids belonging to duplicate clusters that span at least `min_accounts` accounts.
pub fn coordinated_posts(clusters: &[DuplicateCluster], min_accounts: usize) -> HashSet<&str> {
    clusters
        .iter()
        .filter(|c| c.accounts.len() >= min_accounts)
        .flat_map(|c| c.texts.iter().map(String::as_str))
        .collect()
}

/// Fraction of `post_ids` inside a qualifying duplicate cluster.
pub fn dup_fraction<S: AsRef<str>>(post_ids: &[S], coordinated: &HashSet<&str>) -> f64 {
    if post_ids.is_empty() {
        return 0.0;
    }
    let hits = post_ids.iter().filter(|p| coordinated.contains(p.as_ref())).count();
    hits as f64 / post_ids.len() as f64
}

/// Duplicate-cluster index per post id, for evidence pointers.
pub fn cluster_membership(clusters: &[DuplicateCluster]) -> HashMap<&str, usize> {
    clusters
        .iter()
        .enumerate()
        .flat_map(|(i, c)| c.texts.iter().map(move |p| (p.as_str(), i)))
        .collect()
}
