//! Scoring pipeline output against synthetic ground truth.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::classify::{LabeledScores, NarrativeAssessment};
use crate::narrative::Narrative;
use crate::synthgen::GroundTruth;

/// Share of a narrative's posts one campaign must hold for the narrative to
/// count as that campaign's.
pub const MATCH_SHARE: f64 = 0.5;

/// Pair each assessment with its ground-truth label for calibration.
pub fn labeled_scores(
    assessments: &[NarrativeAssessment],
    narratives: &[Narrative],
    truth: &GroundTruth,
) -> Vec<LabeledScores> {
    let posts: BTreeMap<&str, &[String]> = narratives
        .iter()
        .map(|n| (n.narrative_id.as_str(), n.post_ids.as_slice()))
        .collect();
    assessments
        .iter()
        .filter_map(|a| {
            let ids = posts.get(a.narrative_id.as_str())?;
            Some(LabeledScores {
                x: [a.deception, a.coordination, a.agenda],
                orchestrated: truth.majority_campaign(ids, MATCH_SHARE).is_some(),
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Recovery {
    pub flagged: usize,
    /// Flagged narratives whose posts are mostly one planted campaign.
    pub true_positives: usize,
    pub campaigns: usize,
    pub campaigns_found: usize,
    pub precision: f64,
    pub recall: f64,
    /// Campaign id for each flagged narrative, `None` when it matched nothing.
    pub matches: BTreeMap<String, Option<String>>,
}

/// Precision over narratives labeled orchestrated, recall over planted campaigns.
pub fn recovery(assessments: &[NarrativeAssessment], narratives: &[Narrative], truth: &GroundTruth) -> Recovery {
    let by_id: BTreeMap<&str, &Narrative> = narratives.iter().map(|n| (n.narrative_id.as_str(), n)).collect();
    let mut matches = BTreeMap::new();
    for a in assessments.iter().filter(|a| a.label.is_orchestrated()) {
        let m = by_id
            .get(a.narrative_id.as_str())
            .and_then(|n| truth.majority_campaign(&n.post_ids, MATCH_SHARE));
        matches.insert(a.narrative_id.clone(), m);
    }
    let flagged = matches.len();
    let true_positives = matches.values().filter(|m| m.is_some()).count();
    let found: BTreeSet<&str> = matches.values().flatten().map(String::as_str).collect();
    let campaigns = truth.campaigns.len();
    let campaigns_found = truth
        .campaigns
        .iter()
        .filter(|c| found.contains(c.campaign_id.as_str()))
        .count();
    Recovery {
        flagged,
        true_positives,
        campaigns,
        campaigns_found,
        precision: if flagged == 0 {
            0.0
        } else {
            true_positives as f64 / flagged as f64
        },
        recall: if campaigns == 0 {
            1.0
        } else {
            campaigns_found as f64 / campaigns as f64
        },
        matches,
    }
}
