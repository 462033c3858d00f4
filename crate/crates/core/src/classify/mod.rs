//! Per-narrative deception, coordination and agenda scores fused
//! into an organic / orchestrated-inauthentic label.
//!
//! Axis scores are pure functions of the feature vector and the scoring
//! parameters, so any assessment can be recomputed from its
//! `feature_vector` plus the effective config.

pub mod calibrate;
pub mod features;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::agenda::{agenda_formula, TechniqueHit, DEFAULT_LAMBDA};
use crate::coordination::CoordinationWeights;
use crate::credibility::DeceptionWeights;
use crate::error::{Error, Result};
use crate::stats::logistic;

pub use calibrate::{calibrate, CalibrateParams, Calibration, LabeledScores};
pub use features::{narrative_features, Evidence, FeatureContext};

pub const LABEL_THRESHOLD: f64 = 0.5;

/// Feature vector keys, grouped by the family they describe.
pub const FEATURE_KEYS: &[&str] = &[
    // user
    "accounts",
    "inauthentic_fraction",
    "young_account_fraction",
    "follower_skew_fraction",
    "handle_pattern_fraction",
    "burst_poster_fraction",
    // metadata
    "url_posts",
    "lowcred_fraction",
    // content
    "tokens",
    "technique_hits",
    "hits_per_100_tokens",
    "technique_diversity",
    // temporal
    "windows",
    "duration_secs",
    "max_burst_z",
    "synchrony",
    // structural
    "posts",
    "entities",
    "dup_fraction",
    "platform_span",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Label {
    Organic,
    OrchestratedInauthentic,
}

impl Label {
    pub fn from_score(fused: f64) -> Self {
        if fused >= LABEL_THRESHOLD {
            Label::OrchestratedInauthentic
        } else {
            Label::Organic
        }
    }

    pub fn is_orchestrated(self) -> bool {
        self == Label::OrchestratedInauthentic
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FusionWeights {
    pub deception: f64,
    pub coordination: f64,
    pub agenda: f64,
    pub bias: f64,
}

impl Default for FusionWeights {
    /// Fitted with `calibrate` on the default synthetic scenario, rounded.
    fn default() -> Self {
        Self {
            deception: 2.8,
            coordination: 3.9,
            agenda: 2.0,
            bias: -6.5,
        }
    }
}

impl FusionWeights {
    pub fn as_array(&self) -> [f64; 4] {
        [self.deception, self.coordination, self.agenda, self.bias]
    }

    pub fn from_array(p: [f64; 4]) -> Self {
        Self {
            deception: p[0],
            coordination: p[1],
            agenda: p[2],
            bias: p[3],
        }
    }
}

pub fn fuse(deception: f64, coordination: f64, agenda: f64, w: &FusionWeights) -> (f64, Label) {
    let fused = logistic(w.deception * deception + w.coordination * coordination + w.agenda * agenda + w.bias);
    (fused, Label::from_score(fused))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScoringParams {
    pub deception: DeceptionWeights,
    pub coordination: CoordinationWeights,
    pub agenda_lambda: f64,
    pub fusion: FusionWeights,
}

impl Default for ScoringParams {
    fn default() -> Self {
        Self {
            deception: DeceptionWeights::default(),
            coordination: CoordinationWeights::default(),
            agenda_lambda: DEFAULT_LAMBDA,
            fusion: FusionWeights::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxisScores {
    pub deception: f64,
    pub coordination: f64,
    pub agenda: f64,
}

fn feature(fv: &BTreeMap<String, f64>, key: &str) -> Result<f64> {
    fv.get(key)
        .copied()
        .ok_or_else(|| Error::stage("classify", format!("feature vector lacks `{key}`")))
}

/// The three axis scores implied by a feature vector.
pub fn axis_scores(fv: &BTreeMap<String, f64>, p: &ScoringParams) -> Result<AxisScores> {
    let deception = crate::credibility::deception_score(
        "",
        feature(fv, "lowcred_fraction")?,
        feature(fv, "inauthentic_fraction")?,
        &p.deception,
    )
    .score;
    let coordination = crate::coordination::coordination_score(
        "",
        feature(fv, "dup_fraction")?,
        feature(fv, "synchrony")?,
        feature(fv, "platform_span")? as usize,
        &p.coordination,
    )
    .score;
    let agenda = agenda_formula(
        feature(fv, "hits_per_100_tokens")?,
        feature(fv, "technique_diversity")?,
        p.agenda_lambda,
    );
    Ok(AxisScores {
        deception,
        coordination,
        agenda,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NarrativeAssessment {
    pub narrative_id: String,
    pub deception: f64,
    pub coordination: f64,
    pub agenda: f64,
    pub fused: f64,
    pub label: Label,
    pub feature_vector: BTreeMap<String, f64>,
    pub config_fingerprint: String,
    pub evidence: Evidence,
}

pub fn assess(
    narrative_id: &str,
    feature_vector: BTreeMap<String, f64>,
    evidence: Evidence,
    params: &ScoringParams,
    config_fingerprint: &str,
) -> Result<NarrativeAssessment> {
    let axes = axis_scores(&feature_vector, params)?;
    let (fused, label) = fuse(axes.deception, axes.coordination, axes.agenda, &params.fusion);
    Ok(NarrativeAssessment {
        narrative_id: narrative_id.to_string(),
        deception: axes.deception,
        coordination: axes.coordination,
        agenda: axes.agenda,
        fused,
        label,
        feature_vector,
        config_fingerprint: config_fingerprint.to_string(),
        evidence,
    })
}

/// Re-derive an assessment from its stored feature vector.
pub fn reassess(a: &NarrativeAssessment, params: &ScoringParams) -> Result<NarrativeAssessment> {
    assess(
        &a.narrative_id,
        a.feature_vector.clone(),
        a.evidence.clone(),
        params,
        &a.config_fingerprint,
    )
}

/// Techniques seen in `hits`, with counts.
pub fn technique_counts(hits: &[TechniqueHit]) -> BTreeMap<String, usize> {
    let mut out = BTreeMap::new();
    for h in hits {
        *out.entry(h.technique.clone()).or_insert(0) += 1;
    }
    out
}
