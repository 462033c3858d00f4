//! Stage artifacts: self-describing JSON documents passed between stages.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::attribution::ActorFingerprint;
use crate::classify::NarrativeAssessment;
use crate::coordination::DuplicateCluster;
use crate::credibility::AccountAssessment;
use crate::error::{Error, Result};
use crate::impact::ImpactReport;
use crate::ingest::{Post, SourceLists};
use crate::narrative::NarrativeSet;

/// Bumped on any incompatible change to the artifact layout.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    Ingest,
    Narratives,
    Classify,
    Attribute,
    Impact,
}

impl Stage {
    pub fn name(self) -> &'static str {
        match self {
            Stage::Ingest => "ingest",
            Stage::Narratives => "narratives",
            Stage::Classify => "classify",
            Stage::Attribute => "attribute",
            Stage::Impact => "impact",
        }
    }

    /// Default file name of the artifact a stage writes.
    pub fn file_name(self) -> &'static str {
        match self {
            Stage::Ingest => "posts.json",
            Stage::Narratives => "narratives.json",
            Stage::Classify => "assessments.json",
            Stage::Attribute => "attribution.json",
            Stage::Impact => "report.json",
        }
    }

    pub fn previous(self) -> Option<Stage> {
        match self {
            Stage::Ingest => None,
            Stage::Narratives => Some(Stage::Ingest),
            Stage::Classify => Some(Stage::Narratives),
            Stage::Attribute => Some(Stage::Classify),
            Stage::Impact => Some(Stage::Attribute),
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ActorGroups {
    pub caveat: String,
    pub cosine_threshold: f64,
    pub groups: Vec<ActorFingerprint>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImpactSection {
    pub caveat: String,
    pub reports: Vec<ImpactReport>,
}

/// Everything a later stage needs, accumulated stage by stage.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Artifact {
    pub schema_version: u32,
    pub stage: Stage,
    pub config_fingerprint: String,
    pub config: serde_json::Value,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub lists: SourceLists,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub articles: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub posts: Vec<Post>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub narratives: Option<NarrativeSet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub duplicate_clusters: Option<Vec<DuplicateCluster>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub accounts: Option<Vec<AccountAssessment>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub assessments: Option<Vec<NarrativeAssessment>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub actor_groups: Option<ActorGroups>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub impact: Option<ImpactSection>,
}

impl Artifact {
    pub fn require<'a, T>(&self, field: &'a Option<T>, name: &str) -> Result<&'a T> {
        field.as_ref().ok_or_else(|| {
            Error::stage(
                self.stage.name(),
                format!("artifact has no `{name}` section; run the earlier stages first"),
            )
        })
    }

    pub fn narrative_set(&self) -> Result<&NarrativeSet> {
        self.require(&self.narratives, "narratives")
    }

    pub fn assessment_list(&self) -> Result<&Vec<NarrativeAssessment>> {
        self.require(&self.assessments, "assessments")
    }

    pub fn duplicate_list(&self) -> Result<&Vec<DuplicateCluster>> {
        self.require(&self.duplicate_clusters, "duplicate_clusters")
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self).map_err(|e| Error::stage(self.stage.name(), e.to_string()))?;
        s.push('\n');
        Ok(s)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        }
        let f = fs::File::create(path).map_err(|e| Error::io(path, e))?;
        let mut w = BufWriter::new(f);
        serde_json::to_writer_pretty(&mut w, self).map_err(|e| Error::stage(self.stage.name(), e.to_string()))?;
        w.write_all(b"\n").map_err(|e| Error::io(path, e))?;
        w.flush().map_err(|e| Error::io(path, e))
    }

    /// Read an artifact and check it was produced by `expected`.
    pub fn read(path: &Path, expected: Stage) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let art: Artifact = serde_json::from_str(&text)
            .map_err(|e| Error::stage(expected.name(), format!("{}: {e}", path.display())))?;
        if art.schema_version != SCHEMA_VERSION {
            return Err(Error::stage(
                expected.name(),
                format!(
                    "{}: schema version {} (expected {SCHEMA_VERSION})",
                    path.display(),
                    art.schema_version
                ),
            ));
        }
        if art.stage != expected {
            return Err(Error::stage(
                expected.name(),
                format!(
                    "{}: is a `{}` artifact, expected `{expected}`",
                    path.display(),
                    art.stage
                ),
            ));
        }
        Ok(art)
    }
}
