//! Pipeline configuration: shipped defaults, TOML file overrides, then
//! command-line overrides.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::attribution::DEFAULT_COSINE_THRESHOLD;
use crate::classify::{CalibrateParams, FusionWeights, ScoringParams};
use crate::coordination::CoordinationParams;
use crate::credibility::{AccountThresholds, DeceptionWeights};
use crate::error::{Error, Result};
use crate::hashing::sha256_hex;
use crate::narrative::NarrativeParams;
use crate::synthgen::ScenarioConfig;

pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlatformInput {
    /// Adapter TOML describing the platform's record shape.
    pub adapter: PathBuf,
    /// JSONL file of platform records.
    pub path: PathBuf,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Inputs {
    pub platforms: Vec<PlatformInput>,
    /// JSONL of `{url, text}` article bodies, keyed by canonical URL.
    pub articles: Option<PathBuf>,
    /// JSON map of short URL -> target URL.
    pub shorteners: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ListPaths {
    /// One domain per line; `#` starts a comment.
    pub low_credibility: Option<PathBuf>,
    /// JSON map alias -> canonical entity name.
    pub entity_dictionary: Option<PathBuf>,
    /// JSON map technique -> cue list. The starter lexicon is used when unset.
    pub propaganda_lexicon: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CredibilityParams {
    pub thresholds: AccountThresholds,
    pub weights: DeceptionWeights,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AgendaParams {
    pub lambda: f64,
}

impl Default for AgendaParams {
    fn default() -> Self {
        Self {
            lambda: crate::agenda::DEFAULT_LAMBDA,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ClassifyParams {
    pub fusion: FusionWeights,
    pub calibrate: CalibrateParams,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AttributionParams {
    pub cosine_threshold: f64,
}

impl Default for AttributionParams {
    fn default() -> Self {
        Self {
            cosine_threshold: DEFAULT_COSINE_THRESHOLD,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    /// Feeds MinHash permutations and calibration start weights.
    pub seed: u64,
    /// Worker threads; 0 uses every core. Results do not depend on it.
    pub threads: usize,
    pub out_dir: PathBuf,
    pub inputs: Inputs,
    pub lists: ListPaths,
    pub narratives: NarrativeParams,
    pub coordination: CoordinationParams,
    pub credibility: CredibilityParams,
    pub agenda: AgendaParams,
    pub classify: ClassifyParams,
    pub attribution: AttributionParams,
    /// Scenario for the `synth` subcommand; not part of the fingerprint.
    pub synth: ScenarioConfig,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            threads: 0,
            out_dir: PathBuf::from("out"),
            inputs: Inputs::default(),
            lists: ListPaths::default(),
            narratives: NarrativeParams::default(),
            coordination: CoordinationParams::default(),
            credibility: CredibilityParams::default(),
            agenda: AgendaParams::default(),
            classify: ClassifyParams::default(),
            attribution: AttributionParams::default(),
            synth: ScenarioConfig::default(),
        }
    }
}

fn resolve(base: &Path, p: &mut PathBuf) {
    if p.is_relative() {
        *p = base.join(&*p);
    }
}

fn resolve_opt(base: &Path, p: &mut Option<PathBuf>) {
    if let Some(p) = p {
        resolve(base, p);
    }
}

impl PipelineConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    /// Load a config file; relative paths inside it resolve against its directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut cfg = Self::from_toml_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        let base = path.parent().unwrap_or(Path::new("."));
        cfg.resolve_paths(base);
        Ok(cfg)
    }

    pub fn resolve_paths(&mut self, base: &Path) {
        resolve(base, &mut self.out_dir);
        for p in &mut self.inputs.platforms {
            resolve(base, &mut p.adapter);
            resolve(base, &mut p.path);
        }
        resolve_opt(base, &mut self.inputs.articles);
        resolve_opt(base, &mut self.inputs.shorteners);
        resolve_opt(base, &mut self.lists.low_credibility);
        resolve_opt(base, &mut self.lists.entity_dictionary);
        resolve_opt(base, &mut self.lists.propaganda_lexicon);
    }

    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string_pretty(self).map_err(|e| Error::Config(e.to_string()))
    }

    /// Apply a `section.key=value` override. The value is read as a TOML
    /// literal when it parses as one, otherwise as a string.
    pub fn set(&mut self, assignment: &str) -> Result<()> {
        let (key, raw) = assignment
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("override `{assignment}` is not key=value")))?;
        let key = key.trim();
        let value: toml::Value = toml::from_str::<toml::Table>(&format!("v = {}", raw.trim()))
            .ok()
            .and_then(|mut t| t.remove("v"))
            .unwrap_or_else(|| toml::Value::String(raw.trim().to_string()));

        let mut root = toml::Value::try_from(&*self).map_err(|e| Error::Config(e.to_string()))?;
        let parts: Vec<&str> = key.split('.').collect();
        let mut cur = &mut root;
        for (i, part) in parts.iter().enumerate() {
            let table = cur.as_table_mut().ok_or_else(|| {
                Error::Config(format!("override `{key}`: `{}` is not a section", parts[..i].join(".")))
            })?;
            if i + 1 == parts.len() {
                table.insert(part.to_string(), value.clone());
                break;
            }
            cur = table
                .entry(part.to_string())
                .or_insert_with(|| toml::Value::Table(toml::Table::new()));
        }
        *self = root
            .try_into()
            .map_err(|e: toml::de::Error| Error::Config(format!("override `{assignment}`: {e}")))?;
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        let n = &self.narratives;
        if n.window_len <= 0 || n.stride <= 0 || n.stride > n.window_len {
            return Err(Error::BadWindow {
                window_len: n.window_len,
                stride: n.stride,
            });
        }
        self.coordination.lsh.validate()?;
        if !(0.0..=1.0).contains(&self.attribution.cosine_threshold) {
            return Err(Error::Config("attribution.cosine_threshold must be in [0, 1]".into()));
        }
        Ok(())
    }

    /// Coordination parameters with the top-level seed applied.
    pub fn coordination_params(&self) -> CoordinationParams {
        let mut c = self.coordination.clone();
        c.lsh.seed = self.seed;
        c
    }

    pub fn calibrate_params(&self) -> CalibrateParams {
        let mut c = self.classify.calibrate.clone();
        c.seed = self.seed;
        c
    }

    pub fn scoring_params(&self) -> ScoringParams {
        ScoringParams {
            deception: self.credibility.weights.clone(),
            coordination: self.coordination.weights.clone(),
            agenda_lambda: self.agenda.lambda,
            fusion: self.classify.fusion.clone(),
        }
    }

    /// The config as echoed into artifacts: everything that can change
    /// results, without output location, thread count or synth scenario.
    pub fn echo(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("config serializes");
        if let Some(obj) = v.as_object_mut() {
            obj.remove("out_dir");
            obj.remove("threads");
            obj.remove("synth");
        }
        v
    }

    pub fn fingerprint(&self) -> String {
        sha256_hex(self.echo().to_string().as_bytes())
    }
}
