//! The five analysis stages and the orchestration around them.
//!
//! Each stage takes the previous stage's [`Artifact`] and the effective
//! [`PipelineConfig`] and returns a new artifact; nothing else is shared.
//! Parallel work always collects in input order, so outputs do not depend
//! on the thread count.

pub mod artifact;
pub mod evaluate;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::{Path, PathBuf};

use log::{info, warn};
use rayon::prelude::*;

pub use artifact::{ActorGroups, Artifact, ImpactSection, Stage, SCHEMA_VERSION};
pub use evaluate::{labeled_scores, recovery, Recovery};

use crate::agenda::Lexicon;
use crate::attribution::{fingerprint, group_actors};
use crate::classify::{assess, narrative_features, FeatureContext, LABEL_THRESHOLD};
use crate::config::PipelineConfig;
use crate::coordination::find_duplicate_clusters;
use crate::credibility::{account_flags, account_profiles, AccountAssessment};
use crate::entities::annotate_posts;
use crate::error::{Error, Result};
use crate::impact::{impact_metrics, IMPACT_CAVEAT};
use crate::ingest::{
    canonicalize_url, check_unique_ids, merge_sorted, read_articles, read_platform_file, Adapter, Post, SourceLists,
};
use crate::narrative::{detect_narratives, to_dot};

pub const THRESHOLD_NOTE: &str = "Labels use a fused-score threshold of 0.5 with fusion weights fitted on \
synthetic data. Neither is an empirically established base rate.";

pub const ACTOR_GROUP_CAVEAT: &str = "Candidate actor groups: accounts with near-identical posting-hour, \
domain and technique profiles. Exploratory hypotheses for review, not attributions to any operator.";

/// Run `f` on a pool with `threads` workers (0 = all cores).
pub fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

fn new_artifact(stage: Stage, cfg: &PipelineConfig, lists: SourceLists) -> Artifact {
    Artifact {
        schema_version: SCHEMA_VERSION,
        stage,
        config_fingerprint: cfg.fingerprint(),
        config: cfg.echo(),
        notes: Vec::new(),
        lists,
        articles: BTreeMap::new(),
        posts: Vec::new(),
        narratives: None,
        duplicate_clusters: None,
        accounts: None,
        assessments: None,
        actor_groups: None,
        impact: None,
    }
}

/// Carry `prev` forward as a `stage` artifact under the current config.
fn advance(prev: Artifact, stage: Stage, cfg: &PipelineConfig) -> Artifact {
    let fp = cfg.fingerprint();
    if prev.config_fingerprint != fp {
        warn!(
            "{stage}: input artifact was produced with config {} but the current config is {}",
            prev.config_fingerprint, fp
        );
    }
    Artifact {
        stage,
        config_fingerprint: fp,
        config: cfg.echo(),
        ..prev
    }
}

fn load_shorteners(path: Option<&Path>) -> Result<BTreeMap<String, String>> {
    let Some(path) = path else {
        return Ok(BTreeMap::new());
    };
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let raw: BTreeMap<String, String> =
        serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    Ok(raw
        .into_iter()
        .filter_map(|(k, v)| canonicalize_url(&k).ok().map(|k| (k, v)))
        .collect())
}

/// Stage 1: read every platform file through its adapter and merge by time.
pub fn ingest(cfg: &PipelineConfig) -> Result<Artifact> {
    cfg.validate()?;
    if cfg.inputs.platforms.is_empty() {
        return Err(Error::Config(
            "no platform inputs configured ([[inputs.platforms]])".into(),
        ));
    }
    let lists = SourceLists::load(
        cfg.lists.low_credibility.as_deref(),
        cfg.lists.entity_dictionary.as_deref(),
        cfg.lists.propaganda_lexicon.as_deref(),
    )?;
    let shorteners = load_shorteners(cfg.inputs.shorteners.as_deref())?;
    let streams = cfg
        .inputs
        .platforms
        .par_iter()
        .map(|input| {
            let adapter = Adapter::load(&input.adapter)?;
            let mut posts = read_platform_file(&input.path, &adapter, &shorteners)?;
            posts.sort_by(|a, b| (a.created_at, &a.post_id).cmp(&(b.created_at, &b.post_id)));
            info!("ingest: {} posts from {}", posts.len(), input.path.display());
            Ok(posts)
        })
        .collect::<Result<Vec<Vec<Post>>>>()?;
    let posts = merge_sorted(streams);
    check_unique_ids(&posts).map_err(|e| Error::stage("ingest", e))?;
    let articles = match &cfg.inputs.articles {
        Some(p) => read_articles(p)?,
        None => BTreeMap::new(),
    };
    let mut art = new_artifact(Stage::Ingest, cfg, lists);
    art.posts = posts;
    art.articles = articles;
    Ok(art)
}

/// Stage 2: entities, per-window co-occurrence clusters, narrative chains.
pub fn narratives(prev: Artifact, cfg: &PipelineConfig) -> Result<Artifact> {
    cfg.validate()?;
    let mut art = advance(prev, Stage::Narratives, cfg);
    let entities = annotate_posts(&art.posts, &art.lists);
    let set = detect_narratives(&art.posts, &entities, &cfg.narratives)?;
    info!(
        "narratives: {} windows, {} clusters, {} narratives",
        set.windows.len(),
        set.clusters.len(),
        set.narratives.len()
    );
    art.narratives = Some(set);
    Ok(art)
}

/// Stage 3: duplicate clusters, account flags, feature vectors, fused labels.
pub fn classify(prev: Artifact, cfg: &PipelineConfig) -> Result<Artifact> {
    cfg.validate()?;
    let mut art = advance(prev, Stage::Classify, cfg);
    let coordination = cfg.coordination_params();
    let dups = find_duplicate_clusters(&art.posts, &coordination.lsh)?;
    let accounts: BTreeMap<String, AccountAssessment> = account_profiles(&art.posts)
        .into_iter()
        .map(|(id, p)| (id, account_flags(&p, &cfg.credibility.thresholds)))
        .collect();
    let lexicon = Lexicon::new(&art.lists.propaganda_lexicon);
    let scoring = cfg.scoring_params();
    let fingerprint = art.config_fingerprint.clone();

    let assessments = {
        let set = art.narrative_set()?;
        let ctx = FeatureContext::new(
            &art.posts,
            &art.lists,
            &lexicon,
            &art.articles,
            &dups,
            &accounts,
            &set.clusters,
            &coordination,
        );
        set.narratives
            .par_iter()
            .map(|n| {
                let (fv, ev) = narrative_features(n, &ctx);
                assess(&n.narrative_id, fv, ev, &scoring, &fingerprint)
            })
            .collect::<Result<Vec<_>>>()?
    };
    let flagged = assessments.iter().filter(|a| a.label.is_orchestrated()).count();
    info!(
        "classify: {} duplicate clusters, {flagged} of {} narratives labeled orchestrated",
        dups.len(),
        assessments.len()
    );
    art.notes.push(THRESHOLD_NOTE.to_string());
    art.duplicate_clusters = Some(dups);
    art.accounts = Some(accounts.into_values().collect());
    art.assessments = Some(assessments);
    Ok(art)
}

/// Stage 4: candidate actor groups among accounts in orchestrated narratives.
pub fn attribute(prev: Artifact, cfg: &PipelineConfig) -> Result<Artifact> {
    cfg.validate()?;
    let mut art = advance(prev, Stage::Attribute, cfg);
    let groups = {
        let set = art.narrative_set()?;
        let assessments = art.assessment_list()?;
        let dups = art.duplicate_list()?;
        let orchestrated: BTreeSet<&str> = assessments
            .iter()
            .filter(|a| a.fused >= LABEL_THRESHOLD)
            .map(|a| a.narrative_id.as_str())
            .collect();
        let by_id: HashMap<&str, &Post> = art.posts.iter().map(|p| (p.post_id.as_str(), p)).collect();
        let participants: BTreeSet<&str> = set
            .narratives
            .iter()
            .filter(|n| orchestrated.contains(n.narrative_id.as_str()))
            .flat_map(|n| {
                n.post_ids
                    .iter()
                    .filter_map(|id| by_id.get(id.as_str()))
                    .map(|p| p.author_id.as_str())
            })
            .collect();
        let mut posts_of: BTreeMap<&str, Vec<&Post>> = BTreeMap::new();
        for p in &art.posts {
            if participants.contains(p.author_id.as_str()) {
                posts_of.entry(p.author_id.as_str()).or_default().push(p);
            }
        }
        let lexicon = Lexicon::new(&art.lists.propaganda_lexicon);
        let fps: Vec<_> = posts_of
            .par_iter()
            .map(|(account, posts)| {
                let hits: Vec<_> = posts.iter().map(|p| lexicon.detect(&p.post_id, &p.text)).collect();
                fingerprint(account, posts.iter().copied().zip(hits.iter().map(Vec::as_slice)))
            })
            .collect();
        group_actors(&fps, cfg.attribution.cosine_threshold, dups)
    };
    info!("attribute: {} candidate actor groups", groups.len());
    art.actor_groups = Some(ActorGroups {
        caveat: ACTOR_GROUP_CAVEAT.to_string(),
        cosine_threshold: cfg.attribution.cosine_threshold,
        groups,
    });
    Ok(art)
}

/// Stage 5: impact metrics, and the final report (posts and articles
/// dropped, only flagged accounts kept).
pub fn impact(prev: Artifact, cfg: &PipelineConfig) -> Result<Artifact> {
    cfg.validate()?;
    let mut art = advance(prev, Stage::Impact, cfg);
    let reports = {
        let set = art.narrative_set()?;
        let by_id: HashMap<&str, &Post> = art.posts.iter().map(|p| (p.post_id.as_str(), p)).collect();
        let clusters = set.cluster_index();
        set.narratives
            .par_iter()
            .map(|n| {
                let posts: Vec<&Post> = n
                    .post_ids
                    .iter()
                    .filter_map(|id| by_id.get(id.as_str()).copied())
                    .collect();
                impact_metrics(n, &posts, &clusters)
            })
            .collect()
    };
    art.impact = Some(ImpactSection {
        caveat: IMPACT_CAVEAT.to_string(),
        reports,
    });
    art.posts.clear();
    art.articles.clear();
    if let Some(accounts) = &mut art.accounts {
        accounts.retain(|a| a.inauthentic);
    }
    Ok(art)
}

pub fn run_stage(stage: Stage, prev: Option<Artifact>, cfg: &PipelineConfig) -> Result<Artifact> {
    let need = || Error::stage(stage.name(), "missing input artifact");
    match stage {
        Stage::Ingest => ingest(cfg),
        Stage::Narratives => narratives(prev.ok_or_else(need)?, cfg),
        Stage::Classify => classify(prev.ok_or_else(need)?, cfg),
        Stage::Attribute => attribute(prev.ok_or_else(need)?, cfg),
        Stage::Impact => impact(prev.ok_or_else(need)?, cfg),
    }
}

/// Write `art` under `out_dir` with its stage's file name; narratives also
/// get a Graphviz export.
pub fn write_stage(art: &Artifact, out_dir: &Path) -> Result<PathBuf> {
    let path = out_dir.join(art.stage.file_name());
    art.write(&path)?;
    if art.stage == Stage::Narratives {
        let dot = out_dir.join("narratives.dot");
        std::fs::write(&dot, to_dot(art.narrative_set()?)).map_err(|e| Error::io(&dot, e))?;
    }
    Ok(path)
}

/// Stages 1 to 5, writing every artifact to `cfg.out_dir`. Returns the report.
pub fn run_all(cfg: &PipelineConfig) -> Result<Artifact> {
    let stages = [
        Stage::Ingest,
        Stage::Narratives,
        Stage::Classify,
        Stage::Attribute,
        Stage::Impact,
    ];
    let mut prev: Option<Artifact> = None;
    for stage in stages {
        let art = run_stage(stage, prev.take(), cfg)?;
        let path = write_stage(&art, &cfg.out_dir)?;
        info!("{stage}: wrote {}", path.display());
        prev = Some(art);
    }
    Ok(prev.expect("ran at least one stage"))
}

/// Run the whole pipeline in memory on already-unified posts.
pub fn analyze(
    posts: Vec<Post>,
    lists: SourceLists,
    articles: BTreeMap<String, String>,
    cfg: &PipelineConfig,
) -> Result<Artifact> {
    let mut posts = posts;
    posts.sort_by(|a, b| (a.created_at, &a.post_id).cmp(&(b.created_at, &b.post_id)));
    check_unique_ids(&posts).map_err(|e| Error::stage("ingest", e))?;
    let mut art = new_artifact(Stage::Ingest, cfg, lists);
    art.posts = posts;
    art.articles = articles;
    let art = narratives(art, cfg)?;
    let art = classify(art, cfg)?;
    let art = attribute(art, cfg)?;
    impact(art, cfg)
}
