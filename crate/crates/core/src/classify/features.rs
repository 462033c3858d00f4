//! Narrative feature extraction over the outputs of the earlier stages.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::agenda::{Lexicon, TechniqueHit};
use crate::coordination::score::{cluster_membership, coordinated_posts, dup_fraction};
use crate::coordination::synchrony::PairSynchrony;
use crate::coordination::{synchrony, CoordinationParams, DuplicateCluster};
use crate::credibility::{domain_credibility, AccountAssessment, AccountFlag, NO_URL_ANNOTATION};
use crate::ingest::{Post, SourceLists};
use crate::narrative::{EventCluster, Narrative};
use crate::text::token_count;

const SAMPLE_HITS: usize = 10;

/// Pointers back to the evidence behind a narrative's scores.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Evidence {
    /// Indices into the run's duplicate-cluster list.
    pub duplicate_clusters: Vec<usize>,
    pub technique_counts: BTreeMap<String, usize>,
    /// First hits in document order, capped.
    pub sample_hits: Vec<TechniqueHit>,
    pub flagged_accounts: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub top_sync_pair: Option<PairSynchrony>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub annotations: Vec<String>,
}

/// Shared lookups for feature extraction; built once per run.
pub struct FeatureContext<'a> {
    posts: HashMap<&'a str, &'a Post>,
    lists: &'a SourceLists,
    coordinated: HashSet<&'a str>,
    dup_membership: HashMap<&'a str, usize>,
    accounts: &'a BTreeMap<String, AccountAssessment>,
    clusters: HashMap<&'a str, &'a EventCluster>,
    post_hits: HashMap<&'a str, (usize, Vec<TechniqueHit>)>,
    article_hits: HashMap<&'a str, (usize, Vec<TechniqueHit>)>,
    n_techniques: usize,
    params: &'a CoordinationParams,
}

impl<'a> FeatureContext<'a> {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        posts: &'a [Post],
        lists: &'a SourceLists,
        lexicon: &Lexicon,
        articles: &'a BTreeMap<String, String>,
        dup_clusters: &'a [DuplicateCluster],
        accounts: &'a BTreeMap<String, AccountAssessment>,
        clusters: &'a [EventCluster],
        params: &'a CoordinationParams,
    ) -> Self {
        let post_hits = posts
            .par_iter()
            .map(|p| {
                (
                    p.post_id.as_str(),
                    (token_count(&p.text), lexicon.detect(&p.post_id, &p.text)),
                )
            })
            .collect();
        let article_hits = articles
            .par_iter()
            .map(|(url, text)| (url.as_str(), (token_count(text), lexicon.detect(url, text))))
            .collect();
        Self {
            posts: posts.iter().map(|p| (p.post_id.as_str(), p)).collect(),
            lists,
            coordinated: coordinated_posts(dup_clusters, params.min_dup_accounts),
            dup_membership: cluster_membership(dup_clusters),
            accounts,
            clusters: clusters.iter().map(|c| (c.cluster_id.as_str(), c)).collect(),
            post_hits,
            article_hits,
            n_techniques: lexicon.technique_count(),
            params,
        }
    }

    pub fn post(&self, id: &str) -> Option<&'a Post> {
        self.posts.get(id).copied()
    }

    /// Technique hits on one post.
    pub fn hits_for(&self, post_id: &str) -> &[TechniqueHit] {
        self.post_hits.get(post_id).map(|(_, h)| h.as_slice()).unwrap_or(&[])
    }
}

fn fraction(n: usize, d: usize) -> f64 {
    if d == 0 {
        0.0
    } else {
        n as f64 / d as f64
    }
}

pub fn narrative_features(n: &Narrative, ctx: &FeatureContext<'_>) -> (BTreeMap<String, f64>, Evidence) {
    let posts: Vec<&Post> = n.post_ids.iter().filter_map(|id| ctx.post(id)).collect();
    let mut fv: BTreeMap<String, f64> = BTreeMap::new();
    let mut ev = Evidence::default();
    let mut put = |k: &str, v: f64| {
        fv.insert(k.to_string(), v);
    };

    // user
    let authors: BTreeSet<&str> = posts.iter().map(|p| p.author_id.as_str()).collect();
    let assessed: Vec<&AccountAssessment> = authors.iter().filter_map(|a| ctx.accounts.get(*a)).collect();
    let flagged = |f: AccountFlag| assessed.iter().filter(|a| a.flags.contains(&f)).count();
    let inauthentic: Vec<&str> = assessed
        .iter()
        .filter(|a| a.inauthentic)
        .map(|a| a.account_id.as_str())
        .collect();
    put("accounts", authors.len() as f64);
    put("inauthentic_fraction", fraction(inauthentic.len(), authors.len()));
    put(
        "young_account_fraction",
        fraction(flagged(AccountFlag::YoungAccount), authors.len()),
    );
    put(
        "follower_skew_fraction",
        fraction(flagged(AccountFlag::FollowerSkew), authors.len()),
    );
    put(
        "handle_pattern_fraction",
        fraction(flagged(AccountFlag::HandlePattern), authors.len()),
    );
    put(
        "burst_poster_fraction",
        fraction(flagged(AccountFlag::BurstPoster), authors.len()),
    );
    ev.flagged_accounts = inauthentic.iter().map(|s| s.to_string()).collect();

    // metadata
    let dc = domain_credibility(posts.iter().copied(), ctx.lists);
    put("url_posts", dc.url_posts as f64);
    put("lowcred_fraction", dc.lowcred_fraction);
    if dc.url_posts == 0 {
        ev.annotations.push(NO_URL_ANNOTATION.to_string());
    }

    // content: posts plus fetched articles behind the narrative's URLs
    let mut tokens = 0usize;
    let mut hits: Vec<&TechniqueHit> = Vec::new();
    for p in &posts {
        if let Some((t, h)) = ctx.post_hits.get(p.post_id.as_str()) {
            tokens += t;
            hits.extend(h);
        }
    }
    let urls: BTreeSet<&str> = posts.iter().flat_map(|p| p.urls.iter().map(String::as_str)).collect();
    for u in urls {
        if let Some((t, h)) = ctx.article_hits.get(u) {
            tokens += t;
            hits.extend(h);
        }
    }
    let owned: Vec<TechniqueHit> = hits.iter().map(|h| (*h).clone()).collect();
    let agenda = crate::agenda::fuse_agenda(&n.narrative_id, &owned, tokens, ctx.n_techniques, 0.0);
    put("tokens", tokens as f64);
    put("technique_hits", owned.len() as f64);
    put("hits_per_100_tokens", agenda.hits_per_100_tokens);
    put("technique_diversity", agenda.technique_diversity);
    ev.technique_counts = super::technique_counts(&owned);
    ev.sample_hits = owned.into_iter().take(SAMPLE_HITS).collect();

    // temporal
    let tmin = posts.iter().map(|p| p.created_at).min().unwrap_or(0);
    let tmax = posts.iter().map(|p| p.created_at).max().unwrap_or(0);
    let max_z = n
        .clusters
        .iter()
        .filter_map(|c| ctx.clusters.get(c.as_str()))
        .map(|c| c.burst_z)
        .fold(0.0f64, f64::max);
    let sync = synchrony(&posts, ctx.params.sync_window_secs, ctx.params.sync_min_posts);
    put("windows", n.windows.len() as f64);
    put("duration_secs", (tmax - tmin) as f64);
    put("max_burst_z", max_z);
    put("synchrony", sync.max);
    ev.top_sync_pair = sync.top_pair().cloned();

    // structural
    put("posts", posts.len() as f64);
    put("entities", n.entity_signature.len() as f64);
    put("dup_fraction", dup_fraction(&n.post_ids, &ctx.coordinated));
    put("platform_span", n.platforms.len() as f64);
    let dups: BTreeSet<usize> = n
        .post_ids
        .iter()
        .filter_map(|id| ctx.dup_membership.get(id.as_str()).copied())
        .collect();
    ev.duplicate_clusters = dups.into_iter().collect();

    debug_assert!(super::FEATURE_KEYS.iter().all(|k| fv.contains_key(*k)));
    debug_assert_eq!(fv.len(), super::FEATURE_KEYS.len());
    (fv, ev)
}
