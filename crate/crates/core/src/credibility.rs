//! Intent-to-deceive signals: low-credibility domain shares and
//! transparent inauthentic-account rules.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::LazyLock;

use regex::Regex;
use serde::{Deserialize, Serialize};

use crate::ingest::{registrable_domain, Post, SourceLists};

const DAY_SECS: f64 = 86_400.0;

static HANDLE_PATTERN: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"^[A-Za-z_]+[0-9]{6,}$").expect("valid regex"));

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AccountThresholds {
    /// Account younger than this (days) at its first observed post.
    pub young_days: f64,
    /// `following / max(followers, 1)` above this.
    pub follower_ratio: f64,
    /// More than this many posts inside any 3600 s window.
    pub burst_per_hour: usize,
    /// Flags needed to call an account inauthentic.
    pub min_flags: usize,
}

impl Default for AccountThresholds {
    fn default() -> Self {
        Self {
            young_days: 30.0,
            follower_ratio: 20.0,
            burst_per_hour: 20,
            min_flags: 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AccountFlag {
    YoungAccount,
    FollowerSkew,
    HandlePattern,
    BurstPoster,
}

/// What the corpus reveals about one account.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AccountProfile {
    pub account_id: String,
    pub created_at: Option<i64>,
    /// From the latest observed post.
    pub followers: u64,
    pub following: u64,
    /// Sorted.
    pub post_times: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AccountAssessment {
    pub account_id: String,
    pub flags: BTreeSet<AccountFlag>,
    pub inauthentic: bool,
}

/// One profile per author, keyed by account id.
pub fn account_profiles<'a>(posts: impl IntoIterator<Item = &'a Post>) -> BTreeMap<String, AccountProfile> {
    let mut latest: BTreeMap<&str, (i64, &str)> = BTreeMap::new();
    let mut out: BTreeMap<String, AccountProfile> = BTreeMap::new();
    for p in posts {
        let prof = out.entry(p.author_id.clone()).or_insert_with(|| AccountProfile {
            account_id: p.author_id.clone(),
            created_at: None,
            followers: 0,
            following: 0,
            post_times: Vec::new(),
        });
        prof.post_times.push(p.created_at);
        if prof.created_at.is_none() {
            prof.created_at = p.author_created_at;
        }
        let key = (p.created_at, p.post_id.as_str());
        let newer = latest.get(p.author_id.as_str()).is_none_or(|&k| key > k);
        if newer {
            latest.insert(p.author_id.as_str(), key);
            prof.followers = p.author_followers;
            prof.following = p.author_following;
            if p.author_created_at.is_some() {
                prof.created_at = p.author_created_at;
            }
        }
    }
    for prof in out.values_mut() {
        prof.post_times.sort_unstable();
    }
    out
}

/// Largest number of posts falling in any half-open window `[t, t + 3600)`.
pub fn max_posts_per_hour(sorted_times: &[i64]) -> usize {
    let mut best = 0;
    let mut lo = 0;
    for hi in 0..sorted_times.len() {
        while sorted_times[hi] - sorted_times[lo] >= 3600 {
            lo += 1;
        }
        best = best.max(hi - lo + 1);
    }
    best
}

pub fn account_flags(profile: &AccountProfile, t: &AccountThresholds) -> AccountAssessment {
    let mut flags = BTreeSet::new();
    if let (Some(created), Some(&first)) = (profile.created_at, profile.post_times.first()) {
        if ((first - created) as f64) < t.young_days * DAY_SECS {
            flags.insert(AccountFlag::YoungAccount);
        }
    }
    if profile.following as f64 / profile.followers.max(1) as f64 > t.follower_ratio {
        flags.insert(AccountFlag::FollowerSkew);
    }
    if HANDLE_PATTERN.is_match(&profile.account_id) {
        flags.insert(AccountFlag::HandlePattern);
    }
    if max_posts_per_hour(&profile.post_times) > t.burst_per_hour {
        flags.insert(AccountFlag::BurstPoster);
    }
    AccountAssessment {
        account_id: profile.account_id.clone(),
        inauthentic: flags.len() >= t.min_flags,
        flags,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DomainCredibility {
    pub lowcred_fraction: f64,
    /// Posts carrying at least one URL.
    pub url_posts: usize,
    pub listed_posts: usize,
}

/// Fraction of URL-bearing posts sharing at least one listed registrable domain.
pub fn domain_credibility<'a>(posts: impl IntoIterator<Item = &'a Post>, lists: &SourceLists) -> DomainCredibility {
    let (mut url_posts, mut listed_posts) = (0usize, 0usize);
    for p in posts {
        if p.urls.is_empty() {
            continue;
        }
        url_posts += 1;
        if p.urls.iter().any(|u| lists.is_low_credibility(&registrable_domain(u))) {
            listed_posts += 1;
        }
    }
    let lowcred_fraction = if url_posts == 0 {
        0.0
    } else {
        listed_posts as f64 / url_posts as f64
    };
    DomainCredibility {
        lowcred_fraction,
        url_posts,
        listed_posts,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DeceptionWeights {
    pub lowcred: f64,
    pub inauthentic: f64,
}

impl Default for DeceptionWeights {
    fn default() -> Self {
        Self {
            lowcred: 0.5,
            inauthentic: 0.5,
        }
    }
}

pub const NO_URL_ANNOTATION: &str = "no_url";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeceptionScore {
    pub narrative_id: String,
    pub lowcred_fraction: f64,
    pub inauthentic_fraction: f64,
    pub score: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub annotations: Vec<String>,
}

/// Convex combination; weights are normalized by their sum.
pub fn deception_score(
    narrative_id: &str,
    lowcred_fraction: f64,
    inauthentic_fraction: f64,
    w: &DeceptionWeights,
) -> DeceptionScore {
    let total = w.lowcred + w.inauthentic;
    let score = if total <= 0.0 {
        0.0
    } else {
        (w.lowcred * lowcred_fraction + w.inauthentic * inauthentic_fraction) / total
    };
    DeceptionScore {
        narrative_id: narrative_id.to_string(),
        lowcred_fraction,
        inauthentic_fraction,
        score: score.clamp(0.0, 1.0),
        annotations: Vec::new(),
    }
}
