//! Labeled synthetic corpora: organic accounts posting around shared
//! topics at diurnal Poisson times, plus planted campaigns whose accounts
//! post lightly edited templates in bursts at shift starts.
//!
//! Generation is single-threaded and driven by one seeded ChaCha8 stream,
//! so a config always produces byte-identical files. Ground truth is written
//! to its own file and never embedded in post records.

pub mod text;

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};

use chrono::{DateTime, SecondsFormat};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution, LogNormal, Normal};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::config::{ListPaths, PipelineConfig, PlatformInput};
use crate::error::{Error, Result};
use crate::ingest::{Engagement, Post, SourceLists};

use text::*;

pub const ORGANIC: &str = "organic";
pub const PLATFORMS: &[&str] = &["alpha", "beta", "gamma"];
const DAY: f64 = 86_400.0;
const SHORTENER_HOST: &str = "sho.rt";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OrganicParams {
    /// Mean posts per account-hour; each account draws its own rate in
    /// `[0.5, 1.5]` times this.
    pub rate_per_hour: f64,
    /// Relative swing of the daily cycle, in `[0, 1)`.
    pub diurnal_amplitude: f64,
    /// UTC hour of peak activity.
    pub peak_hour: f64,
    pub url_probability: f64,
    /// Share of organic links that go to low-credibility outlets.
    pub stray_lowcred_probability: f64,
    pub cue_probability: f64,
    pub mention_probability: f64,
    pub tracking_param_probability: f64,
    /// Organic accounts that are younger than a month.
    pub young_fraction: f64,
}

impl Default for OrganicParams {
    fn default() -> Self {
        Self {
            rate_per_hour: 3.0,
            diurnal_amplitude: 0.5,
            peak_hour: 15.0,
            url_probability: 0.3,
            stray_lowcred_probability: 0.03,
            cue_probability: 0.15,
            mention_probability: 0.1,
            tracking_param_probability: 0.1,
            young_fraction: 0.05,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CampaignParams {
    pub n_campaigns: usize,
    pub shifts_per_campaign: usize,
    /// Shift start hours applied to every campaign; drawn per campaign when empty.
    pub shift_starts_hours: Vec<f64>,
    pub posts_per_shift: usize,
    pub template_words: usize,
    pub templates_per_campaign: usize,
    pub cues_per_template: usize,
    /// Per-word probability of a boundary edit.
    pub edit_rate: f64,
    pub sync_jitter_seconds: f64,
    /// Probability that each campaign outlet is on the low-credibility list.
    pub lowcred_share: f64,
    /// Probability a campaign post also carries an organic topic hashtag.
    pub organic_tag_rate: f64,
    pub url_probability: f64,
    pub young_fraction: f64,
    pub handle_pattern_fraction: f64,
}

impl Default for CampaignParams {
    fn default() -> Self {
        Self {
            n_campaigns: 10,
            shifts_per_campaign: 6,
            shift_starts_hours: Vec::new(),
            posts_per_shift: 6,
            template_words: 30,
            templates_per_campaign: 1,
            cues_per_template: 4,
            edit_rate: 0.1,
            sync_jitter_seconds: 300.0,
            lowcred_share: 0.6,
            organic_tag_rate: 0.05,
            url_probability: 0.9,
            young_fraction: 0.85,
            handle_pattern_fraction: 0.6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    pub seed: u64,
    /// Unix seconds of the first instant; defaults to a UTC midnight.
    pub start: i64,
    pub duration_hours: f64,
    pub n_organic_accounts: usize,
    pub n_campaign_accounts: usize,
    pub n_platforms: usize,
    pub organic: OrganicParams,
    pub campaign: CampaignParams,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            start: 1_700_006_400,
            duration_hours: 72.0,
            n_organic_accounts: 200,
            n_campaign_accounts: 80,
            n_platforms: 3,
            organic: OrganicParams::default(),
            campaign: CampaignParams::default(),
        }
    }
}

fn check(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::BadConfig(msg.to_string()))
    }
}

fn is_prob(p: f64) -> bool {
    (0.0..=1.0).contains(&p)
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        let o = &self.organic;
        let c = &self.campaign;
        check(self.start > 0, "start must be positive")?;
        check(self.duration_hours > 0.0, "duration_hours must be positive")?;
        check(self.n_organic_accounts > 0, "n_organic_accounts must be positive")?;
        check(
            (1..=PLATFORMS.len()).contains(&self.n_platforms),
            "n_platforms must be between 1 and 3",
        )?;
        check(o.rate_per_hour > 0.0, "organic.rate_per_hour must be positive")?;
        check(
            (0.0..1.0).contains(&o.diurnal_amplitude),
            "organic.diurnal_amplitude must be in [0, 1)",
        )?;
        for (p, name) in [
            (o.url_probability, "organic.url_probability"),
            (o.stray_lowcred_probability, "organic.stray_lowcred_probability"),
            (o.cue_probability, "organic.cue_probability"),
            (o.mention_probability, "organic.mention_probability"),
            (o.tracking_param_probability, "organic.tracking_param_probability"),
            (o.young_fraction, "organic.young_fraction"),
            (c.edit_rate, "campaign.edit_rate"),
            (c.lowcred_share, "campaign.lowcred_share"),
            (c.organic_tag_rate, "campaign.organic_tag_rate"),
            (c.url_probability, "campaign.url_probability"),
            (c.young_fraction, "campaign.young_fraction"),
            (c.handle_pattern_fraction, "campaign.handle_pattern_fraction"),
        ] {
            check(is_prob(p), &format!("{name} must be a probability"))?;
        }
        if self.n_campaign_accounts == 0 {
            return Ok(());
        }
        check(
            c.n_campaigns > 0,
            "campaign.n_campaigns must be positive when campaign accounts exist",
        )?;
        check(
            c.n_campaigns <= self.n_campaign_accounts,
            "campaign.n_campaigns cannot exceed n_campaign_accounts",
        )?;
        check(c.posts_per_shift > 0, "campaign.posts_per_shift must be positive")?;
        check(
            c.templates_per_campaign > 0,
            "campaign.templates_per_campaign must be positive",
        )?;
        check(c.template_words >= 10, "campaign.template_words must be at least 10")?;
        check(
            c.sync_jitter_seconds >= 0.0 && 3.0 * c.sync_jitter_seconds <= 3600.0,
            "campaign.sync_jitter_seconds must be in [0, 1200]",
        )?;
        let margin = 1.0;
        if c.shift_starts_hours.is_empty() {
            check(
                c.shifts_per_campaign > 0,
                "campaign.shifts_per_campaign must be positive",
            )?;
            check(
                self.duration_hours / c.shifts_per_campaign as f64 >= 2.0 * margin + 1.0,
                "duration too short for the requested shifts",
            )?;
        } else {
            for &h in &c.shift_starts_hours {
                check(
                    h >= margin && h <= self.duration_hours - margin,
                    "campaign.shift_starts_hours must lie at least one hour inside the scenario",
                )?;
            }
        }
        Ok(())
    }

    pub fn end(&self) -> i64 {
        self.start + (self.duration_hours * 3600.0) as i64
    }
}

/// Diurnal intensity multiplier at unix time `t`.
pub fn diurnal_factor(t: f64, amplitude: f64, peak_hour: f64) -> f64 {
    1.0 + amplitude * (2.0 * PI * (t / DAY - peak_hour / 24.0)).cos()
}

/// Integrated intensity `∫_0^t rate(s) ds` for a per-hour base rate.
pub fn cumulative_intensity(t: f64, rate_per_hour: f64, amplitude: f64, peak_hour: f64) -> f64 {
    let r = rate_per_hour / 3600.0;
    r * (t + amplitude * DAY / (2.0 * PI) * (2.0 * PI * (t / DAY - peak_hour / 24.0)).sin())
}

/// Arrival times in `[t0, t1)` of an inhomogeneous Poisson process with a
/// daily cosine cycle, by thinning a homogeneous process at the peak rate.
pub fn diurnal_arrivals<R: Rng>(
    rng: &mut R,
    rate_per_hour: f64,
    amplitude: f64,
    peak_hour: f64,
    t0: f64,
    t1: f64,
) -> Vec<f64> {
    let peak = rate_per_hour * (1.0 + amplitude) / 3600.0;
    let mut out = Vec::new();
    let mut t = t0;
    loop {
        let u: f64 = rng.random();
        t += -(1.0 - u).ln() / peak;
        if t >= t1 {
            return out;
        }
        if rng.random::<f64>() * (1.0 + amplitude) < diurnal_factor(t, amplitude, peak_hour) {
            out.push(t);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthAccount {
    pub handle: String,
    pub platform: String,
    pub created_at: i64,
    pub followers: u64,
    pub following: u64,
    /// `organic` or a campaign id.
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthPost {
    pub post_id: String,
    pub account: usize,
    pub created_at: i64,
    pub text: String,
    /// Links carried outside the text (platforms that have such a field).
    pub links: Vec<String>,
    pub likes: u64,
    pub shares: u64,
    pub replies: u64,
    /// Campaign index, `None` for organic.
    pub campaign: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignTruth {
    pub campaign_id: String,
    pub accounts: Vec<String>,
    pub shift_starts_hours: Vec<f64>,
    pub hashtags: Vec<String>,
    pub domains: Vec<String>,
    pub listed_domains: Vec<String>,
    pub templates: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroundTruth {
    pub schema_version: u32,
    pub seed: u64,
    /// post id -> `organic` or campaign id.
    pub posts: BTreeMap<String, String>,
    /// account id -> `organic` or campaign id.
    pub accounts: BTreeMap<String, String>,
    pub campaigns: Vec<CampaignTruth>,
}

impl GroundTruth {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    pub fn campaign_of(&self, post_id: &str) -> Option<&str> {
        self.posts.get(post_id).map(String::as_str).filter(|l| *l != ORGANIC)
    }

    /// Campaign holding at least `min_share` of `post_ids`, if any.
    pub fn majority_campaign<S: AsRef<str>>(&self, post_ids: &[S], min_share: f64) -> Option<String> {
        if post_ids.is_empty() {
            return None;
        }
        let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
        for p in post_ids {
            if let Some(c) = self.campaign_of(p.as_ref()) {
                *counts.entry(c).or_insert(0) += 1;
            }
        }
        let (best, n) = counts.into_iter().max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(a.0)))?;
        (n as f64 / post_ids.len() as f64 >= min_share).then(|| best.to_string())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub config: ScenarioConfig,
    pub accounts: Vec<SynthAccount>,
    /// Sorted by `(created_at, post_id)`.
    pub posts: Vec<SynthPost>,
    pub campaigns: Vec<CampaignTruth>,
    pub low_credibility: Vec<String>,
    pub entity_dictionary: BTreeMap<String, String>,
    pub articles: BTreeMap<String, String>,
    pub shorteners: BTreeMap<String, String>,
}

/// Files written by [`Scenario::write`].
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioFiles {
    pub dir: PathBuf,
    pub platforms: Vec<PlatformInput>,
    pub ground_truth: PathBuf,
    pub articles: PathBuf,
    pub shorteners: PathBuf,
    pub lists: ListPaths,
    pub pipeline_config: PathBuf,
}

fn timestamp_rfc3339(t: i64) -> String {
    DateTime::from_timestamp(t, 0)
        .expect("timestamp in range")
        .to_rfc3339_opts(SecondsFormat::Secs, true)
}

fn slug<R: Rng>(rng: &mut R) -> String {
    format!("{}-{}-{}", filler(rng), filler(rng), rng.random_range(100..1000))
}

struct Gen<'a> {
    cfg: &'a ScenarioConfig,
    rng: ChaCha8Rng,
    handles: BTreeSet<String>,
}

impl Gen<'_> {
    fn unique_handle(&mut self, base: String) -> String {
        let mut h = base.clone();
        let mut k = 2;
        while !self.handles.insert(h.clone()) {
            h = format!("{base}_{k}");
            k += 1;
        }
        h
    }

    fn organic_handle(&mut self) -> String {
        let first = *FIRST_NAMES.choose(&mut self.rng).expect("nonempty");
        let last = *LAST_WORDS.choose(&mut self.rng).expect("nonempty");
        let base = match self.rng.random_range(0..3) {
            0 => format!("{first}_{last}"),
            1 => format!("{first}{last}{}", self.rng.random_range(1..100)),
            _ => format!("{last}.{first}"),
        };
        self.unique_handle(base)
    }

    fn campaign_handle(&mut self) -> String {
        let first = *FIRST_NAMES.choose(&mut self.rng).expect("nonempty");
        let base = if self.rng.random_bool(self.cfg.campaign.handle_pattern_fraction) {
            format!("{first}{}", self.rng.random_range(10_000_000u64..100_000_000))
        } else {
            let last = *LAST_WORDS.choose(&mut self.rng).expect("nonempty");
            format!("{first}_{last}_{}", self.rng.random_range(1..100))
        };
        self.unique_handle(base)
    }
}

pub fn generate(cfg: &ScenarioConfig) -> Result<Scenario> {
    cfg.validate()?;
    let mut g = Gen {
        cfg,
        rng: ChaCha8Rng::seed_from_u64(cfg.seed),
        handles: BTreeSet::new(),
    };
    let start = cfg.start as f64;
    let end = cfg.end() as f64;
    let lexicon = SourceLists::starter_lexicon();
    let cues: Vec<&str> = lexicon.values().flatten().map(String::as_str).collect();
    let o = &cfg.organic;
    let c = &cfg.campaign;

    // reference lists
    let mut entity_dictionary = BTreeMap::new();
    for (_, term, aliases) in TOPICS {
        entity_dictionary.insert(term.to_string(), term.to_string());
        for a in *aliases {
            entity_dictionary.insert(a.to_string(), term.to_string());
        }
    }

    // organic URL pool and articles
    let mut articles = BTreeMap::new();
    let mut organic_urls = Vec::new();
    for d in MAINSTREAM_DOMAINS {
        for _ in 0..25 {
            let url = format!("https://{d}/news/{}", slug(&mut g.rng));
            let body = article_text(&mut g.rng, &cues, 150, 0.02);
            articles.insert(url.clone(), body);
            organic_urls.push(url);
        }
    }
    let stray_urls: Vec<String> = STRAY_LOWCRED_DOMAINS
        .iter()
        .flat_map(|d| (0..5).map(move |i| format!("https://{d}/p/{i}")))
        .collect();

    // accounts
    let mut accounts = Vec::new();
    let lognormal_followers = LogNormal::new(200f64.ln(), 1.2).expect("valid");
    for i in 0..cfg.n_organic_accounts {
        let handle = g.organic_handle();
        let age_days = if g.rng.random_bool(o.young_fraction) {
            g.rng.random_range(2.0..28.0)
        } else {
            g.rng.random_range(90.0..4000.0)
        };
        let followers = lognormal_followers.sample(&mut g.rng).max(1.0) as u64;
        let following = (followers as f64 * g.rng.random_range(0.1..4.0)).round() as u64;
        accounts.push(SynthAccount {
            handle,
            platform: PLATFORMS[i % cfg.n_platforms].to_string(),
            created_at: (start - age_days * DAY) as i64,
            followers,
            following,
            label: ORGANIC.to_string(),
        });
    }
    let n_campaigns = if cfg.n_campaign_accounts == 0 { 0 } else { c.n_campaigns };
    let campaign_ids: Vec<String> = (0..n_campaigns).map(|k| format!("camp-{k:02}")).collect();
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); n_campaigns];
    for j in 0..cfg.n_campaign_accounts {
        let k = j % n_campaigns;
        let handle = g.campaign_handle();
        let age_days = if g.rng.random_bool(c.young_fraction) {
            g.rng.random_range(1.0..25.0)
        } else {
            g.rng.random_range(60.0..400.0)
        };
        members[k].push(accounts.len());
        accounts.push(SynthAccount {
            handle,
            platform: PLATFORMS[j % cfg.n_platforms].to_string(),
            created_at: (start - age_days * DAY) as i64,
            followers: g.rng.random_range(3..40),
            following: g.rng.random_range(900..4000),
            label: campaign_ids[k].clone(),
        });
    }

    // organic posts
    let mut posts: Vec<SynthPost> = Vec::new();
    let topic_weights = [0.6, 0.3, 0.1];
    for a in 0..cfg.n_organic_accounts {
        let rate = o.rate_per_hour * g.rng.random_range(0.5..1.5);
        let mut topics: Vec<usize> = Vec::new();
        while topics.len() < 3 {
            let t = g.rng.random_range(0..TOPICS.len());
            if !topics.contains(&t) {
                topics.push(t);
            }
        }
        let times = diurnal_arrivals(&mut g.rng, rate, o.diurnal_amplitude, o.peak_hour, start, end);
        for t in times {
            let r: f64 = g.rng.random();
            let topic = if r < topic_weights[0] {
                topics[0]
            } else if r < topic_weights[0] + topic_weights[1] {
                topics[1]
            } else {
                topics[2]
            };
            let (tags, term, aliases) = TOPICS[topic];
            let n_words = g.rng.random_range(8..=20);
            let mut words = filler_words(&mut g.rng, n_words);
            let mut extras: Vec<String> = Vec::new();
            if g.rng.random_bool(0.85) {
                extras.push(tags[0].to_string());
            }
            if g.rng.random_bool(0.45) {
                extras.push(tags[1].to_string());
            }
            if g.rng.random_bool(0.35) {
                let name = if g.rng.random_bool(0.5) {
                    term
                } else {
                    *aliases.choose(&mut g.rng).expect("nonempty")
                };
                extras.push(name.to_string());
            }
            if g.rng.random_bool(o.cue_probability) {
                let cue = *cues.choose(&mut g.rng).expect("nonempty");
                extras.push(realize_cue(&mut g.rng, cue));
            }
            if g.rng.random_bool(o.mention_probability) {
                let other = g.rng.random_range(0..cfg.n_organic_accounts);
                extras.push(format!("@{}", accounts[other].handle));
            }
            insert_interior(&mut g.rng, &mut words, &extras, 0);
            let mut links = Vec::new();
            if g.rng.random_bool(o.url_probability) {
                let mut url = if g.rng.random_bool(o.stray_lowcred_probability) {
                    stray_urls.choose(&mut g.rng).expect("nonempty").clone()
                } else {
                    organic_urls.choose(&mut g.rng).expect("nonempty").clone()
                };
                if g.rng.random_bool(o.tracking_param_probability) {
                    url.push_str(if g.rng.random_bool(0.5) {
                        "?utm_source=share&utm_medium=social"
                    } else {
                        "?ref_src=feed"
                    });
                }
                words.push(url.clone());
                links.push(url);
            }
            let likes = LogNormal::new(1.0, 1.2).expect("valid").sample(&mut g.rng) as u64;
            posts.push(SynthPost {
                post_id: String::new(),
                account: a,
                created_at: t.floor() as i64,
                text: words.join(" "),
                links,
                likes,
                shares: g.rng.random_range(0..=likes / 3 + 1),
                replies: g.rng.random_range(0..3),
                campaign: None,
            });
        }
    }

    // campaigns
    let mut campaigns = Vec::new();
    let mut shorteners = BTreeMap::new();
    let mut low_credibility: Vec<String> = STRAY_LOWCRED_DOMAINS.iter().map(|d| d.to_string()).collect();
    let jitter = Normal::new(0.0, c.sync_jitter_seconds.max(f64::MIN_POSITIVE)).expect("valid");
    for k in 0..n_campaigns {
        let hashtags = vec![campaign_hashtag(2 * k), campaign_hashtag(2 * k + 1)];
        let domains = vec![campaign_domain(2 * k), campaign_domain(2 * k + 1)];
        let listed: Vec<String> = domains
            .iter()
            .filter(|_| g.rng.random_bool(c.lowcred_share))
            .cloned()
            .collect();
        low_credibility.extend(listed.iter().cloned());

        let templates: Vec<String> = (0..c.templates_per_campaign)
            .map(|_| {
                let mut items: Vec<String> = (0..c.cues_per_template)
                    .map(|_| {
                        let cue = *cues.choose(&mut g.rng).expect("nonempty");
                        realize_cue(&mut g.rng, cue)
                    })
                    .collect();
                items.extend(hashtags.iter().cloned());
                let used: usize = items.iter().map(|s| s.split_whitespace().count()).sum();
                let mut words = filler_words(&mut g.rng, c.template_words.saturating_sub(used).max(6));
                insert_interior(&mut g.rng, &mut words, &items, 3);
                words.join(" ")
            })
            .collect();

        let shift_hours: Vec<f64> = if c.shift_starts_hours.is_empty() {
            let slot = cfg.duration_hours / c.shifts_per_campaign as f64;
            (0..c.shifts_per_campaign)
                .map(|s| {
                    let lo = (s as f64 * slot + 1.0).ceil();
                    let hi = ((s + 1) as f64 * slot - 1.0).floor();
                    if hi > lo {
                        g.rng.random_range(lo as i64..=hi as i64) as f64
                    } else {
                        lo
                    }
                })
                .collect()
        } else {
            c.shift_starts_hours.clone()
        };

        for (s, &h) in shift_hours.iter().enumerate() {
            let shift_start = start + h * 3600.0;
            let domain = &domains[s % domains.len()];
            let url = format!(
                "https://{domain}/{}/{}",
                ["story", "exclusive", "breaking"][s % 3],
                slug(&mut g.rng)
            );
            articles.insert(url.clone(), article_text(&mut g.rng, &cues, 200, 0.12));
            let short = format!(
                "https://{SHORTENER_HOST}/{}",
                crate::hashing::short_id([url.as_str()]).get(..7).unwrap_or("x")
            );
            shorteners.insert(short.clone(), url.clone());

            for &a in &members[k] {
                for _ in 0..c.posts_per_shift {
                    let template = templates.choose(&mut g.rng).expect("nonempty");
                    let mut words: Vec<String> = template.split_whitespace().map(str::to_string).collect();
                    let edits = Binomial::new(words.len() as u64, c.edit_rate)
                        .expect("valid")
                        .sample(&mut g.rng);
                    for _ in 0..edits {
                        boundary_edit(&mut g.rng, &mut words);
                    }
                    if g.rng.random_bool(c.organic_tag_rate) {
                        let (tags, _, _) = TOPICS[g.rng.random_range(0..TOPICS.len())];
                        words.push(tags[0].to_string());
                    }
                    let mut links = Vec::new();
                    if g.rng.random_bool(c.url_probability) {
                        let shown = if accounts[a].platform == "gamma" { &short } else { &url };
                        words.push(shown.clone());
                        links.push(shown.clone());
                    }
                    let dt = if c.sync_jitter_seconds > 0.0 {
                        jitter
                            .sample(&mut g.rng)
                            .clamp(-3.0 * c.sync_jitter_seconds, 3.0 * c.sync_jitter_seconds)
                    } else {
                        0.0
                    };
                    let t = (shift_start + dt).clamp(start, end - 1.0);
                    posts.push(SynthPost {
                        post_id: String::new(),
                        account: a,
                        created_at: t.floor() as i64,
                        text: words.join(" "),
                        links,
                        likes: g.rng.random_range(0..6),
                        shares: g.rng.random_range(0..4),
                        replies: 0,
                        campaign: Some(k),
                    });
                }
            }
        }

        campaigns.push(CampaignTruth {
            campaign_id: campaign_ids[k].clone(),
            accounts: members[k].iter().map(|&a| accounts[a].handle.clone()).collect(),
            shift_starts_hours: shift_hours,
            hashtags,
            domains,
            listed_domains: listed,
            templates,
        });
    }

    // ids follow time order
    posts.sort_by(|a, b| (a.created_at, &accounts[a.account].handle).cmp(&(b.created_at, &accounts[b.account].handle)));
    let mut seq = vec![0usize; PLATFORMS.len()];
    for p in &mut posts {
        let pi = PLATFORMS
            .iter()
            .position(|x| *x == accounts[p.account].platform)
            .expect("known platform");
        seq[pi] += 1;
        p.post_id = format!("{}-{:07}", &PLATFORMS[pi][..1], seq[pi]);
    }
    low_credibility.sort();
    low_credibility.dedup();

    Ok(Scenario {
        config: cfg.clone(),
        accounts,
        posts,
        campaigns,
        low_credibility,
        entity_dictionary,
        articles,
        shorteners,
    })
}

fn article_text<R: Rng>(rng: &mut R, cues: &[&str], words: usize, cue_rate: f64) -> String {
    let mut out: Vec<String> = Vec::with_capacity(words);
    while out.len() < words {
        if rng.random_bool(cue_rate) {
            let cue = *cues.choose(rng).expect("nonempty");
            out.push(realize_cue(rng, cue));
        } else {
            out.push(filler(rng).to_string());
        }
    }
    out.join(" ")
}

impl Scenario {
    pub fn ground_truth(&self) -> GroundTruth {
        GroundTruth {
            schema_version: 1,
            seed: self.config.seed,
            posts: self
                .posts
                .iter()
                .map(|p| (p.post_id.clone(), self.accounts[p.account].label.clone()))
                .collect(),
            accounts: self
                .accounts
                .iter()
                .map(|a| (a.handle.clone(), a.label.clone()))
                .collect(),
            campaigns: self.campaigns.clone(),
        }
    }

    /// Reference lists as the pipeline would load them.
    pub fn source_lists(&self) -> Result<SourceLists> {
        SourceLists::new(
            self.low_credibility.iter().cloned(),
            self.entity_dictionary.clone(),
            SourceLists::starter_lexicon(),
        )
    }

    /// Unified posts, skipping the file round trip. Short links are resolved
    /// the same way ingest resolves them.
    pub fn unified_posts(&self) -> Vec<Post> {
        self.posts
            .iter()
            .map(|p| {
                let a = &self.accounts[p.account];
                let raw: Vec<&str> = crate::ingest::url::find_urls(&p.text)
                    .into_iter()
                    .chain(p.links.iter().map(String::as_str))
                    .collect();
                Post {
                    post_id: p.post_id.clone(),
                    platform: a.platform.clone(),
                    author_id: a.handle.clone(),
                    author_created_at: Some(a.created_at),
                    author_followers: a.followers,
                    author_following: a.following,
                    text: p.text.clone(),
                    created_at: p.created_at,
                    urls: crate::ingest::adapter::canonical_urls(raw, &self.shorteners),
                    engagement: Engagement {
                        likes: p.likes,
                        shares: p.shares,
                        replies: p.replies,
                    },
                    reply_to: None,
                    extra: BTreeMap::new(),
                }
            })
            .collect()
    }

    fn record(&self, p: &SynthPost) -> serde_json::Value {
        let a = &self.accounts[p.account];
        match a.platform.as_str() {
            "alpha" => json!({
                "id": p.post_id,
                "user": {
                    "handle": a.handle,
                    "created": timestamp_rfc3339(a.created_at),
                    "followers": a.followers,
                    "following": a.following,
                },
                "body": p.text,
                "ts": p.created_at,
                "stats": {"likes": p.likes, "shares": p.shares, "replies": p.replies},
                "links": p.links,
            }),
            "beta" => json!({
                "post": {
                    "uid": p.post_id,
                    "content": p.text,
                    "posted_at": timestamp_rfc3339(p.created_at),
                },
                "author": {
                    "name": a.handle,
                    "joined": a.created_at,
                    "fans": a.followers,
                    "follows": a.following,
                },
                "metrics": {"up": p.likes, "boost": p.shares, "comments": p.replies},
                "entities": {"urls": p.links.iter().map(|u| json!({"expanded_url": u})).collect::<Vec<_>>()},
            }),
            _ => json!({
                "guid": p.post_id,
                "account": a.handle,
                "account_since": format!("{}.0", a.created_at),
                "audience": a.followers.to_string(),
                "subscriptions": a.following,
                "message": p.text,
                "time": p.created_at.to_string(),
                "reactions": p.likes,
                "reposts": p.shares,
                "reply_count": p.replies,
                "client": "gamma-web",
            }),
        }
    }

    /// Write platform files, adapters, reference lists, articles, ground
    /// truth and a ready-to-run `pipeline.toml` into `dir`.
    pub fn write(&self, dir: &Path) -> Result<ScenarioFiles> {
        let mkdir = |p: &Path| fs::create_dir_all(p).map_err(|e| Error::io(p, e));
        let write = |p: &Path, s: &str| fs::write(p, s).map_err(|e| Error::io(p, e));
        mkdir(dir)?;
        mkdir(&dir.join("adapters"))?;
        mkdir(&dir.join("lists"))?;

        let mut platforms = Vec::new();
        for name in PLATFORMS.iter().take(self.config.n_platforms) {
            let mut lines = String::new();
            for p in self.posts.iter().filter(|p| self.accounts[p.account].platform == *name) {
                lines.push_str(&self.record(p).to_string());
                lines.push('\n');
            }
            let data = PathBuf::from(format!("{name}.jsonl"));
            let adapter = PathBuf::from(format!("adapters/{name}.toml"));
            write(&dir.join(&data), &lines)?;
            write(&dir.join(&adapter), adapter_toml(name))?;
            platforms.push(PlatformInput { adapter, path: data });
        }

        let mut articles = String::new();
        for (url, text) in &self.articles {
            articles.push_str(&json!({"url": url, "text": text}).to_string());
            articles.push('\n');
        }
        write(&dir.join("articles.jsonl"), &articles)?;
        write(&dir.join("shorteners.json"), &to_json(&self.shorteners)?)?;
        write(&dir.join("ground_truth.json"), &to_json(&self.ground_truth())?)?;

        let mut lowcred = String::from("# synthetic low-credibility outlets\n");
        for d in &self.low_credibility {
            lowcred.push_str(d);
            lowcred.push('\n');
        }
        let lists = ListPaths {
            low_credibility: Some("lists/low_credibility.txt".into()),
            entity_dictionary: Some("lists/entity_dictionary.json".into()),
            propaganda_lexicon: Some("lists/propaganda_lexicon.json".into()),
        };
        write(&dir.join("lists/low_credibility.txt"), &lowcred)?;
        write(
            &dir.join("lists/entity_dictionary.json"),
            &to_json(&self.entity_dictionary)?,
        )?;
        write(
            &dir.join("lists/propaganda_lexicon.json"),
            crate::ingest::lists::STARTER_LEXICON,
        )?;

        // Only inputs and lists: every stage parameter keeps its shipped default.
        let mut cfg = PipelineConfig::default();
        cfg.inputs.platforms = platforms.clone();
        cfg.inputs.articles = Some("articles.jsonl".into());
        cfg.inputs.shorteners = Some("shorteners.json".into());
        cfg.lists = lists.clone();
        let mut table = toml::Table::try_from(&cfg).map_err(|e| Error::Config(e.to_string()))?;
        table.retain(|k, _| matches!(k, "out_dir" | "inputs" | "lists"));
        let text = toml::to_string_pretty(&table).map_err(|e| Error::Config(e.to_string()))?;
        write(
            &dir.join("pipeline.toml"),
            &format!("# Generated with scenario seed {}.\n{text}", self.config.seed),
        )?;

        let abs = |p: &Path| dir.join(p);
        Ok(ScenarioFiles {
            dir: dir.to_path_buf(),
            platforms: platforms
                .into_iter()
                .map(|p| PlatformInput {
                    adapter: abs(&p.adapter),
                    path: abs(&p.path),
                })
                .collect(),
            ground_truth: dir.join("ground_truth.json"),
            articles: dir.join("articles.jsonl"),
            shorteners: dir.join("shorteners.json"),
            lists: ListPaths {
                low_credibility: lists.low_credibility.map(|p| abs(&p)),
                entity_dictionary: lists.entity_dictionary.map(|p| abs(&p)),
                propaganda_lexicon: lists.propaganda_lexicon.map(|p| abs(&p)),
            },
            pipeline_config: dir.join("pipeline.toml"),
        })
    }
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| Error::Config(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn adapter_toml(platform: &str) -> &'static str {
    match platform {
        "alpha" => ALPHA_ADAPTER,
        "beta" => BETA_ADAPTER,
        _ => GAMMA_ADAPTER,
    }
}

const ALPHA_ADAPTER: &str = r#"platform = "alpha"

[fields]
post_id = "id"
author_id = "user.handle"
author_created_at = "user.created"
author_followers = "user.followers"
author_following = "user.following"
text = "body"
created_at = "ts"
likes = "stats.likes"
shares = "stats.shares"
replies = "stats.replies"
urls = "links"
"#;

const BETA_ADAPTER: &str = r#"platform = "beta"

[fields]
post_id = "post.uid"
author_id = "author.name"
author_created_at = "author.joined"
author_followers = "author.fans"
author_following = "author.follows"
text = "post.content"
created_at = "post.posted_at"
likes = "metrics.up"
shares = "metrics.boost"
replies = "metrics.comments"
urls = "entities.urls"
"#;

const GAMMA_ADAPTER: &str = r#"platform = "gamma"
keep_extra = true

[fields]
post_id = "guid"
author_id = "account"
author_created_at = "account_since"
author_followers = "audience"
author_following = "subscriptions"
text = "message"
created_at = "time"
likes = "reactions"
shares = "reposts"
replies = "reply_count"
"#;

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> ScenarioConfig {
        ScenarioConfig {
            n_organic_accounts: 20,
            n_campaign_accounts: 8,
            duration_hours: 24.0,
            campaign: CampaignParams {
                n_campaigns: 2,
                shifts_per_campaign: 2,
                ..CampaignParams::default()
            },
            ..ScenarioConfig::default()
        }
    }

    #[test]
    fn no_campaign_accounts_means_no_campaign_labels() {
        let cfg = ScenarioConfig {
            n_campaign_accounts: 0,
            ..small()
        };
        let s = generate(&cfg).unwrap();
        let gt = s.ground_truth();
        assert!(gt.campaigns.is_empty());
        assert!(gt.posts.values().all(|l| l == ORGANIC));
    }

    #[test]
    fn bad_config_is_rejected() {
        let cfg = ScenarioConfig {
            n_platforms: 0,
            ..small()
        };
        assert!(matches!(generate(&cfg), Err(Error::BadConfig(_))));
    }

    #[test]
    fn campaign_posts_stay_near_shift_starts() {
        let s = generate(&small()).unwrap();
        let jitter = s.config.campaign.sync_jitter_seconds;
        for p in s.posts.iter().filter(|p| p.campaign.is_some()) {
            let c = &s.campaigns[p.campaign.unwrap()];
            let near = c
                .shift_starts_hours
                .iter()
                .any(|h| ((s.config.start as f64 + h * 3600.0) - p.created_at as f64).abs() <= 3.0 * jitter + 1.0);
            assert!(near);
            assert_eq!(s.accounts[p.account].label, c.campaign_id);
        }
    }

    #[test]
    fn cumulative_intensity_matches_rate() {
        let (r, a, peak) = (3.0, 0.5, 15.0);
        let t = 1_700_000_000.0;
        let h = 10.0;
        let numeric = (cumulative_intensity(t + h, r, a, peak) - cumulative_intensity(t - h, r, a, peak)) / (2.0 * h);
        let exact = r / 3600.0 * diurnal_factor(t, a, peak);
        assert!((numeric - exact).abs() / exact < 1e-5);
    }
}
