mod common;

use std::collections::{BTreeMap, BTreeSet};

use narratrace::credibility::{
    account_flags, account_profiles, deception_score, domain_credibility, AccountFlag, AccountProfile,
    AccountThresholds, DeceptionWeights,
};
use narratrace::ingest::{Post, SourceLists};
use proptest::prelude::*;
use rand::seq::IndexedRandom;
use rand::Rng;

fn lists(domains: &[&str]) -> SourceLists {
    SourceLists::new(domains.iter().map(|d| d.to_string()), BTreeMap::new(), BTreeMap::new()).unwrap()
}

fn with_urls(i: usize, urls: &[&str]) -> Post {
    let mut p = common::post(&format!("p{i}"), "a", i as i64, "");
    p.urls = urls.iter().map(|u| u.to_string()).collect();
    p
}

#[test]
fn three_of_eight_listed() {
    let l = lists(&["kansasdailynews.com", "fakewire.co.uk"]);
    let posts = vec![
        with_urls(0, &["https://kansasdailynews.com/a"]),
        with_urls(1, &["https://www.reuters.com/x"]),
        with_urls(2, &["https://news.fakewire.co.uk/story"]),
        with_urls(3, &["https://example.org/"]),
        with_urls(4, &["https://example.org/b", "https://cdn.kansasdailynews.com/img"]),
        with_urls(5, &["https://apnews.com/1"]),
        with_urls(6, &["https://bbc.co.uk/news"]),
        with_urls(7, &["https://kansasdailynews.org/decoy"]),
        with_urls(8, &[]),
    ];
    let d = domain_credibility(&posts, &l);
    assert_eq!((d.url_posts, d.listed_posts), (8, 3));
    assert_eq!(d.lowcred_fraction, 0.375);
}

#[test]
fn no_urls_gives_zero() {
    let posts = vec![with_urls(0, &[]), with_urls(1, &[])];
    let d = domain_credibility(&posts, &lists(&["x.com"]));
    assert_eq!((d.lowcred_fraction, d.url_posts), (0.0, 0));
}

#[test]
fn deception_fixture() {
    let s = deception_score("n", 0.4, 0.2, &DeceptionWeights::default());
    assert!((s.score - 0.3).abs() < 1e-12);
}

const HANDLES: &[&str] = &[
    "alice",
    "bob_smith",
    "mike83749102",
    "x123456",
    "x12345",
    "news_desk2024",
    "Z_9876543",
    "a1b2c3d4e5f6",
    "_0000000",
];

/// Each rule restated directly from its threshold.
fn oracle_flags(p: &AccountProfile, t: &AccountThresholds) -> BTreeSet<AccountFlag> {
    let mut out = BTreeSet::new();
    if let Some(c) = p.created_at {
        if ((p.post_times[0] - c) as f64 / 86_400.0) < t.young_days {
            out.insert(AccountFlag::YoungAccount);
        }
    }
    if (p.following as f64) > t.follower_ratio * (p.followers.max(1) as f64) {
        out.insert(AccountFlag::FollowerSkew);
    }
    let handle = &p.account_id;
    let digits = handle.chars().rev().take_while(|c| c.is_ascii_digit()).count();
    let prefix = &handle[..handle.len() - digits];
    if digits >= 6 && !prefix.is_empty() && prefix.chars().all(|c| c.is_ascii_alphabetic() || c == '_') {
        out.insert(AccountFlag::HandlePattern);
    }
    let max_hour = p
        .post_times
        .iter()
        .map(|&s| p.post_times.iter().filter(|&&t| s <= t && t < s + 3600).count())
        .max()
        .unwrap_or(0);
    if max_hour > t.burst_per_hour {
        out.insert(AccountFlag::BurstPoster);
    }
    out
}

#[test]
fn hundred_profiles_match_rule_oracle() {
    let mut rng = common::rng(8);
    let t = AccountThresholds::default();
    let mut fired: BTreeMap<AccountFlag, usize> = BTreeMap::new();
    for _ in 0..100 {
        let n = rng.random_range(1..40);
        let start = 1_650_000_000;
        let spread = *[600i64, 3600, 86_400].choose(&mut rng).unwrap();
        let mut times: Vec<i64> = (0..n).map(|_| start + rng.random_range(0..spread)).collect();
        times.sort_unstable();
        let p = AccountProfile {
            account_id: HANDLES.choose(&mut rng).unwrap().to_string(),
            created_at: rng
                .random_bool(0.9)
                .then(|| times[0] - rng.random_range(0..90) * 86_400 - rng.random_range(0..86_400)),
            followers: rng.random_range(0..500),
            following: rng.random_range(0..5000),
            post_times: times,
        };
        let got = account_flags(&p, &t);
        let want = oracle_flags(&p, &t);
        assert_eq!(got.flags, want, "{p:?}");
        assert_eq!(got.inauthentic, want.len() >= t.min_flags);
        for f in want {
            *fired.entry(f).or_insert(0) += 1;
        }
    }
    assert_eq!(fired.len(), 4, "every rule should fire somewhere: {fired:?}");
}

#[test]
fn profiles_take_latest_follower_counts() {
    let mut a = common::post("p1", "acct", 100, "");
    a.author_followers = 5;
    let mut b = common::post("p2", "acct", 200, "");
    b.author_followers = 9;
    b.author_created_at = Some(50);
    let profiles = account_profiles([&b, &a]);
    assert_eq!(profiles["acct"].followers, 9);
    assert_eq!(profiles["acct"].created_at, Some(50));
    assert_eq!(profiles["acct"].post_times, [100, 200]);
}

const DOMAINS: &[&str] = &["a.com", "b.org", "c.co.uk", "d.net", "e.io", "f.com"];

fn url_posts(seed: u64) -> Vec<Post> {
    let mut rng = common::rng(seed);
    (0..40)
        .map(|i| {
            let k = rng.random_range(0..3);
            let urls: Vec<String> = (0..k)
                .map(|_| {
                    format!(
                        "https://{}{}/x",
                        ["", "www.", "m."].choose(&mut rng).unwrap(),
                        DOMAINS.choose(&mut rng).unwrap()
                    )
                })
                .collect();
            let mut p = common::post(&format!("p{i}"), "a", i, "");
            p.urls = urls;
            p
        })
        .collect()
}

proptest! {
    #[test]
    fn deception_is_monotone(lc in 0.0f64..=1.0, inf in 0.0f64..=1.0, d in 0.0f64..0.5, wl in 0.0f64..5.0, wi in 0.0f64..5.0) {
        let w = DeceptionWeights { lowcred: wl, inauthentic: wi };
        let s = deception_score("n", lc, inf, &w).score;
        prop_assert!((0.0..=1.0).contains(&s));
        prop_assert!(deception_score("n", (lc + d).min(1.0), inf, &w).score >= s - 1e-15);
        prop_assert!(deception_score("n", lc, (inf + d).min(1.0), &w).score >= s - 1e-15);
    }

    #[test]
    fn listing_a_domain_never_lowers_lowcred(seed in any::<u64>(), mask in 0u8..64, extra in 0usize..6) {
        let posts = url_posts(seed);
        let listed: Vec<&str> = DOMAINS.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, d)| *d).collect();
        let before = domain_credibility(&posts, &lists(&listed)).lowcred_fraction;
        let mut more = listed.clone();
        more.push(DOMAINS[extra]);
        let after = domain_credibility(&posts, &lists(&more)).lowcred_fraction;
        prop_assert!(after >= before);
        prop_assert!((0.0..=1.0).contains(&after));
    }
}
