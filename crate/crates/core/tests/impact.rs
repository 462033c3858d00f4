mod common;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use narratrace::impact::{impact_metrics, ImpactReport};
use narratrace::ingest::{Engagement, Post};
use narratrace::narrative::{EventCluster, Narrative};
use proptest::prelude::*;
use rand::seq::IndexedRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn random_post(rng: &mut ChaCha8Rng, i: usize) -> Post {
    let author = format!("acct{:02}", rng.random_range(0..40));
    let mut p = common::post(
        &format!("p{i:04}"),
        &author,
        1_700_000_000 + rng.random_range(0..50_000),
        "",
    );
    p.platform = ["alpha", "beta", "gamma"].choose(rng).unwrap().to_string();
    p.author_followers = rng.random_range(0..10_000);
    p.engagement = Engagement {
        likes: rng.random_range(0..50),
        shares: rng.random_range(0..10),
        replies: rng.random_range(0..5),
    };
    let n_urls = rng.random_range(0..3);
    p.urls = (0..n_urls)
        .map(|_| format!("https://site.example/{}", rng.random_range(0..12)))
        .collect();
    p
}

/// Posts split into clusters by 10 000 s window; returns the narrative and its clusters.
fn narrative_of(posts: &[Post]) -> (Narrative, Vec<EventCluster>) {
    let mut by_window: BTreeMap<usize, Vec<&Post>> = BTreeMap::new();
    for p in posts {
        by_window
            .entry(((p.created_at - 1_700_000_000) / 10_000) as usize)
            .or_default()
            .push(p);
    }
    let clusters: Vec<EventCluster> = by_window
        .iter()
        .map(|(&w, ps)| EventCluster {
            cluster_id: format!("c{w}"),
            window_index: w,
            entities: vec![],
            post_ids: ps.iter().map(|p| p.post_id.clone()).collect(),
            volume: ps.len(),
            burst_z: 0.0,
            is_event: false,
        })
        .collect();
    let n = Narrative {
        narrative_id: "n-1".into(),
        clusters: clusters.iter().map(|c| c.cluster_id.clone()).collect(),
        windows: clusters.iter().map(|c| c.window_index).collect(),
        link_scores: vec![],
        entity_signature: vec![],
        post_ids: posts.iter().map(|p| p.post_id.clone()).collect(),
        platforms: vec![],
        split_from: None,
    };
    (n, clusters)
}

fn run(posts: &[Post]) -> ImpactReport {
    let (n, clusters) = narrative_of(posts);
    let index: HashMap<&str, &EventCluster> = clusters.iter().map(|c| (c.cluster_id.as_str(), c)).collect();
    let refs: Vec<&Post> = posts.iter().collect();
    impact_metrics(&n, &refs, &index)
}

/// Straight-line recomputation of every field.
fn naive(posts: &[Post], clusters: &[EventCluster]) -> ImpactReport {
    let accounts: BTreeSet<&str> = posts.iter().map(|p| p.author_id.as_str()).collect();
    let reach: u64 = accounts
        .iter()
        .map(|a| {
            posts
                .iter()
                .filter(|p| p.author_id == *a)
                .map(|p| p.author_followers)
                .max()
                .unwrap()
        })
        .sum();
    let engagement: u64 = posts
        .iter()
        .map(|p| p.engagement.likes + p.engagement.shares + p.engagement.replies)
        .sum();
    let platforms: BTreeSet<&str> = posts.iter().map(|p| p.platform.as_str()).collect();
    let first = posts.iter().map(|p| p.created_at).min().unwrap();

    let mut peak = &clusters[0];
    for c in clusters {
        if c.volume > peak.volume {
            peak = c;
        }
    }
    let peak_start = posts
        .iter()
        .filter(|p| peak.post_ids.contains(&p.post_id))
        .map(|p| p.created_at)
        .min()
        .unwrap();

    let key = |p: &Post| (p.created_at, p.post_id.clone());
    let mut converts = BTreeSet::new();
    for p in posts {
        for u in &p.urls {
            let first_share = posts
                .iter()
                .filter(|q| q.urls.contains(u))
                .min_by_key(|q| key(q))
                .unwrap();
            if first_share.author_id != p.author_id {
                converts.insert(p.author_id.clone());
            }
        }
    }
    ImpactReport {
        narrative_id: "n-1".into(),
        reach_upper_bound: reach,
        engagement_total: engagement,
        amplification: engagement as f64 / posts.len() as f64,
        platform_spread: platforms.len(),
        time_to_peak: peak_start - first,
        conversion_proxy: converts.len(),
    }
}

#[test]
fn three_hundred_posts_match_naive_aggregation() {
    let mut rng = common::rng(1);
    for trial in 0..10 {
        let posts: Vec<Post> = (0..300).map(|i| random_post(&mut rng, i)).collect();
        let (_, clusters) = narrative_of(&posts);
        let got = run(&posts);
        let want = naive(&posts, &clusters);
        assert_eq!(got.reach_upper_bound, want.reach_upper_bound, "trial {trial}");
        assert_eq!(got.engagement_total, want.engagement_total);
        assert!((got.amplification - want.amplification).abs() < 1e-12);
        assert_eq!(got.platform_spread, want.platform_spread);
        assert_eq!(got.time_to_peak, want.time_to_peak);
        assert_eq!(got.conversion_proxy, want.conversion_proxy);

        let span =
            posts.iter().map(|p| p.created_at).max().unwrap() - posts.iter().map(|p| p.created_at).min().unwrap();
        assert!((0..=span).contains(&got.time_to_peak));
    }
}

#[test]
fn empty_engagement_is_zero() {
    let posts = vec![common::post("p1", "a", 5, ""), common::post("p2", "b", 9, "")];
    let r = run(&posts);
    assert_eq!((r.engagement_total, r.amplification), (0, 0.0));
}

proptest! {
    #[test]
    fn adding_a_post_never_lowers_totals(seed in any::<u64>(), n in 1usize..80) {
        let mut rng = common::rng(seed);
        let mut posts: Vec<Post> = (0..n).map(|i| random_post(&mut rng, i)).collect();
        let before = run(&posts);
        posts.push(random_post(&mut rng, n));
        let after = run(&posts);
        prop_assert!(after.reach_upper_bound >= before.reach_upper_bound);
        prop_assert!(after.engagement_total >= before.engagement_total);
        prop_assert!(after.platform_spread >= before.platform_spread);
    }
}
