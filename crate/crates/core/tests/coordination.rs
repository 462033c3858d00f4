mod common;

use std::collections::{BTreeMap, BTreeSet};

use narratrace::coordination::lsh::{duplicate_groups, sketch_texts, verified_pairs};
use narratrace::coordination::shingle::normalized_tokens;
use narratrace::coordination::{
    coordination_score, find_duplicate_clusters, minhash_signature, shingle, synchrony, CoordinationWeights, LshParams,
};
use narratrace::error::Error;
use narratrace::ingest::Post;
use proptest::prelude::*;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn vocab(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("w{i}")).collect()
}

fn random_text(rng: &mut ChaCha8Rng, words: &[String], len: usize) -> String {
    (0..len)
        .map(|_| words.choose(rng).unwrap().as_str())
        .collect::<Vec<_>>()
        .join(" ")
}

#[test]
fn shingle_count_matches_formula_on_fuzzed_texts() {
    let mut rng = common::rng(1);
    let pieces = ["a", "B", "c,", "d!", "...", "e-f", "ÉTÉ", "g", "h", "  ", "#i", "j's"];
    for _ in 0..2000 {
        let len = rng.random_range(0..30);
        let text = (0..len)
            .map(|_| *pieces.choose(&mut rng).unwrap())
            .collect::<Vec<_>>()
            .join(" ");
        let k = rng.random_range(1..8);
        let tokens = normalized_tokens(&text);
        // shingles form a set, so repeated windows collapse
        let windows: BTreeSet<Vec<&String>> = if tokens.len() < k {
            std::iter::once(tokens.iter().collect())
                .filter(|w: &Vec<&String>| !w.is_empty())
                .collect()
        } else {
            tokens.windows(k).map(|w| w.iter().collect()).collect()
        };
        let got = shingle(&text, k);
        assert_eq!(got.len(), windows.len(), "{text:?} k={k}");
        if !tokens.is_empty() {
            // at most max(1, tokens - k + 1), with equality when no window repeats
            let raw = if tokens.len() < k { 1 } else { tokens.len() - k + 1 };
            assert!(got.len() <= raw);
        }
    }
    // unique tokens make every window distinct
    for n in 0..20usize {
        let text = (0..n).map(|i| format!("t{i}")).collect::<Vec<_>>().join(" ");
        for k in 1..7 {
            let want = if n == 0 { 0 } else { (n + 1).saturating_sub(k).max(1) };
            assert_eq!(shingle(&text, k).len(), want, "n={n} k={k}");
        }
    }
}

#[test]
fn identical_sets_give_identical_signatures() {
    let s: Vec<u64> = (0..50).map(|i| i * 7919).collect();
    assert_eq!(
        minhash_signature(&s, 128, 3).unwrap(),
        minhash_signature(&s, 128, 3).unwrap()
    );
    assert!(matches!(minhash_signature(&[], 128, 3), Err(Error::EmptyText)));
}

/// Two sets of `only + shared` elements each, with exact Jaccard
/// `shared / (shared + 2 * only)`.
fn set_pair(rng: &mut ChaCha8Rng, shared: usize, only: usize) -> (Vec<u64>, Vec<u64>) {
    let mut pool: BTreeSet<u64> = BTreeSet::new();
    while pool.len() < shared + 2 * only {
        pool.insert(rng.random());
    }
    let mut pool: Vec<u64> = pool.into_iter().collect();
    pool.shuffle(rng);
    let a: Vec<u64> = pool[..shared + only].to_vec();
    let mut b: Vec<u64> = pool[..shared].to_vec();
    b.extend_from_slice(&pool[shared + only..]);
    (a, b)
}

#[test]
fn disjoint_sets_estimate_near_zero() {
    let mut rng = common::rng(2);
    let mut ok = 0;
    for seed in 0..1000u64 {
        let (a, b) = set_pair(&mut rng, 0, 100);
        let est = minhash_signature(&a, 128, seed)
            .unwrap()
            .estimate_jaccard(&minhash_signature(&b, 128, seed).unwrap());
        if est <= 0.1 {
            ok += 1;
        }
    }
    assert!(ok >= 990, "{ok}/1000");
}

#[test]
fn half_overlap_estimate_within_tolerance() {
    let mut rng = common::rng(3);
    let mut ok = 0;
    for trial in 0..1000u64 {
        let (a, b) = set_pair(&mut rng, 100, 50);
        let truth = common::jaccard(&a.iter().collect(), &b.iter().collect());
        assert!((truth - 0.5).abs() < 1e-12);
        let est = minhash_signature(&a, 128, trial)
            .unwrap()
            .estimate_jaccard(&minhash_signature(&b, 128, trial).unwrap());
        if (est - truth).abs() <= 0.15 {
            ok += 1;
        }
    }
    assert!(ok >= 990, "{ok}/1000");
}

fn exact_jaccard(a: &str, b: &str, k: usize) -> f64 {
    common::jaccard(&shingle(a, k), &shingle(b, k))
}

/// Components of the all-pairs exact-Jaccard graph, size >= 2.
fn brute_force_groups(texts: &[String], params: &LshParams) -> Vec<Vec<usize>> {
    let mut edges = Vec::new();
    for i in 0..texts.len() {
        for j in i + 1..texts.len() {
            if !shingle(&texts[i], params.shingle_k).is_empty()
                && exact_jaccard(&texts[i], &texts[j], params.shingle_k) >= params.j_dup
            {
                edges.push((i, j));
            }
        }
    }
    common::oracles::components(texts.len(), &edges)
        .into_iter()
        .filter(|c| c.len() > 1)
        .map(|c| c.into_iter().collect())
        .collect()
}

#[test]
fn unrelated_posts_form_no_clusters() {
    let mut rng = common::rng(4);
    let words = vocab(2000);
    let texts: Vec<String> = (0..1000).map(|_| random_text(&mut rng, &words, 20)).collect();
    let params = LshParams::default();
    let groups = duplicate_groups(&sketch_texts(&texts, &params), &params).unwrap();
    assert!(groups.len() <= 1, "{} clusters", groups.len());
    assert!(brute_force_groups(&texts, &params).is_empty());
}

fn light_edit(rng: &mut ChaCha8Rng, template: &str, words: &[String]) -> String {
    let mut toks: Vec<String> = template.split(' ').map(str::to_string).collect();
    match rng.random_range(0..4) {
        0 => toks.push(words.choose(rng).unwrap().clone()),
        1 => {
            let last = toks.len() - 1;
            toks[last] = words.choose(rng).unwrap().clone();
        }
        2 => {
            let i = rng.random_range(0..toks.len());
            toks[i] = toks[i].to_uppercase() + "!";
        }
        _ => {
            toks.remove(0);
        }
    }
    toks.join(" ")
}

#[test]
fn template_edits_recover_templates() {
    let mut rng = common::rng(5);
    let words = vocab(3000);
    let mut texts = Vec::new();
    let mut truth_groups = Vec::new();
    for _ in 0..10 {
        let template = random_text(&mut rng, &words, 30);
        let start = texts.len();
        for _ in 0..5 {
            texts.push(light_edit(&mut rng, &template, &words));
        }
        truth_groups.push((start..start + 5).collect::<Vec<_>>());
    }
    let params = LshParams::default();
    let sk = sketch_texts(&texts, &params);
    let found = duplicate_groups(&sk, &params).unwrap();
    let oracle = brute_force_groups(&texts, &params);

    let (_, _, f_oracle) = common::pairwise_f1(&common::co_grouped(&found), &common::co_grouped(&oracle));
    assert!(f_oracle >= 0.95, "F1 vs oracle {f_oracle}");
    let (_, _, f_truth) = common::pairwise_f1(&common::co_grouped(&found), &common::co_grouped(&truth_groups));
    assert!(f_truth >= 0.95, "F1 vs templates {f_truth}");

    for p in verified_pairs(&sk, &params).unwrap() {
        assert!(exact_jaccard(&texts[p.a], &texts[p.b], params.shingle_k) >= params.j_dup);
    }
}

#[test]
fn byte_identical_posts_form_one_cluster() {
    let text = "the harbor bridge closure was planned weeks ago by officials";
    let posts = vec![common::post("p1", "a", 10, text), common::post("p2", "b", 20, text)];
    let clusters = find_duplicate_clusters(&posts, &LshParams::default()).unwrap();
    assert_eq!(clusters.len(), 1);
    assert_eq!(clusters[0].texts, ["p1", "p2"]);
    assert_eq!(clusters[0].accounts, ["a", "b"]);
    assert_eq!(clusters[0].span_seconds, 10);
}

fn poisson_posts(rng: &mut ChaCha8Rng, accounts: usize, per_account: usize, rate: f64) -> Vec<Post> {
    let mut posts = Vec::new();
    for a in 0..accounts {
        let mut t = 0.0;
        for i in 0..per_account {
            let u: f64 = rng.random_range(f64::EPSILON..1.0);
            t += -u.ln() / rate;
            posts.push(common::post(&format!("a{a}-{i}"), &format!("acct{a:02}"), t as i64, ""));
        }
    }
    posts
}

/// Per unordered pair: posts of each side with any partner post within the window.
fn brute_force_synchrony(posts: &[Post], window: i64, min_posts: usize) -> (BTreeMap<(String, String), f64>, f64) {
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for p in posts {
        *counts.entry(&p.author_id).or_insert(0) += 1;
    }
    let accounts: Vec<&str> = counts.keys().copied().collect();
    let mut out = BTreeMap::new();
    let mut max: f64 = 0.0;
    for (x, a) in accounts.iter().enumerate() {
        for b in &accounts[x + 1..] {
            let near = |from: &str, to: &str| {
                posts
                    .iter()
                    .filter(|p| p.author_id == from)
                    .filter(|p| {
                        posts
                            .iter()
                            .any(|q| q.author_id == to && (q.created_at - p.created_at).abs() <= window)
                    })
                    .count()
            };
            let co = near(a, b).min(near(b, a));
            if co == 0 {
                continue;
            }
            let norm = co as f64 / counts[a].min(counts[b]) as f64;
            if counts[a].min(counts[b]) >= min_posts {
                max = max.max(norm);
            }
            out.insert((a.to_string(), b.to_string()), norm);
        }
    }
    (out, max)
}

#[test]
fn poisson_synchrony_matches_pair_scan() {
    let mut rng = common::rng(6);
    for trial in 0..30 {
        let (accounts, per) = (rng.random_range(2..12), rng.random_range(1..25));
        let posts = poisson_posts(&mut rng, accounts, per, 1.0 / 300.0);
        let window = [10, 60, 300][trial % 3];
        let min_posts = 1 + trial % 4;
        let refs: Vec<&Post> = posts.iter().collect();
        let got = synchrony(&refs, window, min_posts);
        let (want, want_max) = brute_force_synchrony(&posts, window, min_posts);
        let got_map: BTreeMap<(String, String), f64> = got
            .pairs
            .iter()
            .map(|p| ((p.a.clone(), p.b.clone()), p.normalized))
            .collect();
        assert_eq!(got_map, want, "trial {trial}");
        assert_eq!(got.max, want_max);
        assert!(got.pairs.iter().all(|p| (0.0..=1.0).contains(&p.normalized)));
    }
}

#[test]
fn saturated_components_score_high_with_default_weights() {
    let w = CoordinationWeights::default();
    let s = coordination_score("n", 1.0, 1.0, 4, &w);
    let z = w.dup + w.sync + w.span + w.bias;
    assert!((s.score - 1.0 / (1.0 + (-z).exp())).abs() < 1e-12);
    assert!(s.score > 0.9);
}

#[test]
fn shuffling_posts_changes_nothing() {
    let mut rng = common::rng(7);
    let words = vocab(400);
    let templates: Vec<String> = (0..6).map(|_| random_text(&mut rng, &words, 25)).collect();
    let mut posts: Vec<Post> = (0..300)
        .map(|i| {
            let text = if i % 3 == 0 {
                light_edit(&mut rng, &templates[i % 6], &words)
            } else {
                random_text(&mut rng, &words, 15)
            };
            common::post(
                &format!("p{i:03}"),
                &format!("acct{}", i % 17),
                rng.random_range(0..20_000),
                &text,
            )
        })
        .collect();
    let params = LshParams::default();
    let clusters = find_duplicate_clusters(&posts, &params).unwrap();
    let refs: Vec<&Post> = posts.iter().collect();
    let sync = synchrony(&refs, 60, 2);
    assert!(!clusters.is_empty());

    for seed in 0..5 {
        posts.shuffle(&mut common::rng(100 + seed));
        assert_eq!(find_duplicate_clusters(&posts, &params).unwrap(), clusters);
        let refs: Vec<&Post> = posts.iter().collect();
        assert_eq!(synchrony(&refs, 60, 2), sync);
    }
}

proptest! {
    #[test]
    fn score_is_monotone_in_each_component(
        dup in 0.0f64..1.0, sync in 0.0f64..1.0, span in 1usize..6,
        d in 0.0f64..0.5, which in 0usize..3,
        wd in 0.0f64..8.0, ws in 0.0f64..8.0, wp in 0.0f64..8.0, bias in -10.0f64..2.0,
    ) {
        let w = CoordinationWeights { dup: wd, sync: ws, span: wp, bias };
        let base = coordination_score("n", dup, sync, span, &w).score;
        let up = match which {
            0 => coordination_score("n", (dup + d).min(1.0), sync, span, &w),
            1 => coordination_score("n", dup, (sync + d).min(1.0), span, &w),
            _ => coordination_score("n", dup, sync, span + 1, &w),
        };
        prop_assert!(up.score >= base);
        prop_assert!((0.0..=1.0).contains(&up.score));
    }
}
