mod common;

use std::collections::{BTreeMap, BTreeSet};

use narratrace::agenda::TechniqueHit;
use narratrace::attribution::{cosine, feature_vectors, fingerprint, group_actors, AccountFingerprint, HOURS};
use narratrace::ingest::Post;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

const DAY0: i64 = 1_700_006_400; // a UTC midnight

fn hit(technique: &str) -> TechniqueHit {
    TechniqueHit {
        doc_id: String::new(),
        technique: technique.to_string(),
        span: (0, 1),
        matched_cue: String::new(),
    }
}

struct Behavior {
    hours: Vec<usize>,
    domains: Vec<&'static str>,
    techniques: Vec<&'static str>,
}

/// Posts and hits for one account drawn from `b`; `noise` is the chance
/// each draw ignores the template.
fn account_activity(
    rng: &mut ChaCha8Rng,
    account: &str,
    b: &Behavior,
    n: usize,
    noise: f64,
) -> Vec<(Post, Vec<TechniqueHit>)> {
    const ALL_DOMAINS: &[&str] = &["a.com", "b.org", "c.net", "d.io", "e.co.uk", "f.com", "g.org"];
    const ALL_TECH: &[&str] = &["doubt", "fear", "loaded_language", "slogans", "flag_waving"];
    (0..n)
        .map(|i| {
            let hour = if rng.random_bool(noise) {
                rng.random_range(0..24)
            } else {
                *b.hours.choose(rng).unwrap()
            };
            let t = DAY0 + rng.random_range(0..30) * 86_400 + hour as i64 * 3600 + rng.random_range(0..3600);
            let mut p = common::post(&format!("{account}-{i}"), account, t, "");
            if rng.random_bool(0.7) {
                let d = if rng.random_bool(noise) {
                    ALL_DOMAINS.choose(rng).unwrap()
                } else {
                    b.domains.choose(rng).unwrap()
                };
                p.urls.push(format!("https://www.{d}/{i}"));
            }
            let hits = (0..rng.random_range(0..3))
                .map(|_| {
                    hit(if rng.random_bool(noise) {
                        ALL_TECH.choose(rng).unwrap()
                    } else {
                        b.techniques.choose(rng).unwrap()
                    })
                })
                .collect();
            (p, hits)
        })
        .collect()
}

fn fp_of(account: &str, activity: &[(Post, Vec<TechniqueHit>)]) -> AccountFingerprint {
    fingerprint(account, activity.iter().map(|(p, h)| (p, h.as_slice())))
}

#[test]
fn fingerprints_match_counting_oracle() {
    let mut rng = common::rng(1);
    let b = Behavior {
        hours: vec![2, 3, 14],
        domains: vec!["a.com", "c.net"],
        techniques: vec!["fear", "doubt"],
    };
    let mut fps = Vec::new();
    let mut raw = Vec::new();
    for a in 0..12 {
        let id = format!("acct{a:02}");
        let n = rng.random_range(1..40);
        let act = account_activity(&mut rng, &id, &b, n, 0.5);
        fps.push(fp_of(&id, &act));
        raw.push(act);
    }
    let vectors = feature_vectors(&fps);

    let mut domains = BTreeSet::new();
    let mut techniques = BTreeSet::new();
    for act in &raw {
        for (p, hits) in act {
            for u in &p.urls {
                // urls are https://www.<domain>/<n>
                domains.insert(
                    u.trim_start_matches("https://www.")
                        .split('/')
                        .next()
                        .unwrap()
                        .to_string(),
                );
            }
            techniques.extend(hits.iter().map(|h| h.technique.clone()));
        }
    }
    for (act, v) in raw.iter().zip(&vectors) {
        let mut want = vec![0.0; HOURS + domains.len() + techniques.len()];
        for (p, _) in act {
            want[((p.created_at - DAY0) % 86_400 / 3600) as usize] += 1.0 / act.len() as f64;
        }
        let n_urls: usize = act.iter().map(|(p, _)| p.urls.len()).sum();
        let n_hits: usize = act.iter().map(|(_, h)| h.len()).sum();
        for (p, hits) in act {
            for u in &p.urls {
                let d = u.trim_start_matches("https://www.").split('/').next().unwrap();
                want[HOURS + domains.iter().position(|x| x == d).unwrap()] += 1.0 / n_urls as f64;
            }
            for h in hits {
                want[HOURS + domains.len() + techniques.iter().position(|x| *x == h.technique).unwrap()] +=
                    1.0 / n_hits as f64;
            }
        }
        assert_eq!(v.len(), want.len());
        for (g, w) in v.iter().zip(&want) {
            assert!((g - w).abs() < 1e-12, "{v:?} vs {want:?}");
        }
    }
    for f in &fps {
        assert!((f.hour_histogram.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn single_hour_is_one_hot() {
    let posts: Vec<Post> = (0..5)
        .map(|d| common::post(&format!("p{d}"), "a", DAY0 + d * 86_400 + 14 * 3600 + 120, ""))
        .collect();
    let f = fingerprint("a", posts.iter().map(|p| (p, &[][..])));
    let mut want = vec![0.0; HOURS];
    want[14] = 1.0;
    assert_eq!(f.hour_histogram, want);
    assert!(f.domain_distribution.is_empty() && f.technique_distribution.is_empty());
}

fn planted(seed: u64) -> (Vec<AccountFingerprint>, BTreeMap<String, usize>) {
    let mut rng = common::rng(seed);
    let templates = [
        Behavior {
            hours: vec![6, 7, 8],
            domains: vec!["a.com", "b.org"],
            techniques: vec!["fear"],
        },
        Behavior {
            hours: vec![13, 14],
            domains: vec!["c.net"],
            techniques: vec!["doubt", "slogans"],
        },
        Behavior {
            hours: vec![21, 22, 23],
            domains: vec!["d.io", "e.co.uk"],
            techniques: vec!["loaded_language"],
        },
    ];
    let mut fps = Vec::new();
    let mut truth = BTreeMap::new();
    for a in 0..100 {
        let t = a % 3;
        let id = format!("acct{a:03}");
        let n = rng.random_range(20..60);
        let act = account_activity(&mut rng, &id, &templates[t], n, 0.1);
        fps.push(fp_of(&id, &act));
        truth.insert(id, t);
    }
    (fps, truth)
}

fn index_groups(ids: &[String], groups: impl Iterator<Item = Vec<String>>) -> Vec<Vec<usize>> {
    let pos: BTreeMap<&String, usize> = ids.iter().enumerate().map(|(i, s)| (s, i)).collect();
    groups.map(|g| g.iter().map(|a| pos[a]).collect()).collect()
}

#[test]
fn planted_templates_are_recovered() {
    let (fps, truth) = planted(2);
    let ids: Vec<String> = truth.keys().cloned().collect();
    let found = index_groups(&ids, group_actors(&fps, 0.8, &[]).into_iter().map(|g| g.account_ids));
    let mut by_template: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for (id, t) in &truth {
        by_template.entry(*t).or_default().push(id.clone());
    }
    let want = index_groups(&ids, by_template.into_values());
    let (p, r, f) = common::pairwise_f1(&common::co_grouped(&found), &common::co_grouped(&want));
    assert!(f >= 0.9, "precision {p} recall {r} f1 {f}");
}

#[test]
fn grouping_ignores_input_order_and_partitions_accounts() {
    let (mut fps, truth) = planted(3);
    let base = group_actors(&fps, 0.8, &[]);
    let mut seen: Vec<&String> = base.iter().flat_map(|g| &g.account_ids).collect();
    seen.sort();
    assert_eq!(seen, truth.keys().collect::<Vec<_>>());
    for seed in 0..5 {
        fps.shuffle(&mut common::rng(seed));
        assert_eq!(group_actors(&fps, 0.8, &[]), base);
    }
}

#[test]
fn cosine_is_symmetric() {
    let mut rng = common::rng(4);
    for _ in 0..200 {
        let a: Vec<f64> = (0..30).map(|_| rng.random_range(0.0..1.0)).collect();
        let b: Vec<f64> = (0..30).map(|_| rng.random_range(0.0..1.0)).collect();
        assert_eq!(cosine(&a, &b), cosine(&b, &a));
        assert!(cosine(&a, &b).unwrap() <= 1.0 + 1e-12);
    }
    assert_eq!(cosine(&[0.0, 0.0], &[1.0, 0.0]), None);
}
