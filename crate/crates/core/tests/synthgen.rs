mod common;

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use narratrace::coordination::shingle;
use narratrace::synthgen::{cumulative_intensity, diurnal_arrivals, generate, ScenarioConfig, ORGANIC};
use narratrace::Error;

/// Default campaigns with a lighter organic background.
fn small_config(seed: u64) -> ScenarioConfig {
    ScenarioConfig {
        seed,
        n_organic_accounts: 40,
        ..ScenarioConfig::default()
    }
}

#[test]
fn campaign_posts_stay_near_their_templates() {
    let s = generate(&small_config(42)).unwrap();
    assert_eq!(s.config.campaign.edit_rate, 0.1);
    assert_eq!(s.config.campaign.template_words, 30);
    let mut by_campaign: BTreeMap<usize, Vec<_>> = BTreeMap::new();
    for p in &s.posts {
        if let Some(k) = p.campaign {
            by_campaign.entry(k).or_default().push(shingle(&p.text, 5));
        }
    }
    let (mut sum, mut pairs) = (0.0, 0usize);
    for sets in by_campaign.values() {
        for i in 0..sets.len() {
            for j in i + 1..sets.len() {
                sum += common::jaccard(&sets[i], &sets[j]);
                pairs += 1;
            }
        }
    }
    let mean = sum / pairs as f64;
    assert!(mean >= 0.7, "mean within-campaign Jaccard {mean:.3} over {pairs} pairs");
}

/// Kolmogorov-Smirnov distance between `samples` and Exp(1).
fn ks_exp1(samples: &mut [f64]) -> f64 {
    samples.sort_by(f64::total_cmp);
    let n = samples.len() as f64;
    samples
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = 1.0 - (-x).exp();
            (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max)
}

#[test]
fn organic_inter_arrivals_pass_ks_after_time_rescaling() {
    let o = ScenarioConfig::default().organic;
    let mut rng = common::rng(9);
    let t0 = 1_700_006_400.0;
    let lambda = |t: f64| cumulative_intensity(t, o.rate_per_hour, o.diurnal_amplitude, o.peak_hour);

    // time-rescaling: Lambda(t_{i+1}) - Lambda(t_i) is Exp(1) for the configured process
    let mut gaps = Vec::new();
    let mut from = t0;
    while gaps.len() < 10_000 {
        let times = diurnal_arrivals(
            &mut rng,
            o.rate_per_hour,
            o.diurnal_amplitude,
            o.peak_hour,
            from,
            from + 86_400.0,
        );
        let mut prev = from;
        for t in times {
            gaps.push(lambda(t) - lambda(prev));
            prev = t;
        }
        from += 86_400.0;
    }
    gaps.truncate(10_000);
    let d = ks_exp1(&mut gaps);
    let critical = 1.628 / (gaps.len() as f64).sqrt();
    assert!(d < critical, "KS D = {d:.5}, critical {critical:.5}");

    // the daily cycle itself is present
    let times = diurnal_arrivals(
        &mut rng,
        o.rate_per_hour,
        o.diurnal_amplitude,
        o.peak_hour,
        t0,
        t0 + 400.0 * 86_400.0,
    );
    let mut peak_hours = vec![0usize; 24];
    for t in &times {
        peak_hours[((*t as i64).rem_euclid(86_400) / 3600) as usize] += 1;
    }
    assert!(peak_hours[15] > 2 * peak_hours[3], "{peak_hours:?}");
}

fn read_tree(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    let mut out = BTreeMap::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for e in fs::read_dir(&d).unwrap() {
            let p = e.unwrap().path();
            if p.is_dir() {
                stack.push(p);
            } else {
                out.insert(
                    p.strip_prefix(dir).unwrap().display().to_string(),
                    fs::read(&p).unwrap(),
                );
            }
        }
    }
    out
}

#[test]
fn same_seed_writes_identical_files() {
    let (a, b, c) = (
        tempfile::tempdir().unwrap(),
        tempfile::tempdir().unwrap(),
        tempfile::tempdir().unwrap(),
    );
    generate(&small_config(7)).unwrap().write(a.path()).unwrap();
    generate(&small_config(7)).unwrap().write(b.path()).unwrap();
    generate(&small_config(8)).unwrap().write(c.path()).unwrap();
    let (ta, tb, tc) = (read_tree(a.path()), read_tree(b.path()), read_tree(c.path()));
    assert!(ta.len() >= 10, "{:?}", ta.keys());
    assert_eq!(ta, tb);
    assert_ne!(ta["ground_truth.json"], tc["ground_truth.json"]);
}

#[test]
fn campaign_posts_fall_inside_their_shifts() {
    let s = generate(&small_config(3)).unwrap();
    let jitter = s.config.campaign.sync_jitter_seconds;
    let mut n = 0;
    for p in &s.posts {
        let Some(k) = p.campaign else { continue };
        n += 1;
        let account = &s.accounts[p.account];
        assert_eq!(account.label, s.campaigns[k].campaign_id);
        assert!(s.campaigns[k].accounts.contains(&account.handle));
        let near = s.campaigns[k].shift_starts_hours.iter().any(|h| {
            let shift = s.config.start as f64 + h * 3600.0;
            (shift - 3.0 * jitter).floor() <= p.created_at as f64 && p.created_at as f64 <= shift + 3.0 * jitter
        });
        assert!(
            near,
            "post {} at {} outside every shift of {}",
            p.post_id, p.created_at, s.campaigns[k].campaign_id
        );
    }
    let c = &s.config.campaign;
    assert_eq!(
        n,
        s.config.n_campaign_accounts * c.shifts_per_campaign * c.posts_per_shift
    );
}

#[test]
fn no_campaign_accounts_means_no_campaign_labels() {
    let cfg = ScenarioConfig {
        n_campaign_accounts: 0,
        ..small_config(5)
    };
    let s = generate(&cfg).unwrap();
    let truth = s.ground_truth();
    assert!(truth.campaigns.is_empty());
    assert!(truth.posts.values().all(|l| l == ORGANIC));
    assert!(!truth.posts.is_empty());
}

#[test]
fn invalid_configs_are_rejected() {
    let bad = [
        ScenarioConfig {
            n_organic_accounts: 0,
            ..ScenarioConfig::default()
        },
        ScenarioConfig {
            n_platforms: 4,
            ..ScenarioConfig::default()
        },
        ScenarioConfig {
            duration_hours: 0.0,
            ..ScenarioConfig::default()
        },
    ];
    for cfg in bad {
        assert!(matches!(generate(&cfg), Err(Error::BadConfig(_))));
    }
}
