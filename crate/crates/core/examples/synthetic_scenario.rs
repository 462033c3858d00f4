//! Write a labeled synthetic scenario, ready for `narratrace run-all`.
//!
//!     cargo run --example synthetic_scenario -- OUT_DIR [SEED]

use std::path::PathBuf;

use narratrace::synthgen::{generate, ScenarioConfig};

fn main() -> narratrace::Result<()> {
    let mut args = std::env::args().skip(1);
    let dir = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("narratrace-scenario"));
    let mut cfg = ScenarioConfig::default();
    if let Some(seed) = args.next().and_then(|s| s.parse().ok()) {
        cfg.seed = seed;
    }
    let scenario = generate(&cfg)?;
    let files = scenario.write(&dir)?;

    let mut per_platform = std::collections::BTreeMap::new();
    for p in &scenario.posts {
        *per_platform
            .entry(scenario.accounts[p.account].platform.as_str())
            .or_insert(0usize) += 1;
    }
    println!("{} posts {per_platform:?}", scenario.posts.len());
    for c in &scenario.campaigns {
        println!(
            "{}: {} accounts, tags {:?}, domains {:?}",
            c.campaign_id,
            c.accounts.len(),
            c.hashtags,
            c.domains
        );
    }
    println!("\nnarratrace --config {} run-all", files.pipeline_config.display());
    println!("ground truth in {}", files.ground_truth.display());
    Ok(())
}
