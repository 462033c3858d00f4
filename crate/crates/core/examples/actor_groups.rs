//! Candidate actor groups from behavioral fingerprints, compared with the
//! planted campaigns.

use std::collections::BTreeMap;

use narratrace::config::PipelineConfig;
use narratrace::pipeline::analyze;
use narratrace::synthgen::{generate, ScenarioConfig};

fn main() -> narratrace::Result<()> {
    let scenario = generate(&ScenarioConfig::default())?;
    let truth = scenario.ground_truth();
    let report = analyze(
        scenario.unified_posts(),
        scenario.source_lists()?,
        scenario.articles.clone(),
        &PipelineConfig::default(),
    )?;
    let groups = report.require(&report.actor_groups, "actor_groups")?;
    println!("{}\n", groups.caveat);
    for (i, g) in groups.groups.iter().enumerate() {
        let mut by_campaign: BTreeMap<&str, usize> = BTreeMap::new();
        for a in &g.account_ids {
            *by_campaign
                .entry(truth.accounts.get(a).map_or("?", String::as_str))
                .or_insert(0) += 1;
        }
        let peak = (0..g.hour_histogram.len())
            .max_by(|&a, &b| g.hour_histogram[a].total_cmp(&g.hour_histogram[b]).then(b.cmp(&a)))
            .unwrap_or(0);
        println!(
            "group {i}: {} accounts, peak hour {peak:02}:00 UTC, dup overlap {:.2}, truth {by_campaign:?}",
            g.account_ids.len(),
            g.dup_cluster_overlap
        );
    }
    Ok(())
}
