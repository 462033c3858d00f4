//! Generate the default synthetic scenario, run every stage in memory and
//! score the orchestrated labels against the planted campaigns.
//!
//!     cargo run --release --example synthetic_recovery [-- SEED]

use std::time::Instant;

use narratrace::config::PipelineConfig;
use narratrace::pipeline::{analyze, recovery};
use narratrace::synthgen::{generate, ScenarioConfig};

fn main() -> narratrace::Result<()> {
    let mut scenario_cfg = ScenarioConfig::default();
    if let Some(seed) = std::env::args().nth(1).and_then(|s| s.parse().ok()) {
        scenario_cfg.seed = seed;
    }
    let scenario = generate(&scenario_cfg)?;
    let truth = scenario.ground_truth();
    println!(
        "scenario seed {}: {} posts, {} accounts, {} campaigns",
        scenario_cfg.seed,
        scenario.posts.len(),
        scenario.accounts.len(),
        scenario.campaigns.len()
    );

    let cfg = PipelineConfig::default();
    let started = Instant::now();
    let report = analyze(
        scenario.unified_posts(),
        scenario.source_lists()?,
        scenario.articles.clone(),
        &cfg,
    )?;
    let elapsed = started.elapsed();

    let r = recovery(report.assessment_list()?, &report.narrative_set()?.narratives, &truth);
    println!("narratives:  {}", report.narrative_set()?.narratives.len());
    println!("flagged:     {} ({} match a campaign)", r.flagged, r.true_positives);
    println!("precision:   {:.3}", r.precision);
    println!(
        "recall:      {:.3} ({} of {} campaigns)",
        r.recall, r.campaigns_found, r.campaigns
    );
    println!("pipeline:    {:.2?}", elapsed);
    for (narrative, campaign) in r.matches.iter().filter(|(_, c)| c.is_none()) {
        println!("  unmatched flagged narrative {narrative} ({campaign:?})");
    }
    Ok(())
}
