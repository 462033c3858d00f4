//! Exposure proxies for the narratives labeled orchestrated.

use narratrace::config::PipelineConfig;
use narratrace::pipeline::analyze;
use narratrace::synthgen::{generate, ScenarioConfig};

fn main() -> narratrace::Result<()> {
    let scenario = generate(&ScenarioConfig::default())?;
    let report = analyze(
        scenario.unified_posts(),
        scenario.source_lists()?,
        scenario.articles.clone(),
        &PipelineConfig::default(),
    )?;
    let impact = report.require(&report.impact, "impact")?;
    println!("{}\n", impact.caveat);
    let flagged: std::collections::BTreeSet<&str> = report
        .assessment_list()?
        .iter()
        .filter(|a| a.label.is_orchestrated())
        .map(|a| a.narrative_id.as_str())
        .collect();
    println!(
        "{:<20} {:>7} {:>7} {:>6} {:>5} {:>7} {:>5}",
        "narrative", "reach", "engage", "ampl", "plat", "peak_s", "conv"
    );
    for r in impact
        .reports
        .iter()
        .filter(|r| flagged.contains(r.narrative_id.as_str()))
        .take(15)
    {
        println!(
            "{:<20} {:>7} {:>7} {:>6.1} {:>5} {:>7} {:>5}",
            r.narrative_id,
            r.reach_upper_bound,
            r.engagement_total,
            r.amplification,
            r.platform_spread,
            r.time_to_peak,
            r.conversion_proxy
        );
    }
    Ok(())
}
