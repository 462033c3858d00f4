//! Windowed entity co-occurrence clusters chained into narratives.
//!
//!     cargo run --release --example narrative_tracking [-- WINDOW_SECONDS]

use narratrace::entities::annotate_posts;
use narratrace::narrative::{detect_narratives, NarrativeParams};
use narratrace::synthgen::{generate, ScenarioConfig};

fn main() -> narratrace::Result<()> {
    let scenario = generate(&ScenarioConfig::default())?;
    let posts = scenario.unified_posts();
    let lists = scenario.source_lists()?;

    let mut params = NarrativeParams::default();
    if let Some(w) = std::env::args().nth(1).and_then(|s| s.parse().ok()) {
        params.window_len = w;
        params.stride = w;
    }
    let entities = annotate_posts(&posts, &lists);
    let set = detect_narratives(&posts, &entities, &params)?;
    let events = set.clusters.iter().filter(|c| c.is_event).count();
    println!(
        "{} posts, {} windows, {} clusters ({events} bursts), {} narratives",
        posts.len(),
        set.windows.len(),
        set.clusters.len(),
        set.narratives.len()
    );

    let mut longest: Vec<_> = set.narratives.iter().collect();
    longest.sort_by(|a, b| {
        b.post_ids
            .len()
            .cmp(&a.post_ids.len())
            .then(a.narrative_id.cmp(&b.narrative_id))
    });
    for n in longest.iter().take(8) {
        let sig: Vec<String> = n.entity_signature.iter().take(4).map(ToString::to_string).collect();
        println!(
            "{}  windows {}..={}  {:>4} posts  {:?}  {}{}",
            n.narrative_id,
            n.windows[0],
            n.windows[n.windows.len() - 1],
            n.post_ids.len(),
            n.platforms,
            sig.join(" "),
            n.split_from
                .as_deref()
                .map(|s| format!("  (split from {s})"))
                .unwrap_or_default()
        );
    }
    Ok(())
}
