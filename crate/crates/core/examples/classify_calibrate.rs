//! Fit the fusion weights on a labeled synthetic scenario, then re-label
//! with the fitted weights.

use narratrace::classify::{calibrate, reassess};
use narratrace::config::PipelineConfig;
use narratrace::pipeline::{analyze, labeled_scores, recovery};
use narratrace::synthgen::{generate, ScenarioConfig};

fn main() -> narratrace::Result<()> {
    let scenario = generate(&ScenarioConfig::default())?;
    let truth = scenario.ground_truth();
    let mut cfg = PipelineConfig::default();
    let report = analyze(
        scenario.unified_posts(),
        scenario.source_lists()?,
        scenario.articles.clone(),
        &cfg,
    )?;
    let narratives = &report.narrative_set()?.narratives;
    let assessments = report.assessment_list()?;

    let data = labeled_scores(assessments, narratives, &truth);
    let fit = calibrate(&data, &cfg.calibrate_params())?;
    let w = &fit.weights;
    println!(
        "{} narratives, {} orchestrated; {} iterations, log loss {:.4}, accuracy {:.3}",
        fit.examples, fit.positives, fit.iterations, fit.log_loss, fit.training_accuracy
    );
    println!(
        "weights: deception {:.3}, coordination {:.3}, agenda {:.3}, bias {:.3}",
        w.deception, w.coordination, w.agenda, w.bias
    );

    cfg.classify.fusion = fit.weights.clone();
    let params = cfg.scoring_params();
    let relabeled = assessments
        .iter()
        .map(|a| reassess(a, &params))
        .collect::<narratrace::Result<Vec<_>>>()?;
    let before = recovery(assessments, narratives, &truth);
    let after = recovery(&relabeled, narratives, &truth);
    println!(
        "shipped weights: precision {:.3}, recall {:.3}",
        before.precision, before.recall
    );
    println!(
        "fitted weights:  precision {:.3}, recall {:.3}",
        after.precision, after.recall
    );
    Ok(())
}
