use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use log::info;

use narratrace::classify::calibrate;
use narratrace::config::PipelineConfig;
use narratrace::pipeline::{self, labeled_scores, with_threads, Artifact, Stage};
use narratrace::synthgen::{self, GroundTruth};

/// Narrative detection and coordinated-inauthentic-behavior scoring over
/// multi-platform post streams.
#[derive(Parser, Debug)]
#[command(name = "narratrace", version)]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalOpts {
    /// Pipeline config (TOML). Shipped defaults apply to anything it leaves out.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory for artifacts.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Top-level seed; for `synth`, the scenario seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Window length in seconds; also sets the stride (tumbling windows).
    #[arg(long, global = true)]
    window: Option<i64>,
    /// Worker threads, 0 for every core. Results are identical either way.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Minimum co-occurrence edge weight.
    #[arg(long, global = true)]
    theta_edge: Option<f64>,
    /// Minimum Jaccard to link clusters across windows.
    #[arg(long, global = true)]
    tau_link: Option<f64>,
    /// Minimum verified Jaccard for near-duplicates.
    #[arg(long, global = true)]
    j_dup: Option<f64>,
    /// Synchrony window in seconds.
    #[arg(long, global = true)]
    sync_window: Option<i64>,
    /// Any other parameter, as `section.key=value`. Repeatable; applied last.
    #[arg(long = "set", value_name = "KEY=VALUE", global = true)]
    set: Vec<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Read platform files into one time-ordered post stream.
    Ingest,
    /// Detect and chain narratives from an ingest artifact.
    Narratives(StageInput),
    /// Score and label narratives.
    Classify(StageInput),
    /// Group accounts in orchestrated narratives into candidate actor groups.
    Attribute(StageInput),
    /// Compute impact metrics and write the final report.
    Impact(StageInput),
    /// Generate a labeled synthetic scenario with matching config.
    Synth,
    /// Run every stage, writing all artifacts.
    RunAll,
    /// Fit fusion weights from an assessments artifact and ground truth.
    Calibrate(CalibrateArgs),
}

#[derive(Args, Debug)]
struct StageInput {
    /// Previous stage's artifact; defaults to its file in the output directory.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CalibrateArgs {
    /// Assessments artifact; defaults to the one in the output directory.
    #[arg(long)]
    assessments: Option<PathBuf>,
    /// Ground-truth file written by `synth`.
    #[arg(long)]
    truth: PathBuf,
}

fn effective_config(o: &GlobalOpts) -> Result<PipelineConfig> {
    let mut cfg = match &o.config {
        Some(p) => PipelineConfig::load(p)?,
        None => PipelineConfig::default(),
    };
    if let Some(out) = &o.out {
        cfg.out_dir = out.clone();
    }
    if let Some(seed) = o.seed {
        cfg.seed = seed;
        cfg.synth.seed = seed;
    }
    if let Some(w) = o.window {
        cfg.narratives.window_len = w;
        cfg.narratives.stride = w;
    }
    if let Some(t) = o.threads {
        cfg.threads = t;
    }
    if let Some(v) = o.theta_edge {
        cfg.narratives.theta_edge = v;
    }
    if let Some(v) = o.tau_link {
        cfg.narratives.tau_link = v;
    }
    if let Some(v) = o.j_dup {
        cfg.coordination.lsh.j_dup = v;
    }
    if let Some(v) = o.sync_window {
        cfg.coordination.sync_window_secs = v;
    }
    for s in &o.set {
        cfg.set(s)?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run_one(stage: Stage, input: &StageInput, cfg: &PipelineConfig) -> Result<()> {
    let prev = match stage.previous() {
        Some(p) => {
            let path = input.input.clone().unwrap_or_else(|| cfg.out_dir.join(p.file_name()));
            Some(Artifact::read(&path, p)?)
        }
        None => None,
    };
    let art = with_threads(cfg.threads, || pipeline::run_stage(stage, prev, cfg))??;
    let path = pipeline::write_stage(&art, &cfg.out_dir)?;
    println!("{}", path.display());
    Ok(())
}

fn synth(cfg: &PipelineConfig) -> Result<()> {
    let scenario = synthgen::generate(&cfg.synth)?;
    let files = scenario.write(&cfg.out_dir)?;
    println!(
        "{} posts, {} accounts, {} campaigns -> {}",
        scenario.posts.len(),
        scenario.accounts.len(),
        scenario.campaigns.len(),
        files.dir.display()
    );
    println!("config: {}", files.pipeline_config.display());
    println!("ground truth: {}", files.ground_truth.display());
    Ok(())
}

fn run_calibrate(args: &CalibrateArgs, cfg: &PipelineConfig) -> Result<()> {
    let path = args
        .assessments
        .clone()
        .unwrap_or_else(|| cfg.out_dir.join(Stage::Classify.file_name()));
    let art = read_assessments(&path)?;
    let truth = GroundTruth::load(&args.truth)?;
    let data = labeled_scores(art.assessment_list()?, &art.narrative_set()?.narratives, &truth);
    let fit = calibrate(&data, &cfg.calibrate_params())?;
    let out = cfg.out_dir.join("calibration.json");
    std::fs::create_dir_all(&cfg.out_dir).with_context(|| format!("creating {}", cfg.out_dir.display()))?;
    let mut text = serde_json::to_string_pretty(&fit)?;
    text.push('\n');
    std::fs::write(&out, text).with_context(|| format!("writing {}", out.display()))?;
    let w = &fit.weights;
    println!(
        "fitted on {} narratives ({} orchestrated), accuracy {:.3}",
        fit.examples, fit.positives, fit.training_accuracy
    );
    println!(
        "--set classify.fusion.deception={} --set classify.fusion.coordination={} --set classify.fusion.agenda={} --set classify.fusion.bias={}",
        w.deception, w.coordination, w.agenda, w.bias
    );
    println!("{}", out.display());
    Ok(())
}

/// Accept any artifact from classify onwards; they all carry assessments.
fn read_assessments(path: &Path) -> Result<Artifact> {
    let mut last = None;
    for stage in [Stage::Classify, Stage::Attribute, Stage::Impact] {
        match Artifact::read(path, stage) {
            Ok(a) => return Ok(a),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("tried at least one stage").into())
}

fn run(cli: Cli) -> Result<()> {
    let cfg = effective_config(&cli.opts)?;
    info!("config fingerprint {}", cfg.fingerprint());
    match &cli.command {
        Command::Ingest => run_one(Stage::Ingest, &StageInput { input: None }, &cfg),
        Command::Narratives(i) => run_one(Stage::Narratives, i, &cfg),
        Command::Classify(i) => run_one(Stage::Classify, i, &cfg),
        Command::Attribute(i) => run_one(Stage::Attribute, i, &cfg),
        Command::Impact(i) => run_one(Stage::Impact, i, &cfg),
        Command::Synth => synth(&cfg),
        Command::RunAll => {
            with_threads(cfg.threads, || pipeline::run_all(&cfg))??;
            println!("{}", cfg.out_dir.join(Stage::Impact.file_name()).display());
            Ok(())
        }
        Command::Calibrate(args) => run_calibrate(args, &cfg),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
