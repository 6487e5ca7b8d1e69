//! `mvmanifold` — multi-view manifold learning benchmark CLI.
//!
//! Subcommands: `run` (embed + cluster + evaluate, single parameter or a
//! sweep over the tuning grid), `generate` (synthetic scenarios to CSV),
//! `ablate` (view-subset protocol). Exit codes: 0 success, 2 bad
//! parameter, 3 data problem, 4 numeric failure, 5 io.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mvmanifold::harness::mean_sd;
use mvmanifold::pretrain::{PretrainConfig, PretrainMode};
use mvmanifold::*;

#[derive(Parser)]
#[command(name = "mvmanifold", version, about = "Multi-view manifold learning benchmark")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Embed a dataset, cluster the embedding and report metrics.
    Run(RunArgs),
    /// Generate a synthetic scenario and write it as CSV files.
    Generate(GenerateArgs),
    /// Run a method on every view subset and report metrics per subset.
    Ablate(AblateArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum PretrainArg {
    None,
    Pca,
    Multicca,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClusterArg {
    Kmeans,
    Dbscan,
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricArg {
    Acc,
    Nmi,
    Ri,
    Ari,
}

impl MetricArg {
    fn to_metric(self) -> SelectMetric {
        match self {
            MetricArg::Acc => SelectMetric::Acc,
            MetricArg::Nmi => SelectMetric::Nmi,
            MetricArg::Ri => SelectMetric::Ri,
            MetricArg::Ari => SelectMetric::Ari,
        }
    }
}

#[derive(Args)]
struct DataArgs {
    /// Scenario name (mmds, nds, mcs, nds-extra:<count>) or a directory of
    /// view CSV files (labels.csv holds ground truth).
    #[arg(long)]
    data: String,
    /// Seed for synthetic generation.
    #[arg(long, default_value_t = 0)]
    data_seed: u64,
    /// Input CSV files carry a header row.
    #[arg(long)]
    header: bool,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    data: DataArgs,
    /// Method id: tsne, tsne-concat, msne, multisne, lle, lle-concat,
    /// mlle, multille, isomap, isomap-concat, misomap, multiisomap.
    #[arg(long)]
    method: String,
    /// Perplexity / neighbor count, or "sweep" for the tuning grid.
    #[arg(long, visible_alias = "perplexity", visible_alias = "nn", default_value = "30")]
    param: String,
    /// Tuning grid for --param sweep (comma-separated).
    #[arg(long)]
    grid: Option<String>,
    /// Selection metric for sweeps.
    #[arg(long, value_enum, default_value_t = MetricArg::Nmi)]
    metric: MetricArg,
    /// Pre-training (defaults to pca for SNE-family methods, none otherwise).
    #[arg(long, value_enum)]
    pretrain: Option<PretrainArg>,
    /// Variance fraction PCA must retain.
    #[arg(long, default_value_t = 0.8)]
    pca_var: f64,
    #[arg(long, value_enum, default_value_t = ClusterArg::Kmeans)]
    cluster: ClusterArg,
    /// Cluster count for K-means (defaults to the label count).
    #[arg(long)]
    k: Option<usize>,
    /// DBSCAN neighborhood radius (defaults to the k-distance elbow).
    #[arg(long)]
    eps: Option<f64>,
    /// DBSCAN core-point threshold.
    #[arg(long, default_value_t = 5)]
    min_pts: usize,
    /// Embedding repeats for stochastic methods.
    #[arg(long, default_value_t = 10)]
    repeats: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// View weights: uniform, auto (multisne only), or csv:<path>.
    #[arg(long, default_value = "uniform")]
    weights: String,
    /// Gradient-descent iterations for SNE-family methods.
    #[arg(long, default_value_t = 1000)]
    iters: usize,
    /// Optional relative cost-change stopping tolerance.
    #[arg(long)]
    stop_tol: Option<f64>,
    /// Disable early exaggeration.
    #[arg(long)]
    no_early_exaggeration: bool,
    /// Output dimension.
    #[arg(long, default_value_t = 2)]
    d: usize,
    /// View index for single-view methods.
    #[arg(long, default_value_t = 0)]
    view: usize,
    /// Eigendecompose the geodesic matrix directly instead of classical MDS.
    #[arg(long)]
    literal_eigen: bool,
    /// K-means restarts per clustering.
    #[arg(long, default_value_t = 10)]
    kmeans_restarts: usize,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct GenerateArgs {
    /// Scenario name: mmds, nds, mcs, nds-extra:<count>.
    #[arg(long)]
    scenario: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct AblateArgs {
    #[command(flatten)]
    data: DataArgs,
    #[arg(long)]
    method: String,
    #[arg(long, visible_alias = "perplexity", visible_alias = "nn", default_value_t = 30.0)]
    param: f64,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = 3)]
    repeats: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum)]
    pretrain: Option<PretrainArg>,
    #[arg(long, default_value_t = 0.8)]
    pca_var: f64,
    #[arg(long, default_value_t = 10)]
    kmeans_restarts: usize,
    #[arg(long)]
    out: PathBuf,
}

fn parse_scenario(name: &str, seed: u64) -> Option<SyntheticScenario> {
    let kind = match name.to_ascii_lowercase().as_str() {
        "mmds" => ScenarioKind::Mmds,
        "nds" => ScenarioKind::Nds,
        "mcs" => ScenarioKind::Mcs,
        other => {
            let count = other.strip_prefix("nds-extra:")?.parse().ok()?;
            ScenarioKind::NdsExtraNoise(count)
        }
    };
    Some(SyntheticScenario::new(kind, seed))
}

fn load_data(args: &DataArgs) -> Result<MultiViewDataset> {
    if let Some(scenario) = parse_scenario(&args.data, args.data_seed) {
        return generate_synthetic(&scenario);
    }
    let dir = Path::new(&args.data);
    if !dir.is_dir() {
        return Err(Error::Parameter(format!(
            "--data {:?} is neither a scenario name nor a directory",
            args.data
        )));
    }
    let mut views: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            p.extension().is_some_and(|x| x == "csv")
                && p.file_name().is_some_and(|n| n != "labels.csv")
        })
        .collect();
    views.sort();
    if views.is_empty() {
        return Err(Error::Parameter(format!("no view CSV files in {dir:?}")));
    }
    let labels = dir.join("labels.csv");
    let label_path = labels.exists().then_some(labels.as_path());
    load_multiview(&views, label_path, args.header)
}

fn parse_weights(spec: &str, has_header: bool) -> Result<WeightSpec> {
    match spec {
        "uniform" => Ok(WeightSpec::Uniform),
        "auto" => Ok(WeightSpec::Auto),
        other => {
            let path = other.strip_prefix("csv:").ok_or_else(|| {
                Error::Parameter(format!(
                    "--weights must be uniform, auto or csv:<path>, got {other:?}"
                ))
            })?;
            let m = dataset::read_numeric_csv(Path::new(path), has_header)?;
            let values: Vec<f64> = m.iter().copied().collect();
            Ok(WeightSpec::Fixed(values))
        }
    }
}

fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    spec.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::Parameter(format!("bad grid value {s:?}")))
        })
        .collect()
}

fn cluster_embedding(
    args: &RunArgs,
    coords: &DMatrix<f64>,
    k: usize,
    seed: u64,
) -> Result<ClusteringResult> {
    match args.cluster {
        ClusterArg::Kmeans => kmeans(coords, k, args.kmeans_restarts, seed),
        ClusterArg::Dbscan => {
            let eps = match args.eps {
                Some(e) => e,
                None => suggest_eps(coords, args.min_pts.min(coords.nrows() - 1))?,
            };
            dbscan(coords, eps, args.min_pts)
        }
    }
}

fn method_config(args: &RunArgs, parameter: f64) -> Result<MethodConfig> {
    Ok(MethodConfig {
        parameter,
        d: args.d,
        seed: args.seed,
        n_iter: args.iters,
        early_exaggeration: !args.no_early_exaggeration,
        stop_tol: args.stop_tol,
        weights: parse_weights(&args.weights, args.data.header)?,
        pretrain: args.pretrain.map(|p| PretrainConfig {
            mode: match p {
                PretrainArg::None => PretrainMode::None,
                PretrainArg::Pca => PretrainMode::Pca,
                PretrainArg::Multicca => PretrainMode::MultiCca,
            },
            variance_threshold: args.pca_var,
            n_components: None,
        }),
        view: args.view,
        embed_style: if args.literal_eigen {
            EmbedStyle::LiteralEigen
        } else {
            EmbedStyle::DoubleCentered
        },
        ..MethodConfig::default()
    })
}

fn resolve_k(explicit: Option<usize>, ds: &MultiViewDataset) -> Result<usize> {
    if let Some(k) = explicit {
        return Ok(k);
    }
    let labels = ds.labels().ok_or_else(|| {
        Error::Parameter("--k is required when the dataset has no labels".into())
    })?;
    let mut distinct = labels.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    Ok(distinct.len())
}

fn write_metrics_csv(path: &Path, rows: &[Scores]) -> Result<()> {
    let mut out = String::from("stat,acc,nmi,ri,ari,silhouette\n");
    for (i, s) in rows.iter().enumerate() {
        out.push_str(&format!(
            "repeat_{i},{},{},{},{},{}\n",
            s.acc, s.nmi, s.ri, s.ari, s.silhouette
        ));
    }
    let col = |f: fn(&Scores) -> f64| -> Vec<f64> { rows.iter().map(f).collect() };
    let stats: [(&str, Vec<f64>); 5] = [
        ("acc", col(|s| s.acc)),
        ("nmi", col(|s| s.nmi)),
        ("ri", col(|s| s.ri)),
        ("ari", col(|s| s.ari)),
        ("silhouette", col(|s| s.silhouette)),
    ];
    for row_name in ["mean", "sd"] {
        out.push_str(row_name);
        for (_, values) in &stats {
            let (mean, sd) = mean_sd(values);
            out.push_str(&format!(",{}", if row_name == "mean" { mean } else { sd }));
        }
        out.push('\n');
    }
    std::fs::write(path, out)?;
    Ok(())
}

fn cmd_run(args: &RunArgs) -> Result<()> {
    let ds = load_data(&args.data)?;
    let method = MethodId::parse(&args.method)?;
    std::fs::create_dir_all(&args.out)?;

    let parameter = if args.param == "sweep" {
        let grid = match &args.grid {
            Some(g) => parse_grid(g)?,
            None => default_grid(),
        };
        let spec = SweepSpec {
            method,
            grid,
            repeats: if method.is_stochastic() { args.repeats } else { 1 },
            kmeans_k: resolve_k(args.k, &ds)?,
            kmeans_restarts: args.kmeans_restarts,
            seed: args.seed,
            select_metric: args.metric.to_metric(),
            base: method_config(args, 0.0)?,
        };
        let report = run_sweep(&ds, &spec)?;
        emit_sweep(&report, &args.out.join("sweep.csv"))?;
        let (param, metric) = report.optimum.ok_or_else(|| {
            Error::Numerical("every sweep cell failed; see sweep.csv".into())
        })?;
        println!("sweep optimum: parameter={param} mean_metric={metric:.4}");
        param
    } else {
        args.param
            .parse::<f64>()
            .map_err(|_| Error::Parameter(format!("bad --param {:?}", args.param)))?
    };

    let repeats = if method.is_stochastic() { args.repeats.max(1) } else { 1 };
    let mut scores_rows: Vec<Scores> = Vec::new();
    let mut first_run: Option<MethodRun> = None;
    let mut first_pred: Option<Vec<i64>> = None;
    for r in 0..repeats {
        let mut cfg = method_config(args, parameter)?;
        cfg.seed = mvmanifold::harness::derive_run_seed(args.seed, r as u64);
        let run = run_method(&ds, method, &cfg)?;
        let clustering = cluster_embedding(
            args,
            &run.embedding.coords,
            resolve_k(args.k, &ds).unwrap_or(2),
            cfg.seed ^ 0xC1,
        )?;
        if let Some(truth) = ds.labels() {
            let aligned = run.embedding.align_labels(truth);
            scores_rows.push(evaluate_clustering(
                &run.embedding.coords,
                &clustering.labels,
                &aligned,
            )?);
        }
        if first_run.is_none() {
            first_run = Some(run);
            first_pred = Some(clustering.labels);
        }
    }
    let run = first_run.expect("at least one repeat");

    emit_embedding(&run.embedding, ds.labels(), &args.out.join("embedding.csv"))?;
    let warnings = emit_scatter(&run.embedding, ds.labels(), &args.out.join("scatter.svg"))?;
    for w in warnings {
        eprintln!("warning: {w}");
    }
    if let Some(traj) = &run.weight_trajectory {
        emit_weights(traj, &args.out.join("weights.csv"))?;
        if let Some(final_w) = traj.last() {
            println!("final view weights: {final_w:?}");
        }
    }
    if !run.embedding.dropped.is_empty() {
        eprintln!(
            "warning: {} samples outside the largest graph component were dropped: {:?}",
            run.embedding.dropped.len(),
            run.embedding.dropped
        );
    }
    if !scores_rows.is_empty() {
        write_metrics_csv(&args.out.join("metrics.csv"), &scores_rows)?;
        let accs: Vec<f64> = scores_rows.iter().map(|s| s.acc).collect();
        let nmis: Vec<f64> = scores_rows.iter().map(|s| s.nmi).collect();
        let (acc_mean, acc_sd) = mean_sd(&accs);
        let (nmi_mean, nmi_sd) = mean_sd(&nmis);
        println!(
            "{} parameter={parameter} repeats={repeats}: acc={acc_mean:.3} ({acc_sd:.3}) nmi={nmi_mean:.3} ({nmi_sd:.3})",
            method.name()
        );
    } else {
        let noise = first_pred
            .map(|p| p.iter().filter(|&&l| l == -1).count())
            .unwrap_or(0);
        println!(
            "{} parameter={parameter}: embedded {} samples (no labels; {} noise points)",
            method.name(),
            run.embedding.n_samples(),
            noise
        );
    }
    Ok(())
}

fn cmd_generate(args: &GenerateArgs) -> Result<()> {
    let scenario = parse_scenario(&args.scenario, args.seed)
        .ok_or_else(|| Error::Parameter(format!("unknown scenario {:?}", args.scenario)))?;
    let ds = generate_synthetic(&scenario)?;
    save_dataset(&ds, &args.out)?;
    println!(
        "wrote {} views (N={}, p={}) and labels.csv to {:?}",
        ds.n_views(),
        ds.n_samples(),
        ds.view(0).ncols(),
        args.out
    );
    Ok(())
}

fn cmd_ablate(args: &AblateArgs) -> Result<()> {
    let ds = load_data(&args.data)?;
    let method = MethodId::parse(&args.method)?;
    let k = resolve_k(args.k, &ds)?;
    let cfg = MethodConfig {
        parameter: args.param,
        seed: args.seed,
        pretrain: args.pretrain.map(|p| PretrainConfig {
            mode: match p {
                PretrainArg::None => PretrainMode::None,
                PretrainArg::Pca => PretrainMode::Pca,
                PretrainArg::Multicca => PretrainMode::MultiCca,
            },
            variance_threshold: args.pca_var,
            n_components: None,
        }),
        ..MethodConfig::default()
    };
    let report = view_ablation(&ds, method, &cfg, k, args.repeats, args.kmeans_restarts)?;
    std::fs::create_dir_all(args.out.parent().unwrap_or(Path::new(".")))?;
    let mut out = String::from("views,acc,nmi,ri,ari,silhouette,status\n");
    for row in &report.rows {
        let subset = row
            .views
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join("+");
        match &row.scores {
            Some(s) => out.push_str(&format!(
                "{subset},{},{},{},{},{},ok\n",
                s.acc, s.nmi, s.ri, s.ari, s.silhouette
            )),
            None => out.push_str(&format!(
                "{subset},nan,nan,nan,nan,nan,error:{}\n",
                row.error.as_deref().unwrap_or("unknown").replace(',', ";")
            )),
        }
    }
    std::fs::write(&args.out, out)?;
    println!("wrote {} subset rows to {:?}", report.rows.len(), args.out);
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Generate(args) => cmd_generate(args),
        Command::Ablate(args) => cmd_ablate(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.category() as u8)
        }
    }
}
