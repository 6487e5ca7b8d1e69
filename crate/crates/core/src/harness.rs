//! Experiment orchestration: method dispatch, parameter sweeps over the
//! tuning grid, view ablation, and embedding/scatter export.
//!
//! The sweep runs the embed → K-means → evaluate loop per grid value and
//! repeat, derives every cell seed from the master seed so parallel or
//! re-ordered execution never changes output, and records failures as rows
//! instead of aborting.

use std::path::Path;
use std::time::Instant;

use nalgebra::DMatrix;

use crate::cluster::{evaluate_clustering, kmeans, Scores};
use crate::dataset::MultiViewDataset;
use crate::embedding::Embedding;
use crate::error::{Error, Result};
use crate::isomap::{run_isomap, run_misomap, run_multiisomap, EmbedStyle};
use crate::linalg::derive_seed;
use crate::lle::{run_lle, run_mlle, run_multille};
use crate::pretrain::{apply_pretrain, pca_reduce, PretrainConfig, PretrainMode};
use crate::sne::{run_msne, run_multisne, run_tsne, SneConfig, ViewWeights, WeightMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodId {
    Tsne,
    TsneConcat,
    Msne,
    MultiSne,
    Lle,
    LleConcat,
    Mlle,
    MultiLle,
    Isomap,
    IsomapConcat,
    Misomap,
    MultiIsomap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodFamily {
    Sne,
    Lle,
    Isomap,
}

impl MethodId {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "tsne" => Self::Tsne,
            "tsne-concat" | "sne-concat" => Self::TsneConcat,
            "msne" | "m-sne" => Self::Msne,
            "multisne" | "multi-sne" => Self::MultiSne,
            "lle" => Self::Lle,
            "lle-concat" => Self::LleConcat,
            "mlle" | "m-lle" => Self::Mlle,
            "multille" | "multi-lle" => Self::MultiLle,
            "isomap" => Self::Isomap,
            "isomap-concat" => Self::IsomapConcat,
            "misomap" | "m-isomap" => Self::Misomap,
            "multiisomap" | "multi-isomap" => Self::MultiIsomap,
            other => return Err(Error::Parameter(format!("unknown method {other:?}"))),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Tsne => "tsne",
            Self::TsneConcat => "tsne-concat",
            Self::Msne => "msne",
            Self::MultiSne => "multisne",
            Self::Lle => "lle",
            Self::LleConcat => "lle-concat",
            Self::Mlle => "mlle",
            Self::MultiLle => "multille",
            Self::Isomap => "isomap",
            Self::IsomapConcat => "isomap-concat",
            Self::Misomap => "misomap",
            Self::MultiIsomap => "multiisomap",
        }
    }

    pub fn family(&self) -> MethodFamily {
        match self {
            Self::Tsne | Self::TsneConcat | Self::Msne | Self::MultiSne => MethodFamily::Sne,
            Self::Lle | Self::LleConcat | Self::Mlle | Self::MultiLle => MethodFamily::Lle,
            Self::Isomap | Self::IsomapConcat | Self::Misomap | Self::MultiIsomap => {
                MethodFamily::Isomap
            }
        }
    }

    /// SNE-family runs depend on the seed; LLE/ISOMAP are deterministic.
    pub fn is_stochastic(&self) -> bool {
        self.family() == MethodFamily::Sne
    }
}

/// How view weights are chosen for a run.
#[derive(Debug, Clone, Default)]
pub enum WeightSpec {
    #[default]
    Uniform,
    /// KL-adaptive weights (multi-SNE only).
    Auto,
    Fixed(Vec<f64>),
}

impl WeightSpec {
    fn resolve(&self, m: usize) -> Result<ViewWeights> {
        match self {
            WeightSpec::Uniform => Ok(ViewWeights::uniform(m)),
            WeightSpec::Auto => Err(Error::Parameter(
                "auto weights only apply to multisne".into(),
            )),
            WeightSpec::Fixed(w) => {
                if w.len() != m {
                    return Err(Error::Parameter(format!(
                        "{} weights for {} views",
                        w.len(),
                        m
                    )));
                }
                ViewWeights::new(w.clone())
            }
        }
    }
}

/// Everything a single embedding run needs besides the dataset.
#[derive(Debug, Clone)]
pub struct MethodConfig {
    /// Perplexity (SNE family) or neighbor count (LLE/ISOMAP).
    pub parameter: f64,
    pub d: usize,
    pub seed: u64,
    pub n_iter: usize,
    pub learning_rate: f64,
    pub early_exaggeration: bool,
    pub stop_tol: Option<f64>,
    pub weights: WeightSpec,
    /// None picks the family default: PCA for SNE methods, none otherwise.
    pub pretrain: Option<PretrainConfig>,
    /// View index for the single-view methods.
    pub view: usize,
    pub embed_style: EmbedStyle,
}

impl Default for MethodConfig {
    fn default() -> Self {
        Self {
            parameter: 30.0,
            d: 2,
            seed: 0,
            n_iter: 1000,
            learning_rate: 100.0,
            early_exaggeration: true,
            stop_tol: None,
            weights: WeightSpec::Uniform,
            pretrain: None,
            view: 0,
            embed_style: EmbedStyle::DoubleCentered,
        }
    }
}

impl MethodConfig {
    fn sne_config(&self) -> SneConfig {
        SneConfig {
            perplexity: self.parameter,
            n_iter: self.n_iter,
            learning_rate: self.learning_rate,
            early_exaggeration: self.early_exaggeration,
            d: self.d,
            seed: self.seed,
            stop_tol: self.stop_tol,
            ..SneConfig::default()
        }
    }

    fn neighbor_count(&self) -> Result<usize> {
        let k = self.parameter.round();
        if (self.parameter - k).abs() > 1e-9 || k < 1.0 {
            return Err(Error::Parameter(format!(
                "neighbor count must be a positive integer, got {}",
                self.parameter
            )));
        }
        Ok(k as usize)
    }

    fn resolved_pretrain(&self, method: MethodId) -> PretrainConfig {
        self.pretrain.clone().unwrap_or_else(|| match method.family() {
            MethodFamily::Sne => PretrainConfig::default(),
            _ => PretrainConfig {
                mode: PretrainMode::None,
                ..PretrainConfig::default()
            },
        })
    }
}

/// Embedding plus optimizer traces where the method has them.
#[derive(Debug, Clone)]
pub struct MethodRun {
    pub embedding: Embedding,
    pub costs: Option<Vec<f64>>,
    pub weight_trajectory: Option<Vec<Vec<f64>>>,
}

fn plain_run(embedding: Embedding) -> MethodRun {
    MethodRun {
        embedding,
        costs: None,
        weight_trajectory: None,
    }
}

fn sne_run(run: crate::sne::SneRun) -> MethodRun {
    MethodRun {
        embedding: run.embedding,
        costs: Some(run.costs),
        weight_trajectory: run.weight_trajectory,
    }
}

/// Run one manifold method end to end (pretraining included).
pub fn run_method(ds: &MultiViewDataset, method: MethodId, cfg: &MethodConfig) -> Result<MethodRun> {
    let pretrain = cfg.resolved_pretrain(method);
    // concat methods reduce the stacked matrix, everything else per view
    let pretrained = || apply_pretrain(ds, &pretrain);
    let concat_matrix = || -> Result<DMatrix<f64>> {
        let stacked = ds.concat_views();
        match pretrain.mode {
            PretrainMode::None => Ok(stacked),
            _ => pca_reduce(&stacked, &pretrain),
        }
    };
    let pick_view = |prepared: &MultiViewDataset| -> Result<DMatrix<f64>> {
        if cfg.view >= prepared.n_views() {
            return Err(Error::Parameter(format!(
                "view {} out of range ({} views)",
                cfg.view,
                prepared.n_views()
            )));
        }
        Ok(prepared.view(cfg.view).clone())
    };

    match method {
        MethodId::Tsne => {
            let view = pick_view(&pretrained()?)?;
            Ok(sne_run(run_tsne(&view, &cfg.sne_config())?))
        }
        MethodId::TsneConcat => {
            let mut run = run_tsne(&concat_matrix()?, &cfg.sne_config())?;
            run.embedding.method = "tsne-concat".into();
            Ok(sne_run(run))
        }
        MethodId::Msne => {
            let prepared = pretrained()?;
            let beta = cfg.weights.resolve(prepared.n_views())?;
            Ok(sne_run(run_msne(&prepared, &cfg.sne_config(), &beta)?))
        }
        MethodId::MultiSne => {
            let prepared = pretrained()?;
            let mode = match &cfg.weights {
                WeightSpec::Auto => WeightMode::Auto,
                spec => WeightMode::Fixed(spec.resolve(prepared.n_views())?),
            };
            Ok(sne_run(run_multisne(&prepared, &cfg.sne_config(), mode)?))
        }
        MethodId::Lle => {
            let view = pick_view(&pretrained()?)?;
            Ok(plain_run(run_lle(&view, cfg.neighbor_count()?, cfg.d)?))
        }
        MethodId::LleConcat => {
            let mut emb = run_lle(&concat_matrix()?, cfg.neighbor_count()?, cfg.d)?;
            emb.method = "lle-concat".into();
            Ok(plain_run(emb))
        }
        MethodId::Mlle => {
            let prepared = pretrained()?;
            let beta = cfg.weights.resolve(prepared.n_views())?;
            Ok(plain_run(run_mlle(
                &prepared,
                cfg.neighbor_count()?,
                &beta,
                cfg.d,
            )?))
        }
        MethodId::MultiLle => {
            let prepared = pretrained()?;
            let alpha = cfg.weights.resolve(prepared.n_views())?;
            Ok(plain_run(run_multille(
                &prepared,
                cfg.neighbor_count()?,
                &alpha,
                cfg.d,
            )?))
        }
        MethodId::Isomap => {
            let view = pick_view(&pretrained()?)?;
            Ok(plain_run(run_isomap(
                &view,
                cfg.neighbor_count()?,
                cfg.d,
                cfg.embed_style,
            )?))
        }
        MethodId::IsomapConcat => {
            let mut emb =
                run_isomap(&concat_matrix()?, cfg.neighbor_count()?, cfg.d, cfg.embed_style)?;
            emb.method = "isomap-concat".into();
            Ok(plain_run(emb))
        }
        MethodId::Misomap => {
            let prepared = pretrained()?;
            let beta = cfg.weights.resolve(prepared.n_views())?;
            Ok(plain_run(run_misomap(
                &prepared,
                cfg.neighbor_count()?,
                &beta,
                cfg.d,
                cfg.embed_style,
            )?))
        }
        MethodId::MultiIsomap => {
            let prepared = pretrained()?;
            let w = cfg.weights.resolve(prepared.n_views())?;
            Ok(plain_run(run_multiisomap(
                &prepared,
                cfg.neighbor_count()?,
                &w,
                cfg.d,
                cfg.embed_style,
            )?))
        }
    }
}

/// Embed, K-means cluster, and score against the dataset's labels.
pub fn run_and_score(
    ds: &MultiViewDataset,
    method: MethodId,
    cfg: &MethodConfig,
    k: usize,
    kmeans_restarts: usize,
    kmeans_seed: u64,
) -> Result<(Scores, MethodRun)> {
    let truth = ds
        .labels()
        .ok_or_else(|| Error::Parameter("scoring needs ground-truth labels".into()))?;
    let run = run_method(ds, method, cfg)?;
    let clustering = kmeans(&run.embedding.coords, k, kmeans_restarts, kmeans_seed)?;
    let aligned = run.embedding.align_labels(truth);
    let scores = evaluate_clustering(&run.embedding.coords, &clustering.labels, &aligned)?;
    Ok((scores, run))
}

/// The tuning grid from the experimental protocol.
pub fn default_grid() -> Vec<f64> {
    vec![2.0, 10.0, 20.0, 50.0, 80.0, 100.0, 200.0]
}

/// Deterministic seed for the r-th repeat of a run.
pub fn derive_run_seed(master: u64, repeat: u64) -> u64 {
    derive_seed(master, repeat)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SelectMetric {
    Acc,
    #[default]
    Nmi,
    Ri,
    Ari,
}

impl SelectMetric {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "acc" => Self::Acc,
            "nmi" => Self::Nmi,
            "ri" => Self::Ri,
            "ari" => Self::Ari,
            other => return Err(Error::Parameter(format!("unknown metric {other:?}"))),
        })
    }

    pub fn pick(&self, s: &Scores) -> f64 {
        match self {
            Self::Acc => s.acc,
            Self::Nmi => s.nmi,
            Self::Ri => s.ri,
            Self::Ari => s.ari,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub method: MethodId,
    pub grid: Vec<f64>,
    pub repeats: usize,
    pub kmeans_k: usize,
    pub kmeans_restarts: usize,
    pub seed: u64,
    pub select_metric: SelectMetric,
    /// Template for every cell; `parameter` and `seed` are overridden.
    pub base: MethodConfig,
}

#[derive(Debug, Clone)]
pub struct SweepRow {
    pub method: String,
    pub parameter: f64,
    pub repeat: usize,
    pub scores: Option<Scores>,
    pub wall_time: f64,
    pub error: Option<String>,
}

#[derive(Debug, Clone)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    /// (parameter, mean selection metric) of the winning grid value.
    pub optimum: Option<(f64, f64)>,
}

impl SweepReport {
    pub fn mean_metric(&self, parameter: f64, metric: SelectMetric) -> Option<f64> {
        let values: Vec<f64> = self
            .rows
            .iter()
            .filter(|r| r.parameter == parameter)
            .filter_map(|r| r.scores.as_ref().map(|s| metric.pick(s)))
            .collect();
        if values.is_empty() {
            None
        } else {
            Some(values.iter().sum::<f64>() / values.len() as f64)
        }
    }
}

/// The three-step tuning loop (embed → K-means → evaluate) over the grid.
/// Deterministic for a fixed master seed; per-cell failures become rows.
pub fn run_sweep(ds: &MultiViewDataset, spec: &SweepSpec) -> Result<SweepReport> {
    if ds.labels().is_none() {
        return Err(Error::Parameter("sweep needs ground-truth labels".into()));
    }
    let n = ds.n_samples();
    if spec.grid.is_empty() {
        return Err(Error::Parameter("empty parameter grid".into()));
    }
    if let Some(&bad) = spec.grid.iter().find(|&&g| g >= n as f64) {
        return Err(Error::Parameter(format!(
            "grid value {bad} must be below N={n}"
        )));
    }
    if spec.repeats < 1 {
        return Err(Error::Parameter("repeats must be >= 1".into()));
    }

    let mut rows = Vec::with_capacity(spec.grid.len() * spec.repeats);
    for (gi, &param) in spec.grid.iter().enumerate() {
        // deterministic methods embed once per grid value
        let mut cached: Option<std::result::Result<MethodRun, String>> = None;
        for repeat in 0..spec.repeats {
            let cell = (gi * spec.repeats + repeat) as u64;
            let cell_seed = derive_seed(spec.seed, cell);
            let started = Instant::now();
            let mut cfg = spec.base.clone();
            cfg.parameter = param;
            cfg.seed = cell_seed;
            let run = if spec.method.is_stochastic() {
                run_method(ds, spec.method, &cfg)
            } else {
                cached
                    .get_or_insert_with(|| {
                        run_method(ds, spec.method, &cfg).map_err(|e| e.to_string())
                    })
                    .clone()
                    .map_err(Error::Parameter)
            };
            let outcome = run.and_then(|r| {
                let clustering = kmeans(
                    &r.embedding.coords,
                    spec.kmeans_k,
                    spec.kmeans_restarts,
                    derive_seed(cell_seed, 0xC1),
                )?;
                let truth = r.embedding.align_labels(ds.labels().expect("checked"));
                evaluate_clustering(&r.embedding.coords, &clustering.labels, &truth)
            });
            let wall_time = started.elapsed().as_secs_f64();
            match outcome {
                Ok(scores) => rows.push(SweepRow {
                    method: spec.method.name().into(),
                    parameter: param,
                    repeat,
                    scores: Some(scores),
                    wall_time,
                    error: None,
                }),
                Err(e) => rows.push(SweepRow {
                    method: spec.method.name().into(),
                    parameter: param,
                    repeat,
                    scores: None,
                    wall_time,
                    error: Some(e.to_string()),
                }),
            }
        }
    }

    let report = SweepReport { rows, optimum: None };
    let optimum = spec
        .grid
        .iter()
        .filter_map(|&p| report.mean_metric(p, spec.select_metric).map(|m| (p, m)))
        .max_by(|a, b| a.1.total_cmp(&b.1).then(b.0.total_cmp(&a.0)));
    Ok(SweepReport {
        optimum,
        ..report
    })
}

/// Per-subset report rows for the view-ablation protocol.
#[derive(Debug, Clone)]
pub struct AblationRow {
    pub views: Vec<usize>,
    pub scores: Option<Scores>,
    pub error: Option<String>,
}

#[derive(Debug, Clone)]
pub struct AblationReport {
    pub rows: Vec<AblationRow>,
}

impl AblationReport {
    pub fn find(&self, views: &[usize]) -> Option<&AblationRow> {
        self.rows.iter().find(|r| r.views == views)
    }
}

/// Run the method on every view subset of size ≥ 2 plus all singletons,
/// scoring each by K-means against the labels. Stochastic methods average
/// over `repeats` seeded runs.
pub fn view_ablation(
    ds: &MultiViewDataset,
    method: MethodId,
    cfg: &MethodConfig,
    k: usize,
    repeats: usize,
    kmeans_restarts: usize,
) -> Result<AblationReport> {
    let m = ds.n_views();
    if m < 2 {
        return Err(Error::Parameter("ablation needs at least 2 views".into()));
    }
    if m > 12 {
        return Err(Error::Parameter("too many views to enumerate subsets".into()));
    }
    let mut subsets: Vec<Vec<usize>> = (0..m).map(|v| vec![v]).collect();
    for mask in 1u32..(1 << m) {
        if mask.count_ones() >= 2 {
            subsets.push((0..m).filter(|v| mask & (1 << v) != 0).collect());
        }
    }

    let mut rows = Vec::with_capacity(subsets.len());
    for (si, views) in subsets.into_iter().enumerate() {
        let sub = ds.select_views(&views)?;
        let repeats = if method.is_stochastic() { repeats.max(1) } else { 1 };
        let mut collected: Vec<Scores> = Vec::new();
        let mut error = None;
        for r in 0..repeats {
            let mut run_cfg = cfg.clone();
            run_cfg.seed = derive_seed(cfg.seed, (si * 1000 + r) as u64);
            match run_and_score(
                &sub,
                method,
                &run_cfg,
                k,
                kmeans_restarts,
                derive_seed(run_cfg.seed, 0xC1),
            ) {
                Ok((s, _)) => collected.push(s),
                Err(e) => {
                    error = Some(e.to_string());
                    break;
                }
            }
        }
        let scores = if collected.is_empty() {
            None
        } else {
            let n = collected.len() as f64;
            Some(Scores {
                acc: collected.iter().map(|s| s.acc).sum::<f64>() / n,
                nmi: collected.iter().map(|s| s.nmi).sum::<f64>() / n,
                ri: collected.iter().map(|s| s.ri).sum::<f64>() / n,
                ari: collected.iter().map(|s| s.ari).sum::<f64>() / n,
                silhouette: collected.iter().map(|s| s.silhouette).sum::<f64>() / n,
            })
        };
        rows.push(AblationRow {
            views,
            scores,
            error,
        });
    }
    Ok(AblationReport { rows })
}

/// Write embedding coordinates (plus optional labels) as plain CSV.
/// `{}` float formatting keeps the round trip exact.
pub fn emit_embedding(emb: &Embedding, labels: Option<&[i64]>, path: &Path) -> Result<()> {
    let aligned = labels.map(|l| emb.align_labels(l));
    let mut out = String::new();
    for i in 0..emb.n_samples() {
        for j in 0..emb.dim() {
            if j > 0 {
                out.push(',');
            }
            out.push_str(&format!("{}", emb.coords[(i, j)]));
        }
        if let Some(ref l) = aligned {
            out.push_str(&format!(",{}", l[i]));
        }
        out.push('\n');
    }
    std::fs::write(path, out)?;
    Ok(())
}

/// 10-color categorical palette, cycled beyond 10 labels.
pub const PALETTE: [&str; 10] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf",
];

/// Axis-free SVG scatter of the first two embedding coordinates, one color
/// per label with a legend. Returns any warnings (e.g. extra dimensions
/// were ignored).
pub fn emit_scatter(emb: &Embedding, labels: Option<&[i64]>, path: &Path) -> Result<Vec<String>> {
    let mut warnings = Vec::new();
    if emb.dim() > 2 {
        warnings.push(format!(
            "embedding has {} dimensions; plotting the first two",
            emb.dim()
        ));
    }
    let aligned = labels.map(|l| emb.align_labels(l));
    let n = emb.n_samples();
    let (width, height, margin) = (640.0f64, 640.0f64, 40.0f64);
    let xs: Vec<f64> = (0..n).map(|i| emb.coords[(i, 0)]).collect();
    let ys: Vec<f64> = (0..n)
        .map(|i| if emb.dim() > 1 { emb.coords[(i, 1)] } else { 0.0 })
        .collect();
    let span = |v: &[f64]| -> (f64, f64) {
        let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if (hi - lo).abs() < 1e-30 {
            (lo - 1.0, hi + 1.0)
        } else {
            (lo, hi)
        }
    };
    let (x0, x1) = span(&xs);
    let (y0, y1) = span(&ys);
    let sx = |x: f64| margin + (x - x0) / (x1 - x0) * (width - 2.0 * margin);
    let sy = |y: f64| height - margin - (y - y0) / (y1 - y0) * (height - 2.0 * margin);

    let distinct: Vec<i64> = aligned
        .as_ref()
        .map(|l| {
            let mut d = l.clone();
            d.sort_unstable();
            d.dedup();
            d
        })
        .unwrap_or_default();
    let color_of = |label: i64| -> &str {
        match distinct.binary_search(&label) {
            Ok(idx) => PALETTE[idx % PALETTE.len()],
            Err(_) => PALETTE[0],
        }
    };
    let legend_width = if distinct.is_empty() { 0.0 } else { 130.0 };

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n",
        width + legend_width,
        height,
        width + legend_width,
        height
    ));
    svg.push_str(&format!(
        "<rect width=\"{}\" height=\"{}\" fill=\"white\"/>\n",
        width + legend_width,
        height
    ));
    for i in 0..n {
        let color = match aligned.as_ref() {
            Some(l) => color_of(l[i]),
            None => PALETTE[0],
        };
        svg.push_str(&format!(
            "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3\" fill=\"{}\" fill-opacity=\"0.8\"/>\n",
            sx(xs[i]),
            sy(ys[i]),
            color
        ));
    }
    for (idx, label) in distinct.iter().enumerate() {
        let ly = margin + idx as f64 * 22.0;
        svg.push_str(&format!(
            "<rect x=\"{:.1}\" y=\"{:.1}\" width=\"14\" height=\"14\" fill=\"{}\"/>\n",
            width + 10.0,
            ly,
            PALETTE[idx % PALETTE.len()]
        ));
        svg.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"14\">{}</text>\n",
            width + 30.0,
            ly + 12.0,
            label
        ));
    }
    svg.push_str("</svg>\n");
    std::fs::write(path, svg)?;
    Ok(warnings)
}

/// Write sweep rows plus the chosen optimum as CSV.
pub fn emit_sweep(report: &SweepReport, path: &Path) -> Result<()> {
    let mut out =
        String::from("method,parameter,repeat,acc,nmi,ri,ari,silhouette,wall_time,status\n");
    for r in &report.rows {
        match &r.scores {
            Some(s) => out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},ok\n",
                r.method, r.parameter, r.repeat, s.acc, s.nmi, s.ri, s.ari, s.silhouette,
                r.wall_time
            )),
            None => out.push_str(&format!(
                "{},{},{},nan,nan,nan,nan,nan,{},error:{}\n",
                r.method,
                r.parameter,
                r.repeat,
                r.wall_time,
                r.error.as_deref().unwrap_or("unknown").replace(',', ";")
            )),
        }
    }
    if let Some((param, metric)) = report.optimum {
        out.push_str(&format!("# optimum,parameter={param},mean_metric={metric}\n"));
    }
    std::fs::write(path, out)?;
    Ok(())
}

/// Write the per-iteration view-weight trajectory as CSV.
pub fn emit_weights(trajectory: &[Vec<f64>], path: &Path) -> Result<()> {
    let m = trajectory.first().map_or(0, Vec::len);
    let mut out = String::from("iteration");
    for v in 0..m {
        out.push_str(&format!(",w{v}"));
    }
    out.push('\n');
    for (t, row) in trajectory.iter().enumerate() {
        out.push_str(&format!("{}", t + 1));
        for w in row {
            out.push_str(&format!(",{w}"));
        }
        out.push('\n');
    }
    std::fs::write(path, out)?;
    Ok(())
}

pub fn mean_sd(values: &[f64]) -> (f64, f64) {
    if values.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::read_numeric_csv;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use rand_distr::StandardNormal;
    use tempfile::TempDir;

    /// Two tiny informative views with 3 labeled blobs.
    fn toy_dataset(n_per: usize, seed: u64) -> MultiViewDataset {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 3 * n_per;
        let mut views = Vec::new();
        for _ in 0..2 {
            let mut v = DMatrix::zeros(n, 3);
            for i in 0..n {
                let c = i / n_per;
                for j in 0..3 {
                    let center = if j == c { 6.0 } else { 0.0 };
                    v[(i, j)] = center + rng.sample::<f64, _>(StandardNormal);
                }
            }
            views.push(v);
        }
        let labels: Vec<i64> = (0..n).map(|i| (i / n_per) as i64).collect();
        MultiViewDataset::new(views, Some(labels)).unwrap()
    }

    fn quick_cfg() -> MethodConfig {
        MethodConfig {
            parameter: 5.0,
            n_iter: 60,
            pretrain: Some(PretrainConfig {
                mode: PretrainMode::None,
                ..PretrainConfig::default()
            }),
            ..MethodConfig::default()
        }
    }

    #[test]
    fn degenerate_sweep_has_one_row() {
        let ds = toy_dataset(6, 1);
        let spec = SweepSpec {
            method: MethodId::MultiLle,
            grid: vec![4.0],
            repeats: 1,
            kmeans_k: 3,
            kmeans_restarts: 3,
            seed: 7,
            select_metric: SelectMetric::Nmi,
            base: quick_cfg(),
        };
        let report = run_sweep(&ds, &spec).unwrap();
        assert_eq!(report.rows.len(), 1);
        assert!(report.rows[0].scores.is_some());
        assert!(report.rows[0].wall_time > 0.0 && report.rows[0].wall_time.is_finite());
        assert_eq!(report.optimum.unwrap().0, 4.0);
    }

    #[test]
    fn sweep_row_count_and_determinism() {
        let ds = toy_dataset(5, 2);
        let spec = SweepSpec {
            method: MethodId::MultiSne,
            grid: vec![3.0, 6.0],
            repeats: 2,
            kmeans_k: 3,
            kmeans_restarts: 2,
            seed: 11,
            select_metric: SelectMetric::Nmi,
            base: MethodConfig {
                n_iter: 40,
                ..quick_cfg()
            },
        };
        let a = run_sweep(&ds, &spec).unwrap();
        let b = run_sweep(&ds, &spec).unwrap();
        assert_eq!(a.rows.len(), 4);
        for (ra, rb) in a.rows.iter().zip(&b.rows) {
            let sa = ra.scores.unwrap();
            let sb = rb.scores.unwrap();
            assert_eq!(sa.acc, sb.acc);
            assert_eq!(sa.nmi, sb.nmi);
        }
        assert_eq!(a.optimum.map(|o| o.0), b.optimum.map(|o| o.0));
    }

    #[test]
    fn grid_values_must_stay_below_n() {
        let ds = toy_dataset(4, 3);
        let spec = SweepSpec {
            method: MethodId::MultiLle,
            grid: vec![4.0, 100.0],
            repeats: 1,
            kmeans_k: 3,
            kmeans_restarts: 1,
            seed: 1,
            select_metric: SelectMetric::Nmi,
            base: quick_cfg(),
        };
        assert!(matches!(
            run_sweep(&ds, &spec).unwrap_err(),
            Error::Parameter(_)
        ));
    }

    #[test]
    fn failed_cells_become_rows() {
        let ds = toy_dataset(4, 4);
        // d too large for embed_from_weights on N=12 with the constant mode
        let spec = SweepSpec {
            method: MethodId::MultiLle,
            grid: vec![3.0],
            repeats: 2,
            kmeans_k: 3,
            kmeans_restarts: 1,
            seed: 1,
            select_metric: SelectMetric::Nmi,
            base: MethodConfig {
                d: 12,
                ..quick_cfg()
            },
        };
        let report = run_sweep(&ds, &spec).unwrap();
        assert_eq!(report.rows.len(), 2);
        assert!(report.rows.iter().all(|r| r.error.is_some()));
        assert!(report.optimum.is_none());
    }

    #[test]
    fn ablation_on_two_views_has_three_rows() {
        let ds = toy_dataset(5, 5);
        let report =
            view_ablation(&ds, MethodId::MultiLle, &quick_cfg(), 3, 1, 2).unwrap();
        assert_eq!(report.rows.len(), 3);
        let subsets: Vec<&[usize]> = report.rows.iter().map(|r| r.views.as_slice()).collect();
        assert!(subsets.contains(&&[0usize][..]));
        assert!(subsets.contains(&&[1usize][..]));
        assert!(subsets.contains(&&[0usize, 1][..]));
    }

    #[test]
    fn embedding_csv_round_trips_exactly() {
        let dir = TempDir::new().unwrap();
        let coords = DMatrix::from_row_slice(3, 2, &[0.1, -2.5, 1.0 / 3.0, 4e-17, 7.25, -0.0]);
        let emb = Embedding::new(coords.clone(), "test").unwrap();
        let path = dir.path().join("embedding.csv");
        emit_embedding(&emb, Some(&[2, 0, 1]), &path).unwrap();
        let back = read_numeric_csv(&path, false).unwrap();
        assert_eq!(back.ncols(), 3);
        for i in 0..3 {
            assert_eq!(back[(i, 0)], coords[(i, 0)]);
            assert_eq!(back[(i, 1)], coords[(i, 1)]);
        }
        assert_eq!(back[(0, 2)], 2.0);
    }

    #[test]
    fn scatter_svg_colors_by_label() {
        let dir = TempDir::new().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let coords = DMatrix::from_fn(30, 2, |_, _| rng.random_range(-1.0..1.0));
        let emb = Embedding::new(coords, "test").unwrap();
        let labels: Vec<i64> = (0..30).map(|i| (i % 3) as i64).collect();
        let path = dir.path().join("scatter.svg");
        let warnings = emit_scatter(&emb, Some(&labels), &path).unwrap();
        assert!(warnings.is_empty());
        let svg = std::fs::read_to_string(&path).unwrap();
        for color in &PALETTE[..3] {
            assert!(svg.contains(color), "missing {color}");
        }
        assert!(svg.contains("<circle"));
    }

    #[test]
    fn scatter_warns_on_extra_dimensions() {
        let dir = TempDir::new().unwrap();
        let coords = DMatrix::from_row_slice(2, 3, &[0.0, 1.0, 2.0, 3.0, 4.0, 5.0]);
        let emb = Embedding::new(coords, "test").unwrap();
        let path = dir.path().join("scatter3.svg");
        let warnings = emit_scatter(&emb, None, &path).unwrap();
        assert_eq!(warnings.len(), 1);
        assert!(warnings[0].contains("first two"));
    }

    #[test]
    fn method_ids_round_trip_through_parse() {
        for name in [
            "tsne",
            "tsne-concat",
            "msne",
            "multisne",
            "lle",
            "lle-concat",
            "mlle",
            "multille",
            "isomap",
            "isomap-concat",
            "misomap",
            "multiisomap",
        ] {
            assert_eq!(MethodId::parse(name).unwrap().name(), name);
        }
        assert!(MethodId::parse("umap").is_err());
    }

    #[test]
    fn run_and_score_recovers_toy_clusters() {
        let ds = toy_dataset(8, 6);
        let (scores, _) = run_and_score(
            &ds,
            MethodId::MultiLle,
            &MethodConfig {
                parameter: 6.0,
                ..quick_cfg()
            },
            3,
            5,
            1,
        )
        .unwrap();
        assert!(scores.acc > 0.9, "acc {}", scores.acc);
    }

    #[test]
    fn plain_run_helper_converts() {
        let emb = Embedding::new(DMatrix::zeros(3, 2), "x").unwrap();
        let run = plain_run(emb);
        assert!(run.costs.is_none());
    }
}
