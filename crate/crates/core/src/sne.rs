//! t-SNE core and its multi-view extensions.
//!
//! `run_tsne` is exact O(N²) t-SNE. `run_multisne` minimizes the weighted
//! sum over views of KL(P^m ‖ Q) by summing per-view gradients each
//! iteration, optionally re-weighting views from their KL divergences.
//! `run_msne` is the combined-distribution baseline: it mixes the per-view
//! affinities into one P and runs plain t-SNE on it.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::dataset::MultiViewDataset;
use crate::embedding::Embedding;
use crate::error::{Error, Result};
use crate::linalg::pairwise_sq_dists;

/// Probability floor applied before any logarithm.
const PROB_FLOOR: f64 = 1e-12;
/// Early exaggeration: P×4 for the first 100 iterations.
const EXAGGERATION: f64 = 4.0;
const EXAGGERATION_ITERS: usize = 100;
/// Auto weight updates stay frozen for this many iterations.
const WEIGHT_FREEZE: usize = 100;
/// Binary search bounds for sigma (in log space) and step budget.
const SIGMA_MIN: f64 = 1e-20;
const SIGMA_MAX: f64 = 1e20;
const SIGMA_STEPS: usize = 50;
/// Entropy tolerance in bits for the perplexity search.
const ENTROPY_TOL: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AffinityKind {
    HighDimJoint,
    LowDimStudentT,
}

/// N×N pairwise probability distribution: zero diagonal, entries sum to 1.
#[derive(Debug, Clone)]
pub struct AffinityMatrix {
    values: DMatrix<f64>,
    kind: AffinityKind,
    perplexity: Option<f64>,
}

impl AffinityMatrix {
    pub fn high_dim(values: DMatrix<f64>, perplexity: f64) -> Result<Self> {
        Self::validate(&values, true)?;
        Ok(Self {
            values,
            kind: AffinityKind::HighDimJoint,
            perplexity: Some(perplexity),
        })
    }

    pub fn low_dim(values: DMatrix<f64>) -> Result<Self> {
        Self::validate(&values, false)?;
        Ok(Self {
            values,
            kind: AffinityKind::LowDimStudentT,
            perplexity: None,
        })
    }

    fn validate(values: &DMatrix<f64>, symmetric: bool) -> Result<()> {
        let n = values.nrows();
        if n != values.ncols() {
            return Err(Error::Parameter("affinity matrix must be square".into()));
        }
        let mut total = 0.0;
        for i in 0..n {
            if values[(i, i)] != 0.0 {
                return Err(Error::Parameter("affinity diagonal must be zero".into()));
            }
            for j in 0..n {
                let v = values[(i, j)];
                if !(v.is_finite() && v >= 0.0) {
                    return Err(Error::Numerical(format!("affinity ({i},{j}) = {v}")));
                }
                total += v;
            }
        }
        if (total - 1.0).abs() > 1e-8 {
            return Err(Error::Numerical(format!("affinities sum to {total}")));
        }
        if symmetric {
            for i in 0..n {
                for j in (i + 1)..n {
                    if values[(i, j)] != values[(j, i)] {
                        return Err(Error::Numerical("joint affinities not symmetric".into()));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn values(&self) -> &DMatrix<f64> {
        &self.values
    }

    pub fn into_values(self) -> DMatrix<f64> {
        self.values
    }

    pub fn kind(&self) -> AffinityKind {
        self.kind
    }

    pub fn perplexity(&self) -> Option<f64> {
        self.perplexity
    }

    pub fn n(&self) -> usize {
        self.values.nrows()
    }
}

/// Nonnegative per-view coefficients summing to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct ViewWeights {
    w: Vec<f64>,
}

impl ViewWeights {
    pub fn new(w: Vec<f64>) -> Result<Self> {
        if w.is_empty() {
            return Err(Error::Parameter("empty weight vector".into()));
        }
        if w.iter().any(|&x| !(x.is_finite() && x >= 0.0)) {
            return Err(Error::Parameter("weights must be nonnegative".into()));
        }
        let sum: f64 = w.iter().sum();
        if (sum - 1.0).abs() > 1e-10 {
            return Err(Error::Parameter(format!("weights sum to {sum}, want 1")));
        }
        Ok(Self { w })
    }

    /// Rescale an arbitrary nonnegative vector to sum 1.
    pub fn normalized(mut w: Vec<f64>) -> Result<Self> {
        let sum: f64 = w.iter().sum();
        if sum <= 0.0 || !sum.is_finite() {
            return Err(Error::Parameter("weights must have positive sum".into()));
        }
        w.iter_mut().for_each(|x| *x /= sum);
        Self::new(w)
    }

    pub fn uniform(m: usize) -> Self {
        Self {
            w: vec![1.0 / m as f64; m],
        }
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.w
    }

    pub fn len(&self) -> usize {
        self.w.len()
    }

    pub fn is_empty(&self) -> bool {
        self.w.is_empty()
    }
}

/// How run_multisne treats view weights.
#[derive(Debug, Clone)]
pub enum WeightMode {
    Fixed(ViewWeights),
    /// Per-iteration KL-driven updates after a 100-iteration freeze.
    Auto,
}

#[derive(Debug, Clone)]
pub struct SneConfig {
    pub perplexity: f64,
    pub n_iter: usize,
    pub learning_rate: f64,
    pub momentum_early: f64,
    pub momentum_late: f64,
    /// Iteration at which momentum switches from early to late.
    pub momentum_switch: usize,
    pub early_exaggeration: bool,
    /// Output dimension.
    pub d: usize,
    pub seed: u64,
    /// Optional relative cost-change stopping rule.
    pub stop_tol: Option<f64>,
}

impl Default for SneConfig {
    fn default() -> Self {
        Self {
            perplexity: 30.0,
            n_iter: 1000,
            learning_rate: 100.0,
            momentum_early: 0.5,
            momentum_late: 0.8,
            momentum_switch: 250,
            early_exaggeration: true,
            d: 2,
            seed: 0,
            stop_tol: None,
        }
    }
}

impl SneConfig {
    fn validate(&self, n: usize) -> Result<()> {
        if !(self.perplexity > 0.0 && self.perplexity < n as f64) {
            return Err(Error::Parameter(format!(
                "perplexity {} must lie in (0, N={n})",
                self.perplexity
            )));
        }
        if self.n_iter < 1 {
            return Err(Error::Parameter("n_iter must be >= 1".into()));
        }
        if self.d < 1 {
            return Err(Error::Parameter("output dimension must be >= 1".into()));
        }
        Ok(())
    }
}

/// One optimizer run: embedding plus per-iteration cost, and the weight
/// trajectory when weights were adapted.
#[derive(Debug, Clone)]
pub struct SneRun {
    pub embedding: Embedding,
    /// Cost at the start of each iteration (true, un-exaggerated P).
    pub costs: Vec<f64>,
    /// Per-iteration view weights (auto mode only).
    pub weight_trajectory: Option<Vec<Vec<f64>>>,
}

impl SneRun {
    pub fn final_weights(&self) -> Option<&[f64]> {
        self.weight_trajectory
            .as_ref()
            .and_then(|t| t.last())
            .map(Vec::as_slice)
    }
}

/// Calibrate one sample's Gaussian bandwidth so the conditional neighbor
/// distribution hits the target perplexity: 2^H = Perp within tolerance.
/// `sq_distances` holds squared distances to the candidate neighbors
/// (self excluded). Returns (sigma, conditional probabilities).
pub fn calibrate_row(sq_distances: &[f64], perplexity: f64) -> Result<(f64, Vec<f64>)> {
    if sq_distances.is_empty() {
        return Err(Error::Calibration("no neighbors to calibrate".into()));
    }
    if sq_distances.iter().any(|&d| d < 0.0 || d.is_nan()) {
        return Err(Error::Calibration("negative or NaN distance".into()));
    }
    if perplexity <= 0.0 {
        return Err(Error::Parameter("perplexity must be positive".into()));
    }
    if sq_distances.iter().all(|&d| d == 0.0) {
        return Err(Error::Calibration(
            "all distances are zero: perplexity target is unattainable".into(),
        ));
    }
    let target_bits = perplexity.log2();

    // Entropy (in bits) increases monotonically with sigma: bisect in log space.
    let mut lo = SIGMA_MIN.ln();
    let mut hi = SIGMA_MAX.ln();
    let mut sigma = 0.0;
    for _ in 0..SIGMA_STEPS {
        let mid = 0.5 * (lo + hi);
        sigma = mid.exp();
        let h = row_entropy_bits(sq_distances, sigma);
        if (h - target_bits).abs() < ENTROPY_TOL {
            break;
        }
        if h > target_bits {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok((sigma, conditional_row(sq_distances, sigma)))
}

fn conditional_row(sq_distances: &[f64], sigma: f64) -> Vec<f64> {
    let beta = 1.0 / (2.0 * sigma * sigma);
    // subtract the max exponent so the largest term is exp(0)
    let min_d = sq_distances.iter().copied().fold(f64::INFINITY, f64::min);
    let mut row: Vec<f64> = sq_distances
        .iter()
        .map(|&d| {
            let e = -beta * (d - min_d);
            if e.is_nan() {
                // 0 * inf from an infinite distance at sigma extremes
                0.0
            } else {
                e.exp()
            }
        })
        .collect();
    let sum: f64 = row.iter().sum();
    if sum > 0.0 {
        row.iter_mut().for_each(|p| *p /= sum);
    }
    row
}

fn row_entropy_bits(sq_distances: &[f64], sigma: f64) -> f64 {
    conditional_row(sq_distances, sigma)
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum()
}

/// Symmetric joint affinities of one view at the given perplexity:
/// p_ij = (p_{i|j} + p_{j|i}) / 2N.
pub fn joint_affinities(view: &DMatrix<f64>, perplexity: f64) -> Result<AffinityMatrix> {
    let n = view.nrows();
    if n < 3 {
        return Err(Error::Parameter("need at least 3 samples".into()));
    }
    if perplexity >= n as f64 {
        return Err(Error::Parameter(format!(
            "perplexity {perplexity} must be < N={n}"
        )));
    }
    let d2 = pairwise_sq_dists(view);
    let rows: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut dists = Vec::with_capacity(n - 1);
            for j in 0..n {
                if j != i {
                    dists.push(d2[(i, j)]);
                }
            }
            calibrate_row(&dists, perplexity).map(|(_, row)| row)
        })
        .collect::<Result<_>>()?;

    let mut cond = DMatrix::zeros(n, n);
    for (i, row) in rows.iter().enumerate() {
        let mut k = 0;
        for j in 0..n {
            if j != i {
                cond[(i, j)] = row[k];
                k += 1;
            }
        }
    }
    let scale = 1.0 / (2.0 * n as f64);
    let mut p = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in (i + 1)..n {
            let v = (cond[(i, j)] + cond[(j, i)]) * scale;
            p[(i, j)] = v;
            p[(j, i)] = v;
        }
    }
    AffinityMatrix::high_dim(p, perplexity)
}

/// Student-t affinities of an embedding:
/// q_ij = (1 + ‖y_i−y_j‖²)^{-1} / Σ_{k≠l} (1 + ‖y_k−y_l‖²)^{-1}.
pub fn student_t_affinities(y: &DMatrix<f64>) -> Result<AffinityMatrix> {
    let n = y.nrows();
    let d2 = pairwise_sq_dists(y);
    let mut q = DMatrix::zeros(n, n);
    let mut z = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let w = 1.0 / (1.0 + d2[(i, j)]);
            q[(i, j)] = w;
            q[(j, i)] = w;
            z += 2.0 * w;
        }
    }
    q /= z;
    AffinityMatrix::low_dim(q)
}

/// Σ_m w^m Σ_ij p^m_ij log(p^m_ij / q_ij), with 0·log(0/q) = 0 and both
/// probabilities floored at 1e-12 inside the logarithm.
pub fn multisne_cost(
    p_list: &[AffinityMatrix],
    q: &AffinityMatrix,
    w: &ViewWeights,
) -> Result<f64> {
    if p_list.is_empty() || p_list.len() != w.len() {
        return Err(Error::Parameter(format!(
            "{} affinity matrices for {} weights",
            p_list.len(),
            w.len()
        )));
    }
    let n = q.n();
    if p_list.iter().any(|p| p.n() != n) {
        return Err(Error::Alignment("affinity sizes differ".into()));
    }
    let qv = q.values();
    let mut total = 0.0;
    for (p, &wm) in p_list.iter().zip(w.as_slice()) {
        let pv = p.values();
        let mut kl = 0.0;
        for i in 0..n {
            for j in 0..n {
                let pij = pv[(i, j)];
                if pij > 0.0 {
                    kl += pij * (pij.max(PROB_FLOOR).ln() - qv[(i, j)].max(PROB_FLOOR).ln());
                }
            }
        }
        total += wm * kl;
    }
    Ok(total)
}

/// Analytic gradient of the weighted multi-view KL cost with respect to the
/// embedding coordinates. Per view this is the standard t-SNE gradient of
/// w^m·KL(P^m‖Q); the result sums over views.
pub fn multisne_gradient(
    p_list: &[AffinityMatrix],
    y: &DMatrix<f64>,
    w: &ViewWeights,
) -> Result<DMatrix<f64>> {
    if p_list.is_empty() || p_list.len() != w.len() {
        return Err(Error::Parameter(format!(
            "{} affinity matrices for {} weights",
            p_list.len(),
            w.len()
        )));
    }
    let n = y.nrows();
    let d = y.ncols();
    if p_list.iter().any(|p| p.n() != n) {
        return Err(Error::Alignment("affinity size != embedding rows".into()));
    }
    // combined distribution Σ_m w^m P^m shares the gradient kernel
    let mut combined = vec![0.0f64; n * n];
    for (p, &wm) in p_list.iter().zip(w.as_slice()) {
        let pv = p.values();
        for i in 0..n {
            for j in 0..n {
                combined[i * n + j] += wm * pv[(i, j)];
            }
        }
    }
    let yflat = flat_coords(y);
    let mut kernel = vec![0.0f64; n * n];
    let z = student_kernel(&yflat, n, d, &mut kernel);
    let mut grad = vec![0.0f64; n * d];
    accumulate_gradient(&combined, 1.0, &yflat, n, d, &kernel, z, &mut grad);
    Ok(DMatrix::from_fn(n, d, |i, j| grad[i * d + j]))
}

/// KL-driven weight update: normalize the KL vector, take w = 1 − k, then
/// rescale to sum 1. The smallest KL receives the largest weight.
pub fn update_weights(kl: &[f64]) -> Result<ViewWeights> {
    if kl.is_empty() {
        return Err(Error::Parameter("empty KL vector".into()));
    }
    if kl.iter().any(|&k| k < 0.0 || !k.is_finite()) {
        return Err(Error::Parameter("KL divergences must be >= 0".into()));
    }
    let m = kl.len();
    if m == 1 {
        return Ok(ViewWeights::uniform(1));
    }
    let total: f64 = kl.iter().sum();
    if total <= 0.0 {
        return Ok(ViewWeights::uniform(m));
    }
    let raw: Vec<f64> = kl.iter().map(|&k| 1.0 - k / total).collect();
    // the two steps leave Σw = M−1; rescale to restore Σw = 1
    ViewWeights::normalized(raw)
}

/// Multi-view SNE: per-view joint affinities, then gradient descent on the
/// weighted sum of KL divergences. Returns the embedding, the cost at each
/// iteration, and the weight trajectory when weights are auto-adjusted.
pub fn run_multisne(
    ds: &MultiViewDataset,
    cfg: &SneConfig,
    weights: WeightMode,
) -> Result<SneRun> {
    cfg.validate(ds.n_samples())?;
    let p_views: Vec<DMatrix<f64>> = ds
        .views()
        .par_iter()
        .map(|v| joint_affinities(v, cfg.perplexity).map(AffinityMatrix::into_values))
        .collect::<Result<_>>()?;
    let initial = match weights {
        WeightMode::Fixed(w) => {
            if w.len() != p_views.len() {
                return Err(Error::Parameter(format!(
                    "{} weights for {} views",
                    w.len(),
                    p_views.len()
                )));
            }
            (w, false)
        }
        WeightMode::Auto => (ViewWeights::uniform(p_views.len()), true),
    };
    optimize(&p_views, initial.0, initial.1, cfg, "multisne")
}

/// m-SNE baseline: mix the per-view distributions into a single
/// P = Σ_m β^m P^m and run plain t-SNE on it.
pub fn run_msne(ds: &MultiViewDataset, cfg: &SneConfig, beta: &ViewWeights) -> Result<SneRun> {
    cfg.validate(ds.n_samples())?;
    if beta.len() != ds.n_views() {
        return Err(Error::Parameter(format!(
            "{} weights for {} views",
            beta.len(),
            ds.n_views()
        )));
    }
    let n = ds.n_samples();
    let mut combined = DMatrix::zeros(n, n);
    for (view, &b) in ds.views().iter().zip(beta.as_slice()) {
        let p = joint_affinities(view, cfg.perplexity)?.into_values();
        combined += p * b;
    }
    optimize(&[combined], ViewWeights::uniform(1), false, cfg, "msne")
}

/// Plain exact t-SNE on a single matrix.
pub fn run_tsne(view: &DMatrix<f64>, cfg: &SneConfig) -> Result<SneRun> {
    cfg.validate(view.nrows())?;
    let p = joint_affinities(view, cfg.perplexity)?.into_values();
    optimize(&[p], ViewWeights::uniform(1), false, cfg, "tsne")
}

/// t-SNE on the column-stacked views.
pub fn run_tsne_concat(ds: &MultiViewDataset, cfg: &SneConfig) -> Result<SneRun> {
    let concat = ds.concat_views();
    let mut run = run_tsne(&concat, cfg)?;
    run.embedding.method = "tsne-concat".into();
    Ok(run)
}

// --- optimizer internals (flat row-major buffers) ---

fn flat_coords(y: &DMatrix<f64>) -> Vec<f64> {
    let (n, d) = y.shape();
    let mut out = vec![0.0; n * d];
    for i in 0..n {
        for j in 0..d {
            out[i * d + j] = y[(i, j)];
        }
    }
    out
}

/// Fill `kernel` with (1+‖y_i−y_j‖²)^{-1} for i≠j; returns the normalizer
/// Z = Σ_{k≠l} kernel.
fn student_kernel(y: &[f64], n: usize, d: usize, kernel: &mut [f64]) -> f64 {
    let mut z = 0.0;
    for i in 0..n {
        kernel[i * n + i] = 0.0;
        for j in (i + 1)..n {
            let mut dist = 0.0;
            for k in 0..d {
                let diff = y[i * d + k] - y[j * d + k];
                dist += diff * diff;
            }
            let w = 1.0 / (1.0 + dist);
            kernel[i * n + j] = w;
            kernel[j * n + i] = w;
            z += 2.0 * w;
        }
    }
    z
}

/// grad_i += 4 Σ_j (ex·p̄_ij − q_ij)·kernel_ij·(y_i − y_j)
fn accumulate_gradient(
    combined: &[f64],
    exaggeration: f64,
    y: &[f64],
    n: usize,
    d: usize,
    kernel: &[f64],
    z: f64,
    grad: &mut [f64],
) {
    for i in 0..n {
        for j in (i + 1)..n {
            let w = kernel[i * n + j];
            let q = w / z;
            let coef = 4.0 * (exaggeration * combined[i * n + j] - q) * w;
            for k in 0..d {
                let diff = y[i * d + k] - y[j * d + k];
                grad[i * d + k] += coef * diff;
                grad[j * d + k] -= coef * diff;
            }
        }
    }
}

/// Σ_{i≠j} p_ij · ln(max(q_ij, floor)) over a flat affinity buffer.
fn cross_entropy(p: &[f64], kernel: &[f64], z: f64, n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let pij = p[i * n + j];
                if pij > 0.0 {
                    s += pij * (kernel[i * n + j] / z).max(PROB_FLOOR).ln();
                }
            }
        }
    }
    s
}

fn optimize(
    p_views: &[DMatrix<f64>],
    init_weights: ViewWeights,
    auto: bool,
    cfg: &SneConfig,
    method: &str,
) -> Result<SneRun> {
    let n = p_views[0].nrows();
    let m = p_views.len();
    let d = cfg.d;

    // symmetric matrices: the column-major slice doubles as row-major
    let flat: Vec<&[f64]> = p_views.iter().map(|p| p.as_slice()).collect();

    // Σ p log p per view, constant across iterations
    let plogp: Vec<f64> = flat
        .iter()
        .map(|p| {
            p.iter()
                .filter(|&&v| v > 0.0)
                .map(|&v| v * v.max(PROB_FLOOR).ln())
                .sum()
        })
        .collect();

    let mut weights = init_weights;
    let mut combined = vec![0.0f64; n * n];
    let recombine = |weights: &ViewWeights, combined: &mut Vec<f64>| {
        combined.iter_mut().for_each(|v| *v = 0.0);
        for (p, &wm) in flat.iter().zip(weights.as_slice()) {
            for (c, &v) in combined.iter_mut().zip(p.iter()) {
                *c += wm * v;
            }
        }
    };
    recombine(&weights, &mut combined);

    // Y(0) ~ N(0, 0.1): variance 0.1
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let sd = 0.1f64.sqrt();
    let mut y: Vec<f64> = (0..n * d)
        .map(|_| sd * rng.sample::<f64, _>(StandardNormal))
        .collect();
    let mut prev_step = vec![0.0f64; n * d];
    let mut kernel = vec![0.0f64; n * n];
    let mut grad = vec![0.0f64; n * d];

    let mut costs = Vec::with_capacity(cfg.n_iter);
    let mut trajectory = auto.then(Vec::new);

    for t in 1..=cfg.n_iter {
        let z = student_kernel(&y, n, d, &mut kernel);

        // per-view KLs drive both the adaptive weights and the recorded cost
        let cost = if auto {
            let kls: Vec<f64> = flat
                .iter()
                .zip(&plogp)
                .map(|(p, &s)| s - cross_entropy(p, &kernel, z, n))
                .collect();
            if t > WEIGHT_FREEZE {
                weights = update_weights(&kls)?;
                recombine(&weights, &mut combined);
            }
            kls.iter()
                .zip(weights.as_slice())
                .map(|(kl, w)| w * kl)
                .sum()
        } else {
            let ce = cross_entropy(&combined, &kernel, z, n);
            weights
                .as_slice()
                .iter()
                .zip(&plogp)
                .map(|(w, s)| w * s)
                .sum::<f64>()
                - ce
        };
        if let Some(traj) = trajectory.as_mut() {
            traj.push(weights.as_slice().to_vec());
        }

        let ex = if cfg.early_exaggeration && t <= EXAGGERATION_ITERS {
            EXAGGERATION
        } else {
            1.0
        };
        grad.iter_mut().for_each(|g| *g = 0.0);
        accumulate_gradient(&combined, ex, &y, n, d, &kernel, z, &mut grad);

        let alpha = if t < cfg.momentum_switch {
            cfg.momentum_early
        } else {
            cfg.momentum_late
        };
        for idx in 0..n * d {
            let step = alpha * prev_step[idx] - cfg.learning_rate * grad[idx];
            y[idx] += step;
            prev_step[idx] = step;
        }
        if y.iter().any(|v| !v.is_finite()) {
            return Err(Error::Optimization { iteration: t });
        }

        costs.push(cost);
        if let Some(tol) = cfg.stop_tol {
            if t > EXAGGERATION_ITERS && costs.len() >= 2 {
                let prev = costs[costs.len() - 2];
                if ((cost - prev).abs() / prev.abs().max(1e-12)) < tol {
                    break;
                }
            }
        }
    }
    let _ = m;

    let coords = DMatrix::from_fn(n, d, |i, j| y[i * d + j]);
    let embedding = Embedding::new(coords, method)?
        .with_parameter(cfg.perplexity)
        .with_seed(cfg.seed);
    Ok(SneRun {
        embedding,
        costs,
        weight_trajectory: trajectory,
    })
}
