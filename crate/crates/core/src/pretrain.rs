//! Dimensionality pre-reduction applied before SNE-family optimization:
//! per-view PCA, or multi-CCA across views.

use nalgebra::{DMatrix, DVector};

use crate::dataset::MultiViewDataset;
use crate::error::{Error, Result};
use crate::linalg;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PretrainMode {
    None,
    Pca,
    MultiCca,
}

#[derive(Debug, Clone)]
pub struct PretrainConfig {
    pub mode: PretrainMode,
    /// Fraction of total variance the retained components must explain.
    pub variance_threshold: f64,
    /// Overrides the variance rule with a fixed component count.
    pub n_components: Option<usize>,
}

impl Default for PretrainConfig {
    fn default() -> Self {
        Self {
            mode: PretrainMode::Pca,
            variance_threshold: 0.8,
            n_components: None,
        }
    }
}

/// Full PCA decomposition of one view. Components are unit loading vectors,
/// scores are the centered data projected onto them.
#[derive(Debug, Clone)]
pub struct Pca {
    /// N×r score matrix over all positive-variance components.
    pub scores: DMatrix<f64>,
    /// p×r loading matrix (columns are components).
    pub components: DMatrix<f64>,
    /// Per-component fraction of total variance, nonincreasing, sums to 1.
    pub explained_variance_ratio: Vec<f64>,
    /// Column means removed before the decomposition.
    pub mean: DVector<f64>,
}

impl Pca {
    /// Decompose the centered data. Uses a thin SVD when p ≤ N and the
    /// N×N Gram route when p > N, so wide matrices never materialize p×p.
    pub fn fit(view: &DMatrix<f64>) -> Result<Self> {
        let (n, p) = view.shape();
        if n < 2 {
            return Err(Error::Parameter("pca needs at least 2 samples".into()));
        }
        let (centered, mean) = linalg::center_columns(view);
        let total_sq = centered.norm_squared();
        if total_sq <= 1e-20 {
            return Err(Error::DegenerateInput(
                "all rows identical: zero variance".into(),
            ));
        }

        // (singular value, score column, loading column) triples
        let (mut sigmas, mut scores, mut components): (Vec<f64>, DMatrix<f64>, DMatrix<f64>);
        if p <= n {
            let svd = centered.clone().svd(true, true);
            let u = svd.u.ok_or_else(|| Error::Numerical("svd: no U".into()))?;
            let vt = svd.v_t.ok_or_else(|| Error::Numerical("svd: no V^T".into()))?;
            sigmas = svd.singular_values.iter().copied().collect();
            let r = sigmas.len();
            scores = DMatrix::zeros(n, r);
            for k in 0..r {
                scores.set_column(k, &(u.column(k) * sigmas[k]));
            }
            components = vt.transpose();
        } else {
            let gram = &centered * centered.transpose();
            let (vals, vecs) = linalg::symmetric_eigen_sorted(gram)?;
            // descending order of eigenvalue = sigma^2
            let order: Vec<usize> = (0..n).rev().collect();
            sigmas = order.iter().map(|&i| vals[i].max(0.0).sqrt()).collect();
            scores = DMatrix::zeros(n, n);
            components = DMatrix::zeros(p, n);
            for (k, &i) in order.iter().enumerate() {
                let u = vecs.column(i);
                scores.set_column(k, &(u * sigmas[k]));
                if sigmas[k] > 1e-12 {
                    let loading = (centered.transpose() * u) / sigmas[k];
                    components.set_column(k, &loading);
                }
            }
        }

        // drop numerically-zero tail components
        let sigma_floor = sigmas.first().copied().unwrap_or(0.0) * 1e-12;
        let r = sigmas.iter().take_while(|&&s| s > sigma_floor).count().max(1);
        sigmas.truncate(r);
        scores = scores.columns(0, r).into_owned();
        components = components.columns(0, r).into_owned();

        let total: f64 = sigmas.iter().map(|s| s * s).sum();
        let explained_variance_ratio: Vec<f64> = sigmas.iter().map(|s| s * s / total).collect();

        // reproducible orientation: largest-magnitude loading positive
        for k in 0..r {
            let mut best = 0usize;
            let mut best_abs = 0.0;
            for (i, v) in components.column(k).iter().enumerate() {
                if v.abs() > best_abs {
                    best_abs = v.abs();
                    best = i;
                }
            }
            if components[(best, k)] < 0.0 {
                components.column_mut(k).neg_mut();
                scores.column_mut(k).neg_mut();
            }
        }

        Ok(Self {
            scores,
            components,
            explained_variance_ratio,
            mean,
        })
    }

    /// Smallest component count whose cumulative variance ratio reaches
    /// the threshold (override wins when set).
    pub fn retained(&self, cfg: &PretrainConfig) -> usize {
        if let Some(q) = cfg.n_components {
            return q.clamp(1, self.explained_variance_ratio.len());
        }
        let mut cum = 0.0;
        for (k, r) in self.explained_variance_ratio.iter().enumerate() {
            cum += r;
            if cum >= cfg.variance_threshold - 1e-12 {
                return k + 1;
            }
        }
        self.explained_variance_ratio.len()
    }

    /// Reconstruct the data from the first `q` components.
    pub fn reconstruct(&self, q: usize) -> DMatrix<f64> {
        let s = self.scores.columns(0, q);
        let c = self.components.columns(0, q);
        let mut out = s * c.transpose();
        for mut row in out.row_iter_mut() {
            for j in 0..row.ncols() {
                row[j] += self.mean[j];
            }
        }
        out
    }
}

/// PCA-reduce one view to the components required by the config.
pub fn pca_reduce(view: &DMatrix<f64>, cfg: &PretrainConfig) -> Result<DMatrix<f64>> {
    let pca = Pca::fit(view)?;
    let q = pca.retained(cfg);
    Ok(pca.scores.columns(0, q).into_owned())
}

/// Multi-view canonical correlation decomposition. Successive canonical
/// directions maximize the summed pairwise correlation of the per-view
/// variates; later components come from deflated data.
#[derive(Debug, Clone)]
pub struct MultiCca {
    /// Per view: N×K canonical-variate matrix (unit variance columns).
    pub variates: Vec<DMatrix<f64>>,
    /// Per view: p_m×K canonical direction matrix.
    pub directions: Vec<DMatrix<f64>>,
    /// Mean pairwise correlation of the variates per component.
    pub correlations: Vec<f64>,
}

const CCA_TOL: f64 = 1e-6;
const CCA_MAX_ITER: usize = 100;

impl MultiCca {
    pub fn fit(ds: &MultiViewDataset, k: usize) -> Result<Self> {
        if ds.n_views() < 2 {
            return Err(Error::Parameter("multi-CCA needs at least 2 views".into()));
        }
        if k < 1 {
            return Err(Error::Parameter("need at least 1 canonical vector".into()));
        }
        let n = ds.n_samples();
        let m = ds.n_views();
        let mut work: Vec<DMatrix<f64>> = ds
            .views()
            .iter()
            .map(linalg::standardize_columns)
            .collect();

        let mut variates = vec![DMatrix::zeros(n, k); m];
        let mut directions: Vec<DMatrix<f64>> = ds
            .views()
            .iter()
            .map(|v| DMatrix::zeros(v.ncols(), k))
            .collect();
        let mut correlations = Vec::with_capacity(k);

        for comp in 0..k {
            let mut ws: Vec<DVector<f64>> = work.iter().map(leading_direction).collect();
            let mut zs: Vec<DVector<f64>> = (0..m).map(|v| &work[v] * &ws[v]).collect();
            for _ in 0..CCA_MAX_ITER {
                let mut delta = 0.0f64;
                for v in 0..m {
                    let mut target = DVector::zeros(n);
                    for (j, z) in zs.iter().enumerate() {
                        if j != v {
                            target += z;
                        }
                    }
                    let mut w = work[v].transpose() * target;
                    let norm = w.norm();
                    if norm > 1e-12 {
                        w /= norm;
                    } else {
                        w = ws[v].clone();
                    }
                    let d = (&w - &ws[v]).amax().min((&w + &ws[v]).amax());
                    delta = delta.max(d);
                    zs[v] = &work[v] * &w;
                    ws[v] = w;
                }
                if delta < CCA_TOL {
                    break;
                }
            }

            correlations.push(mean_pairwise_correlation(&zs));

            for v in 0..m {
                // deflate so later components are orthogonal to this variate
                let z = &zs[v];
                let zz = z.norm_squared();
                if zz > 1e-12 {
                    let proj = (z.transpose() * &work[v]) / zz;
                    work[v] -= z * proj;
                }
                // reproducible orientation before storing
                let mut w = ws[v].clone();
                let mut z = zs[v].clone();
                let best = w.iter().map(|x| x.abs()).fold(0.0, f64::max);
                let flip = w.iter().find(|x| x.abs() == best).map_or(false, |&x| x < 0.0);
                if flip {
                    w.neg_mut();
                    z.neg_mut();
                }
                directions[v].set_column(comp, &w);
                // unit-variance variate
                let sd = (z.norm_squared() / (n as f64 - 1.0)).sqrt();
                if sd > 1e-12 {
                    z /= sd;
                }
                variates[v].set_column(comp, &z);
            }
        }

        Ok(Self {
            variates,
            directions,
            correlations,
        })
    }
}

fn leading_direction(x: &DMatrix<f64>) -> DVector<f64> {
    // power iteration on X^T X with a fixed start; deterministic
    let p = x.ncols();
    let mut v = DVector::from_element(p, 1.0 / (p as f64).sqrt());
    for _ in 0..50 {
        let mut next = x.transpose() * (x * &v);
        let norm = next.norm();
        if norm < 1e-12 {
            let mut e = DVector::zeros(p);
            e[0] = 1.0;
            return e;
        }
        next /= norm;
        if (&next - &v).amax() < 1e-10 {
            return next;
        }
        v = next;
    }
    v
}

fn mean_pairwise_correlation(zs: &[DVector<f64>]) -> f64 {
    let m = zs.len();
    let mut total = 0.0;
    let mut pairs = 0usize;
    for i in 0..m {
        for j in (i + 1)..m {
            let ni = zs[i].norm();
            let nj = zs[j].norm();
            if ni > 1e-12 && nj > 1e-12 {
                total += zs[i].dot(&zs[j]) / (ni * nj);
            }
            pairs += 1;
        }
    }
    if pairs == 0 {
        0.0
    } else {
        total / pairs as f64
    }
}

/// Replace every view by its canonical-variate matrix, K = min_m p_m
/// by default.
pub fn multicca_reduce(ds: &MultiViewDataset) -> Result<MultiViewDataset> {
    let k = ds.views().iter().map(|v| v.ncols()).min().unwrap_or(0);
    multicca_reduce_k(ds, k)
}

pub fn multicca_reduce_k(ds: &MultiViewDataset, k: usize) -> Result<MultiViewDataset> {
    let cca = MultiCca::fit(ds, k)?;
    let mut out = MultiViewDataset::new(cca.variates, ds.labels().map(<[i64]>::to_vec))?;
    if let Some(names) = ds.names() {
        out = out.with_names(names.to_vec())?;
    }
    Ok(out)
}

/// Apply the configured pre-training to every view.
pub fn apply_pretrain(ds: &MultiViewDataset, cfg: &PretrainConfig) -> Result<MultiViewDataset> {
    match cfg.mode {
        PretrainMode::None => Ok(ds.clone()),
        PretrainMode::Pca => {
            let views = ds
                .views()
                .iter()
                .map(|v| pca_reduce(v, cfg))
                .collect::<Result<Vec<_>>>()?;
            let mut out = MultiViewDataset::new(views, ds.labels().map(<[i64]>::to_vec))?;
            if let Some(names) = ds.names() {
                out = out.with_names(names.to_vec())?;
            }
            Ok(out)
        }
        PretrainMode::MultiCca => multicca_reduce(ds),
    }
}
