//! Locally linear embedding: neighbor search, constrained reconstruction
//! weights, eigenvector embedding, and the multi-view variants. multi-LLE
//! embeds from a consensus weight matrix Ŵ = Σ_m α^m W^m; m-LLE averages
//! per-view embeddings after Procrustes alignment.

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use crate::dataset::MultiViewDataset;
use crate::embedding::Embedding;
use crate::error::{Error, Result};
use crate::linalg;
use crate::sne::ViewWeights;

/// Ridge factor for ill-conditioned local Gram systems.
const RIDGE: f64 = 1e-3;
/// Eigenvalues below this are treated as the discarded constant mode.
const NULL_EIGENVALUE: f64 = 1e-10;

/// Sparse row-stochastic reconstruction weights: row i holds (neighbor,
/// weight) pairs over Γ_i only, summing to 1.
#[derive(Debug, Clone)]
pub struct ReconstructionWeights {
    rows: Vec<Vec<(usize, f64)>>,
    k: usize,
}

impl ReconstructionWeights {
    pub fn rows(&self) -> &[Vec<(usize, f64)>] {
        &self.rows
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }
}

/// Convex combination of per-view weight matrices.
#[derive(Debug, Clone)]
pub struct ConsensusWeights {
    rows: Vec<Vec<(usize, f64)>>,
    pub alpha: ViewWeights,
}

impl ConsensusWeights {
    /// Ŵ = Σ_m α^m W^m; rows stay stochastic because the α sum to 1.
    pub fn combine(per_view: &[ReconstructionWeights], alpha: &ViewWeights) -> Result<Self> {
        if per_view.is_empty() || per_view.len() != alpha.len() {
            return Err(Error::Parameter(format!(
                "{} weight matrices for {} coefficients",
                per_view.len(),
                alpha.len()
            )));
        }
        let n = per_view[0].n();
        if per_view.iter().any(|w| w.n() != n) {
            return Err(Error::Alignment("weight matrices differ in size".into()));
        }
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let mut acc: std::collections::BTreeMap<usize, f64> = std::collections::BTreeMap::new();
            for (w, &a) in per_view.iter().zip(alpha.as_slice()) {
                for &(j, v) in &w.rows[i] {
                    *acc.entry(j).or_insert(0.0) += a * v;
                }
            }
            rows.push(acc.into_iter().collect());
        }
        Ok(Self {
            rows,
            alpha: alpha.clone(),
        })
    }

    pub fn rows(&self) -> &[Vec<(usize, f64)>] {
        &self.rows
    }
}

/// K nearest neighbors of every row under the Euclidean metric, ties broken
/// by lower index. Γ_i never contains i.
pub fn knn(view: &DMatrix<f64>, k: usize) -> Result<Vec<Vec<usize>>> {
    let n = view.nrows();
    if k < 1 || k >= n {
        return Err(Error::Parameter(format!("K={k} must satisfy 1 <= K < N={n}")));
    }
    let d2 = linalg::pairwise_sq_dists(view);
    Ok((0..n)
        .into_par_iter()
        .map(|i| {
            let mut order: Vec<usize> = (0..n).filter(|&j| j != i).collect();
            order.sort_by(|&a, &b| d2[(i, a)].total_cmp(&d2[(i, b)]).then(a.cmp(&b)));
            order.truncate(k);
            order
        })
        .collect())
}

/// Constrained least-squares reconstruction weights: per row, solve the
/// local Gram system G w = 1 and normalize so Σ_j w_ij = 1. Singular local
/// systems are regularized, never a hard error.
pub fn reconstruction_weights(
    view: &DMatrix<f64>,
    neighbors: &[Vec<usize>],
) -> Result<ReconstructionWeights> {
    let n = view.nrows();
    if neighbors.len() != n {
        return Err(Error::Alignment("neighbor list length != rows".into()));
    }
    let p = view.ncols();
    let k = neighbors.first().map_or(0, Vec::len);
    let rows: Vec<Vec<(usize, f64)>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let gamma = &neighbors[i];
            let kk = gamma.len();
            // local Gram of neighbor offsets: G_ab = (x_i-x_a)·(x_i-x_b)
            let mut gram = DMatrix::zeros(kk, kk);
            for (a, &ja) in gamma.iter().enumerate() {
                for (b, &jb) in gamma.iter().enumerate().skip(a) {
                    let mut dot = 0.0;
                    for c in 0..p {
                        dot += (view[(i, c)] - view[(ja, c)]) * (view[(i, c)] - view[(jb, c)]);
                    }
                    gram[(a, b)] = dot;
                    gram[(b, a)] = dot;
                }
            }
            let w = solve_local(gram, kk, kk > p);
            gamma.iter().copied().zip(w).collect()
        })
        .collect();
    Ok(ReconstructionWeights { rows, k })
}

fn solve_local(mut gram: DMatrix<f64>, k: usize, ridge_upfront: bool) -> Vec<f64> {
    let trace = gram.trace();
    if trace <= 0.0 {
        // every neighbor coincides with the point: any affine combination works
        return vec![1.0 / k as f64; k];
    }
    if ridge_upfront {
        add_ridge(&mut gram, trace, k);
    }
    let ones = DVector::from_element(k, 1.0);
    let mut attempt = gram.clone().cholesky().map(|c| c.solve(&ones));
    if attempt.is_none() {
        add_ridge(&mut gram, trace, k);
        attempt = gram.clone().cholesky().map(|c| c.solve(&ones));
    }
    let solved = attempt.or_else(|| gram.lu().solve(&ones));
    match solved {
        Some(w) => {
            let sum: f64 = w.iter().sum();
            if sum.abs() > 1e-300 && sum.is_finite() {
                w.iter().map(|v| v / sum).collect()
            } else {
                vec![1.0 / k as f64; k]
            }
        }
        None => vec![1.0 / k as f64; k],
    }
}

fn add_ridge(gram: &mut DMatrix<f64>, trace: f64, k: usize) {
    let r = RIDGE * trace / k as f64;
    for a in 0..k {
        gram[(a, a)] += r;
    }
}

/// Embed from a row-stochastic weight matrix: eigendecompose
/// M = (I−W)ᵀ(I−W), discard the ≈0 constant mode and return the next d
/// eigenvectors by increasing eigenvalue, together with their eigenvalues.
pub fn embed_from_weights(rows: &[Vec<(usize, f64)>], d: usize) -> Result<(Embedding, Vec<f64>)> {
    let n = rows.len();
    if d < 1 || d >= n {
        return Err(Error::Parameter(format!("d={d} must satisfy 1 <= d < N={n}")));
    }
    let mut i_minus_w = DMatrix::identity(n, n);
    for (i, row) in rows.iter().enumerate() {
        for &(j, v) in row {
            i_minus_w[(i, j)] -= v;
        }
    }
    let mut m = i_minus_w.transpose() * &i_minus_w;
    // symmetrize away rounding asymmetry before the eigensolve
    for i in 0..n {
        for j in (i + 1)..n {
            let v = 0.5 * (m[(i, j)] + m[(j, i)]);
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
    let (vals, vecs) = linalg::symmetric_eigen_sorted(m)?;
    // the bottom eigenvector is the constant mode of a row-stochastic W
    if vals[0] >= NULL_EIGENVALUE {
        return Err(Error::Numerical(format!(
            "no null eigenvalue found (smallest is {}): weight rows do not sum to 1",
            vals[0]
        )));
    }
    let mut coords = vecs.columns(1, d).into_owned();
    linalg::fix_column_signs(&mut coords);
    let eigenvalues = vals[1..=d].to_vec();
    Ok((Embedding::new(coords, "lle")?, eigenvalues))
}

/// Single-view LLE.
pub fn run_lle(view: &DMatrix<f64>, k: usize, d: usize) -> Result<Embedding> {
    let gamma = knn(view, k)?;
    let w = reconstruction_weights(view, &gamma)?;
    let (mut emb, _) = embed_from_weights(w.rows(), d)?;
    emb.parameter = Some(k as f64);
    Ok(emb)
}

/// LLE on the column-stacked views.
pub fn run_lle_concat(ds: &MultiViewDataset, k: usize, d: usize) -> Result<Embedding> {
    let mut emb = run_lle(&ds.concat_views(), k, d)?;
    emb.method = "lle-concat".into();
    Ok(emb)
}

/// multi-LLE: per-view weight matrices combined into the consensus Ŵ,
/// then a single eigenvector embedding.
pub fn run_multille(
    ds: &MultiViewDataset,
    k: usize,
    alpha: &ViewWeights,
    d: usize,
) -> Result<Embedding> {
    let per_view: Vec<ReconstructionWeights> = ds
        .views()
        .par_iter()
        .map(|v| reconstruction_weights(v, &knn(v, k)?))
        .collect::<Result<_>>()?;
    let consensus = ConsensusWeights::combine(&per_view, alpha)?;
    let (mut emb, _) = embed_from_weights(consensus.rows(), d)?;
    emb.method = "multille".into();
    emb.parameter = Some(k as f64);
    Ok(emb)
}

/// m-LLE: per-view LLE embeddings, Procrustes-aligned to the first view,
/// then the weighted average Ŷ = Σ_m β^m Y^m.
pub fn run_mlle(
    ds: &MultiViewDataset,
    k: usize,
    beta: &ViewWeights,
    d: usize,
) -> Result<Embedding> {
    if beta.len() != ds.n_views() {
        return Err(Error::Parameter(format!(
            "{} weights for {} views",
            beta.len(),
            ds.n_views()
        )));
    }
    let embeddings: Vec<Embedding> = ds
        .views()
        .par_iter()
        .map(|v| run_lle(v, k, d))
        .collect::<Result<_>>()?;
    let reference = embeddings[0].coords.clone();
    let mut combined = DMatrix::zeros(reference.nrows(), d);
    for (m, (emb, &b)) in embeddings.iter().zip(beta.as_slice()).enumerate() {
        let aligned = if m == 0 {
            emb.coords.clone()
        } else {
            linalg::procrustes_align(&emb.coords, &reference)?
        };
        combined += aligned * b;
    }
    let mut emb = Embedding::new(combined, "mlle")?;
    emb.parameter = Some(k as f64);
    Ok(emb)
}
