//! Small dense linear-algebra helpers shared across modules.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// N×N matrix of squared Euclidean distances between the rows of `x`.
pub fn pairwise_sq_dists(x: &DMatrix<f64>) -> DMatrix<f64> {
    let n = x.nrows();
    let sq_norms: Vec<f64> = (0..n).map(|i| x.row(i).norm_squared()).collect();
    let gram = x * x.transpose();
    let mut d = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in (i + 1)..n {
            // clamp: cancellation can produce tiny negatives
            let v = (sq_norms[i] + sq_norms[j] - 2.0 * gram[(i, j)]).max(0.0);
            d[(i, j)] = v;
            d[(j, i)] = v;
        }
    }
    d
}

/// N×N matrix of Euclidean distances between the rows of `x`.
pub fn pairwise_dists(x: &DMatrix<f64>) -> DMatrix<f64> {
    pairwise_sq_dists(x).map(f64::sqrt)
}

/// Subtract each column's mean; returns the centered matrix and the means.
pub fn center_columns(x: &DMatrix<f64>) -> (DMatrix<f64>, DVector<f64>) {
    let n = x.nrows() as f64;
    let means = DVector::from_iterator(x.ncols(), x.column_iter().map(|c| c.sum() / n));
    let mut centered = x.clone();
    for (j, mut col) in centered.column_iter_mut().enumerate() {
        col.add_scalar_mut(-means[j]);
    }
    (centered, means)
}

/// Standardize columns to zero mean and unit variance. Constant columns are
/// left centered (divisor clamped to 1).
pub fn standardize_columns(x: &DMatrix<f64>) -> DMatrix<f64> {
    let (mut c, _) = center_columns(x);
    let n = (x.nrows().max(2) - 1) as f64;
    for mut col in c.column_iter_mut() {
        let sd = (col.norm_squared() / n).sqrt();
        if sd > 1e-12 {
            col /= sd;
        }
    }
    c
}

/// Eigendecomposition of a symmetric matrix with eigenvalues sorted
/// ascending. Returns (eigenvalues, eigenvectors-as-columns).
pub fn symmetric_eigen_sorted(mat: DMatrix<f64>) -> Result<(Vec<f64>, DMatrix<f64>)> {
    let n = mat.nrows();
    let eig = mat
        .try_symmetric_eigen(1e-13, 10_000)
        .ok_or_else(|| Error::Numerical(format!("symmetric eigensolver stalled on {n}x{n}")))?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    Ok((values, vectors))
}

/// Flip each column so its largest-magnitude entry is positive.
pub fn fix_column_signs(mat: &mut DMatrix<f64>) {
    for mut col in mat.column_iter_mut() {
        let mut best = 0usize;
        let mut best_abs = 0.0f64;
        for (i, v) in col.iter().enumerate() {
            if v.abs() > best_abs {
                best_abs = v.abs();
                best = i;
            }
        }
        if col[best] < 0.0 {
            col.neg_mut();
        }
    }
}

/// Orthogonal Procrustes: rotate/reflect `y` (about its mean) to best match
/// `reference`. Both are N×d; returns the aligned copy of `y`.
pub fn procrustes_align(y: &DMatrix<f64>, reference: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let (yc, y_mean) = center_columns(y);
    let (rc, r_mean) = center_columns(reference);
    let m = yc.transpose() * rc;
    let svd = m.svd(true, true);
    let u = svd
        .u
        .ok_or_else(|| Error::Numerical("procrustes svd produced no U".into()))?;
    let vt = svd
        .v_t
        .ok_or_else(|| Error::Numerical("procrustes svd produced no V^T".into()))?;
    let rot = u * vt;
    let mut aligned = yc * rot;
    for mut row in aligned.row_iter_mut() {
        for j in 0..row.ncols() {
            row[j] += r_mean[j];
        }
    }
    let _ = y_mean;
    Ok(aligned)
}

/// Deterministic per-task seed derivation (splitmix64 over master ^ index).
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn sq_dists_match_direct_loop() {
        let x = DMatrix::from_row_slice(3, 2, &[0.0, 0.0, 3.0, 4.0, -1.0, 1.0]);
        let d = pairwise_sq_dists(&x);
        assert_abs_diff_eq!(d[(0, 1)], 25.0, epsilon = 1e-12);
        assert_abs_diff_eq!(d[(0, 2)], 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(d[(1, 2)], 25.0, epsilon = 1e-12);
        assert_eq!(d[(0, 0)], 0.0);
    }

    #[test]
    fn eigen_sorted_ascending_with_residual() {
        let m = DMatrix::from_row_slice(3, 3, &[2.0, 1.0, 0.0, 1.0, 3.0, 1.0, 0.0, 1.0, 4.0]);
        let (vals, vecs) = symmetric_eigen_sorted(m.clone()).unwrap();
        assert!(vals.windows(2).all(|w| w[0] <= w[1]));
        for k in 0..3 {
            let v = vecs.column(k);
            let residual = (&m * v) - vals[k] * v;
            assert!(residual.norm() < 1e-10);
        }
    }

    #[test]
    fn procrustes_recovers_rotation() {
        let y = DMatrix::from_row_slice(4, 2, &[0.0, 0.0, 1.0, 0.0, 1.0, 1.0, 0.0, 1.0]);
        let theta: f64 = 0.7;
        let rot =
            DMatrix::from_row_slice(2, 2, &[theta.cos(), -theta.sin(), theta.sin(), theta.cos()]);
        let rotated = &y * rot;
        let aligned = procrustes_align(&rotated, &y).unwrap();
        assert!((aligned - &y).norm() < 1e-10);
    }

    #[test]
    fn derive_seed_is_stable_and_spread() {
        assert_eq!(derive_seed(7, 0), derive_seed(7, 0));
        assert_ne!(derive_seed(7, 0), derive_seed(7, 1));
        assert_ne!(derive_seed(7, 0), derive_seed(8, 0));
    }
}
