//! Clustering of embeddings (K-means, DBSCAN) and the evaluation measures
//! ACC, NMI, RI, ARI and Silhouette.
//!
//! Predicted cluster ids are arbitrary, so accuracy first computes the
//! optimal one-to-one cluster-to-class assignment (Hungarian algorithm)
//! and then scores the matched diagonal.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{self, derive_seed};

#[derive(Debug, Clone)]
pub struct ClusteringResult {
    /// Cluster id per sample; DBSCAN noise points are −1.
    pub labels: Vec<i64>,
    pub k: usize,
    /// Within-cluster sum of squares (K-means only).
    pub inertia: Option<f64>,
}

/// K-means with k-means++ seeding and `restarts` independent runs; the run
/// with the lowest inertia wins. Empty clusters are reseeded with the point
/// farthest from its centroid, never a hard error.
pub fn kmeans(y: &DMatrix<f64>, k: usize, restarts: usize, seed: u64) -> Result<ClusteringResult> {
    let n = y.nrows();
    if k < 1 || k > n {
        return Err(Error::Parameter(format!("k={k} must satisfy 1 <= k <= N={n}")));
    }
    if restarts < 1 {
        return Err(Error::Parameter("restarts must be >= 1".into()));
    }
    let runs: Vec<(Vec<i64>, f64)> = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let (labels, inertia, _) = lloyd(y, k, derive_seed(seed, r as u64));
            (labels, inertia)
        })
        .collect();
    let best = runs
        .into_iter()
        .enumerate()
        .min_by(|(ia, (_, a)), (ib, (_, b))| a.total_cmp(b).then(ia.cmp(ib)))
        .map(|(_, run)| run)
        .expect("restarts >= 1");
    Ok(ClusteringResult {
        labels: best.0,
        k,
        inertia: Some(best.1),
    })
}

/// One seeded K-means run; returns (labels, inertia, per-iteration inertia).
pub(crate) fn lloyd(y: &DMatrix<f64>, k: usize, seed: u64) -> (Vec<i64>, f64, Vec<f64>) {
    let n = y.nrows();
    let d = y.ncols();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // k-means++ seeding
    let mut centers = DMatrix::<f64>::zeros(k, d);
    let first = rng.random_range(0..n);
    centers.set_row(0, &y.row(first));
    let mut closest_sq = vec![f64::INFINITY; n];
    for c in 1..k {
        for i in 0..n {
            let dist = (y.row(i) - centers.row(c - 1)).norm_squared();
            if dist < closest_sq[i] {
                closest_sq[i] = dist;
            }
        }
        let total: f64 = closest_sq.iter().sum();
        let pick = if total > 0.0 {
            let mut target = rng.random_range(0.0..total);
            let mut chosen = n - 1;
            for (i, &w) in closest_sq.iter().enumerate() {
                if target < w {
                    chosen = i;
                    break;
                }
                target -= w;
            }
            chosen
        } else {
            rng.random_range(0..n)
        };
        centers.set_row(c, &y.row(pick));
    }

    let mut labels = vec![0usize; n];
    let mut inertia_trace = Vec::new();
    let mut inertia = f64::INFINITY;
    for _iter in 0..300 {
        // assignment
        let mut changed = false;
        let mut total = 0.0;
        for i in 0..n {
            let mut best = 0usize;
            let mut best_d = f64::INFINITY;
            for c in 0..k {
                let dist = (y.row(i) - centers.row(c)).norm_squared();
                if dist < best_d {
                    best_d = dist;
                    best = c;
                }
            }
            if labels[i] != best {
                labels[i] = best;
                changed = true;
            }
            total += best_d;
        }
        inertia_trace.push(total);
        inertia = total;
        if !changed && inertia_trace.len() > 1 {
            break;
        }
        // update
        let mut counts = vec![0usize; k];
        let mut sums = DMatrix::<f64>::zeros(k, d);
        for i in 0..n {
            counts[labels[i]] += 1;
            for j in 0..d {
                sums[(labels[i], j)] += y[(i, j)];
            }
        }
        for c in 0..k {
            if counts[c] > 0 {
                for j in 0..d {
                    centers[(c, j)] = sums[(c, j)] / counts[c] as f64;
                }
            } else {
                // reseed on the point farthest from its centroid
                let far = (0..n)
                    .max_by(|&a, &b| {
                        let da = (y.row(a) - centers.row(labels[a])).norm_squared();
                        let db = (y.row(b) - centers.row(labels[b])).norm_squared();
                        da.total_cmp(&db)
                    })
                    .expect("n >= 1");
                centers.set_row(c, &y.row(far));
                labels[far] = c;
            }
        }
    }
    (labels.into_iter().map(|l| l as i64).collect(), inertia, inertia_trace)
}

/// Density-based clustering; returns −1 for noise points. A point is a core
/// point when its eps-neighborhood (itself included) holds at least
/// `min_pts` samples.
pub fn dbscan(y: &DMatrix<f64>, eps: f64, min_pts: usize) -> Result<ClusteringResult> {
    if eps <= 0.0 {
        return Err(Error::Parameter("eps must be positive".into()));
    }
    if min_pts < 1 {
        return Err(Error::Parameter("min_pts must be >= 1".into()));
    }
    let n = y.nrows();
    let d2 = linalg::pairwise_sq_dists(y);
    let eps_sq = eps * eps;
    let neighborhoods: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| d2[(i, j)] <= eps_sq).collect())
        .collect();
    let core: Vec<bool> = neighborhoods.iter().map(|nb| nb.len() >= min_pts).collect();

    let mut labels = vec![-1i64; n];
    let mut cluster = 0i64;
    for start in 0..n {
        if labels[start] != -1 || !core[start] {
            continue;
        }
        labels[start] = cluster;
        let mut frontier = vec![start];
        while let Some(u) = frontier.pop() {
            for &v in &neighborhoods[u] {
                if labels[v] == -1 {
                    labels[v] = cluster;
                    if core[v] {
                        frontier.push(v);
                    }
                }
            }
        }
        cluster += 1;
    }
    Ok(ClusteringResult {
        labels,
        k: cluster as usize,
        inertia: None,
    })
}

/// eps suggestion from the k-distance elbow: the sorted k-th neighbor
/// distance curve's point of maximum deviation from its chord.
pub fn suggest_eps(y: &DMatrix<f64>, k: usize) -> Result<f64> {
    let n = y.nrows();
    if k >= n {
        return Err(Error::Parameter(format!("k={k} must be < N={n}")));
    }
    let d2 = linalg::pairwise_sq_dists(y);
    let mut kdist: Vec<f64> = (0..n)
        .map(|i| {
            let mut row: Vec<f64> = (0..n).filter(|&j| j != i).map(|j| d2[(i, j)]).collect();
            row.sort_by(f64::total_cmp);
            row[k - 1].sqrt()
        })
        .collect();
    kdist.sort_by(|a, b| b.total_cmp(a));
    let m = kdist.len();
    let (x0, y0) = (0.0f64, kdist[0]);
    let (x1, y1) = ((m - 1) as f64, kdist[m - 1]);
    let len = ((x1 - x0).powi(2) + (y1 - y0).powi(2)).sqrt().max(1e-12);
    let mut best = (0usize, -1.0f64);
    for (i, &v) in kdist.iter().enumerate() {
        let dist = ((x1 - x0) * (y0 - v) - (x0 - i as f64) * (y1 - y0)).abs() / len;
        if dist > best.1 {
            best = (i, dist);
        }
    }
    Ok(kdist[best.0].max(1e-12))
}

/// Cross-tabulation of class (row) versus cluster (column) counts.
#[derive(Debug, Clone)]
pub struct ContingencyTable {
    /// counts[i][j]: samples in truth class i and predicted cluster j.
    pub counts: Vec<Vec<usize>>,
    /// Row sums a_i.
    pub row_sums: Vec<usize>,
    /// Column sums b_j.
    pub col_sums: Vec<usize>,
    /// Grand total S = N.
    pub total: usize,
}

pub fn contingency(pred: &[i64], truth: &[i64]) -> Result<ContingencyTable> {
    if pred.len() != truth.len() {
        return Err(Error::Alignment(format!(
            "{} predictions for {} truths",
            pred.len(),
            truth.len()
        )));
    }
    if pred.is_empty() {
        return Err(Error::Undefined("empty labelings".into()));
    }
    let mut classes: Vec<i64> = truth.to_vec();
    classes.sort_unstable();
    classes.dedup();
    let mut clusters: Vec<i64> = pred.to_vec();
    clusters.sort_unstable();
    clusters.dedup();
    let row_of = |l: i64| classes.binary_search(&l).expect("present");
    let col_of = |l: i64| clusters.binary_search(&l).expect("present");
    let mut counts = vec![vec![0usize; clusters.len()]; classes.len()];
    for (&p, &t) in pred.iter().zip(truth) {
        counts[row_of(t)][col_of(p)] += 1;
    }
    let row_sums: Vec<usize> = counts.iter().map(|r| r.iter().sum()).collect();
    let col_sums: Vec<usize> = (0..clusters.len())
        .map(|j| counts.iter().map(|r| r[j]).sum())
        .collect();
    Ok(ContingencyTable {
        counts,
        row_sums,
        col_sums,
        total: pred.len(),
    })
}

/// Minimum-cost perfect assignment (rows to columns) on a square matrix.
fn hungarian_min(cost: &[Vec<f64>]) -> Vec<usize> {
    let n = cost.len();
    let mut u = vec![0.0f64; n + 1];
    let mut v = vec![0.0f64; n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0usize;
            for j in 1..=n {
                if !used[j] {
                    let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut assignment = vec![0usize; n];
    for j in 1..=n {
        if p[j] > 0 {
            assignment[p[j] - 1] = j - 1;
        }
    }
    assignment
}

/// Matched clustering accuracy: the best one-to-one cluster-to-class
/// assignment's diagonal mass over S.
pub fn accuracy(table: &ContingencyTable) -> f64 {
    let r = table.counts.len();
    let s = table.counts.first().map_or(0, Vec::len);
    let n = r.max(s);
    let max_count = table
        .counts
        .iter()
        .flatten()
        .copied()
        .max()
        .unwrap_or(0) as f64;
    let cost: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = if i < r && j < s { table.counts[i][j] } else { 0 };
                    max_count - c as f64
                })
                .collect()
        })
        .collect();
    let assignment = hungarian_min(&cost);
    let matched: usize = assignment
        .iter()
        .enumerate()
        .filter(|&(i, &j)| i < r && j < s)
        .map(|(i, &j)| table.counts[i][j])
        .sum();
    matched as f64 / table.total as f64
}

/// 1 − matched accuracy.
pub fn misclustering_error(table: &ContingencyTable) -> f64 {
    1.0 - accuracy(table)
}

/// Normalised mutual information 2I(X,Y)/(H(X)+H(Y)); 0/0 reads as 0.
pub fn nmi(table: &ContingencyTable) -> f64 {
    let n = table.total as f64;
    let h = |sums: &[usize]| -> f64 {
        sums.iter()
            .filter(|&&c| c > 0)
            .map(|&c| {
                let p = c as f64 / n;
                -p * p.ln()
            })
            .sum()
    };
    let hx = h(&table.row_sums);
    let hy = h(&table.col_sums);
    let mut mi = 0.0;
    for (i, row) in table.counts.iter().enumerate() {
        for (j, &c) in row.iter().enumerate() {
            if c > 0 {
                let pij = c as f64 / n;
                mi += pij
                    * (n * c as f64 / (table.row_sums[i] as f64 * table.col_sums[j] as f64)).ln();
            }
        }
    }
    if hx + hy <= 0.0 {
        0.0
    } else {
        (2.0 * mi / (hx + hy)).clamp(0.0, 1.0)
    }
}

fn choose2(x: usize) -> f64 {
    (x as f64) * (x as f64 - 1.0) / 2.0
}

/// Rand index: pair agreements over all C(N,2) pairs.
pub fn rand_index(table: &ContingencyTable) -> Result<f64> {
    if table.total < 2 {
        return Err(Error::Undefined("rand index needs N >= 2".into()));
    }
    let pairs = choose2(table.total);
    let sum_a: f64 = table.row_sums.iter().map(|&a| (a * a) as f64).sum();
    let sum_b: f64 = table.col_sums.iter().map(|&b| (b * b) as f64).sum();
    let sum_n2: f64 = table
        .counts
        .iter()
        .flatten()
        .map(|&c| (c * c) as f64)
        .sum();
    Ok((pairs - (0.5 * (sum_a + sum_b) - sum_n2)) / pairs)
}

/// Adjusted Rand index (chance-corrected); identical trivial partitions
/// read as 1.
pub fn ari(table: &ContingencyTable) -> Result<f64> {
    if table.total < 2 {
        return Err(Error::Undefined("ARI needs N >= 2".into()));
    }
    let index: f64 = table.counts.iter().flatten().map(|&c| choose2(c)).sum();
    let sum_a: f64 = table.row_sums.iter().map(|&a| choose2(a)).sum();
    let sum_b: f64 = table.col_sums.iter().map(|&b| choose2(b)).sum();
    let expected = sum_a * sum_b / choose2(table.total);
    let max_index = 0.5 * (sum_a + sum_b);
    if (max_index - expected).abs() < 1e-12 {
        return Ok(1.0);
    }
    Ok((index - expected) / (max_index - expected))
}

/// Mean silhouette score over samples: (b−a)/max(a,b) with Euclidean
/// distances; singleton clusters score 0.
pub fn silhouette(y: &DMatrix<f64>, labels: &[i64]) -> Result<f64> {
    let n = y.nrows();
    if labels.len() != n {
        return Err(Error::Alignment("labels length != rows".into()));
    }
    let mut distinct: Vec<i64> = labels.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() < 2 {
        return Err(Error::Undefined("silhouette needs >= 2 clusters".into()));
    }
    let dist = linalg::pairwise_dists(y);
    let idx_of = |l: i64| distinct.binary_search(&l).expect("present");
    let sizes: Vec<usize> = {
        let mut s = vec![0usize; distinct.len()];
        for &l in labels {
            s[idx_of(l)] += 1;
        }
        s
    };
    let mut total = 0.0;
    for i in 0..n {
        let own = idx_of(labels[i]);
        if sizes[own] == 1 {
            continue; // singleton scores 0
        }
        let mut sums = vec![0.0f64; distinct.len()];
        for j in 0..n {
            if j != i {
                sums[idx_of(labels[j])] += dist[(i, j)];
            }
        }
        let a = sums[own] / (sizes[own] - 1) as f64;
        let b = (0..distinct.len())
            .filter(|&c| c != own && sizes[c] > 0)
            .map(|c| sums[c] / sizes[c] as f64)
            .fold(f64::INFINITY, f64::min);
        let denom = a.max(b);
        if denom > 0.0 {
            total += (b - a) / denom;
        }
    }
    Ok(total / n as f64)
}

/// The full evaluation row used by the experiment harness.
#[derive(Debug, Clone, Copy)]
pub struct Scores {
    pub acc: f64,
    pub nmi: f64,
    pub ri: f64,
    pub ari: f64,
    /// NaN when undefined (fewer than two predicted clusters).
    pub silhouette: f64,
}

pub fn evaluate_clustering(y: &DMatrix<f64>, pred: &[i64], truth: &[i64]) -> Result<Scores> {
    let table = contingency(pred, truth)?;
    Ok(Scores {
        acc: accuracy(&table),
        nmi: nmi(&table),
        ri: rand_index(&table)?,
        ari: ari(&table)?,
        silhouette: silhouette(y, pred).unwrap_or(f64::NAN),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn pair_counting_oracle(pred: &[i64], truth: &[i64]) -> (f64, f64) {
        // brute force over all C(N,2) pairs
        let n = pred.len();
        let (mut same_same, mut diff_diff, mut pairs) = (0.0f64, 0.0f64, 0.0f64);
        for i in 0..n {
            for j in (i + 1)..n {
                pairs += 1.0;
                let st = truth[i] == truth[j];
                let sp = pred[i] == pred[j];
                if st && sp {
                    same_same += 1.0;
                }
                if !st && !sp {
                    diff_diff += 1.0;
                }
            }
        }
        let ri = (same_same + diff_diff) / pairs;
        // ARI from pair counts
        let mut n11 = 0.0;
        let mut n_truth = 0.0;
        let mut n_pred = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                if truth[i] == truth[j] && pred[i] == pred[j] {
                    n11 += 1.0;
                }
                if truth[i] == truth[j] {
                    n_truth += 1.0;
                }
                if pred[i] == pred[j] {
                    n_pred += 1.0;
                }
            }
        }
        let expected = n_truth * n_pred / pairs;
        let max_index = 0.5 * (n_truth + n_pred);
        let ari = if (max_index - expected).abs() < 1e-12 {
            1.0
        } else {
            (n11 - expected) / (max_index - expected)
        };
        (ri, ari)
    }

    fn exhaustive_accuracy(pred: &[i64], truth: &[i64]) -> f64 {
        // try every assignment of predicted clusters to classes
        let table = contingency(pred, truth).unwrap();
        let r = table.counts.len();
        let s = table.counts[0].len();
        let m = r.max(s);
        let mut cols: Vec<usize> = (0..m).collect();
        let mut best = 0usize;
        permute(&mut cols, 0, &mut |perm| {
            let matched: usize = (0..r)
                .map(|i| if perm[i] < s { table.counts[i][perm[i]] } else { 0 })
                .sum();
            best = best.max(matched);
        });
        best as f64 / table.total as f64
    }

    fn permute(items: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
        if k == items.len() {
            visit(items);
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            permute(items, k + 1, visit);
            items.swap(k, i);
        }
    }

    #[test]
    fn kmeans_recovers_separated_pairs() {
        let y = DMatrix::from_row_slice(4, 2, &[0.0, 0.0, 0.0, 1.0, 10.0, 0.0, 10.0, 1.0]);
        let result = kmeans(&y, 2, 5, 1).unwrap();
        assert_eq!(result.labels[0], result.labels[1]);
        assert_eq!(result.labels[2], result.labels[3]);
        assert_ne!(result.labels[0], result.labels[2]);
        // centers at pair midpoints: 4 points each 0.5 away
        assert_abs_diff_eq!(result.inertia.unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn k_equals_n_gives_zero_inertia() {
        let y = DMatrix::from_row_slice(5, 2, &[0.0, 0.0, 1.0, 1.0, 2.0, 0.5, 3.0, 2.0, 4.0, 1.5]);
        let result = kmeans(&y, 5, 3, 2).unwrap();
        assert_abs_diff_eq!(result.inertia.unwrap(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn kmeans_beats_random_probe_assignments() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let y = DMatrix::from_fn(30, 2, |_, _| rng.random_range(-3.0..3.0));
        let k = 4;
        let best = kmeans(&y, k, 10, 3).unwrap().inertia.unwrap();
        let inertia_of = |labels: &[usize]| -> f64 {
            let mut sums = DMatrix::<f64>::zeros(k, 2);
            let mut counts = vec![0usize; k];
            for (i, &l) in labels.iter().enumerate() {
                counts[l] += 1;
                for j in 0..2 {
                    sums[(l, j)] += y[(i, j)];
                }
            }
            let mut total = 0.0;
            for (i, &l) in labels.iter().enumerate() {
                if counts[l] > 0 {
                    for j in 0..2 {
                        let c = sums[(l, j)] / counts[l] as f64;
                        total += (y[(i, j)] - c).powi(2);
                    }
                }
            }
            total
        };
        for _ in 0..10_000 {
            let labels: Vec<usize> = (0..30).map(|_| rng.random_range(0..k)).collect();
            assert!(best <= inertia_of(&labels) + 1e-9);
        }
    }

    #[test]
    fn lloyd_inertia_is_non_increasing() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let y = DMatrix::from_fn(40, 2, |_, _| rng.random_range(-2.0..2.0));
        let (_, _, trace) = lloyd(&y, 3, 17);
        for w in trace.windows(2) {
            assert!(w[1] <= w[0] + 1e-9, "inertia rose: {} -> {}", w[0], w[1]);
        }
    }

    #[test]
    fn dbscan_two_blobs() {
        let y = DMatrix::from_row_slice(
            8,
            2,
            &[
                0.0, 0.0, 0.1, 0.0, 0.0, 0.1, 0.1, 0.1, //
                9.0, 9.0, 9.1, 9.0, 9.0, 9.1, 9.1, 9.1,
            ],
        );
        let result = dbscan(&y, 0.3, 3).unwrap();
        assert_eq!(result.k, 2);
        assert!(result.labels.iter().all(|&l| l >= 0));
        assert_eq!(result.labels[0], result.labels[3]);
        assert_ne!(result.labels[0], result.labels[4]);
    }

    #[test]
    fn dbscan_all_noise_when_sparse() {
        let y = DMatrix::from_row_slice(4, 1, &[0.0, 10.0, 20.0, 30.0]);
        let result = dbscan(&y, 1.0, 2).unwrap();
        assert!(result.labels.iter().all(|&l| l == -1));
        assert_eq!(result.k, 0);
    }

    #[test]
    fn dbscan_matches_density_reachability_oracle() {
        // chain of core points plus a border point and an outlier
        let y = DMatrix::from_row_slice(
            7,
            1,
            &[0.0, 1.0, 2.0, 3.0, 4.0, 4.9, 20.0],
        );
        let eps = 1.1;
        let min_pts = 2;
        let got = dbscan(&y, eps, min_pts).unwrap();

        // oracle: core set, then transitive closure of eps-reachability
        let n = 7;
        let within = |i: usize, j: usize| (y[(i, 0)] - y[(j, 0)]).abs() <= eps;
        let core: Vec<bool> = (0..n)
            .map(|i| (0..n).filter(|&j| within(i, j)).count() >= min_pts)
            .collect();
        let mut oracle = vec![-1i64; n];
        let mut next = 0i64;
        loop {
            let seed = (0..n).find(|&i| core[i] && oracle[i] == -1);
            let Some(seed) = seed else { break };
            oracle[seed] = next;
            loop {
                let mut grew = false;
                for i in 0..n {
                    if oracle[i] == next && core[i] {
                        for j in 0..n {
                            if oracle[j] == -1 && within(i, j) {
                                oracle[j] = next;
                                grew = true;
                            }
                        }
                    }
                }
                if !grew {
                    break;
                }
            }
            next += 1;
        }
        assert_eq!(got.labels, oracle);
    }

    #[test]
    fn contingency_hand_counts() {
        let t = contingency(&[1, 1, 2, 2], &[1, 1, 2, 2]).unwrap();
        assert_eq!(t.counts, vec![vec![2, 0], vec![0, 2]]);

        let t = contingency(&[1, 1, 1, 1], &[1, 1, 2, 2]).unwrap();
        assert_eq!(t.counts, vec![vec![2], vec![2]]);

        let t = contingency(&[1, 2, 1, 2], &[0, 0, 1, 1]).unwrap();
        assert_eq!(t.counts, vec![vec![1, 1], vec![1, 1]]);
    }

    #[test]
    fn accuracy_examples() {
        let t = contingency(&[5, 5, 9, 9], &[0, 0, 1, 1]).unwrap();
        assert_abs_diff_eq!(accuracy(&t), 1.0, epsilon = 1e-12);

        // [A,A,B,B] vs [1,1,1,2]: best assignment matches 3 of 4
        let t = contingency(&[1, 1, 1, 2], &[0, 0, 1, 1]).unwrap();
        assert_abs_diff_eq!(accuracy(&t), 0.75, epsilon = 1e-12);
    }

    #[test]
    fn accuracy_equals_exhaustive_permutation_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..50 {
            let k = rng.random_range(2..=6);
            let n = 12;
            let truth: Vec<i64> = (0..n).map(|_| rng.random_range(0..k)).collect();
            let pred: Vec<i64> = (0..n).map(|_| rng.random_range(0..k)).collect();
            let t = contingency(&pred, &truth).unwrap();
            assert_abs_diff_eq!(
                accuracy(&t),
                exhaustive_accuracy(&pred, &truth),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn matched_accuracy_never_below_unmatched_trace() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for _ in 0..30 {
            let truth: Vec<i64> = (0..20).map(|_| rng.random_range(0..4)).collect();
            let pred: Vec<i64> = (0..20).map(|_| rng.random_range(0..4)).collect();
            let t = contingency(&pred, &truth).unwrap();
            let trace: usize = (0..t.counts.len().min(t.counts[0].len()))
                .map(|i| t.counts[i][i])
                .sum();
            assert!(accuracy(&t) >= trace as f64 / t.total as f64 - 1e-12);
        }
    }

    #[test]
    fn nmi_examples() {
        let t = contingency(&[3, 3, 7, 7], &[0, 0, 1, 1]).unwrap();
        assert_abs_diff_eq!(nmi(&t), 1.0, epsilon = 1e-12);

        // independent labelings with uniform marginals
        let t = contingency(&[1, 2, 1, 2], &[0, 0, 1, 1]).unwrap();
        assert_abs_diff_eq!(nmi(&t), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn rand_and_ari_frozen_examples() {
        let t = contingency(&[4, 4, 9, 9], &[0, 0, 1, 1]).unwrap();
        assert_abs_diff_eq!(rand_index(&t).unwrap(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(ari(&t).unwrap(), 1.0, epsilon = 1e-12);

        // truth [1,1,2,2] vs pred [1,2,1,2]: 2 agreements of 6 pairs
        let t = contingency(&[1, 2, 1, 2], &[1, 1, 2, 2]).unwrap();
        assert_abs_diff_eq!(rand_index(&t).unwrap(), 1.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(ari(&t).unwrap(), -0.5, epsilon = 1e-12);
        let (ri_o, ari_o) = pair_counting_oracle(&[1, 2, 1, 2], &[1, 1, 2, 2]);
        assert_abs_diff_eq!(rand_index(&t).unwrap(), ri_o, epsilon = 1e-12);
        assert_abs_diff_eq!(ari(&t).unwrap(), ari_o, epsilon = 1e-12);
    }

    #[test]
    fn table_formulas_match_pair_counting_on_random_labelings() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..100 {
            let n = rng.random_range(3..=60);
            let kt = rng.random_range(2..=5);
            let kp = rng.random_range(2..=5);
            let truth: Vec<i64> = (0..n).map(|_| rng.random_range(0..kt)).collect();
            let pred: Vec<i64> = (0..n).map(|_| rng.random_range(0..kp)).collect();
            let t = contingency(&pred, &truth).unwrap();
            let (ri_o, ari_o) = pair_counting_oracle(&pred, &truth);
            assert_abs_diff_eq!(rand_index(&t).unwrap(), ri_o, epsilon = 1e-10);
            assert_abs_diff_eq!(ari(&t).unwrap(), ari_o, epsilon = 1e-10);
        }
    }

    #[test]
    fn undefined_inputs_error() {
        let t = contingency(&[1], &[1]).unwrap();
        assert!(matches!(rand_index(&t).unwrap_err(), Error::Undefined(_)));
        assert!(matches!(ari(&t).unwrap_err(), Error::Undefined(_)));
        let y = DMatrix::from_row_slice(3, 1, &[0.0, 1.0, 2.0]);
        assert!(matches!(
            silhouette(&y, &[1, 1, 1]).unwrap_err(),
            Error::Undefined(_)
        ));
    }

    #[test]
    fn silhouette_far_blobs_near_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(51);
        let y = DMatrix::from_fn(40, 2, |i, _| {
            let base = if i < 20 { 0.0 } else { 100.0 };
            base + rng.random_range(-0.5..0.5)
        });
        let labels: Vec<i64> = (0..40).map(|i| if i < 20 { 0 } else { 1 }).collect();
        assert!(silhouette(&y, &labels).unwrap() > 0.9);
    }

    #[test]
    fn silhouette_random_split_near_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(52);
        let y = DMatrix::from_fn(60, 2, |_, _| rng.random_range(-1.0..1.0));
        let labels: Vec<i64> = (0..60).map(|i| (i % 2) as i64).collect();
        let s = silhouette(&y, &labels).unwrap();
        assert!(s.abs() < 0.2, "silhouette {s}");
    }

    #[test]
    fn silhouette_matches_hand_computation() {
        let y = DMatrix::from_row_slice(6, 1, &[0.0, 1.0, 2.0, 10.0, 11.0, 12.0]);
        let labels = [0i64, 0, 0, 1, 1, 1];
        let got = silhouette(&y, &labels).unwrap();
        // direct per-sample oracle
        let dist = |i: usize, j: usize| (y[(i, 0)] - y[(j, 0)]).abs();
        let mut total = 0.0;
        for i in 0..6 {
            let own: Vec<usize> = (0..6).filter(|&j| labels[j] == labels[i] && j != i).collect();
            let other: Vec<usize> = (0..6).filter(|&j| labels[j] != labels[i]).collect();
            let a: f64 = own.iter().map(|&j| dist(i, j)).sum::<f64>() / own.len() as f64;
            let b: f64 = other.iter().map(|&j| dist(i, j)).sum::<f64>() / other.len() as f64;
            total += (b - a) / a.max(b);
        }
        assert_abs_diff_eq!(got, total / 6.0, epsilon = 1e-12);
    }

    #[test]
    fn measures_invariant_to_relabeling() {
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        let y = DMatrix::from_fn(20, 2, |_, _| rng.random_range(-1.0..1.0));
        let truth: Vec<i64> = (0..20).map(|_| rng.random_range(0..3)).collect();
        let pred: Vec<i64> = (0..20).map(|_| rng.random_range(0..3)).collect();
        let relabeled: Vec<i64> = pred.iter().map(|&l| [7, 2, 5][l as usize]).collect();
        let a = evaluate_clustering(&y, &pred, &truth).unwrap();
        let b = evaluate_clustering(&y, &relabeled, &truth).unwrap();
        assert_abs_diff_eq!(a.acc, b.acc, epsilon = 1e-12);
        assert_abs_diff_eq!(a.nmi, b.nmi, epsilon = 1e-12);
        assert_abs_diff_eq!(a.ri, b.ri, epsilon = 1e-12);
        assert_abs_diff_eq!(a.ari, b.ari, epsilon = 1e-12);
        assert_abs_diff_eq!(a.silhouette, b.silhouette, epsilon = 1e-12);
    }

    #[test]
    fn suggest_eps_is_positive_and_reasonable() {
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        let y = DMatrix::from_fn(30, 2, |i, _| {
            let base = if i < 15 { 0.0 } else { 50.0 };
            base + rng.random_range(-1.0..1.0)
        });
        let eps = suggest_eps(&y, 5).unwrap();
        assert!(eps > 0.0 && eps < 60.0);
    }
}
