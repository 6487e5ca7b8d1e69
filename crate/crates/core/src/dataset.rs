//! Multi-view dataset container, CSV ingestion and synthetic scenarios.
//!
//! A multi-view dataset is a set of M feature matrices over the same N
//! samples, row-aligned, with optional ground-truth cluster labels. The
//! synthetic scenarios (MMDS, NDS, MCS) draw each view from a multivariate
//! normal with cluster-specific means, add unit-variance noise and push the
//! result through a per-view random polynomial so that linear methods cannot
//! separate the clusters.

use std::collections::BTreeMap;
use std::path::Path;

use nalgebra::{DMatrix, DVector};
use rand::prelude::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// M aligned feature matrices over the same N samples.
#[derive(Debug, Clone)]
pub struct MultiViewDataset {
    views: Vec<DMatrix<f64>>,
    labels: Option<Vec<i64>>,
    names: Option<Vec<String>>,
}

impl MultiViewDataset {
    /// Build a dataset, validating row alignment and shape invariants.
    pub fn new(views: Vec<DMatrix<f64>>, labels: Option<Vec<i64>>) -> Result<Self> {
        if views.is_empty() {
            return Err(Error::Parameter("need at least one view".into()));
        }
        let n = views[0].nrows();
        if n < 2 {
            return Err(Error::Parameter("need at least 2 samples".into()));
        }
        for (m, v) in views.iter().enumerate() {
            if v.nrows() != n {
                return Err(Error::Alignment(format!(
                    "view {m} has {} rows, expected {n}",
                    v.nrows()
                )));
            }
            if v.ncols() < 1 {
                return Err(Error::Parameter(format!("view {m} has no features")));
            }
        }
        if let Some(ref l) = labels {
            if l.len() != n {
                return Err(Error::Alignment(format!(
                    "labels have {} entries, expected {n}",
                    l.len()
                )));
            }
            let mut distinct = l.to_vec();
            distinct.sort_unstable();
            distinct.dedup();
            if distinct.is_empty() {
                return Err(Error::Parameter("labels carry no values".into()));
            }
        }
        Ok(Self {
            views,
            labels,
            names: None,
        })
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.views.len() {
            return Err(Error::Alignment(format!(
                "{} names for {} views",
                names.len(),
                self.views.len()
            )));
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn n_samples(&self) -> usize {
        self.views[0].nrows()
    }

    pub fn n_views(&self) -> usize {
        self.views.len()
    }

    pub fn view(&self, m: usize) -> &DMatrix<f64> {
        &self.views[m]
    }

    pub fn views(&self) -> &[DMatrix<f64>] {
        &self.views
    }

    pub fn labels(&self) -> Option<&[i64]> {
        self.labels.as_deref()
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Column-stack all views into a single N×(Σ p_m) matrix.
    pub fn concat_views(&self) -> DMatrix<f64> {
        let n = self.n_samples();
        let total: usize = self.views.iter().map(|v| v.ncols()).sum();
        let mut out = DMatrix::zeros(n, total);
        let mut offset = 0;
        for v in &self.views {
            out.view_mut((0, offset), (n, v.ncols())).copy_from(v);
            offset += v.ncols();
        }
        out
    }

    /// Row-subset every view (and labels) by the given sample indices.
    /// Indices may repeat or permute; alignment is preserved.
    pub fn subset_rows(&self, idx: &[usize]) -> Result<Self> {
        let n = self.n_samples();
        if let Some(&bad) = idx.iter().find(|&&i| i >= n) {
            return Err(Error::Parameter(format!("row index {bad} out of range {n}")));
        }
        let views = self
            .views
            .iter()
            .map(|v| DMatrix::from_fn(idx.len(), v.ncols(), |i, j| v[(idx[i], j)]))
            .collect();
        let labels = self
            .labels
            .as_ref()
            .map(|l| idx.iter().map(|&i| l[i]).collect());
        let mut out = Self::new(views, labels)?;
        out.names = self.names.clone();
        Ok(out)
    }

    /// Keep only the listed views, in the given order.
    pub fn select_views(&self, which: &[usize]) -> Result<Self> {
        if which.is_empty() {
            return Err(Error::Parameter("empty view selection".into()));
        }
        let mut views = Vec::with_capacity(which.len());
        let mut names = self.names.as_ref().map(|_| Vec::with_capacity(which.len()));
        for &m in which {
            if m >= self.n_views() {
                return Err(Error::Parameter(format!("view index {m} out of range")));
            }
            views.push(self.views[m].clone());
            if let (Some(ns), Some(all)) = (names.as_mut(), self.names.as_ref()) {
                ns.push(all[m].clone());
            }
        }
        let mut out = Self::new(views, self.labels.clone())?;
        out.names = names;
        Ok(out)
    }
}

/// Read a headerless (or single-header) numeric CSV into a matrix.
pub fn read_numeric_csv(path: &Path, has_header: bool) -> Result<DMatrix<f64>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(has_header)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_path(path)
        .map_err(|e| Error::Io(std::io::Error::other(e)))?;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut width = None;
    for (r, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::Io(std::io::Error::other(e)))?;
        if record.len() == 1 && record[0].is_empty() {
            continue; // trailing blank line
        }
        let mut row = Vec::with_capacity(record.len());
        for (c, field) in record.iter().enumerate() {
            let v: f64 = field.parse().map_err(|_| Error::Parse {
                path: path.display().to_string(),
                row: r + 1,
                col: c + 1,
                msg: format!("not a number: {field:?}"),
            })?;
            row.push(v);
        }
        match width {
            None => width = Some(row.len()),
            Some(w) if w != row.len() => {
                return Err(Error::Parse {
                    path: path.display().to_string(),
                    row: r + 1,
                    col: row.len(),
                    msg: format!("ragged row: {} fields, expected {w}", row.len()),
                })
            }
            _ => {}
        }
        rows.push(row);
    }
    let width = width.ok_or_else(|| {
        Error::Parse {
            path: path.display().to_string(),
            row: 0,
            col: 0,
            msg: "empty file".into(),
        }
    })?;
    Ok(DMatrix::from_fn(rows.len(), width, |i, j| rows[i][j]))
}

/// Load a multi-view dataset from per-view CSV files plus an optional
/// labels file (one integer per row).
pub fn load_multiview(
    view_paths: &[impl AsRef<Path>],
    label_path: Option<&Path>,
    has_header: bool,
) -> Result<MultiViewDataset> {
    if view_paths.is_empty() {
        return Err(Error::Parameter("no view files given".into()));
    }
    let mut views = Vec::with_capacity(view_paths.len());
    let mut names = Vec::with_capacity(view_paths.len());
    for p in view_paths {
        let p = p.as_ref();
        views.push(read_numeric_csv(p, has_header)?);
        names.push(
            p.file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| p.display().to_string()),
        );
    }
    let labels = match label_path {
        Some(p) => {
            let m = read_numeric_csv(p, has_header)?;
            if m.ncols() != 1 {
                return Err(Error::Parse {
                    path: p.display().to_string(),
                    row: 1,
                    col: m.ncols(),
                    msg: "labels file must have exactly one column".into(),
                });
            }
            Some(m.column(0).iter().map(|&v| v.round() as i64).collect())
        }
        None => None,
    };
    MultiViewDataset::new(views, labels)?.with_names(names)
}

/// Write the dataset as `view_0.csv … view_{M-1}.csv` (+ `labels.csv`).
pub fn save_dataset(ds: &MultiViewDataset, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    for (m, v) in ds.views().iter().enumerate() {
        write_matrix_csv(v, &dir.join(format!("view_{m}.csv")))?;
    }
    if let Some(labels) = ds.labels() {
        let body: String = labels.iter().map(|l| format!("{l}\n")).collect();
        std::fs::write(dir.join("labels.csv"), body)?;
    }
    Ok(())
}

/// Plain numeric CSV, no header; `{}` formatting keeps f64 round-trips exact.
pub fn write_matrix_csv(mat: &DMatrix<f64>, path: &Path) -> Result<()> {
    let mut out = String::new();
    for i in 0..mat.nrows() {
        for j in 0..mat.ncols() {
            if j > 0 {
                out.push(',');
            }
            out.push_str(&format!("{}", mat[(i, j)]));
        }
        out.push('\n');
    }
    std::fs::write(path, out)?;
    Ok(())
}

/// The synthetic benchmark scenarios.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScenarioKind {
    /// 3 views, 3 clusters; each view separates exactly one cluster.
    Mmds,
    /// MMDS structure plus one all-noise view (4 views, 3 clusters).
    Nds,
    /// 3 views, 5 clusters; no view separates all of them.
    Mcs,
    /// NDS with `count` extra noise views appended.
    NdsExtraNoise(usize),
}

/// A fully specified generation request: scenario plus RNG seed.
/// Sizes are fixed per scenario and exposed read-only.
#[derive(Debug, Clone, Copy)]
pub struct SyntheticScenario {
    pub kind: ScenarioKind,
    pub seed: u64,
    pub n_samples: usize,
    pub n_clusters: usize,
    pub n_views: usize,
    pub dims_per_view: usize,
}

impl SyntheticScenario {
    pub fn new(kind: ScenarioKind, seed: u64) -> Self {
        let (n_views, n_clusters, n_samples, dims_per_view) = match kind {
            ScenarioKind::Mmds => (3, 3, 300, 300),
            ScenarioKind::Nds => (4, 3, 300, 100),
            ScenarioKind::Mcs => (3, 5, 500, 100),
            ScenarioKind::NdsExtraNoise(c) => (4 + c, 3, 300, 100),
        };
        Self {
            kind,
            seed,
            n_samples,
            n_clusters,
            n_views,
            dims_per_view,
        }
    }
}

/// Per-view, per-cluster mean vectors realizing the separability patterns:
/// a separated cluster gets +δ on a designated block of ⌈p/3⌉ coordinates,
/// everything else is 0. Noise views share a single zero mean.
///
/// δ = 3 keeps every informative view locally separable while staying weak
/// enough that, after the per-view polynomial, clusters are not linearly
/// (variance-)separable — which is what defeats the concatenation
/// baselines, as intended for these scenarios.
pub fn scenario_view_means(scenario: &SyntheticScenario) -> Vec<Vec<DVector<f64>>> {
    scenario_view_means_with(scenario, &view_deltas(scenario))
}

fn view_deltas(scenario: &SyntheticScenario) -> Vec<f64> {
    vec![DELTA; scenario.n_views]
}

const DELTA: f64 = 3.0;

pub(crate) fn scenario_view_means_with(
    scenario: &SyntheticScenario,
    deltas: &[f64],
) -> Vec<Vec<DVector<f64>>> {
    let p = scenario.dims_per_view;
    let k = scenario.n_clusters;
    let block = p.div_ceil(3);
    let shifted = |delta: f64, block_idx: usize| {
        let mut v = DVector::zeros(p);
        let start = block_idx * block;
        let end = ((block_idx + 1) * block).min(p);
        for j in start..end {
            v[j] = delta;
        }
        v
    };
    // view -> [(cluster, block)] of separated clusters
    let plan: Vec<Vec<(usize, usize)>> = match scenario.kind {
        // view 1 separates only C, view 2 only B, view 3 only A
        ScenarioKind::Mmds => vec![vec![(2, 0)], vec![(1, 0)], vec![(0, 0)]],
        ScenarioKind::Nds => vec![vec![(2, 0)], vec![(1, 0)], vec![(0, 0)], vec![]],
        // five clusters over three views: (A,B), (C,D), (E)
        ScenarioKind::Mcs => vec![vec![(0, 0), (1, 1)], vec![(2, 0), (3, 1)], vec![(4, 0)]],
        ScenarioKind::NdsExtraNoise(c) => {
            let mut v = vec![vec![(2, 0)], vec![(1, 0)], vec![(0, 0)], vec![]];
            v.extend(std::iter::repeat_n(vec![], c));
            v
        }
    };
    plan.into_iter()
        .zip(deltas)
        .map(|(separated, &delta)| {
            let mut means = vec![DVector::zeros(p); k];
            for (cluster, block_idx) in separated {
                means[cluster] = shifted(delta, block_idx);
            }
            means
        })
        .collect()
}

/// Elementwise polynomial with small integer coefficients, degree 2–4.
#[derive(Debug, Clone)]
pub struct Polynomial {
    /// coeffs[i] multiplies x^i.
    pub coeffs: Vec<f64>,
}

impl Polynomial {
    fn sample(rng: &mut impl Rng) -> Self {
        let degree = *[2usize, 3, 4].choose(rng).expect("nonempty");
        let coeffs = (0..=degree)
            .map(|_| rng.random_range(1..=5) as f64)
            .collect();
        Self { coeffs }
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }
}

/// Generate a synthetic scenario: X ~ MVN(μ_cluster, I) + ε, ε ~ MVN(0, I),
/// then the view's polynomial applied elementwise. Balanced cluster sizes,
/// labels in block order. Deterministic for a fixed seed.
pub fn generate_synthetic(scenario: &SyntheticScenario) -> Result<MultiViewDataset> {
    generate_with_deltas(scenario, &view_deltas(scenario))
}

#[doc(hidden)]
pub fn generate_with_deltas(
    scenario: &SyntheticScenario,
    deltas: &[f64],
) -> Result<MultiViewDataset> {
    if scenario.n_samples % scenario.n_clusters != 0 {
        return Err(Error::Parameter("cluster sizes must be balanced".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(scenario.seed);
    let per = scenario.n_samples / scenario.n_clusters;
    let labels: Vec<i64> = (0..scenario.n_samples).map(|i| (i / per) as i64).collect();
    let means = scenario_view_means_with(scenario, deltas);

    let mut views = Vec::with_capacity(scenario.n_views);
    for view_means in &means {
        let poly = Polynomial::sample(&mut rng);
        let p = scenario.dims_per_view;
        let mut mat = DMatrix::zeros(scenario.n_samples, p);
        for i in 0..scenario.n_samples {
            let mu = &view_means[labels[i] as usize];
            for j in 0..p {
                let signal: f64 = rng.sample(StandardNormal);
                let noise: f64 = rng.sample(StandardNormal);
                mat[(i, j)] = poly.eval(mu[j] + signal + noise);
            }
        }
        views.push(mat);
    }
    MultiViewDataset::new(views, Some(labels))
}

/// Random per-cluster subsampling without replacement. Clusters not listed
/// in `per_cluster` keep all of their samples. Output rows stay in the
/// original sample order across every view.
pub fn balance_subset(
    ds: &MultiViewDataset,
    per_cluster: &BTreeMap<i64, usize>,
    seed: u64,
) -> Result<MultiViewDataset> {
    let labels = ds
        .labels()
        .ok_or_else(|| Error::Parameter("balance_subset requires labels".into()))?;
    let mut by_cluster: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (i, &l) in labels.iter().enumerate() {
        by_cluster.entry(l).or_default().push(i);
    }
    for (&cluster, &want) in per_cluster {
        let have = by_cluster.get(&cluster).map_or(0, Vec::len);
        if want > have {
            return Err(Error::Capacity(format!(
                "cluster {cluster} holds {have} samples, {want} requested"
            )));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut keep: Vec<usize> = Vec::new();
    for (cluster, members) in &by_cluster {
        match per_cluster.get(cluster) {
            Some(&want) => {
                // partial Fisher-Yates: the first `want` entries are a
                // uniform sample without replacement
                let mut pool = members.clone();
                for i in 0..want {
                    let j = rng.random_range(i..pool.len());
                    pool.swap(i, j);
                }
                keep.extend_from_slice(&pool[..want]);
            }
            None => keep.extend_from_slice(members),
        }
    }
    keep.sort_unstable();
    ds.subset_rows(&keep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;
    use tempfile::TempDir;

    fn write_file(dir: &TempDir, name: &str, body: &str) -> std::path::PathBuf {
        let p = dir.path().join(name);
        let mut f = std::fs::File::create(&p).unwrap();
        f.write_all(body.as_bytes()).unwrap();
        p
    }

    #[test]
    fn load_two_matching_views() {
        let dir = TempDir::new().unwrap();
        let a = write_file(&dir, "a.csv", "1,2\n3,4\n5,6\n7,8\n");
        let b = write_file(&dir, "b.csv", "0,0\n1,1\n2,2\n3,3\n");
        let ds = load_multiview(&[a, b], None, false).unwrap();
        assert_eq!(ds.n_samples(), 4);
        assert_eq!(ds.n_views(), 2);
        assert_eq!(ds.view(0)[(2, 1)], 6.0);
    }

    #[test]
    fn row_count_mismatch_is_alignment_error() {
        let dir = TempDir::new().unwrap();
        let a = write_file(&dir, "a.csv", "1,2\n3,4\n5,6\n7,8\n");
        let b = write_file(&dir, "b.csv", "0,0\n1,1\n2,2\n3,3\n4,4\n");
        let err = load_multiview(&[a, b], None, false).unwrap_err();
        assert!(matches!(err, Error::Alignment(_)));
    }

    #[test]
    fn labels_file_attaches() {
        let dir = TempDir::new().unwrap();
        let a = write_file(&dir, "a.csv", "1,2\n3,4\n5,6\n7,8\n");
        let l = write_file(&dir, "labels.csv", "0\n0\n1\n1\n");
        let ds = load_multiview(&[a], Some(&l), false).unwrap();
        assert_eq!(ds.labels().unwrap().len(), 4);
        assert_eq!(ds.labels().unwrap(), &[0, 0, 1, 1]);
    }

    #[test]
    fn non_numeric_cell_reports_location() {
        let dir = TempDir::new().unwrap();
        let a = write_file(&dir, "a.csv", "1,2\n3,oops\n5,6\n");
        match load_multiview(&[a], None, false).unwrap_err() {
            Error::Parse { row, col, .. } => {
                assert_eq!((row, col), (2, 2));
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn mmds_shape_and_balance() {
        let sc = SyntheticScenario::new(ScenarioKind::Mmds, 11);
        let ds = generate_synthetic(&sc).unwrap();
        assert_eq!(ds.n_samples(), 300);
        assert_eq!(ds.n_views(), 3);
        assert_eq!(ds.view(0).ncols(), 300);
        let labels = ds.labels().unwrap();
        for c in 0..3 {
            assert_eq!(labels.iter().filter(|&&l| l == c).count(), 100);
        }
    }

    #[test]
    fn nds_noise_view_has_identical_means() {
        let sc = SyntheticScenario::new(ScenarioKind::Nds, 11);
        assert_eq!(sc.n_views, 4);
        let means = scenario_view_means(&sc);
        let noise = &means[3];
        for c in 1..noise.len() {
            assert_eq!(noise[0], noise[c], "noise view means must coincide");
        }
        // informative views: designated cluster differs in >=1 coordinate
        for m in 0..3 {
            let designated = [2usize, 1, 0][m];
            let other = (designated + 1) % 3;
            assert_ne!(means[m][designated], means[m][other]);
        }
    }

    #[test]
    fn mcs_pattern_separates_all_pairs_jointly() {
        let sc = SyntheticScenario::new(ScenarioKind::Mcs, 1);
        let means = scenario_view_means(&sc);
        for a in 0..5 {
            for b in (a + 1)..5 {
                let separated = means.iter().any(|vm| vm[a] != vm[b]);
                assert!(separated, "clusters {a} and {b} never separated");
            }
            // no single view separates all five
        }
        for vm in &means {
            let mut distinct: Vec<_> = vm.iter().map(|v| format!("{v:?}")).collect();
            distinct.sort();
            distinct.dedup();
            assert!(distinct.len() < 5);
        }
    }

    #[test]
    fn same_seed_is_bitwise_identical() {
        let sc = SyntheticScenario::new(ScenarioKind::Nds, 99);
        let a = generate_synthetic(&sc).unwrap();
        let b = generate_synthetic(&sc).unwrap();
        for m in 0..a.n_views() {
            assert_eq!(a.view(m), b.view(m));
        }
        assert_eq!(a.labels(), b.labels());
    }

    #[test]
    fn extra_noise_appends_noise_views() {
        let sc = SyntheticScenario::new(ScenarioKind::NdsExtraNoise(2), 5);
        let ds = generate_synthetic(&sc).unwrap();
        assert_eq!(ds.n_views(), 6);
        let means = scenario_view_means(&sc);
        for vm in &means[3..] {
            for c in 1..vm.len() {
                assert_eq!(vm[0], vm[c]);
            }
        }
    }

    #[test]
    fn balance_identity_and_capacity() {
        let sc = SyntheticScenario::new(ScenarioKind::Mmds, 3);
        let ds = generate_synthetic(&sc).unwrap();
        let full: BTreeMap<i64, usize> = [(0, 100), (1, 100), (2, 100)].into();
        let same = balance_subset(&ds, &full, 1).unwrap();
        assert_eq!(same.n_samples(), 300);
        assert_eq!(same.view(0), ds.view(0));

        let partial: BTreeMap<i64, usize> = [(0, 50), (1, 50)].into();
        let sub = balance_subset(&ds, &partial, 1).unwrap();
        assert_eq!(sub.n_samples(), 200);
        let counts: Vec<usize> = (0..3)
            .map(|c| sub.labels().unwrap().iter().filter(|&&l| l == c).count())
            .collect();
        assert_eq!(counts, vec![50, 50, 100]);

        let over: BTreeMap<i64, usize> = [(0, 101)].into();
        assert!(matches!(
            balance_subset(&ds, &over, 1).unwrap_err(),
            Error::Capacity(_)
        ));
    }

    #[test]
    fn permuting_rows_keeps_views_and_labels_aligned() {
        let views = vec![
            DMatrix::from_row_slice(4, 1, &[0.0, 1.0, 2.0, 3.0]),
            DMatrix::from_row_slice(4, 2, &[0.0, 0.0, 10.0, 10.0, 20.0, 20.0, 30.0, 30.0]),
        ];
        let ds = MultiViewDataset::new(views, Some(vec![0, 0, 1, 1])).unwrap();
        let perm = [2usize, 0, 3, 1];
        let permuted = ds.subset_rows(&perm).unwrap();
        for (new_i, &old_i) in perm.iter().enumerate() {
            assert_eq!(permuted.view(0)[(new_i, 0)], ds.view(0)[(old_i, 0)]);
            assert_eq!(permuted.view(1)[(new_i, 1)], ds.view(1)[(old_i, 1)]);
            assert_eq!(permuted.labels().unwrap()[new_i], ds.labels().unwrap()[old_i]);
        }
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let dir = TempDir::new().unwrap();
        let m = DMatrix::from_row_slice(2, 2, &[0.1, -1.0 / 3.0, 1e-17, 12345.6789012345678]);
        let p = dir.path().join("m.csv");
        write_matrix_csv(&m, &p).unwrap();
        let back = read_numeric_csv(&p, false).unwrap();
        assert_eq!(m, back);
    }
}
