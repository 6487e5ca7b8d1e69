//! ISOMAP: kNN graph, all-pairs geodesics, classical-MDS embedding, and the
//! multi-view variants. multi-ISOMAP embeds a combined graph whose edge set
//! is the union over views and whose lengths average the per-view distances
//! (each view standardized by its median kNN edge so no view dominates by
//! scale); m-ISOMAP averages per-view embeddings after alignment.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::dataset::MultiViewDataset;
use crate::embedding::Embedding;
use crate::error::{Error, Result};
use crate::linalg;
use crate::lle::knn;
use crate::sne::ViewWeights;

/// Symmetrized kNN graph with feature-space edge lengths.
#[derive(Debug, Clone)]
pub struct NeighborGraph {
    n_vertices: usize,
    adjacency: Vec<Vec<(usize, f64)>>,
    component: Vec<usize>,
    n_components: usize,
}

impl NeighborGraph {
    /// Build from an undirected edge list; computes connected components.
    pub fn from_edges(n_vertices: usize, edges: &[(usize, usize, f64)]) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); n_vertices];
        for &(i, j, w) in edges {
            if i >= n_vertices || j >= n_vertices || i == j {
                return Err(Error::Parameter(format!("bad edge ({i},{j})")));
            }
            if !(w.is_finite() && w >= 0.0) {
                return Err(Error::Parameter(format!("bad edge length {w}")));
            }
            adjacency[i].push((j, w));
            adjacency[j].push((i, w));
        }
        for adj in &mut adjacency {
            adj.sort_by(|a, b| a.0.cmp(&b.0));
        }
        let (component, n_components) = label_components(&adjacency);
        Ok(Self {
            n_vertices,
            adjacency,
            component,
            n_components,
        })
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_components(&self) -> usize {
        self.n_components
    }

    pub fn component_of(&self, v: usize) -> usize {
        self.component[v]
    }

    pub fn neighbors(&self, v: usize) -> &[(usize, f64)] {
        &self.adjacency[v]
    }

    /// Undirected edges, each reported once with i < j.
    pub fn edges(&self) -> Vec<(usize, usize, f64)> {
        let mut out = Vec::new();
        for (i, adj) in self.adjacency.iter().enumerate() {
            for &(j, w) in adj {
                if i < j {
                    out.push((i, j, w));
                }
            }
        }
        out
    }

    /// Vertices of the largest component (ties: lowest component id), and
    /// the rest.
    fn largest_component(&self) -> (Vec<usize>, Vec<usize>) {
        let mut sizes = vec![0usize; self.n_components];
        for &c in &self.component {
            sizes[c] += 1;
        }
        let best = (0..self.n_components)
            .max_by_key(|&c| (sizes[c], Reverse(c)))
            .unwrap_or(0);
        let mut kept = Vec::new();
        let mut dropped = Vec::new();
        for (v, &c) in self.component.iter().enumerate() {
            if c == best {
                kept.push(v);
            } else {
                dropped.push(v);
            }
        }
        (kept, dropped)
    }

    /// Induced subgraph on `kept` (which must be one connected component).
    fn induced(&self, kept: &[usize]) -> Result<Self> {
        let mut new_id = vec![usize::MAX; self.n_vertices];
        for (new, &old) in kept.iter().enumerate() {
            new_id[old] = new;
        }
        let mut edges = Vec::new();
        for &old in kept {
            for &(j, w) in &self.adjacency[old] {
                if old < j && new_id[j] != usize::MAX {
                    edges.push((new_id[old], new_id[j], w));
                }
            }
        }
        Self::from_edges(kept.len(), &edges)
    }
}

fn label_components(adjacency: &[Vec<(usize, f64)>]) -> (Vec<usize>, usize) {
    let n = adjacency.len();
    let mut component = vec![usize::MAX; n];
    let mut next = 0usize;
    let mut stack = Vec::new();
    for start in 0..n {
        if component[start] != usize::MAX {
            continue;
        }
        component[start] = next;
        stack.push(start);
        while let Some(u) = stack.pop() {
            for &(v, _) in &adjacency[u] {
                if component[v] == usize::MAX {
                    component[v] = next;
                    stack.push(v);
                }
            }
        }
        next += 1;
    }
    (component, next)
}

/// Symmetrized kNN graph of one view in raw Euclidean units.
pub fn build_graph(view: &DMatrix<f64>, k: usize) -> Result<NeighborGraph> {
    let n = view.nrows();
    let gamma = knn(view, k)?;
    let d = linalg::pairwise_dists(view);
    let mut edge_set = std::collections::BTreeSet::new();
    for (i, g) in gamma.iter().enumerate() {
        for &j in g {
            edge_set.insert((i.min(j), i.max(j)));
        }
    }
    let edges: Vec<(usize, usize, f64)> = edge_set
        .into_iter()
        .map(|(i, j)| (i, j, d[(i, j)]))
        .collect();
    NeighborGraph::from_edges(n, &edges)
}

/// All-pairs shortest paths: symmetric, zero diagonal, infinite where
/// unreachable.
#[derive(Debug, Clone)]
pub struct GeodesicMatrix {
    pub d: DMatrix<f64>,
}

impl GeodesicMatrix {
    pub fn is_finite(&self) -> bool {
        self.d.iter().all(|v| v.is_finite())
    }
}

#[derive(PartialEq)]
struct HeapEntry {
    dist: f64,
    node: usize,
}

impl Eq for HeapEntry {}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // min-heap on (dist, node)
        other
            .dist
            .total_cmp(&self.dist)
            .then(other.node.cmp(&self.node))
    }
}

fn dijkstra(g: &NeighborGraph, source: usize) -> Vec<f64> {
    let n = g.n_vertices();
    let mut dist = vec![f64::INFINITY; n];
    dist[source] = 0.0;
    let mut heap = BinaryHeap::new();
    heap.push(HeapEntry {
        dist: 0.0,
        node: source,
    });
    while let Some(HeapEntry { dist: du, node: u }) = heap.pop() {
        if du > dist[u] {
            continue;
        }
        for &(v, w) in g.neighbors(u) {
            let cand = du + w;
            if cand < dist[v] {
                dist[v] = cand;
                heap.push(HeapEntry {
                    dist: cand,
                    node: v,
                });
            }
        }
    }
    dist
}

/// Geodesic distances via Dijkstra from every source.
pub fn shortest_paths(g: &NeighborGraph) -> GeodesicMatrix {
    let n = g.n_vertices();
    let rows: Vec<Vec<f64>> = (0..n).into_par_iter().map(|s| dijkstra(g, s)).collect();
    let mut d = DMatrix::zeros(n, n);
    for (i, row) in rows.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            d[(i, j)] = v;
        }
    }
    GeodesicMatrix { d }
}

/// How the spectral step treats the geodesic matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EmbedStyle {
    /// Classical MDS: double-center the squared geodesics first.
    #[default]
    DoubleCentered,
    /// Eigendecompose the geodesic matrix directly (comparison mode).
    LiteralEigen,
}

/// Classical-MDS embedding of a finite geodesic matrix plus the eigenvalues
/// used and the count of positive ones (columns beyond it are zero-padded).
#[derive(Debug, Clone)]
pub struct ClassicalMds {
    pub embedding: Embedding,
    pub eigenvalues: Vec<f64>,
    pub positive: usize,
}

/// Coordinate p of sample i is √λ_p·u_p[i] over the top d eigenvalues.
pub fn classical_embed(geo: &GeodesicMatrix, d: usize, style: EmbedStyle) -> Result<ClassicalMds> {
    let n = geo.d.nrows();
    if d < 1 {
        return Err(Error::Parameter("d must be >= 1".into()));
    }
    if !geo.is_finite() {
        return Err(Error::Numerical(
            "geodesic matrix has unreachable pairs; embed the largest component".into(),
        ));
    }
    let target = match style {
        EmbedStyle::DoubleCentered => {
            let sq = geo.d.map(|v| v * v);
            let row_mean: Vec<f64> = (0..n).map(|i| sq.row(i).sum() / n as f64).collect();
            let grand = row_mean.iter().sum::<f64>() / n as f64;
            DMatrix::from_fn(n, n, |i, j| {
                -0.5 * (sq[(i, j)] - row_mean[i] - row_mean[j] + grand)
            })
        }
        EmbedStyle::LiteralEigen => geo.d.clone(),
    };
    let (vals, vecs) = linalg::symmetric_eigen_sorted(target)?;
    // top d by decreasing eigenvalue
    let top: Vec<usize> = (0..n).rev().take(d).collect();
    let scale = vals[n - 1].abs().max(1.0) * 1e-12;
    let mut coords = DMatrix::zeros(n, d);
    let mut eigenvalues = Vec::with_capacity(d);
    let mut positive = 0usize;
    for (col, &idx) in top.iter().enumerate() {
        let lambda = vals[idx];
        eigenvalues.push(lambda);
        if lambda > scale {
            positive += 1;
            coords.set_column(col, &(vecs.column(idx) * lambda.sqrt()));
        } // else: zero padding
    }
    linalg::fix_column_signs(&mut coords);
    Ok(ClassicalMds {
        embedding: Embedding::new(coords, "isomap")?,
        eigenvalues,
        positive,
    })
}

/// Shared single/multi-view pipeline. Per view: kNN edges and a full
/// distance matrix (optionally standardized by the median kNN edge). The
/// combined graph takes the union edge set with weighted-average lengths,
/// restricts to its largest component when disconnected, then runs
/// Dijkstra + classical MDS.
fn isomap_pipeline(
    views: &[&DMatrix<f64>],
    k: usize,
    w: &ViewWeights,
    d: usize,
    style: EmbedStyle,
    standardize: bool,
    method: &str,
) -> Result<Embedding> {
    if views.len() != w.len() {
        return Err(Error::Parameter(format!(
            "{} views for {} weights",
            views.len(),
            w.len()
        )));
    }
    let n = views[0].nrows();
    let mut edge_set = std::collections::BTreeSet::new();
    let mut scaled: Vec<DMatrix<f64>> = Vec::with_capacity(views.len());
    for view in views {
        if view.nrows() != n {
            return Err(Error::Alignment("views differ in row count".into()));
        }
        let gamma = knn(view, k)?;
        let dist = linalg::pairwise_dists(view);
        let mut knn_dists = Vec::with_capacity(n * k);
        for (i, g) in gamma.iter().enumerate() {
            for &j in g {
                edge_set.insert((i.min(j), i.max(j)));
                knn_dists.push(dist[(i, j)]);
            }
        }
        if standardize {
            knn_dists.sort_by(f64::total_cmp);
            let median = knn_dists[knn_dists.len() / 2];
            let scale = if median > 0.0 { median } else { 1.0 };
            scaled.push(dist / scale);
        } else {
            scaled.push(dist);
        }
    }
    let edges: Vec<(usize, usize, f64)> = edge_set
        .into_iter()
        .map(|(i, j)| {
            let len = scaled
                .iter()
                .zip(w.as_slice())
                .map(|(dm, &wm)| wm * dm[(i, j)])
                .sum();
            (i, j, len)
        })
        .collect();
    let graph = NeighborGraph::from_edges(n, &edges)?;
    let (graph, dropped) = if graph.n_components() > 1 {
        let (kept, dropped) = graph.largest_component();
        (graph.induced(&kept)?, dropped)
    } else {
        (graph, Vec::new())
    };
    let geo = shortest_paths(&graph);
    let mds = classical_embed(&geo, d, style)?;
    let mut emb = mds.embedding;
    emb.method = method.into();
    emb.parameter = Some(k as f64);
    emb.dropped = dropped;
    Ok(emb)
}

/// Combined-graph edge lengths average raw per-view distances, matching
/// the averaged-distance formula; view standardization stays available on
/// the pipeline for experiments.
const STANDARDIZE_EDGES: bool = false;

/// Single-view ISOMAP.
pub fn run_isomap(view: &DMatrix<f64>, k: usize, d: usize, style: EmbedStyle) -> Result<Embedding> {
    isomap_pipeline(
        &[view],
        k,
        &ViewWeights::uniform(1),
        d,
        style,
        STANDARDIZE_EDGES,
        "isomap",
    )
}

/// ISOMAP on the column-stacked views.
pub fn run_isomap_concat(
    ds: &MultiViewDataset,
    k: usize,
    d: usize,
    style: EmbedStyle,
) -> Result<Embedding> {
    let concat = ds.concat_views();
    let mut emb = run_isomap(&concat, k, d, style)?;
    emb.method = "isomap-concat".into();
    Ok(emb)
}

/// multi-ISOMAP: averaged-distance combined graph, then ISOMAP steps 2–3.
pub fn run_multiisomap(
    ds: &MultiViewDataset,
    k: usize,
    w: &ViewWeights,
    d: usize,
    style: EmbedStyle,
) -> Result<Embedding> {
    let views: Vec<&DMatrix<f64>> = ds.views().iter().collect();
    isomap_pipeline(&views, k, w, d, style, STANDARDIZE_EDGES, "multiisomap")
}

/// multi-ISOMAP with per-view median standardization of edge lengths, for
/// scale-robustness experiments.
pub fn run_multiisomap_standardized(
    ds: &MultiViewDataset,
    k: usize,
    w: &ViewWeights,
    d: usize,
    style: EmbedStyle,
) -> Result<Embedding> {
    let views: Vec<&DMatrix<f64>> = ds.views().iter().collect();
    isomap_pipeline(&views, k, w, d, style, true, "multiisomap")
}

/// m-ISOMAP: per-view ISOMAP embeddings, aligned and averaged. Views that
/// drop disconnected samples are sliced to the common kept rows before
/// alignment, so the average stays row-aligned.
pub fn run_misomap(
    ds: &MultiViewDataset,
    k: usize,
    beta: &ViewWeights,
    d: usize,
    style: EmbedStyle,
) -> Result<Embedding> {
    if beta.len() != ds.n_views() {
        return Err(Error::Parameter(format!(
            "{} weights for {} views",
            beta.len(),
            ds.n_views()
        )));
    }
    let n = ds.n_samples();
    let embeddings: Vec<Embedding> = ds
        .views()
        .par_iter()
        .map(|v| run_isomap(v, k, d, style))
        .collect::<Result<_>>()?;
    let mut keep = vec![true; n];
    for emb in &embeddings {
        for &i in &emb.dropped {
            keep[i] = false;
        }
    }
    let kept: Vec<usize> = (0..n).filter(|&i| keep[i]).collect();
    if kept.len() < d + 2 {
        return Err(Error::Numerical(
            "per-view graphs too disconnected to align".into(),
        ));
    }
    // slice every view's embedding down to the common kept rows
    let sliced: Vec<DMatrix<f64>> = embeddings
        .iter()
        .map(|emb| {
            let mut row_of = vec![usize::MAX; n];
            let mut next = 0usize;
            for i in 0..n {
                if !emb.dropped.contains(&i) {
                    row_of[i] = next;
                    next += 1;
                }
            }
            DMatrix::from_fn(kept.len(), d, |r, c| emb.coords[(row_of[kept[r]], c)])
        })
        .collect();
    let reference = sliced[0].clone();
    let mut combined = DMatrix::zeros(kept.len(), d);
    for (m, (coords, &b)) in sliced.iter().zip(beta.as_slice()).enumerate() {
        let aligned = if m == 0 {
            coords.clone()
        } else {
            linalg::procrustes_align(coords, &reference)?
        };
        combined += aligned * b;
    }
    let mut emb = Embedding::new(combined, "misomap")?;
    emb.parameter = Some(k as f64);
    emb.dropped = (0..n).filter(|&i| !keep[i]).collect();
    Ok(emb)
}
