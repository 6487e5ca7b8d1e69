//! Multi-view manifold learning and benchmark toolkit.
//!
//! Implements multi-view extensions of t-SNE, LLE and ISOMAP (multi-SNE,
//! multi-LLE, multi-ISOMAP) alongside their single-view, concatenated and
//! averaged-embedding baselines (m-SNE, m-LLE, m-ISOMAP), with:
//!
//! - synthetic multi-view cluster scenarios and CSV ingestion,
//! - PCA / multi-CCA pre-training,
//! - K-means and DBSCAN clustering with ACC, NMI, RI, ARI and Silhouette,
//! - a sweep/ablation harness with CSV and SVG export.
//!
//! Everything is deterministic for a fixed seed.

pub use nalgebra;
pub use nalgebra::{DMatrix, DVector};

pub mod cluster;
pub mod dataset;
pub mod embedding;
pub mod error;
pub mod harness;
pub mod isomap;
pub mod lle;
pub mod pretrain;
pub mod sne;

mod linalg;

pub use cluster::{
    accuracy, ari, contingency, dbscan, evaluate_clustering, kmeans, misclustering_error, nmi,
    rand_index, silhouette, suggest_eps, ClusteringResult, ContingencyTable, Scores,
};
pub use dataset::{
    balance_subset, generate_synthetic, load_multiview, save_dataset, MultiViewDataset,
    ScenarioKind, SyntheticScenario,
};
pub use embedding::Embedding;
pub use error::{Error, Result};
pub use harness::{
    default_grid, emit_embedding, emit_scatter, emit_sweep, emit_weights, run_and_score,
    run_method, run_sweep, view_ablation, AblationReport, MethodConfig, MethodFamily, MethodId,
    MethodRun, SelectMetric, SweepReport, SweepSpec, WeightSpec,
};
pub use isomap::{
    build_graph, classical_embed, run_isomap, run_isomap_concat, run_misomap, run_multiisomap,
    run_multiisomap_standardized, shortest_paths, EmbedStyle, GeodesicMatrix, NeighborGraph,
};
pub use lle::{
    embed_from_weights, knn, reconstruction_weights, run_lle, run_lle_concat, run_mlle,
    run_multille, ConsensusWeights, ReconstructionWeights,
};
pub use pretrain::{
    apply_pretrain, multicca_reduce, pca_reduce, MultiCca, Pca, PretrainConfig, PretrainMode,
};
pub use sne::{
    calibrate_row, joint_affinities, multisne_cost, multisne_gradient, run_msne, run_multisne,
    run_tsne, run_tsne_concat, student_t_affinities, update_weights, AffinityKind, AffinityMatrix,
    SneConfig, SneRun, ViewWeights, WeightMode,
};
