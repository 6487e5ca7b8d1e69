//! Low-dimensional embedding produced by any manifold method.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct Embedding {
    /// N×d coordinates.
    pub coords: DMatrix<f64>,
    /// Method tag, e.g. "multisne".
    pub method: String,
    /// The method's tuning parameter (perplexity or neighbor count).
    pub parameter: Option<f64>,
    /// RNG seed for stochastic methods.
    pub seed: Option<u64>,
    /// Original sample indices dropped before embedding (e.g. samples
    /// outside the largest connected component of a neighbor graph).
    /// Empty in the common case; coords rows cover the kept samples in
    /// original order.
    pub dropped: Vec<usize>,
}

impl Embedding {
    pub fn new(coords: DMatrix<f64>, method: impl Into<String>) -> Result<Self> {
        if coords.ncols() < 1 {
            return Err(Error::Parameter("embedding needs d >= 1".into()));
        }
        if coords.iter().any(|v| !v.is_finite()) {
            return Err(Error::Numerical("embedding has non-finite entries".into()));
        }
        Ok(Self {
            coords,
            method: method.into(),
            parameter: None,
            seed: None,
            dropped: Vec::new(),
        })
    }

    pub fn with_parameter(mut self, p: f64) -> Self {
        self.parameter = Some(p);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn n_samples(&self) -> usize {
        self.coords.nrows()
    }

    pub fn dim(&self) -> usize {
        self.coords.ncols()
    }

    /// Ground-truth labels restricted to the rows that survived embedding.
    pub fn align_labels<'a>(&self, labels: &'a [i64]) -> Vec<i64> {
        if self.dropped.is_empty() {
            return labels.to_vec();
        }
        let dropped: std::collections::HashSet<usize> = self.dropped.iter().copied().collect();
        labels
            .iter()
            .enumerate()
            .filter(|(i, _)| !dropped.contains(i))
            .map(|(_, &l)| l)
            .collect()
    }
}
