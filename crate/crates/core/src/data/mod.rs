//! Dataset representation, ingestion and preprocessing.

mod csv_loader;
mod folds;
mod wealth;

pub use csv_loader::{dataset_to_csv, load_csv, ColumnSpec, LabelColumn};
pub use folds::stratified_folds;
pub use wealth::generate_wealth_dummy;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A labeled numeric dataset: an `n × d` feature matrix, integer class
/// labels in a contiguous `0..C` range, and feature names.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    x: Vec<f64>, // row-major n × d
    n: usize,
    d: usize,
    y: Vec<usize>,
    feature_names: Vec<String>,
    dataset_id: String,
}

impl Dataset {
    pub fn new(
        rows: Vec<Vec<f64>>,
        y: Vec<usize>,
        feature_names: Vec<String>,
        dataset_id: impl Into<String>,
    ) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidInput("dataset has no rows".into()));
        }
        let d = rows[0].len();
        if d == 0 {
            return Err(Error::InvalidInput("dataset has no features".into()));
        }
        if y.len() != n {
            return Err(Error::InvalidInput(format!(
                "{n} rows but {} labels",
                y.len()
            )));
        }
        if feature_names.len() != d {
            return Err(Error::InvalidInput(format!(
                "{d} features but {} names",
                feature_names.len()
            )));
        }
        let mut x = Vec::with_capacity(n * d);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != d {
                return Err(Error::InvalidInput(format!(
                    "row {i} has {} values, expected {d}",
                    row.len()
                )));
            }
            if row.iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidInput(format!(
                    "row {i} contains a non-finite value"
                )));
            }
            x.extend(row);
        }
        // Labels must form a contiguous 0..C range.
        let classes = y.iter().copied().max().unwrap() + 1;
        let mut present = vec![false; classes];
        for &label in &y {
            present[label] = true;
        }
        if present.iter().any(|&p| !p) {
            return Err(Error::InvalidInput(
                "class labels are not a contiguous 0-based range".into(),
            ));
        }
        Ok(Dataset {
            x,
            n,
            d,
            y,
            feature_names,
            dataset_id: dataset_id.into(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn num_classes(&self) -> usize {
        self.y.iter().copied().max().unwrap() + 1
    }

    pub fn labels(&self) -> &[usize] {
        &self.y
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    pub fn dataset_id(&self) -> &str {
        &self.dataset_id
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.x[i * self.d..(i + 1) * self.d]
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.x[i * self.d + j]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.n).map(|i| self.value(i, j)).collect()
    }

    /// Index of a feature by name.
    pub fn feature_index(&self, name: &str) -> Option<usize> {
        self.feature_names.iter().position(|f| f == name)
    }

    /// Same data under a different report identifier.
    pub fn renamed(mut self, dataset_id: String) -> Dataset {
        self.dataset_id = dataset_id;
        self
    }

    fn with_matrix(&self, x: Vec<f64>) -> Dataset {
        Dataset {
            x,
            n: self.n,
            d: self.d,
            y: self.y.clone(),
            feature_names: self.feature_names.clone(),
            dataset_id: self.dataset_id.clone(),
        }
    }
}

/// Gaussian perturbation: each numeric cell gets zero-mean noise with
/// standard deviation `level` times the column's standard deviation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseSpec {
    pub level: f64,
    pub seed: u64,
}

impl NoiseSpec {
    pub fn new(level: f64, seed: u64) -> Result<Self> {
        if level.is_nan() || level < 0.0 {
            return Err(Error::InvalidInput(format!(
                "noise level must be nonnegative, got {level}"
            )));
        }
        Ok(NoiseSpec { level, seed })
    }
}

/// Maps every column affinely onto [0, 1]; constant columns map to 0.
pub fn minmax_normalize(data: &Dataset) -> Dataset {
    let mut x = Vec::with_capacity(data.n() * data.d());
    let scale: Vec<(f64, f64)> = (0..data.d())
        .map(|j| {
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            for i in 0..data.n() {
                lo = lo.min(data.value(i, j));
                hi = hi.max(data.value(i, j));
            }
            (lo, hi)
        })
        .collect();
    for i in 0..data.n() {
        for (j, &(lo, hi)) in scale.iter().enumerate() {
            let v = if hi > lo {
                (data.value(i, j) - lo) / (hi - lo)
            } else {
                0.0
            };
            x.push(v);
        }
    }
    data.with_matrix(x)
}

/// Adds per-feature Gaussian noise to every cell; labels are untouched.
/// Deterministic given the seed, and the identity at level 0.
pub fn inject_noise(data: &Dataset, spec: &NoiseSpec) -> Dataset {
    if spec.level == 0.0 {
        return data.clone();
    }
    let sigmas: Vec<f64> = (0..data.d())
        .map(|j| spec.level * column_std(data, j))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut x = Vec::with_capacity(data.n() * data.d());
    for i in 0..data.n() {
        for (j, sigma) in sigmas.iter().enumerate() {
            let z: f64 = StandardNormal.sample(&mut rng);
            x.push(data.value(i, j) + sigma * z);
        }
    }
    data.with_matrix(x)
}

/// Unbiased sample standard deviation of one column.
fn column_std(data: &Dataset, j: usize) -> f64 {
    let n = data.n();
    if n < 2 {
        return 0.0;
    }
    let mean: f64 = (0..n).map(|i| data.value(i, j)).sum::<f64>() / n as f64;
    let var: f64 = (0..n)
        .map(|i| {
            let delta = data.value(i, j) - mean;
            delta * delta
        })
        .sum::<f64>()
        / (n - 1) as f64;
    var.sqrt()
}
