//! Downstream performance measures used to build observation curves:
//! cross-validated k-NN classification accuracy and clustering accuracy
//! (k-means plus a Hungarian label matching).

mod clacc;
mod hungarian;
mod kmeans;
mod knn;

pub use clacc::clustering_accuracy;
pub use hungarian::{hungarian_assignment, AssignmentProblem};
pub use kmeans::kmeans_cluster;
pub use knn::{effective_folds, knn_cv_accuracy};

use serde::{Deserialize, Serialize};

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::metrics::ObservationCurve;
use crate::selectors::FeatureRanking;

/// Identifier strings used on the CLI and in reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MeasureId {
    Accuracy,
    Clacc,
}

impl MeasureId {
    pub fn as_str(&self) -> &'static str {
        match self {
            MeasureId::Accuracy => "accuracy",
            MeasureId::Clacc => "clacc",
        }
    }
}

impl std::fmt::Display for MeasureId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for MeasureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "accuracy" => Ok(MeasureId::Accuracy),
            "clacc" => Ok(MeasureId::Clacc),
            other => Err(Error::InvalidInput(format!(
                "unknown measure `{other}`; expected accuracy or clacc"
            ))),
        }
    }
}

/// Cluster count for the clustering-accuracy pipeline. Serializes as the
/// string `"num_classes"` or a plain integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClusterCount {
    /// One cluster per distinct class.
    NumClasses,
    Fixed(usize),
}

impl Serialize for ClusterCount {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ClusterCount::NumClasses => serializer.serialize_str("num_classes"),
            ClusterCount::Fixed(c) => serializer.serialize_u64(*c as u64),
        }
    }
}

impl<'de> Deserialize<'de> for ClusterCount {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Count(usize),
            Name(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Count(c) => Ok(ClusterCount::Fixed(c)),
            Raw::Name(name) if name == "num_classes" => Ok(ClusterCount::NumClasses),
            Raw::Name(other) => Err(serde::de::Error::custom(format!(
                "expected \"num_classes\" or an integer, got \"{other}\""
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct KMeansParams {
    pub clusters: ClusterCount,
    pub restarts: usize,
    pub max_iter: usize,
    pub tol: f64,
}

impl Default for KMeansParams {
    fn default() -> Self {
        KMeansParams {
            clusters: ClusterCount::NumClasses,
            restarts: 10,
            max_iter: 300,
            tol: 1e-4,
        }
    }
}

/// Everything needed to evaluate a feature subset reproducibly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct EvaluatorConfig {
    pub measure_id: MeasureId,
    pub knn_k: usize,
    pub folds: usize,
    pub kmeans: KMeansParams,
    pub seed: u64,
}

impl Default for EvaluatorConfig {
    fn default() -> Self {
        EvaluatorConfig {
            measure_id: MeasureId::Accuracy,
            knn_k: 5,
            folds: 5,
            kmeans: KMeansParams::default(),
            seed: 0,
        }
    }
}

impl EvaluatorConfig {
    pub fn new(measure_id: MeasureId) -> Self {
        EvaluatorConfig {
            measure_id,
            ..EvaluatorConfig::default()
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.knn_k < 1 {
            return Err(Error::InvalidInput("knn_k must be at least 1".into()));
        }
        if self.folds < 2 {
            return Err(Error::InvalidInput("need at least 2 folds".into()));
        }
        if self.kmeans.restarts < 1 || self.kmeans.max_iter < 1 {
            return Err(Error::InvalidInput(
                "kmeans needs at least 1 restart and 1 iteration".into(),
            ));
        }
        if self.kmeans.tol.is_nan() || self.kmeans.tol < 0.0 {
            return Err(Error::InvalidInput("kmeans tol must be nonnegative".into()));
        }
        if let ClusterCount::Fixed(0) = self.kmeans.clusters {
            return Err(Error::InvalidInput("cluster count must be positive".into()));
        }
        Ok(())
    }
}

/// Scores one feature subset with the configured measure.
pub fn evaluate_subset(data: &Dataset, features: &[usize], cfg: &EvaluatorConfig) -> Result<f64> {
    cfg.validate()?;
    match cfg.measure_id {
        MeasureId::Accuracy => knn_cv_accuracy(data, features, cfg),
        MeasureId::Clacc => {
            let clusters = match cfg.kmeans.clusters {
                ClusterCount::NumClasses => data.num_classes(),
                ClusterCount::Fixed(c) => c,
            };
            let pred = kmeans_cluster(data, features, clusters, cfg)?;
            clustering_accuracy(&pred, data.labels())
        }
    }
}

/// Evaluates the measure on each `k`-prefix of the ranking and assembles the
/// resulting observation curve.
pub fn measure_curve(
    data: &Dataset,
    ranking: &FeatureRanking,
    cfg: &EvaluatorConfig,
    ks: &[u32],
) -> Result<ObservationCurve> {
    if ks.iter().any(|&k| k == 0 || k as usize > data.d()) {
        return Err(Error::InvalidInput(format!(
            "subset sizes must lie in 1..={}",
            data.d()
        )));
    }
    let mut points = Vec::with_capacity(ks.len());
    for &k in ks {
        let value = evaluate_subset(data, ranking.prefix(k as usize), cfg)?;
        points.push((k, value));
    }
    ObservationCurve::new(points)
}

/// Min-max scales the selected columns into row-point vectors.
pub(crate) fn scaled_columns(data: &Dataset, features: &[usize]) -> Result<Vec<Vec<f64>>> {
    let mut seen = vec![false; data.d()];
    for &f in features {
        if f >= data.d() {
            return Err(Error::InvalidInput(format!(
                "feature index {f} out of range for d={}",
                data.d()
            )));
        }
        if seen[f] {
            return Err(Error::InvalidInput(format!(
                "feature index {f} appears twice in the subset"
            )));
        }
        seen[f] = true;
    }
    let ranges: Vec<(f64, f64)> = features
        .iter()
        .map(|&f| {
            let column = data.column(f);
            let lo = column.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = column.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            (lo, hi)
        })
        .collect();
    Ok((0..data.n())
        .map(|i| {
            features
                .iter()
                .zip(&ranges)
                .map(|(&f, &(lo, hi))| {
                    if hi > lo {
                        (data.value(i, f) - lo) / (hi - lo)
                    } else {
                        0.0
                    }
                })
                .collect()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::subsample_observations;
    use crate::selectors::{random_ranking, FeatureRanking};

    fn grid_dataset() -> Dataset {
        let mut rows = Vec::new();
        let mut y = Vec::new();
        for i in 0..40 {
            let class = i % 2;
            rows.push(vec![
                class as f64 * 8.0 + (i % 4) as f64 * 0.1,
                (i % 7) as f64,
                (i % 3) as f64,
            ]);
            y.push(class);
        }
        Dataset::new(
            rows,
            y,
            vec!["signal".into(), "n1".into(), "n2".into()],
            "grid",
        )
        .unwrap()
    }

    #[test]
    fn curve_has_one_point_per_subset_size() {
        let data = grid_dataset();
        let ranking = FeatureRanking::new(vec![0, 1, 2]).unwrap();
        let cfg = EvaluatorConfig::default();
        let ks: Vec<u32> = (1..=3).collect();
        let curve = measure_curve(&data, &ranking, &cfg, &ks).unwrap();
        assert_eq!(curve.points().len(), 3);
    }

    #[test]
    fn full_prefix_matches_direct_full_set_evaluation() {
        let data = grid_dataset();
        let ranking = random_ranking(data.d(), 4).unwrap();
        let cfg = EvaluatorConfig::default();
        let curve = measure_curve(&data, &ranking, &cfg, &[1, 3]).unwrap();
        let full = evaluate_subset(&data, ranking.prefix(3), &cfg).unwrap();
        assert_eq!(curve.points()[1], (3, full));
    }

    #[test]
    fn subsampled_curve_is_a_subset_of_the_full_curve() {
        let data = grid_dataset();
        let ranking = FeatureRanking::new(vec![0, 1, 2]).unwrap();
        let cfg = EvaluatorConfig::default();
        let full_ks: Vec<u32> = (1..=3).collect();
        let full = measure_curve(&data, &ranking, &cfg, &full_ks).unwrap();
        let thin_ks = subsample_observations(&full_ks, 2).unwrap();
        let thin = measure_curve(&data, &ranking, &cfg, &thin_ks).unwrap();
        for point in thin.points() {
            assert!(full.points().contains(point));
        }
    }

    #[test]
    fn cluster_count_wire_format() {
        assert_eq!(
            serde_json::to_string(&ClusterCount::NumClasses).unwrap(),
            "\"num_classes\""
        );
        assert_eq!(serde_json::to_string(&ClusterCount::Fixed(4)).unwrap(), "4");
        let cfg: EvaluatorConfig = serde_json::from_str(
            r#"{"measure_id": "clacc", "kmeans": {"clusters": 3, "restarts": 2}}"#,
        )
        .unwrap();
        assert_eq!(cfg.kmeans.clusters, ClusterCount::Fixed(3));
        assert_eq!(cfg.kmeans.restarts, 2);
        assert_eq!(cfg.kmeans.max_iter, 300);
    }

    #[test]
    fn rejects_out_of_range_sizes() {
        let data = grid_dataset();
        let ranking = FeatureRanking::new(vec![0, 1, 2]).unwrap();
        let cfg = EvaluatorConfig::default();
        assert!(measure_curve(&data, &ranking, &cfg, &[0, 2]).is_err());
        assert!(measure_curve(&data, &ranking, &cfg, &[1, 4]).is_err());
    }

    #[test]
    fn clacc_dispatch_scores_the_separable_feature_highly() {
        let data = grid_dataset();
        let cfg = EvaluatorConfig {
            measure_id: MeasureId::Clacc,
            seed: 3,
            ..EvaluatorConfig::default()
        };
        // Feature 0 separates the two classes into clean blobs.
        let on_signal = evaluate_subset(&data, &[0], &cfg).unwrap();
        assert!(on_signal > 0.9, "clacc on the signal feature was {on_signal}");
        assert!((0.0..=1.0).contains(&on_signal));
    }
}
