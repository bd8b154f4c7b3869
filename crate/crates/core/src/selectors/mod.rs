//! Feature-ranking algorithms: a random baseline, information gain, chi²,
//! random-forest importance and sequential forward selection.
//!
//! Every selector returns a full best-first permutation of the feature
//! indices; the `k`-prefix of a ranking is the selected subset of size `k`.
//! All selectors are deterministic given (data, config, seed), with ties
//! broken by ascending feature index so runs reproduce bit-for-bit.

mod chi2;
mod discretize;
mod forest;
mod info_gain;
mod random;
mod sfs;

pub use chi2::chi2_ranking;
pub use forest::forest_importance_ranking;
pub use info_gain::info_gain_ranking;
pub use random::random_ranking;
pub use sfs::sequential_forward_selection;

pub(crate) use discretize::equal_width_bins;

use serde::{Deserialize, Serialize};

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::evaluators::{EvaluatorConfig, MeasureId};

/// A permutation of the feature indices `0..d`, best first, with optional
/// per-feature scores.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureRanking {
    order: Vec<usize>,
    scores: Option<Vec<f64>>,
}

impl FeatureRanking {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        Self::build(order, None)
    }

    pub fn with_scores(order: Vec<usize>, scores: Vec<f64>) -> Result<Self> {
        Self::build(order, Some(scores))
    }

    fn build(order: Vec<usize>, scores: Option<Vec<f64>>) -> Result<Self> {
        let d = order.len();
        if d == 0 {
            return Err(Error::InvalidInput("empty ranking".into()));
        }
        let mut seen = vec![false; d];
        for &f in &order {
            if f >= d || seen[f] {
                return Err(Error::InvalidInput(
                    "ranking is not a permutation of 0..d".into(),
                ));
            }
            seen[f] = true;
        }
        if let Some(scores) = &scores {
            if scores.len() != d {
                return Err(Error::InvalidInput(format!(
                    "{d} features but {} scores",
                    scores.len()
                )));
            }
        }
        Ok(FeatureRanking { order, scores })
    }

    /// Sorts features by descending score, ties broken by ascending index.
    pub fn from_scores(scores: Vec<f64>) -> Result<Self> {
        let mut order: Vec<usize> = (0..scores.len()).collect();
        order.sort_by(|&i, &j| scores[j].total_cmp(&scores[i]).then(i.cmp(&j)));
        let ordered_scores = order.iter().map(|&f| scores[f]).collect();
        Self::build(order, Some(ordered_scores))
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Scores parallel to `order` (descending), when the selector produces
    /// any.
    pub fn scores(&self) -> Option<&[f64]> {
        self.scores.as_deref()
    }

    pub fn d(&self) -> usize {
        self.order.len()
    }

    /// The selected subset of size `k`.
    pub fn prefix(&self, k: usize) -> &[usize] {
        &self.order[..k.min(self.order.len())]
    }
}

/// Identifier strings used on the CLI and in reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SelectorId {
    Random,
    InfoGain,
    Chi2,
    Forest,
    Sfs,
}

impl SelectorId {
    pub fn as_str(&self) -> &'static str {
        match self {
            SelectorId::Random => "random",
            SelectorId::InfoGain => "info_gain",
            SelectorId::Chi2 => "chi2",
            SelectorId::Forest => "forest",
            SelectorId::Sfs => "sfs",
        }
    }

    pub const ALL: [SelectorId; 5] = [
        SelectorId::Random,
        SelectorId::InfoGain,
        SelectorId::Chi2,
        SelectorId::Forest,
        SelectorId::Sfs,
    ];
}

impl std::fmt::Display for SelectorId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for SelectorId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SelectorId::ALL
            .iter()
            .copied()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| {
                Error::InvalidInput(format!(
                    "unknown selector `{s}`; expected one of random, info_gain, chi2, forest, sfs"
                ))
            })
    }
}

/// How many candidate features each tree node may split on. Serializes as
/// the string `"sqrt"` or a plain integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FeaturesPerSplit {
    /// `ceil(sqrt(d))` candidates.
    Sqrt,
    Fixed(usize),
}

impl Serialize for FeaturesPerSplit {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            FeaturesPerSplit::Sqrt => serializer.serialize_str("sqrt"),
            FeaturesPerSplit::Fixed(m) => serializer.serialize_u64(*m as u64),
        }
    }
}

impl<'de> Deserialize<'de> for FeaturesPerSplit {
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
            Raw::Count(m) => Ok(FeaturesPerSplit::Fixed(m)),
            Raw::Name(name) if name == "sqrt" => Ok(FeaturesPerSplit::Sqrt),
            Raw::Name(other) => Err(serde::de::Error::custom(format!(
                "expected \"sqrt\" or an integer, got \"{other}\""
            ))),
        }
    }
}

/// Random-forest hyperparameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct ForestParams {
    pub trees: usize,
    pub features_per_split: FeaturesPerSplit,
    pub max_depth: Option<usize>,
}

impl Default for ForestParams {
    fn default() -> Self {
        ForestParams {
            trees: 100,
            features_per_split: FeaturesPerSplit::Sqrt,
            max_depth: None,
        }
    }
}

/// Everything needed to run one selector reproducibly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SelectorConfig {
    pub selector_id: SelectorId,
    pub seed: u64,
    /// Discretization bins for info_gain and chi2.
    pub bins: usize,
    pub forest: ForestParams,
    /// Measure driving sequential forward selection.
    pub sfs_evaluator: MeasureId,
}

impl Default for SelectorConfig {
    fn default() -> Self {
        SelectorConfig {
            selector_id: SelectorId::Random,
            seed: 0,
            bins: 10,
            forest: ForestParams::default(),
            sfs_evaluator: MeasureId::Accuracy,
        }
    }
}

impl SelectorConfig {
    pub fn new(selector_id: SelectorId) -> Self {
        SelectorConfig {
            selector_id,
            ..SelectorConfig::default()
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.bins < 2 {
            return Err(Error::InvalidInput(format!(
                "need at least 2 bins, got {}",
                self.bins
            )));
        }
        if self.forest.trees < 1 {
            return Err(Error::InvalidInput("need at least 1 tree".into()));
        }
        Ok(())
    }
}

/// Runs the configured selector on a dataset.
pub fn rank(data: &Dataset, cfg: &SelectorConfig) -> Result<FeatureRanking> {
    cfg.validate()?;
    match cfg.selector_id {
        SelectorId::Random => random_ranking(data.d(), cfg.seed),
        SelectorId::InfoGain => info_gain_ranking(data, cfg.bins),
        SelectorId::Chi2 => chi2_ranking(data, cfg.bins),
        SelectorId::Forest => forest_importance_ranking(data, cfg),
        SelectorId::Sfs => {
            let evaluator = EvaluatorConfig {
                measure_id: cfg.sfs_evaluator,
                seed: cfg.seed,
                ..EvaluatorConfig::default()
            };
            sequential_forward_selection(data, &evaluator, data.d(), cfg.seed)
        }
    }
}


#[cfg(test)]
mod serde_format_tests {
    use super::*;

    #[test]
    fn features_per_split_wire_format() {
        assert_eq!(serde_json::to_string(&FeaturesPerSplit::Sqrt).unwrap(), "\"sqrt\"");
        assert_eq!(serde_json::to_string(&FeaturesPerSplit::Fixed(3)).unwrap(), "3");
        assert_eq!(
            serde_json::from_str::<FeaturesPerSplit>("\"sqrt\"").unwrap(),
            FeaturesPerSplit::Sqrt
        );
        assert_eq!(
            serde_json::from_str::<FeaturesPerSplit>("7").unwrap(),
            FeaturesPerSplit::Fixed(7)
        );
        assert!(serde_json::from_str::<FeaturesPerSplit>("\"log\"").is_err());
    }

    #[test]
    fn selector_config_accepts_sparse_json() {
        let cfg: SelectorConfig =
            serde_json::from_str(r#"{"selector_id": "forest", "forest": {"trees": 25}}"#).unwrap();
        assert_eq!(cfg.selector_id, SelectorId::Forest);
        assert_eq!(cfg.forest.trees, 25);
        assert_eq!(cfg.forest.features_per_split, FeaturesPerSplit::Sqrt);
        assert_eq!(cfg.bins, 10);
    }
}
