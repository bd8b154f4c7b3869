//! Feature importance from a bagged ensemble of CART trees.
//!
//! Each tree is grown on a bootstrap sample with Gini impurity, examining a
//! random subset of candidate features at every split. A feature's
//! importance is its total weighted impurity decrease, averaged over trees
//! and normalized to sum 1. Per-tree seeds fan out from the configured seed,
//! so the ranking does not depend on construction order.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{FeatureRanking, FeaturesPerSplit, SelectorConfig};
use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::seed::mix;

struct TreeBuilder<'a> {
    data: &'a Dataset,
    classes: usize,
    mtry: usize,
    max_depth: Option<usize>,
    rng: ChaCha8Rng,
    /// Raw impurity-decrease totals per feature for the current tree.
    importance: Vec<f64>,
    /// Bootstrap sample size, the weight normalizer.
    total: f64,
}

fn gini(counts: &[usize], total: usize) -> f64 {
    if total == 0 {
        return 0.0;
    }
    let total = total as f64;
    1.0 - counts
        .iter()
        .map(|&c| {
            let p = c as f64 / total;
            p * p
        })
        .sum::<f64>()
}

struct Split {
    feature: usize,
    threshold: f64,
    /// Impurity decrease relative to the node, not yet weighted by node size.
    decrease: f64,
}

impl<'a> TreeBuilder<'a> {
    fn class_counts(&self, rows: &[usize]) -> Vec<usize> {
        let mut counts = vec![0usize; self.classes];
        for &i in rows {
            counts[self.data.labels()[i]] += 1;
        }
        counts
    }

    /// Draws `mtry` distinct candidate features, returned in ascending order
    /// so ties resolve toward the smallest index.
    fn sample_features(&mut self) -> Vec<usize> {
        let d = self.data.d();
        let mut pool: Vec<usize> = (0..d).collect();
        for i in 0..self.mtry.min(d) {
            let j = self.rng.gen_range(i..d);
            pool.swap(i, j);
        }
        let mut chosen = pool[..self.mtry.min(d)].to_vec();
        chosen.sort_unstable();
        chosen
    }

    fn best_split(&mut self, rows: &[usize], node_impurity: f64) -> Option<Split> {
        let counts = self.class_counts(rows);
        let n = rows.len();
        let mut best: Option<Split> = None;
        for feature in self.sample_features() {
            let mut ordered: Vec<(f64, usize)> = rows
                .iter()
                .map(|&i| (self.data.value(i, feature), self.data.labels()[i]))
                .collect();
            ordered.sort_by(|a, b| a.0.total_cmp(&b.0));

            let mut left_counts = vec![0usize; self.classes];
            let mut left_n = 0usize;
            let mut right_counts = counts.clone();
            for w in 0..n - 1 {
                let (value, label) = ordered[w];
                left_counts[label] += 1;
                right_counts[label] -= 1;
                left_n += 1;
                let next_value = ordered[w + 1].0;
                if next_value <= value {
                    continue;
                }
                let right_n = n - left_n;
                let weighted = left_n as f64 / n as f64 * gini(&left_counts, left_n)
                    + right_n as f64 / n as f64 * gini(&right_counts, right_n);
                let decrease = node_impurity - weighted;
                let better = match &best {
                    None => decrease > 0.0,
                    Some(b) => decrease > b.decrease,
                };
                if better {
                    best = Some(Split {
                        feature,
                        threshold: (value + next_value) / 2.0,
                        decrease,
                    });
                }
            }
        }
        best
    }

    fn grow(&mut self, rows: Vec<usize>, depth: usize) {
        if rows.len() < 2 {
            return;
        }
        if let Some(limit) = self.max_depth {
            if depth >= limit {
                return;
            }
        }
        let counts = self.class_counts(&rows);
        let impurity = gini(&counts, rows.len());
        if impurity == 0.0 {
            return;
        }
        let Some(split) = self.best_split(&rows, impurity) else {
            return;
        };
        self.importance[split.feature] += rows.len() as f64 / self.total * split.decrease;
        let (left, right): (Vec<usize>, Vec<usize>) = rows
            .into_iter()
            .partition(|&i| self.data.value(i, split.feature) <= split.threshold);
        self.grow(left, depth + 1);
        self.grow(right, depth + 1);
    }
}

/// Ranks features by mean Gini-impurity-decrease importance over a bagged
/// CART ensemble; deterministic given the seed.
pub fn forest_importance_ranking(data: &Dataset, cfg: &SelectorConfig) -> Result<FeatureRanking> {
    if data.n() < 2 {
        return Err(Error::InvalidInput("forest needs at least 2 rows".into()));
    }
    if data.num_classes() < 2 {
        return Err(Error::InvalidInput(
            "forest needs at least 2 classes".into(),
        ));
    }
    let d = data.d();
    let mtry = match cfg.forest.features_per_split {
        FeaturesPerSplit::Sqrt => (d as f64).sqrt().ceil() as usize,
        FeaturesPerSplit::Fixed(m) => {
            if m == 0 || m > d {
                return Err(Error::InvalidInput(format!(
                    "features_per_split must be in 1..={d}, got {m}"
                )));
            }
            m
        }
    };

    let mut totals = vec![0.0f64; d];
    for tree_index in 0..cfg.forest.trees {
        let mut rng = ChaCha8Rng::seed_from_u64(mix(cfg.seed, &[&tree_index.to_string()]));
        let sample: Vec<usize> = (0..data.n()).map(|_| rng.gen_range(0..data.n())).collect();
        let mut builder = TreeBuilder {
            data,
            classes: data.num_classes(),
            mtry,
            max_depth: cfg.forest.max_depth,
            rng,
            importance: vec![0.0; d],
            total: sample.len() as f64,
        };
        builder.grow(sample, 0);
        for (total, tree_value) in totals.iter_mut().zip(&builder.importance) {
            *total += tree_value;
        }
    }

    let trees = cfg.forest.trees as f64;
    let mut importances: Vec<f64> = totals.into_iter().map(|t| t / trees).collect();
    let sum: f64 = importances.iter().sum();
    if sum > 0.0 {
        for v in importances.iter_mut() {
            *v /= sum;
        }
    }
    FeatureRanking::from_scores(importances)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::selectors::SelectorId;

    /// One feature separates the classes on its own; the rest is noise.
    fn single_informative() -> Dataset {
        let mut rows = Vec::new();
        let mut y = Vec::new();
        for i in 0..60 {
            let class = i % 2;
            let informative = class as f64 * 4.0 + (i % 7) as f64 * 0.05;
            let noise_a = ((i * 13) % 11) as f64;
            let noise_b = ((i * 29) % 17) as f64;
            rows.push(vec![noise_a, informative, noise_b]);
            y.push(class);
        }
        Dataset::new(
            rows,
            y,
            vec!["na".into(), "signal".into(), "nb".into()],
            "single",
        )
        .unwrap()
    }

    fn cfg(seed: u64) -> SelectorConfig {
        let mut cfg = SelectorConfig::new(SelectorId::Forest);
        cfg.seed = seed;
        cfg.forest.trees = 30;
        cfg
    }

    #[test]
    fn informative_feature_ranks_first() {
        let data = single_informative();
        let r = forest_importance_ranking(&data, &cfg(3)).unwrap();
        assert_eq!(r.order()[0], 1);
    }

    #[test]
    fn importances_are_normalized_and_nonnegative() {
        let data = single_informative();
        let r = forest_importance_ranking(&data, &cfg(4)).unwrap();
        let scores = r.scores().unwrap();
        assert!(scores.iter().all(|&s| s >= 0.0));
        assert!((scores.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn deterministic_given_seed() {
        let data = single_informative();
        assert_eq!(
            forest_importance_ranking(&data, &cfg(9)).unwrap(),
            forest_importance_ranking(&data, &cfg(9)).unwrap()
        );
    }

    #[test]
    fn single_class_is_rejected() {
        let data = Dataset::new(
            vec![vec![1.0], vec![2.0]],
            vec![0, 0],
            vec!["a".into()],
            "flat",
        )
        .unwrap();
        assert!(forest_importance_ranking(&data, &cfg(0)).is_err());
    }
}
