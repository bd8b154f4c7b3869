use super::{equal_width_bins, FeatureRanking};
use crate::data::Dataset;
use crate::error::{Error, Result};

/// Shannon entropy (base 2) of a count vector; 0·log0 = 0.
fn entropy(counts: &[usize], total: usize) -> f64 {
    if total == 0 {
        return 0.0;
    }
    let total = total as f64;
    counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / total;
            -p * p.log2()
        })
        .sum()
}

/// Ranks features by information gain `H(Y) − H(Y|X)` after equal-width
/// discretization of each feature. If the dataset has a single class every
/// gain is 0 and the ranking degenerates to ascending index order.
pub fn info_gain_ranking(data: &Dataset, bins: usize) -> Result<FeatureRanking> {
    if data.n() < 2 {
        return Err(Error::InvalidInput(
            "information gain needs at least 2 rows".into(),
        ));
    }
    if bins < 2 {
        return Err(Error::InvalidInput("need at least 2 bins".into()));
    }
    let classes = data.num_classes();
    let n = data.n();
    let mut class_counts = vec![0usize; classes];
    for &label in data.labels() {
        class_counts[label] += 1;
    }
    let label_entropy = entropy(&class_counts, n);

    let gains: Vec<f64> = (0..data.d())
        .map(|j| {
            let binned = equal_width_bins(&data.column(j), bins);
            // counts[bin][class]
            let mut counts = vec![vec![0usize; classes]; bins];
            let mut bin_totals = vec![0usize; bins];
            for (i, &bin) in binned.iter().enumerate() {
                counts[bin][data.labels()[i]] += 1;
                bin_totals[bin] += 1;
            }
            let conditional: f64 = (0..bins)
                .map(|bin| {
                    bin_totals[bin] as f64 / n as f64 * entropy(&counts[bin], bin_totals[bin])
                })
                .sum();
            label_entropy - conditional
        })
        .collect();

    FeatureRanking::from_scores(gains)
}
