use super::{equal_width_bins, FeatureRanking};
use crate::data::Dataset;
use crate::error::{Error, Result};

/// Pearson χ² statistic of one binned feature against the class labels.
///
/// All-zero bins are dropped before computing expectations, so no expected
/// count is ever zero and no smoothing is applied. A table with a single
/// occupied bin (e.g. a constant feature) scores 0.
fn chi2_statistic(binned: &[usize], labels: &[usize], bins: usize, classes: usize) -> f64 {
    let mut observed = vec![vec![0usize; classes]; bins];
    for (&bin, &label) in binned.iter().zip(labels) {
        observed[bin][label] += 1;
    }
    let occupied: Vec<&Vec<usize>> = observed.iter().filter(|row| row.iter().any(|&c| c > 0)).collect();
    let col_totals: Vec<usize> = (0..classes)
        .map(|c| occupied.iter().map(|row| row[c]).sum())
        .collect();
    let n: usize = col_totals.iter().sum();
    if occupied.len() < 2 || n == 0 {
        return 0.0;
    }
    let mut statistic = 0.0;
    for row in &occupied {
        let row_total: usize = row.iter().sum();
        for (c, &count) in row.iter().enumerate() {
            if col_totals[c] == 0 {
                continue;
            }
            let expected = row_total as f64 * col_totals[c] as f64 / n as f64;
            let delta = count as f64 - expected;
            statistic += delta * delta / expected;
        }
    }
    statistic
}

/// Ranks features by the Pearson χ² statistic of the equal-width-binned
/// feature against the class labels; ties break by ascending index.
pub fn chi2_ranking(data: &Dataset, bins: usize) -> Result<FeatureRanking> {
    if bins < 2 {
        return Err(Error::InvalidInput("need at least 2 bins".into()));
    }
    let classes = data.num_classes();
    let scores: Vec<f64> = (0..data.d())
        .map(|j| {
            let binned = equal_width_bins(&data.column(j), bins);
            chi2_statistic(&binned, data.labels(), bins, classes)
        })
        .collect();
    FeatureRanking::from_scores(scores)
}
