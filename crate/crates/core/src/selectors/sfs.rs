use super::FeatureRanking;
use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::evaluators::{evaluate_subset, EvaluatorConfig};

/// Greedy sequential forward selection: at each of `k` steps, add the
/// feature whose inclusion maximizes the evaluator score of the augmented
/// subset (ties to the lowest index). The add-order forms the head of the
/// returned ranking; unselected features follow in ascending index order.
pub fn sequential_forward_selection(
    data: &Dataset,
    evaluator: &EvaluatorConfig,
    k: usize,
    seed: u64,
) -> Result<FeatureRanking> {
    let d = data.d();
    if k == 0 || k > d {
        return Err(Error::InvalidInput(format!(
            "k must be in 1..={d}, got {k}"
        )));
    }
    let cfg = EvaluatorConfig {
        seed,
        ..evaluator.clone()
    };
    let mut selected: Vec<usize> = Vec::with_capacity(d);
    let mut remaining: Vec<usize> = (0..d).collect();
    for _ in 0..k {
        let mut best: Option<(usize, f64)> = None;
        for &candidate in &remaining {
            let mut subset = selected.clone();
            subset.push(candidate);
            let score = evaluate_subset(data, &subset, &cfg)?;
            // Strictly-greater keeps the lowest index on ties, since
            // candidates are visited in ascending order.
            if best.is_none_or(|(_, s)| score > s) {
                best = Some((candidate, score));
            }
        }
        let (winner, _) = best.expect("remaining is nonempty");
        selected.push(winner);
        remaining.retain(|&f| f != winner);
    }
    selected.extend(remaining);
    FeatureRanking::new(selected)
}
