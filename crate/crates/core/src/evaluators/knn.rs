use super::scaled_columns;
use super::EvaluatorConfig;
use crate::data::{stratified_folds, Dataset};
use crate::error::{Error, Result};

/// Folds actually used: classes smaller than the requested fold count force
/// a reduction (never below 2). Returns (folds, was_reduced).
pub fn effective_folds(labels: &[usize], requested: usize) -> (usize, bool) {
    let classes = labels.iter().copied().max().map_or(0, |m| m + 1);
    let min_class = (0..classes)
        .map(|c| labels.iter().filter(|&&l| l == c).count())
        .min()
        .unwrap_or(0);
    let effective = requested.min(min_class).max(2);
    (effective, effective != requested)
}

/// Mean k-NN accuracy over stratified cross-validation folds, computed on
/// the min-max-scaled selected columns with Euclidean distance.
/// Deterministic given the seed.
pub fn knn_cv_accuracy(data: &Dataset, features: &[usize], cfg: &EvaluatorConfig) -> Result<f64> {
    if features.is_empty() {
        return Err(Error::InvalidInput("empty feature subset".into()));
    }
    if data.n() < 4 {
        return Err(Error::InvalidInput(
            "cross-validation needs at least 4 rows".into(),
        ));
    }
    let points = scaled_columns(data, features)?;
    let (folds, _) = effective_folds(data.labels(), cfg.folds);
    let assignment = stratified_folds(data.labels(), folds, cfg.seed)?;

    let mut fold_accuracies = Vec::with_capacity(folds);
    for fold in 0..folds {
        let train: Vec<usize> = (0..data.n()).filter(|&i| assignment[i] != fold).collect();
        let test: Vec<usize> = (0..data.n()).filter(|&i| assignment[i] == fold).collect();
        if test.is_empty() || train.is_empty() {
            continue;
        }
        let k = cfg.knn_k.min(train.len());
        let mut correct = 0usize;
        for &t in &test {
            let mut neighbors: Vec<(f64, usize)> = train
                .iter()
                .map(|&r| (squared_distance(&points[t], &points[r]), r))
                .collect();
            neighbors.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            neighbors.truncate(k);

            let classes = data.num_classes();
            let mut votes = vec![0usize; classes];
            let mut vote_distance = vec![0.0f64; classes];
            for &(dist, r) in &neighbors {
                let label = data.labels()[r];
                votes[label] += 1;
                vote_distance[label] += dist;
            }
            // Majority vote; ties go to the closer class, then the smaller id.
            let mut winner = 0usize;
            for class in 1..classes {
                let better = votes[class] > votes[winner]
                    || (votes[class] == votes[winner]
                        && vote_distance[class] < vote_distance[winner]);
                if better {
                    winner = class;
                }
            }
            if winner == data.labels()[t] {
                correct += 1;
            }
        }
        fold_accuracies.push(correct as f64 / test.len() as f64);
    }
    Ok(fold_accuracies.iter().sum::<f64>() / fold_accuracies.len() as f64)
}

fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let delta = x - y;
            delta * delta
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evaluators::MeasureId;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cfg(seed: u64) -> EvaluatorConfig {
        EvaluatorConfig {
            measure_id: MeasureId::Accuracy,
            seed,
            ..EvaluatorConfig::default()
        }
    }

    /// Duplicated, well-separated points: every test point's nearest
    /// neighbor is one of its same-class duplicates.
    #[test]
    fn separated_duplicates_score_one() {
        let mut rows = Vec::new();
        let mut y = Vec::new();
        for i in 0..40 {
            let class = i % 2;
            rows.push(vec![class as f64 * 100.0, class as f64 * -50.0]);
            y.push(class);
        }
        let data = Dataset::new(rows, y, vec!["a".into(), "b".into()], "dups").unwrap();
        let accuracy = knn_cv_accuracy(&data, &[0, 1], &cfg(5)).unwrap();
        assert_eq!(accuracy, 1.0);
    }

    /// Uniformly shuffled labels on structureless data: accuracy hovers at
    /// the 0.5 chance level.
    #[test]
    fn shuffled_labels_score_near_chance() {
        let n = 1000;
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|i| vec![(i as f64 * 0.7919).fract(), (i as f64 * 0.3141).fract()])
            .collect();
        let mut y: Vec<usize> = (0..n).map(|i| i % 2).collect();
        y.shuffle(&mut rng);
        let data = Dataset::new(rows, y, vec!["a".into(), "b".into()], "null").unwrap();
        let accuracy = knn_cv_accuracy(&data, &[0, 1], &cfg(5)).unwrap();
        assert!(
            (accuracy - 0.5).abs() < 0.05,
            "null accuracy {accuracy} strayed from chance"
        );
    }

    #[test]
    fn deterministic_and_bounded() {
        let rows: Vec<Vec<f64>> = (0..30)
            .map(|i| vec![(i % 5) as f64, (i % 3) as f64])
            .collect();
        let y: Vec<usize> = (0..30).map(|i| i % 2).collect();
        let data = Dataset::new(rows, y, vec!["a".into(), "b".into()], "mix").unwrap();
        let first = knn_cv_accuracy(&data, &[0, 1], &cfg(3)).unwrap();
        let second = knn_cv_accuracy(&data, &[0, 1], &cfg(3)).unwrap();
        assert_eq!(first, second);
        assert!((0.0..=1.0).contains(&first));
    }

    #[test]
    fn empty_subset_is_rejected() {
        let data = Dataset::new(
            vec![vec![1.0], vec![2.0], vec![3.0], vec![4.0]],
            vec![0, 1, 0, 1],
            vec!["a".into()],
            "t",
        )
        .unwrap();
        assert!(knn_cv_accuracy(&data, &[], &cfg(0)).is_err());
    }

    #[test]
    fn small_classes_reduce_folds() {
        let labels = [0, 0, 0, 0, 0, 0, 1, 1, 1];
        assert_eq!(effective_folds(&labels, 5), (3, true));
        assert_eq!(effective_folds(&labels, 3), (3, false));
        let tiny = [0, 1, 0, 1];
        assert_eq!(effective_folds(&tiny, 5), (2, true));
    }
}
