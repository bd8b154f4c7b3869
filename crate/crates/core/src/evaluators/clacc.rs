use super::hungarian::{hungarian_assignment, AssignmentProblem};
use crate::error::{Error, Result};

/// Clustering accuracy: the fraction of points whose cluster id, after the
/// cost-minimizing bijection between cluster ids and class ids, matches the
/// class label. The bijection maximizes total coincidence counts via the
/// Hungarian method on the negated count matrix, zero-padded square when the
/// id ranges differ.
pub fn clustering_accuracy(pred: &[usize], truth: &[usize]) -> Result<f64> {
    if pred.len() != truth.len() {
        return Err(Error::InvalidInput(format!(
            "length mismatch: {} predictions vs {} labels",
            pred.len(),
            truth.len()
        )));
    }
    if pred.is_empty() {
        return Err(Error::InvalidInput("empty label vectors".into()));
    }
    let clusters = pred.iter().copied().max().expect("nonempty") + 1;
    let classes = truth.iter().copied().max().expect("nonempty") + 1;
    let m = clusters.max(classes);

    let mut counts = vec![vec![0usize; m]; m];
    for (&c, &g) in pred.iter().zip(truth) {
        counts[c][g] += 1;
    }
    let cost: Vec<Vec<f64>> = counts
        .iter()
        .map(|row| row.iter().map(|&c| -(c as f64)).collect())
        .collect();
    let (mapping, _) = hungarian_assignment(&AssignmentProblem::new(cost)?)?;

    let matched: usize = (0..m).map(|c| counts[c][mapping[c]]).sum();
    Ok(matched as f64 / pred.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identical_labelings_score_one() {
        let labels = vec![0, 1, 2, 1, 0, 2];
        assert_eq!(clustering_accuracy(&labels, &labels).unwrap(), 1.0);
    }

    #[test]
    fn swapped_cluster_ids_still_score_one() {
        assert_eq!(
            clustering_accuracy(&[0, 0, 1, 1], &[1, 1, 0, 0]).unwrap(),
            1.0
        );
    }

    #[test]
    fn two_thirds_example() {
        // Best bijection matches two of three points.
        let value = clustering_accuracy(&[0, 1, 1], &[0, 0, 1]).unwrap();
        assert!((value - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn single_cluster_scores_largest_class_share() {
        let truth = [0, 0, 0, 1, 1, 2];
        let pred = [0; 6];
        let value = clustering_accuracy(&pred, &truth).unwrap();
        assert!((value - 3.0 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn invariant_under_id_permutations() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..100 {
            let n = rng.gen_range(2..40usize);
            let clusters = rng.gen_range(1..5usize);
            let classes = rng.gen_range(1..5usize);
            let pred: Vec<usize> = (0..n).map(|_| rng.gen_range(0..clusters)).collect();
            let truth: Vec<usize> = (0..n).map(|_| rng.gen_range(0..classes)).collect();
            let base = clustering_accuracy(&pred, &truth).unwrap();

            let mut cluster_map: Vec<usize> = (0..clusters).collect();
            cluster_map.shuffle(&mut rng);
            let relabeled: Vec<usize> = pred.iter().map(|&c| cluster_map[c]).collect();
            assert_eq!(clustering_accuracy(&relabeled, &truth).unwrap(), base);

            let mut class_map: Vec<usize> = (0..classes).collect();
            class_map.shuffle(&mut rng);
            let remapped: Vec<usize> = truth.iter().map(|&g| class_map[g]).collect();
            assert_eq!(clustering_accuracy(&pred, &remapped).unwrap(), base);
        }
    }

    #[test]
    fn rejects_mismatched_lengths() {
        assert!(clustering_accuracy(&[0, 1], &[0]).is_err());
        assert!(clustering_accuracy(&[], &[]).is_err());
    }
}
