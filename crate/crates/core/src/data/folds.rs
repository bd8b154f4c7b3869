use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Assigns every row to one of `folds` folds so that each class is spread as
/// evenly as possible. Deterministic given the seed.
pub fn stratified_folds(labels: &[usize], folds: usize, seed: u64) -> Result<Vec<usize>> {
    if folds < 2 {
        return Err(Error::InvalidInput(format!(
            "need at least 2 folds, got {folds}"
        )));
    }
    if folds > labels.len() {
        return Err(Error::InvalidInput(format!(
            "{folds} folds for only {} rows",
            labels.len()
        )));
    }
    let classes = labels.iter().copied().max().map_or(0, |m| m + 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut assignment = vec![0usize; labels.len()];
    // Offset staggers the round-robin start between classes so small class
    // remainders don't all pile onto fold 0.
    let mut offset = 0usize;
    for class in 0..classes {
        let mut members: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == class).collect();
        members.shuffle(&mut rng);
        for (pos, &row) in members.iter().enumerate() {
            assignment[row] = (pos + offset) % folds;
        }
        offset = (offset + members.len()) % folds;
    }
    Ok(assignment)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn balanced_classes_divide_exactly() {
        let labels = [0, 0, 0, 0, 0, 1, 1, 1, 1, 1];
        let assignment = stratified_folds(&labels, 5, 3).unwrap();
        for fold in 0..5 {
            let class0 = labels
                .iter()
                .zip(&assignment)
                .filter(|&(&l, &f)| l == 0 && f == fold)
                .count();
            let class1 = labels
                .iter()
                .zip(&assignment)
                .filter(|&(&l, &f)| l == 1 && f == fold)
                .count();
            assert_eq!(class0, 1);
            assert_eq!(class1, 1);
        }
    }

    #[test]
    fn assignment_is_a_partition() {
        let labels = [0, 1, 2, 0, 1, 2, 0, 1, 2, 0, 0];
        let assignment = stratified_folds(&labels, 3, 9).unwrap();
        assert_eq!(assignment.len(), labels.len());
        assert!(assignment.iter().all(|&f| f < 3));
        // Every fold non-empty for this size.
        for fold in 0..3 {
            assert!(assignment.contains(&fold));
        }
    }

    #[test]
    fn deterministic_given_seed() {
        let labels: Vec<usize> = (0..40).map(|i| i % 3).collect();
        assert_eq!(
            stratified_folds(&labels, 5, 42).unwrap(),
            stratified_folds(&labels, 5, 42).unwrap()
        );
        assert_ne!(
            stratified_folds(&labels, 5, 42).unwrap(),
            stratified_folds(&labels, 5, 43).unwrap()
        );
    }

    #[test]
    fn rejects_more_folds_than_rows() {
        assert!(stratified_folds(&[0, 1], 3, 0).is_err());
        assert!(stratified_folds(&[0, 1, 2], 1, 0).is_err());
    }
}
