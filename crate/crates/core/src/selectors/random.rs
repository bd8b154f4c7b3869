use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::FeatureRanking;
use crate::error::{Error, Result};

/// Baseline selector: a uniformly random permutation of the features,
/// fully determined by the seed.
pub fn random_ranking(d: usize, seed: u64) -> Result<FeatureRanking> {
    if d == 0 {
        return Err(Error::InvalidInput("no features to rank".into()));
    }
    let mut order: Vec<usize> = (0..d).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    FeatureRanking::new(order)
}
