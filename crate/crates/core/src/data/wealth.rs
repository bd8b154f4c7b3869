use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp, LogNormal, Normal, Uniform};

use super::Dataset;
use crate::error::{Error, Result};

/// Exchange rate used to duplicate the salary column.
pub const EUR_TO_USD: f64 = 1.1;
/// Kilometres-to-miles factor used to duplicate the distance column.
pub const KM_TO_MILES: f64 = 0.621371;

/// Column order of the generated dataset.
pub const WEALTH_FEATURES: [&str; 6] = [
    "age",
    "salary_eur",
    "salary_usd",
    "residence_size",
    "distance_km",
    "distance_miles",
];

/// Synthetic binary-target dataset with two exactly redundant feature pairs:
/// `salary_usd = 1.1 · salary_eur` and `distance_miles = 0.621371 ·
/// distance_km`. The target marks rows whose standardized salary plus
/// residence size minus distance exceeds the median of that sum, with 2% of
/// labels flipped.
pub fn generate_wealth_dummy(n: usize, seed: u64) -> Result<Dataset> {
    if n < 10 {
        return Err(Error::InvalidInput(format!(
            "wealth dataset needs n >= 10, got {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let age = Uniform::new_inclusive(18.0, 80.0);
    let salary = LogNormal::new(10.5, 0.5).expect("valid lognormal parameters");
    let size = Normal::new(90.0, 30.0).expect("valid normal parameters");
    let distance = Exp::new(1.0 / 10.0).expect("valid exponential rate");

    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let age_v: f64 = age.sample(&mut rng);
        let salary_eur: f64 = salary.sample(&mut rng);
        let size_v: f64 = f64::max(size.sample(&mut rng), 10.0);
        let dist_km: f64 = distance.sample(&mut rng);
        rows.push(vec![
            age_v,
            salary_eur,
            EUR_TO_USD * salary_eur,
            size_v,
            dist_km,
            KM_TO_MILES * dist_km,
        ]);
    }

    // Wealth is driven by salary and residence size and reduced by distance
    // to the center, all on standardized scales.
    let z = |col: usize| -> Vec<f64> {
        let values: Vec<f64> = rows.iter().map(|r| r[col]).collect();
        let mean = values.iter().sum::<f64>() / n as f64;
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
        let std = var.sqrt().max(f64::MIN_POSITIVE);
        values.iter().map(|v| (v - mean) / std).collect()
    };
    let (z_salary, z_size, z_dist) = (z(1), z(3), z(4));
    let scores: Vec<f64> = (0..n)
        .map(|i| z_salary[i] + z_size[i] - z_dist[i])
        .collect();
    let mut sorted = scores.clone();
    sorted.sort_by(f64::total_cmp);
    let median = if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
    };

    let mut y: Vec<usize> = scores.iter().map(|&s| usize::from(s > median)).collect();
    for label in y.iter_mut() {
        if rng.gen_bool(0.02) {
            *label = 1 - *label;
        }
    }
    // The flips could in principle wipe out a class; keep both present.
    if y.iter().all(|&l| l == 0) {
        y[0] = 1;
    } else if y.iter().all(|&l| l == 1) {
        y[0] = 0;
    }

    Dataset::new(
        rows,
        y,
        WEALTH_FEATURES.iter().map(|s| s.to_string()).collect(),
        "wealth",
    )
}
