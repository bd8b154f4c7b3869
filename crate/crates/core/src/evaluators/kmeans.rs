use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{scaled_columns, EvaluatorConfig};
use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::seed::mix;

/// Lloyd's algorithm with k-means++ initialization on the min-max-scaled
/// selected columns. The best of `restarts` seeded restarts (lowest inertia,
/// first on ties) wins, making the output deterministic given the seed.
pub fn kmeans_cluster(
    data: &Dataset,
    features: &[usize],
    clusters: usize,
    cfg: &EvaluatorConfig,
) -> Result<Vec<usize>> {
    if features.is_empty() {
        return Err(Error::InvalidInput("empty feature subset".into()));
    }
    if clusters == 0 || clusters > data.n() {
        return Err(Error::InvalidInput(format!(
            "clusters must be in 1..={}, got {clusters}",
            data.n()
        )));
    }
    let points = scaled_columns(data, features)?;
    let restarts = cfg.kmeans.restarts.max(1);
    let mut best: Option<(f64, Vec<usize>)> = None;
    for restart in 0..restarts {
        let seed = mix(cfg.seed, &["kmeans", &restart.to_string()]);
        let (labels, inertia) = lloyd(
            &points,
            clusters,
            cfg.kmeans.max_iter,
            cfg.kmeans.tol,
            seed,
        );
        if best.as_ref().is_none_or(|(b, _)| inertia < *b) {
            best = Some((inertia, labels));
        }
    }
    Ok(best.expect("at least one restart").1)
}

fn lloyd(
    points: &[Vec<f64>],
    clusters: usize,
    max_iter: usize,
    tol: f64,
    seed: u64,
) -> (Vec<usize>, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut centers = plus_plus_init(points, clusters, &mut rng);
    let mut labels = vec![0usize; points.len()];
    for _ in 0..max_iter.max(1) {
        assign(points, &centers, &mut labels);

        let mut next = vec![vec![0.0; points[0].len()]; clusters];
        let mut counts = vec![0usize; clusters];
        for (point, &label) in points.iter().zip(&labels) {
            counts[label] += 1;
            for (acc, v) in next[label].iter_mut().zip(point) {
                *acc += v;
            }
        }
        for (center, &count) in next.iter_mut().zip(&counts) {
            if count > 0 {
                for v in center.iter_mut() {
                    *v /= count as f64;
                }
            }
        }
        // An emptied cluster grabs the point farthest from its center.
        for c in 0..clusters {
            if counts[c] == 0 {
                let (farthest, _) = points
                    .iter()
                    .enumerate()
                    .map(|(i, p)| (i, squared_distance(p, &centers[labels[i]])))
                    .fold((0, f64::NEG_INFINITY), |acc, (i, d)| {
                        if d > acc.1 {
                            (i, d)
                        } else {
                            acc
                        }
                    });
                next[c] = points[farthest].clone();
            }
        }

        let movement: f64 = centers
            .iter()
            .zip(&next)
            .map(|(a, b)| squared_distance(a, b))
            .sum();
        centers = next;
        if movement <= tol * tol {
            break;
        }
    }
    assign(points, &centers, &mut labels);
    let inertia = points
        .iter()
        .zip(&labels)
        .map(|(p, &l)| squared_distance(p, &centers[l]))
        .sum();
    (labels, inertia)
}

fn assign(points: &[Vec<f64>], centers: &[Vec<f64>], labels: &mut [usize]) {
    for (label, point) in labels.iter_mut().zip(points) {
        let mut best = 0usize;
        let mut best_dist = f64::INFINITY;
        for (c, center) in centers.iter().enumerate() {
            let dist = squared_distance(point, center);
            if dist < best_dist {
                best_dist = dist;
                best = c;
            }
        }
        *label = best;
    }
}

/// k-means++ seeding: subsequent centers are drawn with probability
/// proportional to the squared distance from the nearest existing center.
fn plus_plus_init(points: &[Vec<f64>], clusters: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    let mut centers = Vec::with_capacity(clusters);
    centers.push(points[rng.gen_range(0..points.len())].clone());
    let mut nearest: Vec<f64> = points
        .iter()
        .map(|p| squared_distance(p, &centers[0]))
        .collect();
    while centers.len() < clusters {
        let total: f64 = nearest.iter().sum();
        let chosen = if total > 0.0 {
            let mut draw = rng.gen_range(0.0..total);
            let mut pick = points.len() - 1;
            for (i, &weight) in nearest.iter().enumerate() {
                if draw < weight {
                    pick = i;
                    break;
                }
                draw -= weight;
            }
            pick
        } else {
            // All points coincide with some center; any choice is equivalent.
            rng.gen_range(0..points.len())
        };
        centers.push(points[chosen].clone());
        for (slot, point) in nearest.iter_mut().zip(points) {
            let dist = squared_distance(point, centers.last().expect("just pushed"));
            if dist < *slot {
                *slot = dist;
            }
        }
    }
    centers
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
