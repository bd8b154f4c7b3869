//! Selection-overlap stability: do repeated runs pick the same features?
//!
//! Two established measures are provided for comparison against the
//! curve-based stability score: the variance-based Nogueira index (optimal 1,
//! ≈0 for random selection) and Kuncheva's consistency index averaged over
//! run pairs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `K × d` binary selection indicators from `K` runs over `d` features.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelectionMatrix {
    rows: Vec<Vec<bool>>,
}

impl SelectionMatrix {
    pub fn new(rows: Vec<Vec<bool>>) -> Result<Self> {
        if rows.len() < 2 {
            return Err(Error::InvalidInput(format!(
                "need at least 2 selection runs, got {}",
                rows.len()
            )));
        }
        let d = rows[0].len();
        if d == 0 {
            return Err(Error::InvalidInput("zero-width selection rows".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != d {
                return Err(Error::InvalidInput(format!(
                    "row {i} has length {}, expected {d}",
                    row.len()
                )));
            }
            if !row.iter().any(|&s| s) {
                return Err(Error::InvalidInput(format!(
                    "row {i} selects no features"
                )));
            }
        }
        Ok(SelectionMatrix { rows })
    }

    /// Builds the matrix from index subsets over `d` features.
    pub fn from_subsets(subsets: &[Vec<usize>], d: usize) -> Result<Self> {
        let mut rows = Vec::with_capacity(subsets.len());
        for subset in subsets {
            let mut row = vec![false; d];
            for &f in subset {
                if f >= d {
                    return Err(Error::InvalidInput(format!(
                        "feature index {f} out of range for d={d}"
                    )));
                }
                row[f] = true;
            }
            rows.push(row);
        }
        Self::new(rows)
    }

    pub fn runs(&self) -> usize {
        self.rows.len()
    }

    pub fn d(&self) -> usize {
        self.rows[0].len()
    }

    pub fn rows(&self) -> &[Vec<bool>] {
        &self.rows
    }
}

/// Variance-based selection stability:
/// `1 − mean_f(s_f²) / (k̄/d · (1 − k̄/d))`
/// with `s_f²` the unbiased sample variance of column `f` and `k̄` the mean
/// number of selected features per run.
pub fn nogueira_stability(selections: &SelectionMatrix) -> Result<f64> {
    let k_runs = selections.runs() as f64;
    let d = selections.d() as f64;

    let mut mean_variance = 0.0;
    for f in 0..selections.d() {
        let sum: f64 = selections
            .rows()
            .iter()
            .map(|row| row[f] as u8 as f64)
            .sum();
        let p = sum / k_runs;
        // Unbiased sample variance of a 0/1 column.
        mean_variance += k_runs / (k_runs - 1.0) * p * (1.0 - p);
    }
    mean_variance /= d;

    let k_bar: f64 = selections
        .rows()
        .iter()
        .map(|row| row.iter().filter(|&&s| s).count() as f64)
        .sum::<f64>()
        / k_runs;
    let denom = k_bar / d * (1.0 - k_bar / d);
    if denom == 0.0 {
        return Err(Error::DegenerateSelection(
            "all runs select every feature or the mean selection size is degenerate".into(),
        ));
    }
    Ok(1.0 - mean_variance / denom)
}

/// `K ≥ 2` feature rankings (or fixed-size subsets) over `d` features; the
/// `k`-prefix of each is the selected subset at size `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankedSubsetFamily {
    sequences: Vec<Vec<usize>>,
    d: usize,
}

impl RankedSubsetFamily {
    pub fn new(sequences: Vec<Vec<usize>>, d: usize) -> Result<Self> {
        if sequences.len() < 2 {
            return Err(Error::InvalidInput(format!(
                "need at least 2 sequences, got {}",
                sequences.len()
            )));
        }
        for (i, seq) in sequences.iter().enumerate() {
            let mut seen = vec![false; d];
            for &f in seq {
                if f >= d {
                    return Err(Error::InvalidInput(format!(
                        "sequence {i} contains index {f}, out of range for d={d}"
                    )));
                }
                if seen[f] {
                    return Err(Error::InvalidInput(format!(
                        "sequence {i} contains index {f} twice"
                    )));
                }
                seen[f] = true;
            }
        }
        Ok(RankedSubsetFamily { sequences, d })
    }

    pub fn sequences(&self) -> &[Vec<usize>] {
        &self.sequences
    }

    pub fn d(&self) -> usize {
        self.d
    }
}

/// Kuncheva's consistency index between two subsets of equal size `k`:
/// `(r·d − k²) / (k·(d − k))` where `r` is the overlap size. Equals 1 iff
/// the subsets coincide; undefined at k = 0 and k = d.
pub fn consistency_index(s1: &[usize], s2: &[usize], d: usize) -> Result<f64> {
    let k = s1.len();
    if s2.len() != k {
        return Err(Error::InvalidInput(format!(
            "subsets differ in size: {k} vs {}",
            s2.len()
        )));
    }
    if k == 0 || k >= d {
        return Err(Error::UndefinedIndex(format!(
            "consistency index needs 0 < k < d, got k={k}, d={d}"
        )));
    }
    let mut member = vec![false; d];
    for &f in s1 {
        if f >= d {
            return Err(Error::InvalidInput(format!(
                "feature index {f} out of range for d={d}"
            )));
        }
        member[f] = true;
    }
    let mut overlap = 0usize;
    for &f in s2 {
        if f >= d {
            return Err(Error::InvalidInput(format!(
                "feature index {f} out of range for d={d}"
            )));
        }
        if member[f] {
            overlap += 1;
        }
    }
    let (r, k, d) = (overlap as f64, k as f64, d as f64);
    Ok((r * d - k * k) / (k * (d - k)))
}

/// Kuncheva's stability index: the consistency index averaged over all
/// `K(K−1)/2` unordered pairs of `k`-prefixes.
pub fn kuncheva_stability(family: &RankedSubsetFamily, k: usize) -> Result<f64> {
    for (i, seq) in family.sequences().iter().enumerate() {
        if seq.len() < k {
            return Err(Error::InvalidInput(format!(
                "sequence {i} has only {} entries, need at least k={k}",
                seq.len()
            )));
        }
    }
    let runs = family.sequences().len();
    let mut sum = 0.0;
    for i in 0..runs {
        for j in (i + 1)..runs {
            sum += consistency_index(
                &family.sequences()[i][..k],
                &family.sequences()[j][..k],
                family.d(),
            )?;
        }
    }
    Ok(sum / (runs * (runs - 1) / 2) as f64)
}
