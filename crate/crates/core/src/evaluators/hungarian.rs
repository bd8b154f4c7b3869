use crate::error::{Error, Result};

/// A square cost matrix for minimum-cost perfect matching.
#[derive(Debug, Clone, PartialEq)]
pub struct AssignmentProblem {
    cost: Vec<Vec<f64>>,
}

impl AssignmentProblem {
    pub fn new(cost: Vec<Vec<f64>>) -> Result<Self> {
        let m = cost.len();
        if m == 0 {
            return Err(Error::InvalidInput("empty cost matrix".into()));
        }
        for (i, row) in cost.iter().enumerate() {
            if row.len() != m {
                return Err(Error::InvalidInput(format!(
                    "cost matrix is not square: row {i} has {} entries, expected {m}",
                    row.len()
                )));
            }
            if row.iter().any(|c| !c.is_finite()) {
                return Err(Error::InvalidInput(format!(
                    "cost matrix row {i} contains a non-finite entry"
                )));
            }
        }
        Ok(AssignmentProblem { cost })
    }

    pub fn size(&self) -> usize {
        self.cost.len()
    }

    pub fn cost(&self) -> &[Vec<f64>] {
        &self.cost
    }
}

/// Solves the assignment problem with the Hungarian method in O(m³) using
/// row/column potentials. Returns the row→column assignment and its total
/// cost, which is minimal over all permutations.
pub fn hungarian_assignment(problem: &AssignmentProblem) -> Result<(Vec<usize>, f64)> {
    let m = problem.size();
    let cost = problem.cost();

    // 1-based arrays; p[j] holds the row matched to column j, 0 = free.
    let mut u = vec![0.0f64; m + 1];
    let mut v = vec![0.0f64; m + 1];
    let mut p = vec![0usize; m + 1];
    let mut way = vec![0usize; m + 1];

    for i in 1..=m {
        p[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![f64::INFINITY; m + 1];
        let mut used = vec![false; m + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0usize;
            for j in 1..=m {
                if used[j] {
                    continue;
                }
                let reduced = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if reduced < minv[j] {
                    minv[j] = reduced;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=m {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        // Flip augmenting path.
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut assignment = vec![0usize; m];
    for j in 1..=m {
        assignment[p[j] - 1] = j - 1;
    }
    let total = assignment
        .iter()
        .enumerate()
        .map(|(i, &j)| cost[i][j])
        .sum();
    Ok((assignment, total))
}
