//! Exact maximum-weight bipartite assignment (Kuhn-Munkres with potentials).

/// Returns the maximum total weight of a one-to-one assignment of rows to
/// columns, together with `assignment[row] = Some(col)` for matched rows.
/// Runs the shortest-augmenting-path variant in O(n^2 m).
pub fn max_weight_assignment(weights: &[Vec<f64>]) -> (f64, Vec<Option<usize>>) {
    let rows = weights.len();
    let cols = weights.first().map(|r| r.len()).unwrap_or(0);
    if rows == 0 || cols == 0 {
        return (0.0, vec![None; rows]);
    }
    // Solve as minimization over a square matrix padded with zeros.
    let n = rows.max(cols);
    let cost = |i: usize, j: usize| -> f64 {
        if i < rows && j < cols {
            -weights[i][j]
        } else {
            0.0
        }
    };

    let inf = f64::INFINITY;
    let mut u = vec![0.0_f64; n + 1];
    let mut v = vec![0.0_f64; n + 1];
    let mut matched_row = vec![0_usize; n + 1]; // column -> row (1-based, 0 = free)
    let mut way = vec![0_usize; n + 1];

    for i in 1..=n {
        matched_row[0] = i;
        let mut j0 = 0_usize;
        let mut minv = vec![inf; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = matched_row[j0];
            let mut delta = inf;
            let mut j1 = 0;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[matched_row[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if matched_row[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            matched_row[j0] = matched_row[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut assignment = vec![None; rows];
    let mut total = 0.0;
    for j in 1..=n {
        let i = matched_row[j];
        if i >= 1 && i <= rows && j <= cols {
            assignment[i - 1] = Some(j - 1);
            total += weights[i - 1][j - 1];
        }
    }
    (total, assignment)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force_max(weights: &[Vec<f64>]) -> f64 {
        let cols = weights.first().map(|r| r.len()).unwrap_or(0);
        fn recurse(weights: &[Vec<f64>], row: usize, used: &mut Vec<bool>) -> f64 {
            if row == weights.len() {
                return 0.0;
            }
            // Leaving a row unmatched is allowed (rectangular case).
            let mut best = recurse(weights, row + 1, used);
            for col in 0..used.len() {
                if !used[col] {
                    used[col] = true;
                    let v = weights[row][col] + recurse(weights, row + 1, used);
                    used[col] = false;
                    if v > best {
                        best = v;
                    }
                }
            }
            best
        }
        recurse(weights, 0, &mut vec![false; cols])
    }

    #[test]
    fn matches_brute_force_on_small_matrices() {
        let cases: Vec<Vec<Vec<f64>>> = vec![
            vec![vec![0.5]],
            vec![vec![1.0, 0.0], vec![0.0, 1.0]],
            vec![vec![0.2, 0.9, 0.1], vec![0.9, 0.2, 0.3], vec![0.4, 0.4, 0.8]],
            vec![vec![0.7, 0.7], vec![0.7, 0.7]],
            vec![vec![0.3, 0.6, 0.9]],
            vec![vec![0.9], vec![0.8], vec![0.1]],
        ];
        for weights in cases {
            let (total, assignment) = max_weight_assignment(&weights);
            let expected = brute_force_max(&weights);
            assert!(
                (total - expected).abs() < 1e-12,
                "got {total}, expected {expected} for {weights:?}"
            );
            // No column used twice.
            let mut seen = std::collections::HashSet::new();
            for col in assignment.into_iter().flatten() {
                assert!(seen.insert(col));
            }
        }
    }

    #[test]
    fn seeded_random_matrices_match_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(7);
        for _ in 0..60 {
            let rows = rng.gen_range(1..=5);
            let cols = rng.gen_range(1..=5);
            let weights: Vec<Vec<f64>> = (0..rows)
                .map(|_| (0..cols).map(|_| rng.gen_range(0.0..1.0)).collect())
                .collect();
            let (total, _) = max_weight_assignment(&weights);
            let expected = brute_force_max(&weights);
            assert!((total - expected).abs() < 1e-9, "{weights:?}");
        }
    }
}
