//! Minimum-cost assignment on a square cost matrix.
//!
//! Used to match root multisets between consecutive gain steps of a locus
//! sweep (branch continuity) and, in tests, to compare eigenvalue multisets
//! from independent routes. The implementation is the Hungarian algorithm
//! with row/column potentials, O(n³).

/// An optimal row→column assignment and its total cost.
#[derive(Debug, Clone, PartialEq)]
pub struct Assignment {
    /// `row_to_col[i]` is the column assigned to row `i` (0-based).
    pub row_to_col: Vec<usize>,
    /// Sum of the chosen costs.
    pub total: f64,
}

/// Solve the square min-cost assignment problem. `cost[i][j]` must be finite.
///
/// Panics if `cost` is not square or contains non-finite values; callers
/// construct the matrix from distances, which are finite by construction.
pub fn min_cost_assignment(cost: &[Vec<f64>]) -> Assignment {
    let n = cost.len();
    assert!(n > 0, "cost matrix must be nonempty");
    for row in cost {
        assert_eq!(row.len(), n, "cost matrix must be square");
        assert!(row.iter().all(|c| c.is_finite()), "costs must be finite");
    }

    // Potentials with 1-based columns; p[j] = row currently assigned to
    // column j (0 = none). Column 0 is the virtual start of each
    // augmenting search.
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];

    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0usize;
            for j in 1..=n {
                if !used[j] {
                    let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=n {
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
        // walk the augmenting path back
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut row_to_col = vec![0usize; n];
    for j in 1..=n {
        if p[j] != 0 {
            row_to_col[p[j] - 1] = j - 1;
        }
    }
    let total = row_to_col.iter().enumerate().map(|(i, &j)| cost[i][j]).sum();
    Assignment { row_to_col, total }
}

/// Smallest cost increase achievable by swapping the columns of any two
/// rows of `assignment`. Near-zero means a second assignment is essentially
/// as good and the matching is ambiguous.
pub fn pair_swap_gap(cost: &[Vec<f64>], assignment: &[usize]) -> f64 {
    let n = cost.len();
    let mut gap = f64::INFINITY;
    for a in 0..n {
        for b in (a + 1)..n {
            let (ca, cb) = (assignment[a], assignment[b]);
            let delta = cost[a][cb] + cost[b][ca] - cost[a][ca] - cost[b][cb];
            if delta < gap {
                gap = delta;
            }
        }
    }
    gap
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_force(cost: &[Vec<f64>]) -> f64 {
        let n = cost.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best = f64::INFINITY;
        permute(&mut perm, 0, cost, &mut best);
        best
    }

    fn permute(perm: &mut Vec<usize>, k: usize, cost: &[Vec<f64>], best: &mut f64) {
        if k == perm.len() {
            let total: f64 = perm.iter().enumerate().map(|(i, &j)| cost[i][j]).sum();
            if total < *best {
                *best = total;
            }
            return;
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            permute(perm, k + 1, cost, best);
            perm.swap(k, i);
        }
    }

    #[test]
    fn picks_the_cheap_diagonal() {
        let cost = vec![vec![1.0, 10.0], vec![10.0, 1.0]];
        let a = min_cost_assignment(&cost);
        assert_eq!(a.row_to_col, vec![0, 1]);
        assert_eq!(a.total, 2.0);
    }

    #[test]
    fn picks_the_cheap_antidiagonal() {
        let cost = vec![vec![10.0, 1.0], vec![1.0, 10.0]];
        let a = min_cost_assignment(&cost);
        assert_eq!(a.row_to_col, vec![1, 0]);
        assert_eq!(a.total, 2.0);
    }

    #[test]
    fn swap_gap_detects_ties() {
        let cost = vec![vec![1.0, 1.0], vec![1.0, 1.0]];
        let a = min_cost_assignment(&cost);
        assert_eq!(pair_swap_gap(&cost, &a.row_to_col), 0.0);
    }

    proptest! {
        #[test]
        fn matches_brute_force(
            n in 1usize..=6,
            seed in proptest::collection::vec(0.0f64..100.0, 36),
        ) {
            let cost: Vec<Vec<f64>> =
                (0..n).map(|i| (0..n).map(|j| seed[i * 6 + j]).collect()).collect();
            let a = min_cost_assignment(&cost);
            // a valid permutation
            let mut sorted = a.row_to_col.clone();
            sorted.sort_unstable();
            prop_assert_eq!(sorted, (0..n).collect::<Vec<_>>());
            // optimal
            let best = brute_force(&cost);
            prop_assert!((a.total - best).abs() <= 1e-9 * (1.0 + best.abs()));
        }
    }
}
