//! Exact feasibility of `A x = b, x >= 0` by phase-one simplex.
//!
//! Dense rational tableau with Bland's rule, so it always terminates. Used
//! for convex hull membership, where the systems have a few dozen columns.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Whether some `x >= 0` satisfies `sum_j x_j columns[j] = b`.
pub(crate) fn nonnegative_solution_exists(columns: &[Vec<BigRational>], b: &[BigRational]) -> bool {
    let m = b.len();
    let n = columns.len();
    // Tableau rows: [A | I | b] with rows flipped so that b >= 0.
    let width = n + m + 1;
    let mut t: Vec<Vec<BigRational>> = (0..m)
        .map(|r| {
            let flip = b[r].is_negative();
            let mut row = Vec::with_capacity(width);
            for c in columns {
                row.push(if flip { -c[r].clone() } else { c[r].clone() });
            }
            for a in 0..m {
                row.push(if a == r { BigRational::one() } else { BigRational::zero() });
            }
            row.push(b[r].abs());
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..n + m).collect();
    // Reduced costs of the phase-one objective: minimise the sum of
    // artificials, i.e. cost row = -(sum of rows) on the original columns.
    let mut cost: Vec<BigRational> = vec![BigRational::zero(); width];
    for row in &t {
        for (j, x) in row.iter().enumerate() {
            if j < n || j == width - 1 {
                cost[j] -= x;
            }
        }
    }
    while let Some(enter) = (0..n + m).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, BigRational)> = None;
        for r in 0..m {
            if t[r][enter].is_positive() {
                let ratio = &t[r][width - 1] / &t[r][enter];
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*lr]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        // Phase one is bounded below by zero, so a pivot row always exists.
        let (r, _) = leave.expect("phase-one objective is bounded");
        let lead = t[r][enter].clone();
        for x in t[r].iter_mut() {
            *x /= &lead;
        }
        let pivot_row = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != r && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        if !cost[enter].is_zero() {
            let f = cost[enter].clone();
            for (x, y) in cost.iter_mut().zip(&pivot_row) {
                *x -= &f * y;
            }
        }
        basis[r] = enter;
    }
    cost[width - 1].is_zero()
}
