//! Vertices of `conv(points) ∩ {x : x_c = t_c for the fixed coordinates}`.
//!
//! Every vertex of such a section is the unique point of the section inside
//! some face of the polytope spanned by an affinely independent subset of at
//! most `#constraints + 1` points, with strictly positive barycentric
//! coordinates. The search enumerates those subsets depth-first, solves the
//! small barycentric system exactly, and finally discards candidates that
//! are not extreme. When the points span a simplex every face is one of the
//! enumerated subsets, so every candidate is already a vertex and that last
//! pass is skipped.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::circuits::hull_vertex_flags;
use super::RationalVector;
use crate::error::{Error, Result};

/// A coordinate index and the value it is pinned to.
pub type Constraint = (usize, BigRational);

/// Vertices of the section, sorted, without duplicates. Empty when the
/// section is empty.
pub fn section_vertices(points: &[Vec<i64>], constraints: &[Constraint]) -> Result<Vec<RationalVector>> {
    let dim = points.first().map_or(0, Vec::len);
    if let Some(p) = points.iter().find(|p| p.len() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: p.len(),
        });
    }
    if let Some(&(c, _)) = constraints.iter().find(|(c, _)| *c >= dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: c + 1,
        });
    }
    let mut candidates: Vec<RationalVector> = Vec::new();
    let mut chosen = Vec::new();
    dfs(points, constraints, 0, &mut chosen, &mut candidates);
    candidates.sort();
    candidates.dedup();
    if super::circuits::affine_rank(points)? == points.len() {
        return Ok(candidates);
    }
    extreme_only(candidates)
}

fn dfs(points: &[Vec<i64>], constraints: &[Constraint], start: usize, chosen: &mut Vec<usize>, out: &mut Vec<RationalVector>) {
    if !chosen.is_empty() {
        match solve(points, constraints, chosen) {
            Solve::Dependent => return,
            Solve::Point(x) => out.push(x),
            Solve::None | Solve::NotUnique => {}
        }
    }
    if chosen.len() == constraints.len() + 1 {
        return;
    }
    for q in start..points.len() {
        chosen.push(q);
        dfs(points, constraints, q + 1, chosen, out);
        chosen.pop();
    }
}

enum Solve {
    /// The chosen points are affinely dependent.
    Dependent,
    /// No point of the open simplex satisfies the constraints.
    None,
    /// The section of the open simplex is more than a point.
    NotUnique,
    Point(RationalVector),
}

/// Solves `sum l_s = 1`, `sum l_s p_s[c] = t_c`, `l_s > 0` over the chosen
/// points.
fn solve(points: &[Vec<i64>], constraints: &[Constraint], chosen: &[usize]) -> Solve {
    let k = chosen.len();
    let dim = points[0].len();
    // Affine independence: rank of lifted points must be k.
    let lifted: Vec<Vec<BigRational>> = (0..=dim)
        .map(|r| {
            chosen
                .iter()
                .map(|&s| {
                    if r == dim {
                        BigRational::one()
                    } else {
                        BigRational::from_integer(points[s][r].into())
                    }
                })
                .collect()
        })
        .collect();
    let mut m = lifted.clone();
    if rank_in_place(&mut m, k) < k {
        return Solve::Dependent;
    }
    // Augmented system.
    let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(constraints.len() + 1);
    let mut sum_row = vec![BigRational::one(); k];
    sum_row.push(BigRational::one());
    rows.push(sum_row);
    for (c, t) in constraints {
        let mut row: Vec<BigRational> = chosen.iter().map(|&s| BigRational::from_integer(points[s][*c].into())).collect();
        row.push(t.clone());
        rows.push(row);
    }
    let pivots = rref_aug(&mut rows, k);
    if pivots.contains(&k) {
        return Solve::None;
    }
    if pivots.len() < k {
        return Solve::NotUnique;
    }
    let lambda: Vec<BigRational> = (0..k).map(|i| rows[i][k].clone()).collect();
    if lambda.iter().any(|l| !l.is_positive()) {
        return Solve::None;
    }
    let x: Vec<BigRational> = (0..dim)
        .map(|r| {
            chosen.iter().zip(&lambda).fold(BigRational::zero(), |acc, (&s, l)| {
                acc + l * BigRational::from_integer(points[s][r].into())
            })
        })
        .collect();
    Solve::Point(RationalVector::new(x))
}

fn rank_in_place(rows: &mut [Vec<BigRational>], cols: usize) -> usize {
    rref_aug(rows, cols).len()
}

/// Row reduction over the first `cols + 1` columns (the last one being the
/// right-hand side when present); returns pivot columns.
fn rref_aug(rows: &mut [Vec<BigRational>], cols: usize) -> Vec<usize> {
    let width = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..width.min(cols + 1) {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Keeps the candidates that are vertices of their convex hull.
fn extreme_only(candidates: Vec<RationalVector>) -> Result<Vec<RationalVector>> {
    if candidates.len() <= 1 {
        return Ok(candidates);
    }
    let denom = candidates
        .iter()
        .flat_map(|v| v.entries().iter().map(|x| x.denom().clone()))
        .fold(BigInt::one(), |a, d| a.lcm(&d));
    let scaled: Vec<Vec<i64>> = candidates
        .iter()
        .map(|v| {
            v.entries()
                .iter()
                .map(|x| {
                    (x * BigRational::from_integer(denom.clone()))
                        .to_integer()
                        .to_i64()
                        .expect("section coordinates fit in i64")
                })
                .collect()
        })
        .collect();
    let flags = hull_vertex_flags(&scaled)?;
    Ok(candidates.into_iter().zip(flags).filter_map(|(v, f)| f.then_some(v)).collect())
}
