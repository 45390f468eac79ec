//! Minimal affine dependencies among integer points.
//!
//! Points are lifted to `(p, 1)`, so affine dependencies become linear ones
//! whose coefficients sum to zero. A depth-first search walks affinely
//! independent subsets in increasing index order while keeping an echelon
//! basis of the lifted vectors; every time a new point falls into the span,
//! its unique dependency is read off the basis. That dependency is a circuit
//! exactly when it uses every point of the subset, and each circuit `C` is
//! reported once, from the node `C \ {max C}`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A minimal affine dependency `sum_pos l_v v = sum_neg m_w w` with both
/// coefficient families positive and summing to 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Circuit {
    pub positive: Vec<usize>,
    pub negative: Vec<usize>,
    pub positive_coefficients: Vec<BigRational>,
    pub negative_coefficients: Vec<BigRational>,
}

impl Circuit {
    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.positive.iter().chain(&self.negative).copied().collect();
        s.sort_unstable();
        s
    }

    pub fn len(&self) -> usize {
        self.positive.len() + self.negative.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Swaps the two sides.
    pub fn flipped(&self) -> Circuit {
        Circuit {
            positive: self.negative.clone(),
            negative: self.positive.clone(),
            positive_coefficients: self.negative_coefficients.clone(),
            negative_coefficients: self.positive_coefficients.clone(),
        }
    }

    /// Checks the defining identities exactly against `points`.
    pub fn verify(&self, points: &[Vec<i64>]) -> bool {
        if self.positive.is_empty() || self.negative.is_empty() {
            return false;
        }
        if self.positive.iter().any(|i| self.negative.contains(i)) {
            return false;
        }
        let one = BigRational::one();
        let sum = |c: &[BigRational]| c.iter().fold(BigRational::zero(), |a, x| a + x);
        if sum(&self.positive_coefficients) != one || sum(&self.negative_coefficients) != one {
            return false;
        }
        if self
            .positive_coefficients
            .iter()
            .chain(&self.negative_coefficients)
            .any(|c| !c.is_positive())
        {
            return false;
        }
        let combo = |idx: &[usize], coeffs: &[BigRational]| -> Vec<BigRational> {
            let dim = points[idx[0]].len();
            let mut acc = vec![BigRational::zero(); dim];
            for (&i, c) in idx.iter().zip(coeffs) {
                for (a, &x) in acc.iter_mut().zip(&points[i]) {
                    *a += c * BigRational::from_integer(x.into());
                }
            }
            acc
        };
        combo(&self.positive, &self.positive_coefficients) == combo(&self.negative, &self.negative_coefficients)
    }
}

fn lift(p: &[i64]) -> Vec<BigRational> {
    p.iter()
        .map(|&x| BigRational::from_integer(BigInt::from(x)))
        .chain(std::iter::once(BigRational::one()))
        .collect()
}

fn check_dims(points: &[Vec<i64>]) -> Result<usize> {
    let dim = points.first().map_or(0, Vec::len);
    for p in points {
        if p.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: p.len(),
            });
        }
    }
    Ok(dim)
}

/// A sparse combination `sum c_i p_i` of the original points.
type Combination = Vec<(usize, BigRational)>;

/// Echelon basis of lifted points; each row remembers how it is written in
/// terms of the original points.
#[derive(Clone, Default)]
struct Basis {
    rows: Vec<(usize, Vec<BigRational>, Combination)>,
}

enum Reduced {
    Independent(usize, Vec<BigRational>, Combination),
    /// Coefficients `c` with `sum c_i lift(p_i) = 0`.
    Dependent(Combination),
}

fn axpy(comb: &mut Vec<(usize, BigRational)>, f: &BigRational, other: &[(usize, BigRational)]) {
    for (i, c) in other {
        let delta = f * c;
        match comb.iter_mut().find(|(j, _)| j == i) {
            Some(slot) => slot.1 -= delta,
            None => comb.push((*i, -delta)),
        }
    }
    comb.retain(|(_, c)| !c.is_zero());
}

impl Basis {
    fn reduce(&self, index: usize, v: Vec<BigRational>) -> Reduced {
        let mut r = v;
        let mut comb = vec![(index, BigRational::one())];
        for (pivot, row, rc) in &self.rows {
            if r[*pivot].is_zero() {
                continue;
            }
            let f = &r[*pivot] / &row[*pivot];
            for (a, b) in r.iter_mut().zip(row) {
                if !b.is_zero() {
                    *a -= &f * b;
                }
            }
            axpy(&mut comb, &f, rc);
        }
        match r.iter().position(|x| !x.is_zero()) {
            Some(p) => Reduced::Independent(p, r, comb),
            None => Reduced::Dependent(comb),
        }
    }

    fn push(&mut self, pivot: usize, row: Vec<BigRational>, comb: Vec<(usize, BigRational)>) {
        self.rows.push((pivot, row, comb));
    }
}

/// Splits a linear dependency into a normalized circuit. The side holding
/// the smallest index is made positive.
fn circuit_from_dependency(mut dep: Vec<(usize, BigRational)>) -> Circuit {
    dep.sort_by_key(|(i, _)| *i);
    if dep[0].1.is_negative() {
        for (_, c) in dep.iter_mut() {
            *c = -c.clone();
        }
    }
    let total: BigRational = dep
        .iter()
        .filter(|(_, c)| c.is_positive())
        .fold(BigRational::zero(), |a, (_, c)| a + c);
    let mut circuit = Circuit {
        positive: Vec::new(),
        negative: Vec::new(),
        positive_coefficients: Vec::new(),
        negative_coefficients: Vec::new(),
    };
    for (i, c) in dep {
        if c.is_positive() {
            circuit.positive.push(i);
            circuit.positive_coefficients.push(c / &total);
        } else {
            circuit.negative.push(i);
            circuit.negative_coefficients.push(-c / &total);
        }
    }
    circuit
}

/// All circuits with at most `max_support` points.
pub fn affine_circuits(points: &[Vec<i64>], max_support: usize) -> Result<Vec<Circuit>> {
    check_dims(points)?;
    if max_support > points.len() {
        return Err(Error::InvalidParameters(format!(
            "max_support {max_support} exceeds the {} points",
            points.len()
        )));
    }
    let lifted: Vec<Vec<BigRational>> = points.iter().map(|p| lift(p)).collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    circuit_dfs(&lifted, max_support, 0, &mut chosen, &Basis::default(), &mut out);
    out.sort_by_key(|a| a.support());
    Ok(out)
}

fn circuit_dfs(
    lifted: &[Vec<BigRational>],
    max_support: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    basis: &Basis,
    out: &mut Vec<Circuit>,
) {
    if chosen.len() + 1 > max_support {
        return;
    }
    for q in start..lifted.len() {
        match basis.reduce(q, lifted[q].clone()) {
            Reduced::Dependent(dep) => {
                if dep.len() == chosen.len() + 1 {
                    out.push(circuit_from_dependency(dep));
                }
            }
            Reduced::Independent(pivot, row, comb) => {
                let mut next = basis.clone();
                next.push(pivot, row, comb);
                chosen.push(q);
                circuit_dfs(lifted, max_support, q + 1, chosen, &next, out);
                chosen.pop();
            }
        }
    }
}

/// Dimension of the affine hull plus one (the rank of the lifted points);
/// 0 for an empty list.
pub fn affine_rank(points: &[Vec<i64>]) -> Result<usize> {
    check_dims(points)?;
    let mut basis = Basis::default();
    for (i, p) in points.iter().enumerate() {
        if let Reduced::Independent(pivot, row, comb) = basis.reduce(i, lift(p)) {
            basis.push(pivot, row, comb);
        }
    }
    Ok(basis.rows.len())
}

/// Whether `p` lies in the convex hull of `points`, decided exactly: a
/// non-negative combination of the lifted points hitting the lifted `p`.
pub fn in_convex_hull(p: &[i64], points: &[Vec<i64>]) -> Result<bool> {
    check_dims(points)?;
    if let Some(q) = points.first() {
        if q.len() != p.len() {
            return Err(Error::DimensionMismatch {
                expected: q.len(),
                found: p.len(),
            });
        }
    }
    if points.iter().any(|q| q.as_slice() == p) {
        return Ok(true);
    }
    let lifted: Vec<Vec<BigRational>> = points.iter().map(|q| lift(q)).collect();
    let target = lift(p);
    Ok(super::lp::nonnegative_solution_exists(&lifted, &target))
}

/// Flags which of the given distinct points are vertices of their convex hull.
///
/// A point that uniquely maximises some integer functional is a vertex; a
/// handful of fixed functionals settle most points, and only the rest go
/// through the exact membership test.
pub fn hull_vertex_flags(points: &[Vec<i64>]) -> Result<Vec<bool>> {
    check_dims(points)?;
    let certified = certified_vertices(points);
    (0..points.len())
        .map(|i| {
            if certified[i] {
                return Ok(true);
            }
            let others: Vec<Vec<i64>> = points
                .iter()
                .enumerate()
                .filter(|&(j, q)| j != i && q != &points[i])
                .map(|(_, q)| q.clone())
                .collect();
            in_convex_hull(&points[i], &others).map(|inside| !inside)
        })
        .collect()
}

fn certified_vertices(points: &[Vec<i64>]) -> Vec<bool> {
    use rand::{Rng, SeedableRng};
    let mut out = vec![false; points.len()];
    let Some(dim) = points.first().map(Vec::len) else { return out };
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..4 * dim + 8 {
        let dir: Vec<i64> = (0..dim).map(|_| rng.gen_range(-1000..=1000)).collect();
        let values: Vec<i128> = points
            .iter()
            .map(|p| p.iter().zip(&dir).map(|(&a, &b)| i128::from(a) * i128::from(b)).sum())
            .collect();
        let best = *values.iter().max().expect("non-empty");
        let mut winners = values.iter().enumerate().filter(|(_, &v)| v == best);
        if let (Some((i, _)), None) = (winners.next(), winners.next()) {
            out[i] = true;
        }
    }
    out
}
