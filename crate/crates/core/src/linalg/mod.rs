//! Exact integer and rational linear algebra.
//!
//! Everything here works over `BigInt`/`BigRational`; no floating point is
//! involved anywhere. Matrices in this crate are small (boundary matrices of
//! desk-scale complexes, coordinate matrices of a handful of points), so the
//! dense representation is used for the public type and a sparse one only
//! inside the Smith normal form routine.

mod circuits;
mod lp;
mod slice;
mod snf;

pub use circuits::{affine_circuits, affine_rank, hull_vertex_flags, in_convex_hull, Circuit};
pub use slice::{section_vertices, Constraint};
pub use snf::{smith_normal_form, SparseIntMatrix};

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// Dense matrix of arbitrary-precision integers, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Builds a matrix from `i64` rows. Panics on ragged input.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged matrix rows");
            entries.extend(r.iter().map(|&x| BigInt::from(x)));
        }
        IntMatrix {
            rows: rows.len(),
            cols,
            entries,
        }
    }

    /// Builds a `rows x cols` matrix with an explicit (possibly zero) column count,
    /// which `from_rows` cannot express for an empty row list.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        IntMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Matrix product; panics on incompatible shapes.
    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "incompatible shapes");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.entries[idx] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Applies the matrix to a rational column vector.
    pub fn apply(&self, v: &RationalVector) -> RationalVector {
        assert_eq!(self.cols, v.len(), "incompatible shapes");
        let out = (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v.entries())
                    .filter(|(a, _)| !a.is_zero())
                    .fold(BigRational::zero(), |acc, (a, x)| acc + BigRational::from_integer(a.clone()) * x)
            })
            .collect();
        RationalVector::new(out)
    }

    fn to_rational_rows(&self) -> Vec<Vec<BigRational>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| BigRational::from_integer(x.clone())).collect())
            .collect()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "[{}]", row.join(","))?;
        }
        write!(f, "]")
    }
}

/// Vector of rationals. `Ratio` keeps every entry in lowest terms with a
/// positive denominator, so equal vectors compare (and hash) equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalVector(Vec<BigRational>);

impl RationalVector {
    pub fn new(entries: Vec<BigRational>) -> Self {
        RationalVector(entries)
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        RationalVector(xs.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    /// `numerators / denominator`, entrywise.
    pub fn scaled(numerators: &[i64], denominator: i64) -> Self {
        let d = BigInt::from(denominator);
        RationalVector(numerators.iter().map(|&x| BigRational::new(x.into(), d.clone())).collect())
    }

    pub fn zeros(n: usize) -> Self {
        RationalVector(vec![BigRational::zero(); n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<BigRational> {
        self.0
    }

    /// Exact fraction strings, `"p/q"` or `"p"` for integers.
    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(|x| x.to_string()).collect()
    }

    /// Rescales so the first nonzero entry is 1. The zero vector is unchanged.
    pub fn normalized(&self) -> Self {
        match self.0.iter().find(|x| !x.is_zero()) {
            None => self.clone(),
            Some(lead) => {
                let lead = lead.clone();
                RationalVector(self.0.iter().map(|x| x / &lead).collect())
            }
        }
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(rows: &mut [Vec<BigRational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
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

/// Rank over the rationals.
pub fn rank(m: &IntMatrix) -> usize {
    let mut rows = m.to_rational_rows();
    rref(&mut rows, m.cols()).len()
}

/// A basis of the rational kernel `{v : M v = 0}`.
///
/// One vector per free column of the reduced row echelon form, each rescaled
/// so that its first nonzero entry is 1.
pub fn rational_kernel(m: &IntMatrix) -> Vec<RationalVector> {
    let cols = m.cols();
    let mut rows = m.to_rational_rows();
    let pivots = rref(&mut rows, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -rows[r][f].clone();
            }
            RationalVector(v).normalized()
        })
        .collect()
}

/// Determinant by fraction-free elimination (Bareiss). Square input only.
pub fn determinant(m: &IntMatrix) -> BigInt {
    assert_eq!(m.rows(), m.cols(), "determinant of a non-square matrix");
    let n = m.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}
