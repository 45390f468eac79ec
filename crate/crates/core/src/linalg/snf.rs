//! Smith normal form by sparse integer elimination.
//!
//! Pivots are chosen by minimal absolute value; a pivot that fails to divide
//! an entry in its row or column is replaced by the (strictly smaller)
//! remainder, so the loop terminates. The elimination runs on checked `i64`
//! first and restarts on `BigInt` if any intermediate value overflows.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::IntMatrix;

/// Sparse integer matrix given by its nonzero entries.
#[derive(Clone, Debug, Default)]
pub struct SparseIntMatrix {
    pub rows: usize,
    pub cols: usize,
    /// `(row, col, value)`; duplicates are summed.
    pub entries: Vec<(usize, usize, i64)>,
}

impl SparseIntMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseIntMatrix {
            rows,
            cols,
            entries: Vec::new(),
        }
    }

    pub fn push(&mut self, row: usize, col: usize, value: i64) {
        debug_assert!(row < self.rows && col < self.cols);
        self.entries.push((row, col, value));
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, self.cols);
        for &(i, j, v) in &self.entries {
            let cur = m.get(i, j) + BigInt::from(v);
            m.set(i, j, cur);
        }
        m
    }

    /// Invariant factors (nonzero, ascending in the divisibility order).
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let small: Option<Vec<BigInt>> = Elimination::<i64>::from_sparse(self)
            .and_then(|e| e.run())
            .map(|fs| fs.into_iter().map(BigInt::from).collect());
        let diag = match small {
            Some(d) => d,
            None => Elimination::<BigInt>::from_sparse(self)
                .and_then(|e| e.run())
                .expect("BigInt elimination cannot overflow"),
        };
        divisibility_chain(diag)
    }

    /// Rank over the rationals (number of invariant factors).
    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Invariant factors `d1 | d2 | ...` of `m`; zero factors are omitted, so the
/// length equals the rank.
pub fn smith_normal_form(m: &IntMatrix) -> Vec<BigInt> {
    let mut sparse = SparseIntMatrix::new(m.rows(), m.cols());
    let mut big = Vec::new();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let v = m.get(i, j);
            if v.is_zero() {
                continue;
            }
            match v.to_i64() {
                Some(x) => sparse.push(i, j, x),
                None => big.push((i, j, v.clone())),
            }
        }
    }
    if big.is_empty() {
        return sparse.invariant_factors();
    }
    let mut e = Elimination::<BigInt>::empty(m.rows(), m.cols());
    for &(i, j, v) in &sparse.entries {
        e.insert(i, j, BigInt::from(v));
    }
    for (i, j, v) in big {
        e.insert(i, j, v);
    }
    divisibility_chain(e.run().expect("BigInt elimination cannot overflow"))
}

/// Turns a list of nonzero diagonal entries into the divisibility chain with
/// the same product structure, via repeated (gcd, lcm) replacement.
fn divisibility_chain(diag: Vec<BigInt>) -> Vec<BigInt> {
    let (units, mut rest): (Vec<BigInt>, Vec<BigInt>) = diag.into_iter().map(|d| d.abs()).partition(|d| d.is_one());
    rest.sort();
    for i in 0..rest.len() {
        for j in i + 1..rest.len() {
            if (&rest[j] % &rest[i]).is_zero() {
                continue;
            }
            let g = rest[i].gcd(&rest[j]);
            let l = rest[i].lcm(&rest[j]);
            rest[i] = g;
            rest[j] = l;
        }
    }
    let mut out: Vec<BigInt> = Vec::with_capacity(units.len() + rest.len());
    out.extend(units);
    out.extend(rest);
    // gcd steps can create new units; keep the list sorted by divisibility.
    out.sort();
    out
}

trait Scalar: Clone + Debug + PartialEq {
    fn nil() -> Self;
    fn is_nil(&self) -> bool;
    fn abs_key(&self) -> BigInt;
    /// Truncated quotient.
    fn quot(&self, by: &Self) -> Self;
    /// `self - q * x`, or `None` on overflow.
    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self>;
    fn from_big(x: BigInt) -> Option<Self>;
}

impl Scalar for i64 {
    fn nil() -> Self {
        0
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn abs_key(&self) -> BigInt {
        BigInt::from(*self).abs()
    }
    fn quot(&self, by: &Self) -> Self {
        // i64::MIN / -1 would overflow; callers never divide by -1 with
        // MIN in range because pivots are the minimal absolute values.
        self.wrapping_div(*by)
    }
    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self> {
        q.checked_mul(*x).and_then(|p| self.checked_sub(p))
    }
    fn from_big(x: BigInt) -> Option<Self> {
        x.to_i64()
    }
}

impl Scalar for BigInt {
    fn nil() -> Self {
        Zero::zero()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs_key(&self) -> BigInt {
        self.abs()
    }
    fn quot(&self, by: &Self) -> Self {
        self / by
    }
    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self> {
        Some(self - q * x)
    }
    fn from_big(x: BigInt) -> Option<Self> {
        Some(x)
    }
}

struct Elimination<T> {
    rows: Vec<BTreeMap<usize, T>>,
    col_rows: Vec<BTreeSet<usize>>,
}

impl<T: Scalar> Elimination<T> {
    fn empty(rows: usize, cols: usize) -> Self {
        Elimination {
            rows: vec![BTreeMap::new(); rows],
            col_rows: vec![BTreeSet::new(); cols],
        }
    }

    fn from_sparse(m: &SparseIntMatrix) -> Option<Self> {
        let mut acc: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
        for &(i, j, v) in &m.entries {
            *acc.entry((i, j)).or_insert_with(<BigInt as Zero>::zero) += v;
        }
        let mut e = Self::empty(m.rows, m.cols);
        for ((i, j), v) in acc {
            if !Zero::is_zero(&v) {
                e.insert(i, j, T::from_big(v)?);
            }
        }
        Some(e)
    }

    fn insert(&mut self, i: usize, j: usize, v: T) {
        if v.is_nil() {
            if self.rows[i].remove(&j).is_some() {
                self.col_rows[j].remove(&i);
            }
        } else {
            self.rows[i].insert(j, v);
            self.col_rows[j].insert(i);
        }
    }

    /// `row[target] -= q * row[source]`.
    fn row_op(&mut self, target: usize, source: usize, q: &T) -> Option<()> {
        let src: Vec<(usize, T)> = self.rows[source].iter().map(|(&c, v)| (c, v.clone())).collect();
        for (c, v) in src {
            let cur = self.rows[target].get(&c).cloned().unwrap_or_else(T::nil);
            let next = cur.sub_mul(q, &v)?;
            self.insert(target, c, next);
        }
        Some(())
    }

    fn pick_pivot_row(&self, col: usize) -> usize {
        *self.col_rows[col]
            .iter()
            .min_by_key(|&&r| (self.rows[r][&col].abs_key(), self.rows[r].len(), r))
            .expect("nonempty column")
    }

    fn run(mut self) -> Option<Vec<T>> {
        let mut diag = Vec::new();
        for c in 0..self.col_rows.len() {
            while !self.col_rows[c].is_empty() {
                let mut pr = self.pick_pivot_row(c);
                let mut pc = c;
                'settle: loop {
                    // Clear the pivot column with row operations.
                    let others: Vec<usize> = self.col_rows[pc].iter().copied().filter(|&r| r != pr).collect();
                    for r in others {
                        let p = self.rows[pr][&pc].clone();
                        let q = self.rows[r][&pc].quot(&p);
                        if !q.is_nil() {
                            self.row_op(r, pr, &q)?;
                        }
                        if self.rows[r].contains_key(&pc) {
                            pr = r;
                            continue 'settle;
                        }
                    }
                    // The pivot column is now a unit vector, so column
                    // operations against it only touch the pivot row.
                    let others: Vec<usize> = self.rows[pr].keys().copied().filter(|&k| k != pc).collect();
                    for k in others {
                        let p = self.rows[pr][&pc].clone();
                        let a = self.rows[pr][&k].clone();
                        let q = a.quot(&p);
                        let rem = a.sub_mul(&q, &p)?;
                        let moved = !rem.is_nil();
                        self.insert(pr, k, rem);
                        if moved {
                            pc = k;
                            continue 'settle;
                        }
                    }
                    break;
                }
                let pivot = self.rows[pr].remove(&pc).expect("pivot present");
                self.col_rows[pc].remove(&pr);
                debug_assert!(self.rows[pr].is_empty() && self.col_rows[pc].is_empty());
                diag.push(pivot);
            }
        }
        Some(diag)
    }
}
