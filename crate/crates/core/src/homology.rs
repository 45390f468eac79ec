//! Reduced integer homology through boundary matrices and Smith normal form.
//!
//! Two chain complexes are supported: the simplicial one of a
//! [`SimplicialComplex`], and the cellular one of a complex whose cells are
//! products of simplices (Hom-complexes and their projections with disjoint
//! parts). Both feed the same rank/torsion computation.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::linalg::SparseIntMatrix;

/// Ordered cells per dimension together with the boundary maps.
///
/// `boundaries[d]` maps `C_d → C_{d-1}` (rows indexed by `cells[d-1]`);
/// `boundaries[0]` is the `0 × f_0` zero map.
#[derive(Clone, Debug)]
pub struct ChainComplexData<C> {
    pub cells: Vec<Vec<C>>,
    pub boundaries: Vec<SparseIntMatrix>,
}

impl<C> ChainComplexData<C> {
    pub fn f_vector(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    /// Whether `∂_{d-1} ∂_d = 0` for every `d`.
    pub fn boundary_squares_to_zero(&self) -> bool {
        (2..self.boundaries.len()).all(|d| sparse_product_is_zero(&self.boundaries[d - 1], &self.boundaries[d]))
    }

    /// Reduced homology, computed from the invariant factors of each boundary
    /// map and of the augmentation `C_0 → Z`.
    pub fn reduced_homology(&self) -> HomologyReport {
        let factors: Vec<Vec<BigInt>> = self
            .boundaries
            .par_iter()
            .enumerate()
            .map(|(d, m)| {
                if d == 0 {
                    // Augmentation: rank one as soon as there is a vertex.
                    if m.cols > 0 {
                        vec![BigInt::one()]
                    } else {
                        vec![]
                    }
                } else {
                    m.invariant_factors()
                }
            })
            .collect();
        let top = self.cells.len();
        let dims = (0..top)
            .map(|d| {
                let rank_here = factors[d].len();
                let next: &[BigInt] = factors.get(d + 1).map_or(&[], Vec::as_slice);
                HomologyGroup {
                    d,
                    rank: self.cells[d].len() - rank_here - next.len(),
                    torsion: next.iter().filter(|f| !f.is_one()).cloned().collect(),
                }
            })
            .collect();
        HomologyReport { dims }
    }
}

fn sparse_product_is_zero(a: &SparseIntMatrix, b: &SparseIntMatrix) -> bool {
    let mut rows_of_a: HashMap<usize, Vec<(usize, i64)>> = HashMap::new();
    for &(i, k, v) in &a.entries {
        rows_of_a.entry(k).or_default().push((i, v));
    }
    let mut acc: HashMap<(usize, usize), i128> = HashMap::new();
    for &(k, j, w) in &b.entries {
        if let Some(col) = rows_of_a.get(&k) {
            for &(i, v) in col {
                *acc.entry((i, j)).or_default() += v as i128 * w as i128;
            }
        }
    }
    acc.values().all(|&x| x == 0)
}

/// `H̃_d ≅ Z^rank ⊕ ⊕ Z/t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub d: usize,
    pub rank: usize,
    #[serde(serialize_with = "serialize_factors")]
    pub torsion: Vec<BigInt>,
}

fn serialize_factors<S: Serializer>(xs: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        match x.to_u64() {
            Some(v) => seq.serialize_element(&v)?,
            None => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}

/// Wire format: `{"dims": [{"d": 0, "rank": 0, "torsion": []}, ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyReport {
    pub dims: Vec<HomologyGroup>,
}

impl HomologyReport {
    pub fn rank(&self, d: usize) -> usize {
        self.dims.get(d).map_or(0, |g| g.rank)
    }

    /// Ranks as a vector indexed by dimension.
    pub fn ranks(&self) -> Vec<usize> {
        self.dims.iter().map(|g| g.rank).collect()
    }

    /// `(d, rank)` for every nonzero rank.
    pub fn nonzero_ranks(&self) -> Vec<(usize, usize)> {
        self.dims.iter().filter(|g| g.rank > 0).map(|g| (g.d, g.rank)).collect()
    }

    pub fn has_torsion(&self) -> bool {
        self.dims.iter().any(|g| !g.torsion.is_empty())
    }

    /// Alternating sum of ranks; equals `χ - 1` for a nonempty complex.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .map(|g| if g.d % 2 == 0 { g.rank as i64 } else { -(g.rank as i64) })
            .sum()
    }

    pub fn is_acyclic(&self) -> bool {
        self.dims.iter().all(|g| g.rank == 0 && g.torsion.is_empty())
    }
}

/// Simplicial chain complex: faces sorted per dimension, sign `(-1)^i` for
/// dropping the `i`-th vertex of the sorted vertex list.
pub fn boundary_matrices(k: &SimplicialComplex, budget: usize) -> Result<ChainComplexData<Vec<usize>>> {
    let faces = k.faces(budget)?;
    let index: Vec<HashMap<&[usize], usize>> = faces
        .iter()
        .map(|fs| fs.iter().enumerate().map(|(i, f)| (f.as_slice(), i)).collect())
        .collect();
    let boundaries: Vec<SparseIntMatrix> = (0..faces.len())
        .into_par_iter()
        .map(|d| {
            if d == 0 {
                return SparseIntMatrix::new(0, faces[0].len());
            }
            let mut m = SparseIntMatrix::new(faces[d - 1].len(), faces[d].len());
            let mut sub = Vec::with_capacity(d);
            for (j, f) in faces[d].iter().enumerate() {
                for skip in 0..f.len() {
                    sub.clear();
                    sub.extend(f.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v));
                    let row = index[d - 1][sub.as_slice()];
                    m.push(row, j, if skip % 2 == 0 { 1 } else { -1 });
                }
            }
            m
        })
        .collect();
    Ok(ChainComplexData { cells: faces, boundaries })
}

/// Reduced integer homology of a nonempty simplicial complex.
pub fn reduced_homology(k: &SimplicialComplex, budget: usize) -> Result<HomologyReport> {
    if k.is_empty() {
        return Err(Error::EmptyComplex);
    }
    Ok(boundary_matrices(k, budget)?.reduced_homology())
}

/// A cell that is a product of simplices, one per part; all parts nonempty.
pub type ProductCell = Vec<Vec<usize>>;

fn product_dimension(c: &ProductCell) -> usize {
    c.iter().map(|p| p.len() - 1).sum()
}

/// Puts the factors of a product cell in lexicographic order and returns the
/// orientation sign: swapping factors of dimensions `a` and `b` contributes
/// `(-1)^{ab}`.
fn canonical_order(mut c: ProductCell) -> (ProductCell, i64) {
    let mut sign = 1;
    // Insertion sort, tracking each adjacent swap.
    for i in 1..c.len() {
        let mut j = i;
        while j > 0 && c[j - 1] > c[j] {
            if (c[j - 1].len() - 1) * (c[j].len() - 1) % 2 == 1 {
                sign = -sign;
            }
            c.swap(j - 1, j);
            j -= 1;
        }
    }
    (c, sign)
}

/// A polyhedral complex whose cells are products of simplices, given by its
/// maximal cells.
///
/// With `unordered` set, cells differing by a permutation of their factors
/// are identified (as happens under the projection of a Hom-complex with
/// complete source graph); orientations are then fixed by the lexicographic
/// factor order. Identification only makes sense when the parts of each
/// cell are pairwise disjoint, which is checked.
#[derive(Clone, Debug)]
pub struct ProductCellComplex {
    pub unordered: bool,
    /// All cells by dimension, sorted.
    pub cells: Vec<Vec<ProductCell>>,
}

impl ProductCellComplex {
    pub fn new(maximal: &[ProductCell], unordered: bool, budget: usize) -> Result<Self> {
        let mut by_dim: Vec<BTreeSet<ProductCell>> = Vec::new();
        let mut total = 0usize;
        let mut stack: Vec<ProductCell> = Vec::new();
        for c in maximal {
            if let Some(i) = c.iter().position(Vec::is_empty) {
                return Err(Error::EmptyPart(i));
            }
            if unordered {
                let all: Vec<usize> = c.iter().flatten().copied().collect();
                let set: BTreeSet<usize> = all.iter().copied().collect();
                if set.len() != all.len() {
                    return Err(Error::InvalidParameters(
                        "unordered product cells need pairwise disjoint parts".into(),
                    ));
                }
            }
            let mut c: ProductCell = c
                .iter()
                .map(|p| {
                    let mut p = p.clone();
                    p.sort_unstable();
                    p.dedup();
                    p
                })
                .collect();
            if unordered {
                c = canonical_order(c).0;
            }
            stack.push(c);
            while let Some(cell) = stack.pop() {
                let d = product_dimension(&cell);
                if by_dim.len() <= d {
                    by_dim.resize(d + 1, BTreeSet::new());
                }
                if by_dim[d].contains(&cell) {
                    continue;
                }
                total += 1;
                if total > budget {
                    return Err(Error::BudgetExceeded { budget });
                }
                for (face, _) in facets_of(&cell, unordered) {
                    stack.push(face);
                }
                by_dim[d].insert(cell);
            }
        }
        Ok(ProductCellComplex {
            unordered,
            cells: by_dim.into_iter().map(|s| s.into_iter().collect()).collect(),
        })
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    pub fn dimension(&self) -> Option<usize> {
        self.cells.len().checked_sub(1)
    }

    pub fn chain_complex(&self) -> ChainComplexData<ProductCell> {
        let index: Vec<HashMap<&ProductCell, usize>> = self
            .cells
            .iter()
            .map(|cs| cs.iter().enumerate().map(|(i, c)| (c, i)).collect())
            .collect();
        let boundaries = (0..self.cells.len())
            .into_par_iter()
            .map(|d| {
                if d == 0 {
                    return SparseIntMatrix::new(0, self.cells[0].len());
                }
                let mut m = SparseIntMatrix::new(self.cells[d - 1].len(), self.cells[d].len());
                for (j, c) in self.cells[d].iter().enumerate() {
                    for (face, sign) in facets_of(c, self.unordered) {
                        m.push(index[d - 1][&face], j, sign);
                    }
                }
                m
            })
            .collect();
        ChainComplexData {
            cells: self.cells.clone(),
            boundaries,
        }
    }

    pub fn reduced_homology(&self) -> Result<HomologyReport> {
        if self.cells.is_empty() {
            return Err(Error::EmptyComplex);
        }
        Ok(self.chain_complex().reduced_homology())
    }

    /// For each codimension-one cell, the number of top cells containing it.
    fn ridge_degrees(&self) -> HashMap<ProductCell, usize> {
        let mut deg: HashMap<ProductCell, usize> = HashMap::new();
        if let Some(top) = self.cells.last() {
            for c in top {
                for (face, _) in facets_of(c, self.unordered) {
                    *deg.entry(face).or_default() += 1;
                }
            }
        }
        deg
    }

    /// Whether every codimension-one cell lies in one or two top cells.
    pub fn is_pseudomanifold_with_boundary(&self) -> bool {
        let Some(top) = self.dimension() else {
            return false;
        };
        if top == 0 {
            return true;
        }
        let deg = self.ridge_degrees();
        self.cells[top - 1].iter().all(|r| matches!(deg.get(r), Some(1) | Some(2)))
    }

    /// Rank of the top homology relative to the boundary (the subcomplex
    /// generated by ridges in exactly one top cell). For a connected
    /// pseudomanifold with boundary this is 1 if orientable and 0 if not.
    pub fn relative_top_rank(&self) -> usize {
        let Some(top) = self.dimension() else {
            return 0;
        };
        if top == 0 {
            return self.cells[0].len();
        }
        let deg = self.ridge_degrees();
        let interior: Vec<&ProductCell> = self.cells[top - 1]
            .iter()
            .filter(|r| deg.get(*r).copied().unwrap_or(0) >= 2)
            .collect();
        let row_of: HashMap<&ProductCell, usize> = interior.iter().enumerate().map(|(i, r)| (*r, i)).collect();
        let mut m = SparseIntMatrix::new(interior.len(), self.cells[top].len());
        for (j, c) in self.cells[top].iter().enumerate() {
            for (face, sign) in facets_of(c, self.unordered) {
                if let Some(&i) = row_of.get(&face) {
                    m.push(i, j, sign);
                }
            }
        }
        self.cells[top].len() - m.rank()
    }
}

/// Codimension-one faces of a product cell with their incidence signs:
/// dropping the `r`-th vertex of factor `i` gets
/// `(-1)^{dim of earlier factors + r}`. Zero-dimensional factors have no
/// facets.
fn facets_of(c: &ProductCell, unordered: bool) -> Vec<(ProductCell, i64)> {
    let mut out = Vec::new();
    let mut before = 0usize;
    for (i, part) in c.iter().enumerate() {
        if part.len() >= 2 {
            for r in 0..part.len() {
                let mut face = c.clone();
                face[i].remove(r);
                let mut sign = if (before + r).is_multiple_of(2) { 1 } else { -1 };
                if unordered {
                    let (f, s) = canonical_order(face);
                    face = f;
                    sign *= s;
                }
                out.push((face, sign));
            }
        }
        before += part.len() - 1;
    }
    out
}
