//! Abstract simplicial complexes, cells that are products of simplices, and
//! projected cells living in `Z^h` together with the common-face test.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{affine_circuits, affine_rank, hull_vertex_flags, Circuit};

/// Default cap on the number of faces any single construction may produce.
pub const DEFAULT_FACE_BUDGET: usize = 5_000_000;

/// Finite abstract simplicial complex given by its facets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    /// Builds the complex generated by `generators` on vertices `0..n`.
    /// Non-maximal generators are dropped; facets end up sorted.
    pub fn from_generators<I>(n: usize, generators: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<usize>>,
    {
        let mut gens: Vec<Vec<usize>> = generators
            .into_iter()
            .map(|mut f| {
                f.sort_unstable();
                f.dedup();
                f
            })
            .filter(|f| !f.is_empty())
            .collect();
        if let Some(&v) = gens.iter().flatten().find(|&&v| v >= n) {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        gens.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        gens.dedup();
        let mut facets: Vec<Vec<usize>> = Vec::new();
        for f in gens {
            if !facets.iter().any(|big| is_subset(&f, big)) {
                facets.push(f);
            }
        }
        facets.sort();
        Ok(SimplicialComplex { n, facets })
    }

    /// The full simplex on `0..n`.
    pub fn simplex(n: usize) -> Self {
        SimplicialComplex {
            n,
            facets: if n == 0 { vec![] } else { vec![(0..n).collect()] },
        }
    }

    /// Boundary of the simplex on `0..n` (all facets of size `n - 1`).
    pub fn simplex_boundary(n: usize) -> Self {
        let facets = (0..n).rev().map(|skip| (0..n).filter(|&v| v != skip).collect::<Vec<usize>>());
        Self::from_generators(n, facets).expect("in range")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    /// Dimension of the largest facet, or `None` for the void complex.
    pub fn dimension(&self) -> Option<usize> {
        self.facets.iter().map(|f| f.len() - 1).max()
    }

    pub fn contains_face(&self, face: &[usize]) -> bool {
        let mut f = face.to_vec();
        f.sort_unstable();
        self.facets.iter().any(|big| is_subset(&f, big))
    }

    /// All nonempty faces grouped by dimension, each group sorted
    /// lexicographically. Fails once more than `budget` faces are produced.
    pub fn faces(&self, budget: usize) -> Result<Vec<Vec<Vec<usize>>>> {
        let top = match self.dimension() {
            Some(d) => d,
            None => return Ok(Vec::new()),
        };
        let mut by_dim: Vec<HashSet<Vec<usize>>> = vec![HashSet::new(); top + 1];
        let mut total = 0usize;
        for f in &self.facets {
            // Walk the subsets of f top-down; a face already recorded has had
            // its own subfaces recorded too.
            let mut stack = vec![f.clone()];
            while let Some(face) = stack.pop() {
                if !by_dim[face.len() - 1].insert(face.clone()) {
                    continue;
                }
                total += 1;
                if total > budget {
                    return Err(Error::BudgetExceeded { budget });
                }
                if face.len() > 1 {
                    for skip in 0..face.len() {
                        let mut sub = face.clone();
                        sub.remove(skip);
                        if !by_dim[sub.len() - 1].contains(&sub) {
                            stack.push(sub);
                        }
                    }
                }
            }
        }
        Ok(by_dim
            .into_iter()
            .map(|s| {
                let mut v: Vec<Vec<usize>> = s.into_iter().collect();
                v.sort();
                v
            })
            .collect())
    }

    /// Face counts `f_0, f_1, ...`.
    pub fn f_vector(&self, budget: usize) -> Result<Vec<usize>> {
        Ok(self.faces(budget)?.iter().map(Vec::len).collect())
    }

    pub fn euler_characteristic(&self, budget: usize) -> Result<i64> {
        Ok(self
            .f_vector(budget)?
            .iter()
            .enumerate()
            .map(|(d, &f)| if d % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum())
    }

    /// Faces of dimension at most `d`.
    pub fn skeleton(&self, d: usize) -> Self {
        let gens = self.facets.iter().flat_map(|f| {
            if f.len() <= d + 1 {
                vec![f.clone()]
            } else {
                f.iter().copied().combinations(d + 1).collect()
            }
        });
        Self::from_generators(self.n, gens.collect::<Vec<_>>()).expect("same vertex range")
    }

    /// Subcomplex of faces all of whose vertices lie in `keep`.
    pub fn induced(&self, keep: &BTreeSet<usize>) -> Self {
        let gens: Vec<Vec<usize>> = self
            .facets
            .iter()
            .map(|f| f.iter().copied().filter(|v| keep.contains(v)).collect())
            .collect();
        Self::from_generators(self.n, gens).expect("same vertex range")
    }

    /// Whether every face of `self` is a face of `other`.
    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.facets.iter().all(|f| other.contains_face(f))
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson {
            n: self.n,
            facets: self.facets.clone(),
        }
    }

    pub fn from_json(j: &ComplexJson) -> Result<Self> {
        Self::from_generators(j.n, j.facets.clone())
    }
}

/// Wire format: `{"n": 5, "facets": [[0, 1], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub n: usize,
    pub facets: Vec<Vec<usize>>,
}

/// Both inputs sorted.
pub(crate) fn is_subset(small: &[usize], big: &[usize]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.any(|y| y == x))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TupleMode {
    /// Every part nonempty: a product of simplices.
    Hom,
    /// Parts may be empty (not all at once): a join of simplices.
    HomPlus,
}

/// Ordered tuple of vertex sets of `H`, one per vertex of `G`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LabelTuple {
    pub parts: Vec<Vec<usize>>,
    pub mode: TupleMode,
}

impl LabelTuple {
    pub fn new(parts: Vec<Vec<usize>>, mode: TupleMode) -> Result<Self> {
        let parts: Vec<Vec<usize>> = parts
            .into_iter()
            .map(|mut p| {
                p.sort_unstable();
                p.dedup();
                p
            })
            .collect();
        match mode {
            TupleMode::Hom => {
                if let Some(i) = parts.iter().position(Vec::is_empty) {
                    return Err(Error::EmptyPart(i));
                }
            }
            TupleMode::HomPlus => {
                if parts.iter().all(Vec::is_empty) {
                    return Err(Error::EmptyComplex);
                }
            }
        }
        Ok(LabelTuple { parts, mode })
    }

    pub fn hom(parts: Vec<Vec<usize>>) -> Result<Self> {
        Self::new(parts, TupleMode::Hom)
    }

    pub fn is_transversal(&self) -> bool {
        self.parts.iter().all(|p| !p.is_empty())
    }

    /// Dimension as a product (`sum |s_i| - g`) or as a join (`sum |s_i| - 1`).
    pub fn dimension(&self) -> usize {
        let total: usize = self.parts.iter().map(Vec::len).sum();
        match self.mode {
            TupleMode::Hom => total - self.parts.len(),
            TupleMode::HomPlus => total - 1,
        }
    }

    /// All faces, the tuple itself included, in lexicographic order.
    pub fn faces(&self) -> Vec<LabelTuple> {
        let choices: Vec<Vec<Vec<usize>>> = self
            .parts
            .iter()
            .map(|p| {
                let lo = match self.mode {
                    TupleMode::Hom => 1,
                    TupleMode::HomPlus => 0,
                };
                (lo..=p.len()).flat_map(|k| p.iter().copied().combinations(k)).collect()
            })
            .collect();
        let mut out: Vec<LabelTuple> = choices
            .into_iter()
            .multi_cartesian_product()
            .filter(|parts| parts.iter().any(|p| !p.is_empty()))
            .map(|parts| LabelTuple { parts, mode: self.mode })
            .collect();
        if self.parts.is_empty() {
            out.clear();
        }
        out.sort();
        out
    }
}

/// Faces of a cell; see [`LabelTuple::faces`].
pub fn faces_of_cell(t: &LabelTuple) -> Vec<LabelTuple> {
    t.faces()
}

/// The image of a product cell under the projection to `Z^h`, stored
/// `g` times inflated so coordinates stay integral.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ProjectedCell {
    /// Parts in canonical order (lexicographic on sorted parts).
    pub parts: Vec<Vec<usize>>,
    /// Every image point `sum_i e_{v_i}`, `v_i` in part `i`, with
    /// multiplicity, sorted.
    pub points: Vec<Vec<i64>>,
    /// The distinct points that are vertices of the convex hull, sorted.
    pub vertices: Vec<Vec<i64>>,
}

impl ProjectedCell {
    /// Projects the product of the simplices on `parts` into `Z^h`.
    pub fn from_parts(parts: &[Vec<usize>], h: usize) -> Result<Self> {
        if let Some(i) = parts.iter().position(Vec::is_empty) {
            return Err(Error::EmptyPart(i));
        }
        if let Some(&v) = parts.iter().flatten().find(|&&v| v >= h) {
            return Err(Error::VertexOutOfRange { vertex: v, n: h });
        }
        let mut canon: Vec<Vec<usize>> = parts
            .iter()
            .map(|p| {
                let mut p = p.clone();
                p.sort_unstable();
                p.dedup();
                p
            })
            .collect();
        canon.sort();
        let mut points: Vec<Vec<i64>> = canon
            .iter()
            .map(|p| p.iter().copied())
            .multi_cartesian_product()
            .map(|choice| {
                let mut x = vec![0i64; h];
                for v in choice {
                    x[v] += 1;
                }
                x
            })
            .collect();
        points.sort();
        let distinct: Vec<Vec<i64>> = points.iter().cloned().dedup().collect();
        // Distinct 0/1 points are cube vertices, hence in convex position.
        let vertices = if distinct.iter().flatten().all(|&c| c <= 1) {
            distinct
        } else {
            let flags = hull_vertex_flags(&distinct)?;
            distinct.into_iter().zip(flags).filter_map(|(p, f)| f.then_some(p)).collect()
        };
        Ok(ProjectedCell {
            parts: canon,
            points,
            vertices,
        })
    }

    pub fn ambient_dimension(&self) -> usize {
        self.points.first().map_or(0, Vec::len)
    }

    pub fn parts_disjoint(&self) -> bool {
        let all: Vec<usize> = self.parts.iter().flatten().copied().collect();
        let set: BTreeSet<usize> = all.iter().copied().collect();
        set.len() == all.len()
    }

    /// Union of the parts: the projected simplex spanned by the cell.
    pub fn support(&self) -> Vec<usize> {
        self.parts.iter().flatten().copied().sorted().dedup().collect()
    }

    /// Geometric dimension of the convex hull.
    pub fn dimension(&self) -> usize {
        affine_rank(&self.vertices).expect("uniform dimension").saturating_sub(1)
    }

    pub fn to_json(&self) -> ProjectedCellJson {
        ProjectedCellJson {
            parts: self.parts.clone(),
            points: self.points.clone(),
        }
    }
}

/// Wire format: `{"parts": [[v, ...], ...], "points": [[x, ...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectedCellJson {
    pub parts: Vec<Vec<usize>>,
    pub points: Vec<Vec<i64>>,
}

/// Outcome of [`common_face_test`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CommonFaceVerdict {
    Complex,
    BadPair {
        first: usize,
        second: usize,
        /// Points the circuit indexes into: vertices of `first`, then the
        /// vertices of `second` not already listed.
        points: Vec<Vec<i64>>,
        /// Positive side among `first`'s vertices, negative among `second`'s.
        circuit: Circuit,
    },
}

impl CommonFaceVerdict {
    pub fn is_complex(&self) -> bool {
        matches!(self, CommonFaceVerdict::Complex)
    }
}

/// Decides whether every two cells meet in a common face.
///
/// Two cells `P`, `Q` meet badly exactly when some circuit among their
/// vertices has its positive side in `P`, its negative side in `Q`, and the
/// smallest face of `P` carrying the positive side differs from the smallest
/// face of `Q` carrying the negative side. For cells with pairwise-disjoint
/// parts (products of simplices) the carrier of a vertex set is read off the
/// part structure; otherwise the circuit must lie inside `vert P ∩ vert Q`.
pub fn common_face_test(cells: &[ProjectedCell]) -> Result<CommonFaceVerdict> {
    let dim = cells.first().map_or(0, ProjectedCell::ambient_dimension);
    if let Some(c) = cells.iter().find(|c| c.ambient_dimension() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: c.ambient_dimension(),
        });
    }
    let pairs: Vec<(usize, usize)> = (0..cells.len()).tuple_combinations().collect();
    let bad = pairs
        .par_iter()
        .find_map_first(|&(i, j)| pair_witness(&cells[i], &cells[j]).map(|w| (i, j, w)));
    Ok(match bad {
        Some((first, second, (points, circuit))) => CommonFaceVerdict::BadPair {
            first,
            second,
            points,
            circuit,
        },
        None => CommonFaceVerdict::Complex,
    })
}

/// A circuit showing that `p` and `q` intersect badly, if there is one.
pub fn pair_witness(p: &ProjectedCell, q: &ProjectedCell) -> Option<(Vec<Vec<i64>>, Circuit)> {
    if p.vertices == q.vertices {
        return None;
    }
    let in_p: BTreeSet<&Vec<i64>> = p.vertices.iter().collect();
    let in_q: BTreeSet<&Vec<i64>> = q.vertices.iter().collect();
    let mut points: Vec<Vec<i64>> = p.vertices.clone();
    points.extend(q.vertices.iter().filter(|v| !in_p.contains(v)).cloned());
    let circuits = affine_circuits(&points, points.len()).expect("uniform dimension");
    let structured = p.parts_disjoint() && q.parts_disjoint();
    for c in circuits {
        for oriented in [c.clone(), c.flipped()] {
            let pos_in_p = oriented.positive.iter().all(|&i| in_p.contains(&points[i]));
            let neg_in_q = oriented.negative.iter().all(|&i| in_q.contains(&points[i]));
            if !(pos_in_p && neg_in_q) {
                continue;
            }
            let bad = if structured {
                let side = |idx: &[usize], parts: &[Vec<usize>]| carrier(idx.iter().map(|&i| points[i].as_slice()), parts);
                side(&oriented.positive, &p.parts) != side(&oriented.negative, &q.parts)
            } else {
                oriented
                    .support()
                    .iter()
                    .any(|&i| !(in_p.contains(&points[i]) && in_q.contains(&points[i])))
            };
            if bad {
                return Some((points, oriented));
            }
        }
    }
    None
}

/// Smallest face of a product of simplices containing the given vertices:
/// per part, the part's elements used by some vertex. Returned as an
/// unordered system so faces of different cells compare directly.
fn carrier<'a>(vertices: impl Iterator<Item = &'a [i64]>, parts: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut used: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for x in vertices {
        for (k, part) in parts.iter().enumerate() {
            for &v in part {
                if x[v] != 0 {
                    used.entry(k).or_default().insert(v);
                }
            }
        }
    }
    let mut sys: Vec<Vec<usize>> = used.into_values().map(|s| s.into_iter().collect()).collect();
    sys.sort();
    sys
}

#[cfg(test)]
mod tests {
    use super::*;

    const BIG: usize = DEFAULT_FACE_BUDGET;

    #[test]
    fn simplex_f_vectors() {
        assert_eq!(SimplicialComplex::simplex(3).f_vector(BIG).unwrap(), vec![3, 3, 1]);
        assert_eq!(SimplicialComplex::simplex_boundary(3).f_vector(BIG).unwrap(), vec![3, 3]);
    }

    #[test]
    fn euler_characteristic_of_sphere_boundaries() {
        for n in 2..=7 {
            let chi = SimplicialComplex::simplex_boundary(n).euler_characteristic(BIG).unwrap();
            let expected = 1 + if n % 2 == 0 { 1 } else { -1 };
            // boundary of the (n-1)-simplex is a sphere of dimension n-2
            assert_eq!(chi, expected, "n = {n}");
        }
    }

    #[test]
    fn generators_are_reduced_to_facets() {
        let k = SimplicialComplex::from_generators(4, vec![vec![0, 1], vec![1, 0, 2], vec![3]]).unwrap();
        assert_eq!(k.facets(), &[vec![0, 1, 2], vec![3]]);
        assert!(SimplicialComplex::from_generators(2, vec![vec![2]]).is_err());
    }

    #[test]
    fn skeleta() {
        let k = SimplicialComplex::simplex(4).skeleton(1);
        assert_eq!(k.facets().len(), 6);
        assert_eq!(k.skeleton(0).facets().len(), 4);
    }

    #[test]
    fn budget_is_enforced() {
        let k = SimplicialComplex::simplex(10);
        assert_eq!(k.f_vector(100), Err(Error::BudgetExceeded { budget: 100 }));
    }

    #[test]
    fn cell_face_counts() {
        let t = LabelTuple::hom(vec![vec![3, 4], vec![4, 5]]).unwrap();
        assert_eq!(t.faces().len(), 9);
        assert_eq!(LabelTuple::hom(vec![vec![0], vec![1]]).unwrap().faces().len(), 1);
        let plus = LabelTuple::new(vec![vec![3, 4], vec![5]], TupleMode::HomPlus).unwrap();
        assert_eq!(plus.faces().len(), 7);
        assert_eq!(LabelTuple::hom(vec![vec![], vec![1]]), Err(Error::EmptyPart(0)));
    }

    #[test]
    fn hexagon_cell() {
        let c = ProjectedCell::from_parts(&[vec![0, 1], vec![0, 2], vec![1, 2]], 3).unwrap();
        assert_eq!(c.points.len(), 8);
        assert_eq!(c.vertices.len(), 6);
        assert!(!c.vertices.contains(&vec![1, 1, 1]));
        assert_eq!(c.dimension(), 2);
    }

    #[test]
    fn single_cell_is_a_complex() {
        let c = ProjectedCell::from_parts(&[vec![0, 1], vec![2]], 4).unwrap();
        assert!(common_face_test(&[c]).unwrap().is_complex());
    }

    #[test]
    fn crossing_squares_intersect_badly() {
        let a = ProjectedCell::from_parts(&[vec![0, 1], vec![2, 3]], 4).unwrap();
        let b = ProjectedCell::from_parts(&[vec![0, 2], vec![1, 3]], 4).unwrap();
        match common_face_test(&[a, b]).unwrap() {
            CommonFaceVerdict::BadPair { points, circuit, .. } => {
                assert!(circuit.verify(&points));
            }
            CommonFaceVerdict::Complex => panic!("internal squares must meet badly"),
        }
    }
}
