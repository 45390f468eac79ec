//! Hom-complexes, their Cayley-trick slices and projections.
//!
//! Coordinates follow one fixed layout throughout: `R^{gh} × R^g`, block `i`
//! of the first factor holding the copy `μ_i(R^h)` (position `i*h + v`), then
//! the `g` tail coordinates. Slices and projections are stored `g` times
//! inflated so everything stays integral; the exact rational form is one
//! division away.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{common_face_test, CommonFaceVerdict, LabelTuple, ProjectedCell, SimplicialComplex, TupleMode};
use crate::error::{Error, Result};
use crate::graph::{enumerate_multipartite_cells, CellFilter, Graph};
use crate::linalg::{hull_vertex_flags, section_vertices, IntMatrix, RationalVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HomMode {
    Hom,
    HomPlus,
    HomPlusTransversal,
    Ihom,
    IhomPlus,
}

impl HomMode {
    pub fn is_plus(self) -> bool {
        matches!(self, HomMode::HomPlus | HomMode::HomPlusTransversal | HomMode::IhomPlus)
    }

    pub fn is_induced(self) -> bool {
        matches!(self, HomMode::Ihom | HomMode::IhomPlus)
    }

    fn tuple_mode(self) -> TupleMode {
        if self.is_plus() {
            TupleMode::HomPlus
        } else {
            TupleMode::Hom
        }
    }
}

impl std::str::FromStr for HomMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hom" => Ok(HomMode::Hom),
            "hom_plus" => Ok(HomMode::HomPlus),
            "hom_plus_t" | "hom_plus_transversal" => Ok(HomMode::HomPlusTransversal),
            "ihom" => Ok(HomMode::Ihom),
            "ihom_plus" => Ok(HomMode::IhomPlus),
            other => Err(Error::Parse(format!("unknown mode {other:?}"))),
        }
    }
}

/// A Hom-complex given by its maximal cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomComplex {
    pub g: Graph,
    pub h: Graph,
    pub mode: HomMode,
    /// Maximal cells, sorted.
    pub cells: Vec<LabelTuple>,
}

/// Conflict graph on `V(G) × V(H)` (vertex `x*h + v`): the faces of
/// `Hom₊(G, H)` are exactly its independent sets. `(x,v)` and `(y,w)`
/// conflict when `xy ∈ E(G)` and `vw ∉ E(H)`; in induced mode also when
/// `x = y` and `vw ∈ E(H)`.
pub fn conflict_graph(g: &Graph, h: &Graph, induced: bool) -> Graph {
    let hn = h.n();
    Graph::from_fn(g.n() * hn, |a, b| {
        let (x, v) = (a / hn, a % hn);
        let (y, w) = (b / hn, b % hn);
        if x == y {
            induced && h.has_edge(v, w)
        } else {
            g.has_edge(x, y) && (v == w || !h.has_edge(v, w))
        }
    })
}

fn set_to_parts(set: &[usize], g: usize, hn: usize) -> Vec<Vec<usize>> {
    let mut parts = vec![Vec::new(); g];
    for &a in set {
        parts[a / hn].push(a % hn);
    }
    for p in parts.iter_mut() {
        p.sort_unstable();
    }
    parts
}

/// Maximal faces of `Hom₊(G, H)` (or `IHom₊`) as part tuples, sorted.
pub fn hom_plus_facets(g: &Graph, h: &Graph, induced: bool) -> Vec<Vec<Vec<usize>>> {
    if g.n() == 0 || h.n() == 0 {
        return Vec::new();
    }
    let compatible = conflict_graph(g, h, induced).complement();
    let mut out: Vec<Vec<Vec<usize>>> = compatible
        .maximal_cliques()
        .into_iter()
        .map(|c| set_to_parts(&c, g.n(), h.n()))
        .collect();
    out.sort();
    out
}

/// All faces of `Hom₊(G, H)`, capped at `budget`.
pub fn hom_plus_faces(g: &Graph, h: &Graph, induced: bool, budget: usize) -> Result<Vec<Vec<Vec<usize>>>> {
    let facets: Vec<Vec<usize>> = hom_plus_facets(g, h, induced)
        .into_iter()
        .map(|parts| {
            parts
                .iter()
                .enumerate()
                .flat_map(|(x, p)| p.iter().map(move |&v| x * h.n() + v))
                .collect()
        })
        .collect();
    let k = SimplicialComplex::from_generators(g.n() * h.n(), facets)?;
    Ok(k.faces(budget)?
        .into_iter()
        .flatten()
        .map(|f| set_to_parts(&f, g.n(), h.n()))
        .collect())
}

fn is_complete_graph(g: &Graph) -> bool {
    g.edge_count() == g.n() * g.n().saturating_sub(1) / 2
}

/// Builds the complex of the given mode by its maximal cells.
///
/// For `G = K_g` the product-type modes go through the multipartite
/// enumerator; everything else reads maximal faces off the conflict graph.
/// Transversal mode keeps the maximal transversal faces, which are the
/// maximal Hom cells viewed as simplices.
pub fn build_hom(g: &Graph, h: &Graph, mode: HomMode) -> Result<HomComplex> {
    let induced = mode.is_induced();
    let tuples: Vec<Vec<Vec<usize>>> = match mode {
        HomMode::Hom | HomMode::Ihom if is_complete_graph(g) && g.n() > 0 => enumerate_multipartite_cells(
            h,
            g.n(),
            CellFilter {
                induced,
                maximal_only: true,
                unordered: false,
            },
        ),
        HomMode::Hom | HomMode::Ihom | HomMode::HomPlusTransversal => hom_plus_facets(g, h, induced)
            .into_iter()
            .filter(|t| t.iter().all(|p| !p.is_empty()))
            .collect(),
        HomMode::HomPlus | HomMode::IhomPlus => hom_plus_facets(g, h, induced),
    };
    let mut cells = tuples
        .into_iter()
        .map(|parts| LabelTuple::new(parts, mode.tuple_mode()))
        .collect::<Result<Vec<_>>>()?;
    cells.sort();
    Ok(HomComplex {
        g: g.clone(),
        h: h.clone(),
        mode,
        cells,
    })
}

impl HomComplex {
    /// Every face of every maximal cell, deduplicated and sorted.
    pub fn all_faces(&self, budget: usize) -> Result<Vec<LabelTuple>> {
        let mut seen: BTreeSet<LabelTuple> = BTreeSet::new();
        for c in &self.cells {
            for f in c.faces() {
                seen.insert(f);
                if seen.len() > budget {
                    return Err(Error::BudgetExceeded { budget });
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    /// Face counts by dimension (cells as products, or simplices in the
    /// join modes).
    pub fn f_vector(&self, budget: usize) -> Result<Vec<usize>> {
        let mut counts: Vec<usize> = Vec::new();
        for f in self.all_faces(budget)? {
            let d = f.dimension();
            if counts.len() <= d {
                counts.resize(d + 1, 0);
            }
            counts[d] += 1;
        }
        Ok(counts)
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

/// Vertices of the simplex `⋆ μ_i(σ_i) × e_i` in `R^{gh} × R^g`, in part
/// order then vertex order.
pub fn join_simplex_vertices(t: &LabelTuple, h: usize) -> Vec<Vec<i64>> {
    let g = t.parts.len();
    let mut out = Vec::new();
    for (i, part) in t.parts.iter().enumerate() {
        for &v in part {
            let mut x = vec![0i64; g * h + g];
            x[i * h + v] = 1;
            x[g * h + i] = 1;
            out.push(x);
        }
    }
    out
}

/// Vertices of `ι_L(⋆σ_i)`, `g` times inflated: for each choice
/// `(v_1, ..., v_g) ∈ σ_1 × ... × σ_g` the point `Σ μ_i(e_{v_i}) × (1, ..., 1)`.
/// Sorted.
pub fn cayley_slice_scaled(t: &LabelTuple, h: usize) -> Result<Vec<Vec<i64>>> {
    if let Some(i) = t.parts.iter().position(Vec::is_empty) {
        return Err(Error::EmptyPart(i));
    }
    let g = t.parts.len();
    let mut out: Vec<Vec<i64>> = t
        .parts
        .iter()
        .map(|p| p.iter().copied())
        .multi_cartesian_product()
        .map(|choice| {
            let mut x = vec![0i64; g * h + g];
            for (i, v) in choice.into_iter().enumerate() {
                x[i * h + v] = 1;
            }
            for c in x.iter_mut().skip(g * h) {
                *c = 1;
            }
            x
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Exact rational slice vertices: [`cayley_slice_scaled`] divided by `g`.
pub fn cayley_slice(t: &LabelTuple, h: usize) -> Result<Vec<RationalVector>> {
    let g = t.parts.len() as i64;
    Ok(cayley_slice_scaled(t, h)?.iter().map(|x| RationalVector::scaled(x, g)).collect())
}

/// Matrix of `π_□ : R^{gh} × R^g → R^h × R^g`: `g` identity blocks side by
/// side over the first factor, identity on the tail.
pub fn pi_box_matrix(g: usize, h: usize) -> IntMatrix {
    IntMatrix::from_fn(h + g, g * h + g, |r, c| {
        let hit = if r < h {
            c < g * h && c % h == r
        } else {
            c >= g * h && c - g * h == r - h
        };
        if hit {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    })
}

/// `π_Δ`: drops the last `g` coordinates.
pub fn pi_delta(x: &[i64], g: usize) -> Vec<i64> {
    x[..x.len() - g].to_vec()
}

pub(crate) fn apply_int(m: &IntMatrix, x: &[i64]) -> Vec<i64> {
    (0..m.rows())
        .map(|r| {
            m.row(r)
                .iter()
                .zip(x)
                .filter(|(a, _)| !a.is_zero())
                .map(|(a, &b)| a.to_i64().expect("0/1 matrix") * b)
                .sum()
        })
        .collect()
}

/// The projected cell `π(σ)` (g-inflated).
pub fn project_pi(t: &LabelTuple, h: usize) -> Result<ProjectedCell> {
    ProjectedCell::from_parts(&t.parts, h)
}

/// Projected maximal cells of a product-type complex, deduplicated by
/// geometry (vertex set) and sorted.
///
/// Keys are geometric on purpose: for `G` without full symmetry two cells
/// can have equal projections without being related by an automorphism.
pub fn projected_complex(g: &Graph, h: &Graph, mode: HomMode) -> Result<Vec<ProjectedCell>> {
    if mode.is_plus() {
        return Err(Error::InvalidParameters(
            "join-type modes project to simplicial complexes; use projected_simplicial_complex".into(),
        ));
    }
    let hom = build_hom(g, h, mode)?;
    let mut by_vertices: BTreeMap<Vec<Vec<i64>>, ProjectedCell> = BTreeMap::new();
    for c in &hom.cells {
        let p = project_pi(c, h.n())?;
        by_vertices.entry(p.vertices.clone()).or_insert(p);
    }
    Ok(by_vertices.into_values().collect())
}

/// The simplicial complex `π Hom₊(G, H)` or `π Hom₊ᵗ(G, H)` on `V(H)`: the
/// image of a simplex `⋆σ_i` is the simplex on `∪σ_i`.
pub fn projected_simplicial_complex(g: &Graph, h: &Graph, mode: HomMode) -> Result<SimplicialComplex> {
    if !mode.is_plus() {
        return Err(Error::InvalidParameters(
            "product-type modes project to polytopal complexes; use projected_complex".into(),
        ));
    }
    let hom = build_hom(g, h, mode)?;
    SimplicialComplex::from_generators(
        h.n(),
        hom.cells.iter().map(|c| c.parts.iter().flatten().copied().collect::<Vec<usize>>()),
    )
}

/// Verdicts of the two routes deciding whether `π Hom(K_g, H)` is a
/// polytopal complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolytopalityReport {
    pub g: usize,
    pub clique_number: usize,
    /// `None` when the projection is empty (`ω(H) < g`).
    pub criterion: Option<bool>,
    pub geometric: Option<bool>,
    pub witness: Option<CommonFaceVerdict>,
}

impl PolytopalityReport {
    pub fn agree(&self) -> bool {
        self.criterion == self.geometric
    }
}

/// Decides polytopality of `π Hom(K_g, H)` both by the clique-number
/// criterion and by running the common-face test on all projected cells.
pub fn is_projection_polytopal(g: usize, h: &Graph) -> Result<PolytopalityReport> {
    let omega = h.clique_number()?;
    if omega < g {
        return Ok(PolytopalityReport {
            g,
            clique_number: omega,
            criterion: None,
            geometric: None,
            witness: None,
        });
    }
    let cells = projected_complex(&Graph::complete(g), h, HomMode::Hom)?;
    let verdict = common_face_test(&cells)?;
    Ok(PolytopalityReport {
        g,
        clique_number: omega,
        criterion: Some(omega == g),
        geometric: Some(verdict.is_complex()),
        witness: (!verdict.is_complex()).then_some(verdict),
    })
}

/// Edges of `Hom(K_g, H)`: all parts singletons except one pair.
pub fn hom_edges(hom: &HomComplex) -> Vec<LabelTuple> {
    let mut out: BTreeSet<LabelTuple> = BTreeSet::new();
    for c in &hom.cells {
        for f in c.faces() {
            if f.dimension() == 1 {
                out.insert(f);
            }
        }
    }
    out.into_iter().collect()
}

/// Whether every projected vertex of `π Hom(K_g, H)` is a 0/1 vector with
/// exactly `g` ones and every projected edge joins two such vectors at
/// Hamming distance 2.
pub fn skeleton_in_hypersimplex_check(g: usize, h: &Graph) -> Result<bool> {
    let hom = build_hom(&Graph::complete(g), h, HomMode::Hom)?;
    let is_hyper_vertex = |x: &[i64]| x.iter().all(|&c| c == 0 || c == 1) && x.iter().sum::<i64>() == g as i64;
    for c in &hom.cells {
        let p = project_pi(c, h.n())?;
        if !p.vertices.iter().all(|x| is_hyper_vertex(x)) {
            return Ok(false);
        }
    }
    for e in hom_edges(&hom) {
        let p = project_pi(&e, h.n())?;
        if p.vertices.len() != 2 {
            return Ok(false);
        }
        let dist = p.vertices[0].iter().zip(&p.vertices[1]).filter(|(a, b)| a != b).count();
        if dist != 2 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Projected edges of `π Hom(K_g, H)` as sorted pairs of 0/1 points.
pub fn projected_edges(g: usize, h: &Graph) -> Result<BTreeSet<(Vec<i64>, Vec<i64>)>> {
    let hom = build_hom(&Graph::complete(g), h, HomMode::Hom)?;
    let mut out = BTreeSet::new();
    for e in hom_edges(&hom) {
        let p = project_pi(&e, h.n())?;
        if let [a, b] = p.vertices.as_slice() {
            out.insert((a.clone(), b.clone()));
        }
    }
    Ok(out)
}

/// A point of a weighted Minkowski sum of coordinate simplices, flagged by
/// whether it is a vertex of the hull.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinkowskiPoint {
    pub point: RationalVector,
    pub is_vertex: bool,
}

/// All points `Σ λ_i e_{v_i}` (`v_i ∈ parts_i`) of `Σ λ_i Δ_{parts_i}` in
/// `R^h`, deduplicated and sorted, with exact hull-vertex flags.
pub fn minkowski_vertices(parts: &[Vec<usize>], weights: &[BigRational], h: usize) -> Result<Vec<MinkowskiPoint>> {
    if parts.len() != weights.len() {
        return Err(Error::DimensionMismatch {
            expected: parts.len(),
            found: weights.len(),
        });
    }
    if let Some(i) = parts.iter().position(Vec::is_empty) {
        return Err(Error::EmptyPart(i));
    }
    if let Some(&v) = parts.iter().flatten().find(|&&v| v >= h) {
        return Err(Error::VertexOutOfRange { vertex: v, n: h });
    }
    let total = weights.iter().fold(BigRational::zero(), |a, w| a + w);
    if weights.iter().any(|w| !w.is_positive()) || total != BigRational::one() {
        return Err(Error::BadWeights);
    }
    let mut points: Vec<RationalVector> = parts
        .iter()
        .map(|p| p.iter().copied())
        .multi_cartesian_product()
        .map(|choice| {
            let mut x = vec![BigRational::zero(); h];
            for (w, v) in weights.iter().zip(choice) {
                x[v] += w;
            }
            RationalVector::new(x)
        })
        .collect();
    points.sort();
    points.dedup();
    let denom = weights.iter().fold(BigInt::one(), |a, w| a.lcm(w.denom()));
    let scaled: Vec<Vec<i64>> = points
        .iter()
        .map(|p| {
            p.entries()
                .iter()
                .map(|x| {
                    (x * BigRational::from_integer(denom.clone()))
                        .to_integer()
                        .to_i64()
                        .expect("small coordinates")
                })
                .collect()
        })
        .collect();
    let flags = hull_vertex_flags(&scaled)?;
    Ok(points
        .into_iter()
        .zip(flags)
        .map(|(point, is_vertex)| MinkowskiPoint { point, is_vertex })
        .collect())
}

/// A bipartite graph `Γ ⊆ K_{m,n}` given by its edges `(left, right)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteSpec {
    pub left: usize,
    pub right: usize,
    pub edges: Vec<(usize, usize)>,
}

impl BipartiteSpec {
    /// Neighbourhoods `I_i` of the left vertices, each sorted.
    pub fn parts(&self) -> Result<Vec<Vec<usize>>> {
        let mut parts = vec![BTreeSet::new(); self.left];
        for &(i, j) in &self.edges {
            if i >= self.left {
                return Err(Error::VertexOutOfRange { vertex: i, n: self.left });
            }
            if j >= self.right {
                return Err(Error::VertexOutOfRange { vertex: j, n: self.right });
            }
            parts[i].insert(j);
        }
        if let Some(i) = parts.iter().position(BTreeSet::is_empty) {
            return Err(Error::IsolatedLeftVertex(i));
        }
        Ok(parts.into_iter().map(|s| s.into_iter().collect()).collect())
    }
}

/// Graphs `G_Γ`, `H_Γ` and a cell of `Hom(G_Γ, H_Γ)` whose projection is the
/// generalized permutohedron of `Γ` with unit weights (g-inflated).
///
/// `G_Γ` joins `i, j` iff their neighbourhoods are disjoint; `H_Γ` is the
/// union of the complete bipartite graphs between the neighbourhoods of
/// `G_Γ`-adjacent left vertices.
pub fn permutohedron_to_hom(spec: &BipartiteSpec) -> Result<(Graph, Graph, LabelTuple)> {
    let parts = spec.parts()?;
    let m = parts.len();
    let disjoint = |a: &[usize], b: &[usize]| a.iter().all(|x| !b.contains(x));
    let g = Graph::from_fn(m, |i, j| disjoint(&parts[i], &parts[j]));
    let mut h = Graph::empty(spec.right);
    for (i, j) in g.edges() {
        for &u in &parts[i] {
            for &v in &parts[j] {
                h.add_edge(u, v)?;
            }
        }
    }
    let cell = LabelTuple::hom(parts)?;
    Ok((g, h, cell))
}

/// Generic section of the simplex `⋆σ_i` by `L = R^{gh} × (1/g, ..., 1/g)`,
/// g-inflated. Empty when the face misses `L`.
pub fn slice_by_section(t: &LabelTuple, h: usize) -> Result<Vec<Vec<i64>>> {
    let g = t.parts.len();
    let verts = join_simplex_vertices(t, h);
    if verts.is_empty() {
        return Ok(Vec::new());
    }
    let inv_g = BigRational::new(BigInt::one(), BigInt::from(g));
    let constraints: Vec<(usize, BigRational)> = (0..g).map(|i| (g * h + i, inv_g.clone())).collect();
    inflate(section_vertices(&verts, &constraints)?, g)
}

/// `π_□` applied to the simplex first, then sliced by `π_□(L) = R^h × 1/g`.
pub fn project_then_slice(t: &LabelTuple, h: usize) -> Result<Vec<Vec<i64>>> {
    let g = t.parts.len();
    let m = pi_box_matrix(g, h);
    let mut verts: Vec<Vec<i64>> = join_simplex_vertices(t, h).iter().map(|x| apply_int(&m, x)).collect();
    verts.sort();
    verts.dedup();
    if verts.is_empty() {
        return Ok(Vec::new());
    }
    let inv_g = BigRational::new(BigInt::one(), BigInt::from(g));
    let constraints: Vec<(usize, BigRational)> = (0..g).map(|i| (h + i, inv_g.clone())).collect();
    inflate(section_vertices(&verts, &constraints)?, g)
}

/// Slice first (by section), then `π_□`; hull vertices of the image.
pub fn slice_then_project(t: &LabelTuple, h: usize) -> Result<Vec<Vec<i64>>> {
    let g = t.parts.len();
    let m = pi_box_matrix(g, h);
    let mut image: Vec<Vec<i64>> = slice_by_section(t, h)?.iter().map(|x| apply_int(&m, x)).collect();
    image.sort();
    image.dedup();
    if image.len() <= 1 {
        return Ok(image);
    }
    let flags = hull_vertex_flags(&image)?;
    Ok(image.into_iter().zip(flags).filter_map(|(x, f)| f.then_some(x)).collect())
}

fn inflate(points: Vec<RationalVector>, g: usize) -> Result<Vec<Vec<i64>>> {
    let gq = BigRational::from_integer(BigInt::from(g));
    let mut out = points
        .into_iter()
        .map(|p| {
            p.entries()
                .iter()
                .map(|x| {
                    let y = x * &gq;
                    if !y.is_integer() {
                        return Err(Error::InvalidParameters(format!(
                            "section coordinate {x} is not a multiple of 1/{g}"
                        )));
                    }
                    Ok(y.to_integer().to_i64().expect("small coordinates"))
                })
                .collect::<Result<Vec<i64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    out.sort();
    Ok(out)
}

/// Outcome of checking the slice identity and the commuting square for one
/// pair of graphs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CayleyCheck {
    pub faces_checked: usize,
    /// Maximal cells of `Hom(G, H)`, i.e. maximal transversal faces.
    pub transversal_facets: usize,
    /// Faces of `Hom₊` were sampled rather than exhausted.
    pub sampled: bool,
    pub slice_identity: bool,
    pub diagram_commutes: bool,
}

/// Cross-part condition of `Hom(G, H)` read straight off the definition.
fn is_hom_tuple(g: &Graph, h: &Graph, parts: &[Vec<usize>]) -> bool {
    parts.iter().all(|p| !p.is_empty())
        && g.edges()
            .iter()
            .all(|&(x, y)| parts[x].iter().all(|&v| parts[y].iter().all(|&w| h.has_edge(v, w))))
}

fn is_maximal_hom_tuple(g: &Graph, h: &Graph, parts: &[Vec<usize>]) -> bool {
    is_hom_tuple(g, h, parts)
        && (0..g.n()).all(|x| {
            (0..h.n()).filter(|v| !parts[x].contains(v)).all(|v| {
                let mut bigger = parts.to_vec();
                bigger[x].push(v);
                !is_hom_tuple(g, h, &bigger)
            })
        })
}

/// Whether the transversal facets of `Hom₊(G, H)` are exactly the maximal
/// cells of `Hom(G, H)`. Both families are closed under shrinking parts, so
/// this is equivalent to equality of all faces. Checked against the built
/// cells, against the definition (each is a maximal Hom tuple) and against
/// brute-force homomorphisms (each lies in some cell).
fn transversal_facets_are_hom_cells(g: &Graph, h: &Graph, transversal: &BTreeSet<Vec<Vec<usize>>>) -> Result<bool> {
    let hom = build_hom(g, h, HomMode::Hom)?;
    let cells: BTreeSet<Vec<Vec<usize>>> = hom.cells.iter().map(|c| c.parts.clone()).collect();
    if &cells != transversal || !cells.iter().all(|c| is_maximal_hom_tuple(g, h, c)) {
        return Ok(false);
    }
    let covered = (0..g.n()).map(|_| 0..h.n()).multi_cartesian_product().all(|f| {
        let is_hom = g.edges().iter().all(|&(x, y)| h.has_edge(f[x], f[y]));
        !is_hom || cells.iter().any(|c| (0..g.n()).all(|x| c[x].contains(&f[x])))
    });
    Ok(covered)
}

/// Checks, for the pair `(G, H)`:
///
/// * the transversal faces of `Hom₊(G, H)` are exactly the faces of the
///   cells of `Hom(G, H)`, and for every face the generic section by `L`
///   equals the closed-form slice (empty for non-transversal faces);
/// * slicing then applying `π_□` gives the same polytope as applying `π_□`
///   then slicing by `π_□(L)`.
///
/// With more than `face_cap` faces, the geometric checks run on a seeded
/// sample of faces (random subsets of random facets); the combinatorial
/// comparison is always exhaustive.
pub fn check_cayley_square(g: &Graph, h: &Graph, face_cap: usize, seed: u64) -> Result<CayleyCheck> {
    use rand::{Rng, SeedableRng};

    let facets = hom_plus_facets(g, h, false);
    let transversal: BTreeSet<Vec<Vec<usize>>> = facets.iter().filter(|t| t.iter().all(|p| !p.is_empty())).cloned().collect();
    let mut slice_identity = transversal_facets_are_hom_cells(g, h, &transversal)?;

    let (faces, sampled) = match hom_plus_faces(g, h, false, face_cap) {
        Ok(all) => (all, false),
        Err(Error::BudgetExceeded { .. }) => {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut picked: BTreeSet<Vec<Vec<usize>>> = BTreeSet::new();
            for _ in 0..4 * face_cap {
                if picked.len() == face_cap {
                    break;
                }
                let f = &facets[rng.gen_range(0..facets.len())];
                let sub: Vec<Vec<usize>> = f
                    .iter()
                    .map(|p| p.iter().copied().filter(|_| rng.gen_bool(0.5)).collect())
                    .collect();
                if sub.iter().any(|p| !p.is_empty()) {
                    picked.insert(sub);
                }
            }
            (picked.into_iter().collect(), true)
        }
        Err(e) => return Err(e),
    };
    let hn = h.n();
    let results: Vec<(bool, bool)> = faces
        .par_iter()
        .map(|parts| -> Result<(bool, bool)> {
            let t = LabelTuple::new(parts.clone(), TupleMode::HomPlus)?;
            let section = slice_by_section(&t, hn)?;
            let slice_ok = if t.is_transversal() {
                section == cayley_slice_scaled(&t, hn)?
            } else {
                section.is_empty()
            };
            let square_ok = slice_then_project(&t, hn)? == project_then_slice(&t, hn)?;
            Ok((slice_ok, square_ok))
        })
        .collect::<Result<Vec<_>>>()?;
    slice_identity &= results.iter().all(|r| r.0);
    Ok(CayleyCheck {
        faces_checked: results.len(),
        transversal_facets: transversal.len(),
        sampled,
        slice_identity,
        diagram_commutes: results.iter().all(|r| r.1),
    })
}

/// Applies a permutation of the parts: part `i` moves to position `perm[i]`.
pub fn permute_parts(t: &LabelTuple, perm: &[usize]) -> LabelTuple {
    let mut parts = vec![Vec::new(); t.parts.len()];
    for (i, p) in t.parts.iter().enumerate() {
        parts[perm[i]] = p.clone();
    }
    LabelTuple { parts, mode: t.mode }
}

/// Whether `π_□` is injective on the vertices of every face of `Hom₊(K_g,
/// H)`, i.e. the image of each simplex has as many vertices as the simplex.
pub fn pi_box_is_immersion(g: usize, h: &Graph) -> bool {
    let m = pi_box_matrix(g, h.n());
    hom_plus_facets(&Graph::complete(g), h, false).iter().all(|parts| {
        let t = LabelTuple {
            parts: parts.clone(),
            mode: TupleMode::HomPlus,
        };
        let verts = join_simplex_vertices(&t, h.n());
        let image: BTreeSet<Vec<i64>> = verts.iter().map(|x| apply_int(&m, x)).collect();
        image.len() == verts.len()
    })
}
