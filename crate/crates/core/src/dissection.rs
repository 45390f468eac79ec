//! Dissections of a convex `N`-gon into `k`-gons, `N = m(k-2) + 2`, and the
//! complexes built on the diagonals that can occur in them.
//!
//! Polygon vertices are `0..N` in cyclic order. Diagonals are indexed by
//! their position in the sorted list returned by [`allowable_diagonals`];
//! every graph and complex below uses those indices as vertices.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::complex::{ProjectedCell, SimplicialComplex, DEFAULT_FACE_BUDGET};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hom::{build_hom, projected_complex, projected_simplicial_complex, HomComplex, HomMode};
use crate::homology::{ProductCell, ProductCellComplex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "[usize; 2]", from = "[usize; 2]")]
pub struct Diagonal {
    pub a: usize,
    pub b: usize,
}

impl Diagonal {
    /// Canonical form with `a < b`.
    pub fn new(x: usize, y: usize) -> Self {
        Diagonal { a: x.min(y), b: x.max(y) }
    }
}

impl From<Diagonal> for [usize; 2] {
    fn from(d: Diagonal) -> Self {
        [d.a, d.b]
    }
}

impl From<[usize; 2]> for Diagonal {
    fn from(x: [usize; 2]) -> Self {
        Diagonal::new(x[0], x[1])
    }
}

/// `k ≥ 3`, `m ≥ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DissectionParams {
    pub k: usize,
    pub m: usize,
}

impl DissectionParams {
    pub fn new(k: usize, m: usize) -> Result<Self> {
        if k < 3 || m < 1 {
            return Err(Error::InvalidParameters(format!("need k >= 3 and m >= 1, got k = {k}, m = {m}")));
        }
        Ok(DissectionParams { k, m })
    }

    /// Number of polygon vertices.
    pub fn polygon_size(&self) -> usize {
        self.m * (self.k - 2) + 2
    }

    fn require_two_cells(&self) -> Result<()> {
        if self.m < 2 {
            return Err(Error::InvalidParameters("need m >= 2".into()));
        }
        Ok(())
    }
}

/// The diagonals `{x, x + k - 1 + j(k-2)} mod N`, `0 ≤ j ≤ m - 2`, in
/// canonical form, deduplicated and sorted.
pub fn allowable_diagonals(p: DissectionParams) -> Vec<Diagonal> {
    let n = p.polygon_size();
    let mut out: BTreeSet<Diagonal> = BTreeSet::new();
    for x in 0..n {
        for j in 0..p.m.saturating_sub(1) {
            let y = (x + p.k - 1 + j * (p.k - 2)) % n;
            let d = Diagonal::new(x, y);
            let gap = d.b - d.a;
            if gap > 1 && gap < n - 1 {
                out.insert(d);
            }
        }
    }
    out.into_iter().collect()
}

/// Whether the relative interiors meet: endpoints strictly interleave.
pub fn crossing(d1: Diagonal, d2: Diagonal) -> bool {
    let inside = |x: usize| d1.a < x && x < d1.b;
    let shared = d1.a == d2.a || d1.a == d2.b || d1.b == d2.a || d1.b == d2.b;
    !shared && inside(d2.a) != inside(d2.b)
}

/// Diagonals joined when they do not cross.
pub fn build_independence_graph(p: DissectionParams) -> Graph {
    let ds = allowable_diagonals(p);
    Graph::from_fn(ds.len(), |i, j| !crossing(ds[i], ds[j]))
}

/// Diagonals joined when they cross.
pub fn build_crossing_graph(p: DissectionParams) -> Graph {
    let ds = allowable_diagonals(p);
    Graph::from_fn(ds.len(), |i, j| crossing(ds[i], ds[j]))
}

/// Noncrossing sets of allowable diagonals; facets are the dissections.
pub fn build_t(p: DissectionParams) -> Result<SimplicialComplex> {
    p.require_two_cells()?;
    let ind = build_independence_graph(p);
    SimplicialComplex::from_generators(ind.n(), ind.maximal_cliques())
}

/// Fuss count `(1/m) binom((k-1)m, m-1)` of dissections.
pub fn fuss_count(p: DissectionParams) -> usize {
    let c = binomial((p.k - 1) * p.m, p.m - 1);
    (c / BigUint::from(p.m)).to_usize().expect("fits")
}

/// Number of spheres `(1/m) binom(m(k-2), m-1)` in the wedge decomposition of
/// the noncrossing complex.
pub fn wedge_rank(p: DissectionParams) -> usize {
    let c = binomial(p.m * (p.k - 2), p.m - 1);
    (c / BigUint::from(p.m)).to_usize().expect("fits")
}

pub(crate) fn binomial(n: usize, r: usize) -> BigUint {
    if r > n {
        return BigUint::from(0u32);
    }
    (0..r).fold(BigUint::from(1u32), |acc, i| acc * BigUint::from(n - i) / BigUint::from(i + 1))
}

/// All dissections as sorted diagonal lists, by recursion on the `k`-gon
/// containing the side `{0, N-1}`. Independent of the diagonal formula and
/// of the crossing test.
pub fn enumerate_dissections(p: DissectionParams) -> Vec<Vec<Diagonal>> {
    let verts: Vec<usize> = (0..p.polygon_size()).collect();
    let mut out: Vec<Vec<Diagonal>> = dissect(&verts, p.k)
        .into_iter()
        .map(|mut d| {
            d.sort();
            d
        })
        .collect();
    out.sort();
    out
}

fn dissect(verts: &[usize], k: usize) -> Vec<Vec<Diagonal>> {
    let l = verts.len();
    if l == k {
        return vec![vec![]];
    }
    if l < k || !(l - 2).is_multiple_of(k - 2) {
        return vec![];
    }
    let mut out = Vec::new();
    let mut cut = vec![0usize];
    choose_cell(verts, k, &mut cut, &mut out);
    out
}

/// Extends the chosen corners of the cell on side `{verts[0], verts[l-1]}`.
fn choose_cell(verts: &[usize], k: usize, cut: &mut Vec<usize>, out: &mut Vec<Vec<Diagonal>>) {
    let l = verts.len();
    let last = *cut.last().expect("starts at 0");
    if cut.len() == k {
        if last != l - 1 {
            return;
        }
        // Combine the dissections of the pieces cut off by each cell side.
        let mut partial: Vec<Vec<Diagonal>> = vec![vec![]];
        for w in cut.windows(2) {
            let (s, t) = (w[0], w[1]);
            if t == s + 1 {
                continue;
            }
            let piece = &verts[s..=t];
            let sub = dissect(piece, k);
            if sub.is_empty() {
                return;
            }
            let side = Diagonal::new(verts[s], verts[t]);
            partial = partial
                .iter()
                .flat_map(|base| {
                    sub.iter().map(move |d| {
                        let mut x = base.clone();
                        x.push(side);
                        x.extend(d.iter().copied());
                        x
                    })
                })
                .collect();
        }
        out.extend(partial);
        return;
    }
    let remaining = k - cut.len();
    for next in last + 1..=l - remaining {
        cut.push(next);
        choose_cell(verts, k, cut, out);
        cut.pop();
    }
}

/// `Hom(K_{m-1}, I(k, m))`.
pub fn dissection_hom(p: DissectionParams) -> Result<HomComplex> {
    p.require_two_cells()?;
    build_hom(&Graph::complete(p.m - 1), &build_independence_graph(p), HomMode::Hom)
}

/// Maximal cells of the projected polytopal complex `D(k, m)`.
pub fn build_d(p: DissectionParams) -> Result<Vec<ProjectedCell>> {
    p.require_two_cells()?;
    projected_complex(&Graph::complete(p.m - 1), &build_independence_graph(p), HomMode::Hom)
}

/// `D₊(k, m)`: simplices are the sets of diagonals used by a cell of
/// `D(k, m)`, i.e. the projection of the transversal part of `Hom₊(K_{m-1}, I(k, m))`.
///
/// The projection of all of `Hom₊` would also contain every set placed on a
/// single vertex of `K_{m-1}`, which makes it the full simplex; see
/// [`build_d_plus_untruncated`].
pub fn build_d_plus(p: DissectionParams) -> Result<SimplicialComplex> {
    build_d_plus_t(p)
}

/// `πHom₊ᵗ(K_{m-1}, I(k, m))`.
pub fn build_d_plus_t(p: DissectionParams) -> Result<SimplicialComplex> {
    p.require_two_cells()?;
    projected_simplicial_complex(&Graph::complete(p.m - 1), &build_independence_graph(p), HomMode::HomPlusTransversal)
}

/// `πHom₊(K_{m-1}, I(k, m))` with non-transversal faces included.
pub fn build_d_plus_untruncated(p: DissectionParams) -> Result<SimplicialComplex> {
    p.require_two_cells()?;
    projected_simplicial_complex(&Graph::complete(p.m - 1), &build_independence_graph(p), HomMode::HomPlus)
}

/// Sets of diagonals whose crossing graph is a disjoint union of cliques
/// with no crossings between different cliques.
pub fn build_ic_delta(p: DissectionParams) -> Result<SimplicialComplex> {
    p.require_two_cells()?;
    let cr = build_crossing_graph(p);
    let n = cr.n();
    let mut facets: Vec<Vec<usize>> = Vec::new();
    // Grow admissible sets; admissibility is closed under taking subsets, so
    // the maximal ones generate the complex.
    let mut stack: Vec<Vec<usize>> = vec![vec![]];
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    while let Some(s) = stack.pop() {
        let mut extended = false;
        for v in 0..n {
            if s.contains(&v) {
                continue;
            }
            let mut t = s.clone();
            t.push(v);
            t.sort_unstable();
            if is_union_of_independent_cliques(&cr, &t) {
                extended = true;
                if seen.insert(t.clone()) {
                    stack.push(t);
                }
            }
        }
        if !extended && !s.is_empty() {
            facets.push(s);
        }
        if seen.len() > DEFAULT_FACE_BUDGET {
            return Err(Error::BudgetExceeded {
                budget: DEFAULT_FACE_BUDGET,
            });
        }
    }
    SimplicialComplex::from_generators(n, facets)
}

/// Subcomplex of `IC_Δ(k, m)` generated by the unions of `m - 1` nonempty
/// mutually independent cliques.
pub fn build_ic_delta_t(p: DissectionParams) -> Result<SimplicialComplex> {
    let ic = build_ic_delta(p)?;
    let cr = build_crossing_graph(p);
    let faces = ic.faces(DEFAULT_FACE_BUDGET)?;
    let gens: Vec<Vec<usize>> = faces
        .into_iter()
        .flatten()
        .filter(|f| crossing_components(&cr, f) == p.m - 1)
        .collect();
    SimplicialComplex::from_generators(cr.n(), gens)
}

/// Number of connected components of the crossing graph restricted to `vs`.
pub fn crossing_components(cr: &Graph, vs: &[usize]) -> usize {
    let sub = cr.induced_subgraph(vs);
    let mut seen = vec![false; sub.n()];
    let mut count = 0;
    for s in 0..sub.n() {
        if seen[s] {
            continue;
        }
        count += 1;
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(v) = stack.pop() {
            for w in sub.neighbors(v).ones() {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    count
}

/// Whether crossing is an equivalence relation on `vs`.
pub fn is_union_of_independent_cliques(cr: &Graph, vs: &[usize]) -> bool {
    vs.iter().all(|&x| {
        vs.iter().all(|&y| {
            vs.iter()
                .all(|&z| x == z || !(cr.has_edge(x, y) && cr.has_edge(y, z)) || cr.has_edge(x, z))
        })
    })
}

/// Subcomplex of `K` generated by the faces meeting every part of a cell
/// of `D(k, m)` in exactly one diagonal (the transversal `(m-2)`-faces).
pub fn transversal_top_faces(p: DissectionParams) -> Result<SimplicialComplex> {
    let hom = dissection_hom(p)?;
    let mut gens: BTreeSet<Vec<usize>> = BTreeSet::new();
    for c in &hom.cells {
        for f in c.faces() {
            if f.parts.iter().all(|s| s.len() == 1) {
                let mut v: Vec<usize> = f.parts.iter().map(|s| s[0]).collect();
                v.sort_unstable();
                gens.insert(v);
            }
        }
    }
    SimplicialComplex::from_generators(allowable_diagonals(p).len(), gens)
}

/// Flip graph: vertices are the facets of `T(k, m)` in sorted order, edges
/// the 1-cells of `D(k, m)`.
pub fn flip_graph(p: DissectionParams) -> Result<(Vec<Vec<usize>>, Graph)> {
    let t = build_t(p)?;
    let dissections: Vec<Vec<usize>> = t.facets().to_vec();
    let index: BTreeMap<&Vec<usize>, usize> = dissections.iter().enumerate().map(|(i, d)| (d, i)).collect();
    let hom = dissection_hom(p)?;
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    for c in &hom.cells {
        for f in c.faces() {
            if f.dimension() != 1 {
                continue;
            }
            // One part of size two, all others singletons: the two end
            // vertices replace the pair by each of its elements.
            let ends: Vec<usize> = f
                .parts
                .iter()
                .position(|s| s.len() == 2)
                .map(|i| {
                    (0..2)
                        .map(|e| {
                            let mut v: Vec<usize> = f.parts.iter().enumerate().map(|(j, s)| if j == i { s[e] } else { s[0] }).collect();
                            v.sort_unstable();
                            index[&v]
                        })
                        .collect()
                })
                .expect("an edge has one part of size two");
            edges.insert((ends[0].min(ends[1]), ends[0].max(ends[1])));
        }
    }
    let edges: Vec<(usize, usize)> = edges.into_iter().collect();
    let g = Graph::from_edges(dissections.len(), &edges)?;
    Ok((dissections, g))
}

/// Flip graph built directly: dissections adjacent when they differ in one
/// diagonal.
pub fn flip_graph_by_exchange(p: DissectionParams) -> Result<(Vec<Vec<usize>>, Graph)> {
    let t = build_t(p)?;
    let ds: Vec<Vec<usize>> = t.facets().to_vec();
    let g = Graph::from_fn(ds.len(), |i, j| {
        let common = ds[i].iter().filter(|x| ds[j].contains(x)).count();
        common + 1 == ds[i].len()
    });
    Ok((ds, g))
}

/// Measured `(dim D, dim D₊)` from the maximal cells.
pub fn dimension_of_d(p: DissectionParams) -> Result<(usize, usize)> {
    let hom = dissection_hom(p)?;
    let dim_d = hom.cells.iter().map(|c| c.dimension()).max().unwrap_or(0);
    let d_plus = build_d_plus(p)?;
    Ok((dim_d, d_plus.dimension().unwrap_or(0)))
}

/// Facet dimension ranges `((min, max) of D₊, (min, max) of D)`.
pub fn facet_dimension_ranges(p: DissectionParams) -> Result<((usize, usize), (usize, usize))> {
    let d_plus = build_d_plus(p)?;
    let cells = build_d(p)?;
    let range = |it: &mut dyn Iterator<Item = usize>| {
        it.fold(None, |acc: Option<(usize, usize)>, d| {
            Some(acc.map_or((d, d), |(lo, hi)| (lo.min(d), hi.max(d))))
        })
        .ok_or(Error::EmptyComplex)
    };
    let plus = range(&mut d_plus.facets().iter().map(|f| f.len() - 1))?;
    let cellular = range(&mut cells.iter().map(|c| c.parts.iter().map(|q| q.len() - 1).sum()))?;
    Ok((plus, cellular))
}

/// Closed forms `(⌊m/2⌋(k-2), ⌊m/2⌋(k-2) + m - 2)`.
pub fn dimension_formula(p: DissectionParams) -> (usize, usize) {
    let d = (p.m / 2) * (p.k - 2);
    (d, d + p.m - 2)
}

/// The cell of the intersection of two cells of `Hom(K_{m-1}, I(k, m))` up to
/// reordering: the product of `C_i ∩ D_{π(i)}` for the unique permutation `π`
/// making every such intersection nonempty, or `None` when there is none.
/// Panics if two such permutations exist.
pub fn meet_cells(c: &ProductCell, d: &ProductCell) -> Option<ProductCell> {
    let g = c.len();
    let mut found: Option<Vec<usize>> = None;
    let mut perm = Vec::with_capacity(g);
    let mut used = vec![false; g];
    search_matchings(c, d, &mut perm, &mut used, &mut found);
    found.map(|perm| {
        (0..g)
            .map(|i| c[i].iter().copied().filter(|x| d[perm[i]].contains(x)).collect())
            .collect()
    })
}

fn search_matchings(c: &ProductCell, d: &ProductCell, perm: &mut Vec<usize>, used: &mut [bool], found: &mut Option<Vec<usize>>) {
    let i = perm.len();
    if i == c.len() {
        assert!(found.is_none(), "two matchings between {c:?} and {d:?}");
        *found = Some(perm.clone());
        return;
    }
    for j in 0..d.len() {
        if !used[j] && c[i].iter().any(|x| d[j].contains(x)) {
            used[j] = true;
            perm.push(j);
            search_matchings(c, d, perm, used, found);
            perm.pop();
            used[j] = false;
        }
    }
}

/// Cellular structure of `D(k, m)` (factors unordered, parts disjoint).
pub fn d_cell_complex(p: DissectionParams, budget: usize) -> Result<ProductCellComplex> {
    let cells: Vec<ProductCell> = build_d(p)?.into_iter().map(|c| c.parts).collect();
    ProductCellComplex::new(&cells, true, budget)
}

/// Cellular structure of `Hom(K_{m-1}, I(k, m))` (factors ordered).
pub fn hom_cell_complex(p: DissectionParams, budget: usize) -> Result<ProductCellComplex> {
    let cells: Vec<ProductCell> = dissection_hom(p)?.cells.into_iter().map(|c| c.parts).collect();
    ProductCellComplex::new(&cells, false, budget)
}
