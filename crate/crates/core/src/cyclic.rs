//! Lower facets of cyclic polytopes, weak compositions, lattice paths in the
//! `r × s` grid, and the staircase embedding into the noncrossing graph.
//!
//! Everything here is 1-based to match the usual conventions: `[n] = 1..=n`
//! for cyclic polytope vertices and grid points `(i, j)` with column
//! `i ∈ [r]` and height `j ∈ [s]`.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use serde::Serialize;

use crate::complex::{ProjectedCell, SimplicialComplex};
use crate::dissection::{allowable_diagonals, build_d, build_d_plus, build_independence_graph, Diagonal, DissectionParams};
use crate::error::{Error, Result};
use crate::graph::{enumerate_multipartite_cells, CellFilter, Graph};

pub type Composition = Vec<usize>;
/// Grid points `(column, height)`, sorted.
pub type LatticePath = Vec<(usize, usize)>;

fn blocks(set: &[usize]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for &x in set {
        match out.last_mut() {
            Some(b) if *b.last().expect("nonempty") + 1 == x => b.push(x),
            _ => out.push(vec![x]),
        }
    }
    out
}

fn sorted_in_range(set: &[usize], n: usize) -> Option<Vec<usize>> {
    let mut s = set.to_vec();
    s.sort_unstable();
    s.dedup();
    (s.len() == set.len() && s.iter().all(|&x| 1 <= x && x <= n)).then_some(s)
}

/// Gale's evenness criterion: `|I| = d` and between any two non-members the
/// number of members is even.
pub fn is_gale_facet(set: &[usize], n: usize, d: usize) -> bool {
    let Some(s) = sorted_in_range(set, n) else {
        return false;
    };
    if s.len() != d {
        return false;
    }
    let outside: Vec<usize> = (1..=n).filter(|x| !s.contains(x)).collect();
    outside
        .iter()
        .tuple_windows()
        .all(|(&a, &b)| s.iter().filter(|&&x| a < x && x < b).count() % 2 == 0)
}

/// The last block of consecutive elements.
pub fn end_set(set: &[usize]) -> Vec<usize> {
    let mut s = set.to_vec();
    s.sort_unstable();
    blocks(&s).pop().unwrap_or_default()
}

pub fn is_lower_facet(set: &[usize], n: usize, d: usize) -> bool {
    is_gale_facet(set, n, d) && end_set(set).len().is_multiple_of(2)
}

/// Facets of `C_d(n)`, sorted.
pub fn cyclic_facets(n: usize, d: usize) -> Vec<Vec<usize>> {
    (1..=n).combinations(d).filter(|s| is_gale_facet(s, n, d)).collect()
}

/// Lower facets of `C_d(n)`, sorted.
pub fn lower_facets(n: usize, d: usize) -> Vec<Vec<usize>> {
    (1..=n).combinations(d).filter(|s| is_lower_facet(s, n, d)).collect()
}

/// Whether `set` indexes a face of `C_d(n)` (the empty set included).
pub fn is_cyclic_face(set: &[usize], n: usize, d: usize) -> bool {
    let Some(s) = sorted_in_range(set, n) else {
        return false;
    };
    s.is_empty() || cyclic_facets(n, d).iter().any(|f| s.iter().all(|x| f.contains(x)))
}

/// Hole sizes of a lower facet `{i_1, i_1+1, ..., i_{d/2}, i_{d/2}+1}`:
/// `i_{j+1} - i_j - 2` for `0 ≤ j ≤ d/2`, with `i_0 = -1`, `i_{d/2+1} = n+1`.
pub fn chi(set: &[usize], n: usize, d: usize) -> Result<Composition> {
    if !d.is_multiple_of(2) || !is_lower_facet(set, n, d) {
        return Err(Error::NotLowerFacet(set.to_vec()));
    }
    let mut s = set.to_vec();
    s.sort_unstable();
    let mut starts: Vec<i64> = vec![-1];
    starts.extend(s.iter().step_by(2).map(|&x| x as i64));
    starts.push(n as i64 + 1);
    Ok(starts.windows(2).map(|w| (w[1] - w[0] - 2) as usize).collect())
}

/// Inverse of [`chi`]: the composition `c` with `s` parts gives a lower
/// facet of `C_{2s-2}(Σc + 2s - 2)`.
pub fn chi_inverse(c: &[usize]) -> Result<Vec<usize>> {
    if c.is_empty() {
        return Err(Error::InvalidParameters("empty composition".into()));
    }
    let mut out = Vec::with_capacity(2 * (c.len() - 1));
    let mut start = c[0] + 1;
    for j in 0..c.len() - 1 {
        out.push(start);
        out.push(start + 1);
        start += 2 + c[j + 1];
    }
    Ok(out)
}

/// Weak compositions of `r` into `s` parts, lexicographically sorted.
pub fn compositions(r: usize, s: usize) -> Vec<Composition> {
    fn go(r: usize, s: usize, prefix: &mut Vec<usize>, out: &mut Vec<Composition>) {
        if s == 1 {
            prefix.push(r);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for a in 0..=r {
            prefix.push(a);
            go(r - a, s - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if s > 0 {
        go(r, s, &mut Vec::new(), &mut out);
    }
    out
}

/// Adjacent when they differ by one in exactly two positions and every
/// entry strictly between those positions is zero.
pub fn composition_adjacent(a: &[usize], b: &[usize]) -> bool {
    if a.len() != b.len() || a.iter().sum::<usize>() != b.iter().sum::<usize>() {
        return false;
    }
    let diff: Vec<usize> = (0..a.len()).filter(|&i| a[i] != b[i]).collect();
    if diff.len() != 2 {
        return false;
    }
    let (p, q) = (diff[0], diff[1]);
    a[p].abs_diff(b[p]) == 1 && a[q].abs_diff(b[q]) == 1 && (p + 1..q).all(|i| a[i] == 0)
}

/// The compositions and the adjacency graph on them.
pub fn composition_graph(r: usize, s: usize) -> (Vec<Composition>, Graph) {
    let cs = compositions(r, s);
    let g = Graph::from_fn(cs.len(), |x, y| composition_adjacent(&cs[x], &cs[y]));
    (cs, g)
}

/// Whether the points form a chain in the product order, i.e. lie on a
/// monotone lattice path from `(1,1)` to `(r,s)`.
pub fn is_partial_path(points: &[(usize, usize)], r: usize, s: usize) -> bool {
    points.iter().all(|&(i, j)| 1 <= i && i <= r && 1 <= j && j <= s)
        && points
            .iter()
            .tuple_combinations()
            .all(|(&(i1, j1), &(i2, j2))| (i1 <= i2 && j1 <= j2) || (i2 <= i1 && j2 <= j1))
}

/// Vertex index of a grid point: `(i-1)·s + (j-1)`.
pub fn grid_index(p: (usize, usize), s: usize) -> usize {
    (p.0 - 1) * s + (p.1 - 1)
}

pub fn grid_point(v: usize, s: usize) -> (usize, usize) {
    (v / s + 1, v % s + 1)
}

/// Monotone unit-step paths from `(1,1)` to `(r,s)`, sorted.
pub fn full_paths(r: usize, s: usize) -> Vec<LatticePath> {
    let steps = r + s - 2;
    let mut out: Vec<LatticePath> = (0..steps)
        .combinations(r - 1)
        .map(|right| {
            let mut p = vec![(1, 1)];
            let (mut i, mut j) = (1, 1);
            for t in 0..steps {
                if right.contains(&t) {
                    i += 1;
                } else {
                    j += 1;
                }
                p.push((i, j));
            }
            p.sort_unstable();
            p
        })
        .collect();
    out.sort();
    out
}

/// The staircase triangulation `Σ(r, s)` on the grid vertices.
pub fn partial_path_complex(r: usize, s: usize) -> SimplicialComplex {
    SimplicialComplex::from_generators(
        r * s,
        full_paths(r, s)
            .into_iter()
            .map(|p| p.into_iter().map(|x| grid_index(x, s)).collect::<Vec<usize>>()),
    )
    .expect("in range")
}

/// Partial paths meeting every column, sorted.
pub fn transversal_paths(r: usize, s: usize) -> Vec<LatticePath> {
    let mut out: BTreeSet<LatticePath> = BTreeSet::new();
    for full in full_paths(r, s) {
        let cols: Vec<Vec<(usize, usize)>> = (1..=r).map(|i| full.iter().copied().filter(|p| p.0 == i).collect()).collect();
        // Nonempty subsets of each column.
        let choices: Vec<Vec<Vec<(usize, usize)>>> = cols
            .iter()
            .map(|c| (1..=c.len()).flat_map(|k| c.iter().copied().combinations(k)).collect())
            .collect();
        for pick in choices.into_iter().multi_cartesian_product() {
            let mut p: LatticePath = pick.into_iter().flatten().collect();
            p.sort_unstable();
            out.insert(p);
        }
    }
    out.into_iter().collect()
}

/// Partial paths with exactly one point per column, sorted.
pub fn minimal_paths(r: usize, s: usize) -> Vec<LatticePath> {
    (1..=s)
        .combinations_with_replacement(r)
        .map(|hs| hs.into_iter().enumerate().map(|(i, j)| (i + 1, j)).collect())
        .sorted()
        .collect()
}

/// Number of points at each height.
pub fn a_vector(path: &[(usize, usize)], r: usize, s: usize) -> Result<Composition> {
    if !is_partial_path(path, r, s) {
        return Err(Error::NotAPath(path.to_vec()));
    }
    let mut a = vec![0; s];
    for &(_, j) in path {
        a[j - 1] += 1;
    }
    Ok(a)
}

/// Heights used in each column (0-based), one part per column.
pub fn column_parts(path: &[(usize, usize)], r: usize) -> Vec<Vec<usize>> {
    (1..=r)
        .map(|i| path.iter().filter(|p| p.0 == i).map(|p| p.1 - 1).sorted().collect())
        .collect()
}

/// Minimal paths inside a transversal path: one point per column.
pub fn minimal_subpaths(path: &[(usize, usize)], r: usize) -> Vec<LatticePath> {
    column_parts(path, r)
        .into_iter()
        .map(|c| c.into_iter())
        .multi_cartesian_product()
        .map(|hs| hs.into_iter().enumerate().map(|(i, j)| (i + 1, j + 1)).collect())
        .collect()
}

/// The cell of `𝒞(r, s)` of a transversal path: the convex hull of the
/// a-vectors of its minimal subpaths.
pub fn composition_cell(path: &[(usize, usize)], r: usize, s: usize) -> Result<ProjectedCell> {
    if !is_partial_path(path, r, s) {
        return Err(Error::NotAPath(path.to_vec()));
    }
    ProjectedCell::from_parts(&column_parts(path, r), s)
}

/// All cells of `𝒞(r, s)`, keyed by transversal path.
pub fn composition_complex(r: usize, s: usize) -> Result<Vec<(LatticePath, ProjectedCell)>> {
    transversal_paths(r, s)
        .into_iter()
        .map(|p| {
            let c = composition_cell(&p, r, s)?;
            Ok((p, c))
        })
        .collect()
}

fn check_rs(r: usize, s: usize) -> Result<()> {
    if r == 0 || s == 0 {
        return Err(Error::InvalidParameters(format!("need r, s >= 1, got r = {r}, s = {s}")));
    }
    Ok(())
}

/// `φ(λ) = ∩ χ⁻¹(a(μ))` over the minimal subpaths `μ` of `λ`, a lower face
/// of `C_{2s-2}(r + 2s - 2)`.
pub fn phi(path: &[(usize, usize)], r: usize, s: usize) -> Result<Vec<usize>> {
    check_rs(r, s)?;
    if !is_partial_path(path, r, s) || column_parts(path, r).iter().any(Vec::is_empty) {
        return Err(Error::NotAPath(path.to_vec()));
    }
    let mut acc: Option<BTreeSet<usize>> = None;
    for mu in minimal_subpaths(path, r) {
        let f: BTreeSet<usize> = chi_inverse(&a_vector(&mu, r, s)?)?.into_iter().collect();
        acc = Some(match acc {
            None => f,
            Some(a) => a.intersection(&f).copied().collect(),
        });
    }
    Ok(acc.unwrap_or_default().into_iter().collect())
}

/// `ψ(G) = ∪ a⁻¹(χ(F))` over the lower facets `F ⊇ G`, where `a⁻¹` gives the
/// minimal path with that a-vector. Fails if the union is not a partial path.
pub fn psi(face: &[usize], r: usize, s: usize) -> Result<LatticePath> {
    check_rs(r, s)?;
    let d = 2 * s - 2;
    let n = r + d;
    let mut union: BTreeSet<(usize, usize)> = BTreeSet::new();
    for f in lower_facets(n, d) {
        if face.iter().all(|x| f.contains(x)) {
            union.extend(minimal_path_of(&chi(&f, n, d)?));
        }
    }
    let path: LatticePath = union.into_iter().collect();
    if !is_partial_path(&path, r, s) {
        return Err(Error::NotAPath(path));
    }
    Ok(path)
}

/// The minimal path with a given a-vector: heights weakly increasing.
pub fn minimal_path_of(a: &[usize]) -> LatticePath {
    let heights = a.iter().enumerate().flat_map(|(j, &c)| std::iter::repeat_n(j + 1, c));
    heights.enumerate().map(|(i, j)| (i + 1, j)).collect()
}

/// Outcome of comparing the face poset of `𝒞(r, s)` with the lower faces of
/// the cyclic polytope.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PhiPsiReport {
    pub r: usize,
    pub s: usize,
    pub cells: usize,
    pub target_faces: usize,
    /// Distinct transversal paths give distinct cells (vertex sets).
    pub cells_distinct: bool,
    /// `φ` is a bijection onto the faces with at least `s - 1` elements all
    /// of whose containing facets are lower.
    pub phi_bijective: bool,
    pub psi_inverts_phi: bool,
    pub inclusion_reversing: bool,
    /// A cell of dimension `k` goes to a face with `2s - 2 - k` elements.
    pub dimensions_match: bool,
    /// The 1-dimensional cells are exactly the composition-graph edges.
    pub skeleton_is_composition_graph: bool,
}

impl PhiPsiReport {
    pub fn passed(&self) -> bool {
        self.cells_distinct
            && self.phi_bijective
            && self.psi_inverts_phi
            && self.inclusion_reversing
            && self.dimensions_match
            && self.skeleton_is_composition_graph
    }
}

pub fn check_phi_psi(r: usize, s: usize) -> Result<PhiPsiReport> {
    check_rs(r, s)?;
    let d = 2 * s - 2;
    let n = r + d;
    let cells = composition_complex(r, s)?;
    let images: Vec<Vec<usize>> = cells.iter().map(|(p, _)| phi(p, r, s)).collect::<Result<_>>()?;

    let distinct: BTreeSet<&Vec<Vec<i64>>> = cells.iter().map(|(_, c)| &c.vertices).collect();
    let cells_distinct = distinct.len() == cells.len();

    // Faces dual to faces of the polar polytope spanned by lower-facet
    // vertices only, of dual dimension at most d/2.
    let facets = cyclic_facets(n, d);
    let lower = lower_facets(n, d);
    let mut target: BTreeSet<Vec<usize>> = BTreeSet::new();
    for f in &lower {
        for k in d / 2..=d {
            for g in f.iter().copied().combinations(k) {
                let all_lower = facets.iter().filter(|h| g.iter().all(|x| h.contains(x))).all(|h| lower.contains(h));
                if all_lower {
                    target.insert(g);
                }
            }
        }
    }
    let image_set: BTreeSet<Vec<usize>> = images.iter().cloned().collect();
    let phi_bijective = image_set.len() == images.len() && image_set == target;

    let mut psi_inverts_phi = true;
    for ((p, _), g) in cells.iter().zip(&images) {
        let back = psi(g, r, s)?;
        if &back != p || &phi(&back, r, s)? != g {
            psi_inverts_phi = false;
        }
    }

    let subset = |a: &[usize], b: &[usize]| a.iter().all(|x| b.contains(x));
    let subpath = |a: &[(usize, usize)], b: &[(usize, usize)]| a.iter().all(|x| b.contains(x));
    let mut inclusion_reversing = true;
    for (x, (px, _)) in cells.iter().enumerate() {
        for (y, (py, _)) in cells.iter().enumerate() {
            if subpath(px, py) != subset(&images[y], &images[x]) {
                inclusion_reversing = false;
            }
        }
    }

    let dimensions_match = cells.iter().zip(&images).all(|((_, c), g)| c.dimension() + g.len() == d);

    let (comps, graph) = composition_graph(r, s);
    let index: BTreeMap<Vec<i64>, usize> = comps
        .iter()
        .enumerate()
        .map(|(i, c)| (c.iter().map(|&x| x as i64).collect(), i))
        .collect();
    let vertex_cells: BTreeSet<usize> = cells
        .iter()
        .filter(|(_, c)| c.vertices.len() == 1)
        .map(|(_, c)| index[&c.vertices[0]])
        .collect();
    let mut edges: Vec<(usize, usize)> = cells
        .iter()
        .filter(|(_, c)| c.dimension() == 1)
        .map(|(_, c)| {
            let a = index[&c.vertices[0]];
            let b = index[&c.vertices[1]];
            (a.min(b), a.max(b))
        })
        .collect();
    edges.sort_unstable();
    let skeleton_is_composition_graph = vertex_cells.len() == comps.len()
        && cells.iter().filter(|(_, c)| c.dimension() == 1).all(|(_, c)| c.vertices.len() == 2)
        && edges == graph.edges();

    Ok(PhiPsiReport {
        r,
        s,
        cells: cells.len(),
        target_faces: target.len(),
        cells_distinct,
        phi_bijective,
        psi_inverts_phi,
        inclusion_reversing,
        dimensions_match,
        skeleton_is_composition_graph,
    })
}

/// `S(r, s)` on the grid: `(i1, j1) ~ (i2, j2)` iff `i1 < i2` and `j1 ≤ j2`.
pub fn staircase_graph(r: usize, s: usize) -> Graph {
    Graph::from_fn(r * s, |a, b| {
        let (p, q) = (grid_point(a, s), grid_point(b, s));
        let (lo, hi) = if p.0 <= q.0 { (p, q) } else { (q, p) };
        lo.0 < hi.0 && lo.1 <= hi.1
    })
}

fn check_embedding_range(p: DissectionParams, r: usize, s: usize) -> Result<()> {
    let r_max = ((p.m - 1) * (p.k - 2) + 2) / (p.k - 1);
    if p.m < 2 || r == 0 || s == 0 || r > r_max || s > p.k - 1 {
        return Err(Error::InvalidParameters(format!(
            "need 1 <= r <= {r_max} and 1 <= s <= {} for k = {}, m = {}",
            p.k - 1,
            p.k,
            p.m
        )));
    }
    Ok(())
}

/// Grid point `(b+1, j+1)` goes to the diagonal
/// `{b(k-1) + j, b(k-1) + j + k - 1} mod N`. Returns diagonal indices in
/// grid order.
pub fn embed_staircase(p: DissectionParams, r: usize, s: usize) -> Result<Vec<usize>> {
    check_embedding_range(p, r, s)?;
    let n = p.polygon_size();
    let ds = allowable_diagonals(p);
    let index: BTreeMap<Diagonal, usize> = ds.iter().enumerate().map(|(i, &d)| (d, i)).collect();
    (0..r * s)
        .map(|v| {
            let (b, j) = (v / s, v % s);
            let x = b * (p.k - 1) + j;
            let d = Diagonal::new(x % n, (x + p.k - 1) % n);
            index
                .get(&d)
                .copied()
                .ok_or_else(|| Error::InvalidParameters(format!("{d:?} is not an allowable diagonal")))
        })
        .collect()
}

/// Outcome of the staircase embedding checks for one parameter set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StaircaseReport {
    pub k: usize,
    pub m: usize,
    pub r: usize,
    pub s: usize,
    /// The map is injective on grid points.
    pub injective: bool,
    /// Grid edges go to noncrossing pairs.
    pub homomorphism: bool,
    /// Grid non-edges go to crossing pairs as well (induced copy).
    pub induced_isomorphism: bool,
    /// Extra noncrossing pairs in the image, as grid point pairs.
    pub extra_edges: Vec<((usize, usize), (usize, usize))>,
    pub hom_facets: usize,
    pub full_paths: usize,
    /// Maximal cells of `Hom(K_r, S(r,s))` up to reordering are the column
    /// decompositions of full paths.
    pub facets_are_paths: bool,
    /// Every embedded full path is a face of `D₊`. Each path may use its
    /// own completion to `m - 1` parts.
    pub sigma_in_d_plus: bool,
    /// Every embedded cell of `𝒞(r, s)` is a cell of `πHom(K_r, I(k,m))`,
    /// distinct cells staying distinct.
    pub slice_in_projected_hom: bool,
    /// One set of diagonals completing every image cell to `m - 1` parts.
    /// A copy of `𝒞(r, s)` in `D` needs this to be shared by all cells.
    pub completion: Option<Vec<usize>>,
    /// Every embedded cell of `𝒞(r, s)` plus the shared completion is a
    /// cell of `D`, distinct cells staying distinct.
    pub slice_in_d: bool,
}

impl StaircaseReport {
    pub fn passed(&self) -> bool {
        self.injective
            && self.homomorphism
            && self.induced_isomorphism
            && self.facets_are_paths
            && self.sigma_in_d_plus
            && self.slice_in_projected_hom
            && self.slice_in_d
    }
}

/// Runs the staircase checks for `(k, m, r, s)`.
pub fn verify_staircase(p: DissectionParams, r: usize, s: usize) -> Result<StaircaseReport> {
    let map = embed_staircase(p, r, s)?;
    let ind = build_independence_graph(p);
    let grid = staircase_graph(r, s);
    let injective = map.iter().collect::<BTreeSet<_>>().len() == map.len();
    let mut homomorphism = true;
    let mut extra_edges = Vec::new();
    for (a, b) in (0..r * s).tuple_combinations() {
        let image_edge = ind.has_edge(map[a], map[b]);
        if grid.has_edge(a, b) && !image_edge {
            homomorphism = false;
        }
        if !grid.has_edge(a, b) && image_edge {
            extra_edges.push((grid_point(a, s), grid_point(b, s)));
        }
    }
    let induced_isomorphism = injective && homomorphism && extra_edges.is_empty();

    let cells = enumerate_multipartite_cells(
        &grid,
        r,
        CellFilter {
            induced: false,
            maximal_only: true,
            unordered: true,
        },
    );
    let paths = full_paths(r, s);
    let path_parts: BTreeSet<Vec<Vec<usize>>> = paths
        .iter()
        .map(|path| {
            let mut parts: Vec<Vec<usize>> = (1..=r)
                .map(|i| path.iter().filter(|q| q.0 == i).map(|&q| grid_index(q, s)).collect())
                .collect();
            parts.sort();
            parts
        })
        .collect();
    let cell_parts: BTreeSet<Vec<Vec<usize>>> = cells
        .iter()
        .map(|c| {
            let mut c = c.clone();
            c.sort();
            c
        })
        .collect();
    let facets_are_paths = cell_parts == path_parts;

    let d_plus = build_d_plus(p)?;
    let sigma_in_d_plus = paths.iter().all(|path| {
        let face: Vec<usize> = path.iter().map(|&q| map[grid_index(q, s)]).collect();
        d_plus.contains_face(&face)
    });

    let image_cells: Vec<Vec<Vec<usize>>> = transversal_paths(r, s)
        .iter()
        .map(|lambda| {
            (1..=r)
                .map(|i| {
                    lambda
                        .iter()
                        .filter(|q| q.0 == i)
                        .map(|&q| map[grid_index(q, s)])
                        .sorted()
                        .collect()
                })
                .collect()
        })
        .collect();
    let distinct = image_cells
        .iter()
        .map(|c| c.iter().cloned().sorted().collect::<Vec<_>>())
        .collect::<BTreeSet<_>>()
        .len()
        == image_cells.len();
    let slice_in_projected_hom = distinct
        && image_cells.iter().all(|c| {
            c.iter()
                .tuple_combinations()
                .all(|(x, y)| x.iter().all(|&a| y.iter().all(|&b| ind.has_edge(a, b))))
        });

    let completion = find_completion(p, &map, p.m - 1 - r);
    let slice_in_d = match &completion {
        None => false,
        Some(extra) => {
            let d_cells = build_d(p)?;
            distinct
                && image_cells.iter().all(|c| {
                    let mut parts = c.clone();
                    parts.extend(extra.iter().map(|&e| vec![e]));
                    d_cells.iter().any(|d| is_subproduct(&parts, &d.parts))
                })
        }
    };

    Ok(StaircaseReport {
        k: p.k,
        m: p.m,
        r,
        s,
        injective,
        homomorphism,
        induced_isomorphism,
        extra_edges,
        hom_facets: cells.len(),
        full_paths: paths.len(),
        facets_are_paths,
        sigma_in_d_plus,
        slice_in_projected_hom,
        completion,
        slice_in_d,
    })
}

/// Whether `small` is a face of the product cell `big` up to reordering:
/// each part of `small` inside a distinct part of `big`, all parts covered.
fn is_subproduct(small: &[Vec<usize>], big: &[Vec<usize>]) -> bool {
    if small.len() != big.len() {
        return false;
    }
    fn go(small: &[Vec<usize>], big: &[Vec<usize>], used: &mut Vec<bool>, i: usize) -> bool {
        if i == small.len() {
            return true;
        }
        for j in 0..big.len() {
            if !used[j] && small[i].iter().all(|x| big[j].contains(x)) {
                used[j] = true;
                if go(small, big, used, i + 1) {
                    return true;
                }
                used[j] = false;
            }
        }
        false
    }
    go(small, big, &mut vec![false; big.len()], 0)
}

/// Lexicographically first set of `count` pairwise noncrossing diagonals
/// outside the image, each noncrossing with every image diagonal.
fn find_completion(p: DissectionParams, image: &[usize], count: usize) -> Option<Vec<usize>> {
    let ind = build_independence_graph(p);
    let candidates: Vec<usize> = (0..ind.n())
        .filter(|v| !image.contains(v) && image.iter().all(|&w| ind.has_edge(*v, w)))
        .collect();
    candidates
        .into_iter()
        .combinations(count)
        .find(|c| c.iter().tuple_combinations().all(|(&a, &b)| ind.has_edge(a, b)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hole_sizes() {
        assert_eq!(chi(&[2, 3, 5, 6], 6, 4).unwrap(), vec![1, 1, 0]);
        assert_eq!(chi(&[4, 5, 6, 7], 8, 4).unwrap(), vec![3, 0, 1]);
        assert_eq!(chi_inverse(&[3, 0, 1]).unwrap(), vec![4, 5, 6, 7]);
        assert!(chi(&[1, 2, 3, 4], 8, 4).is_ok());
        assert_eq!(chi(&[1, 3, 4, 5], 8, 4), Err(Error::NotLowerFacet(vec![1, 3, 4, 5])));
    }

    #[test]
    fn lower_facets_of_octagon_polytope() {
        let lf = lower_facets(8, 4);
        assert_eq!(lf.len(), 15);
        assert!(lf.contains(&vec![4, 5, 6, 7]));
    }

    #[test]
    fn gale_upper_facet_is_not_lower() {
        // {1, 3, 4, 8}: blocks {1}, {3,4}, {8}; end-set odd.
        assert!(is_gale_facet(&[1, 3, 4, 8], 8, 4));
        assert!(!is_lower_facet(&[1, 3, 4, 8], 8, 4));
        assert!(is_cyclic_face(&[], 8, 4));
    }

    #[test]
    fn adjacency_examples() {
        assert!(composition_adjacent(&[1, 0, 2, 4, 0, 1], &[1, 0, 2, 3, 0, 2]));
        assert!(!composition_adjacent(&[1, 0, 2, 4, 0, 1], &[0, 0, 2, 4, 0, 2]));
        assert_eq!(compositions(2, 3).len(), 6);
        assert_eq!(compositions(1, 1), vec![vec![1]]);
    }

    #[test]
    fn path_predicates() {
        assert!(is_partial_path(&[(1, 1), (2, 1), (2, 3)], 2, 3));
        assert!(!is_partial_path(&[(1, 2), (2, 1)], 2, 3));
        assert_eq!(full_paths(2, 3).len(), 3);
        assert!(full_paths(4, 3).iter().all(|p| p.len() == 6));
    }

    #[test]
    fn a_vectors_of_minimal_paths() {
        assert_eq!(a_vector(&[(1, 1), (2, 1), (3, 1), (4, 3)], 4, 3).unwrap(), vec![3, 0, 1]);
        assert_eq!(a_vector(&[(1, 1), (2, 1), (3, 2), (4, 3)], 4, 3).unwrap(), vec![2, 1, 1]);
        assert_eq!(a_vector(&[(1, 1), (2, 1), (3, 3), (4, 3)], 4, 3).unwrap(), vec![2, 0, 2]);
        assert!(a_vector(&[(1, 2), (2, 1)], 2, 2).is_err());
    }

    #[test]
    fn single_height_complex_is_a_point() {
        let c = composition_complex(3, 1).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].1.vertices, vec![vec![3]]);
    }

    #[test]
    fn staircase_has_no_edges_in_a_column() {
        let g = staircase_graph(3, 2);
        assert!(!g.has_edge(grid_index((1, 1), 2), grid_index((1, 2), 2)));
        assert!(g.has_edge(grid_index((1, 1), 2), grid_index((2, 2), 2)));
        assert!(!g.has_edge(grid_index((1, 2), 2), grid_index((2, 1), 2)));
        assert_eq!(g.clique_number().unwrap(), 3);
    }

    #[test]
    fn embedding_range_is_checked() {
        let p = DissectionParams::new(4, 3).unwrap();
        assert!(embed_staircase(p, 3, 2).is_err());
        assert!(embed_staircase(p, 2, 4).is_err());
        assert_eq!(embed_staircase(p, 1, 1).unwrap().len(), 1);
    }
}
