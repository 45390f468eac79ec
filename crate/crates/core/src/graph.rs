//! Loopless undirected graphs on dense vertex sets `0..n`, clique search and
//! enumeration of complete multipartite subgraphs.

use fixedbitset::FixedBitSet;
use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<FixedBitSet>,
}

/// Index of the pair `u < v` in the order `(0,1), (0,2), ..., (n-2,n-1)`.
fn pair_bit(n: usize, u: usize, v: usize) -> usize {
    u * (2 * n - u - 1) / 2 + (v - u - 1)
}

/// One representative per isomorphism class of graphs on `n <= 7`
/// vertices, by brute-force canonical form: the least pair mask over all
/// relabellings. Sorted by canonical mask.
pub fn isomorphism_classes(n: usize) -> Vec<Graph> {
    assert!(n <= 7, "brute-force canonical forms only for n <= 7");
    let pairs = n * n.saturating_sub(1) / 2;
    // For every permutation, where each pair bit goes.
    let images: Vec<Vec<usize>> = (0..n)
        .permutations(n)
        .map(|perm| {
            (0..n)
                .tuple_combinations()
                .map(|(u, v)| {
                    let (a, b) = (perm[u].min(perm[v]), perm[u].max(perm[v]));
                    pair_bit(n, a, b)
                })
                .collect()
        })
        .collect();
    let mut canon: std::collections::BTreeSet<u64> = std::collections::BTreeSet::new();
    let mut seen = vec![false; 1 << pairs];
    for mask in 0u64..(1 << pairs) {
        if seen[mask as usize] {
            continue;
        }
        let mut best = mask;
        for img in &images {
            let mut m = 0u64;
            for (bit, &to) in img.iter().enumerate() {
                m |= (mask >> bit & 1) << to;
            }
            seen[m as usize] = true;
            best = best.min(m);
        }
        canon.insert(best);
    }
    canon.into_iter().map(|m| Graph::from_pair_mask(n, m)).collect()
}

/// Wire format: `{"n": 4, "edges": [[0, 1], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges())
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![FixedBitSet::with_capacity(n); n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.insert_edge(u, v);
            }
        }
        g
    }

    /// The cycle `0-1-...-(n-1)-0`; needs `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let mut g = Self::empty(n);
        for u in 0..n {
            g.insert_edge(u, (u + 1) % n);
        }
        g
    }

    /// The path `0-1-...-(n-1)`.
    pub fn path(n: usize) -> Self {
        let mut g = Self::empty(n);
        for u in 1..n {
            g.insert_edge(u - 1, u);
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Graph whose edges are given by a predicate on pairs `u < v`.
    pub fn from_fn(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if adjacent(u, v) {
                    g.insert_edge(u, v);
                }
            }
        }
        g
    }

    /// Decodes a bitmask over the pairs `(0,1), (0,2), ..., (n-2,n-1)`.
    pub fn from_pair_mask(n: usize, mask: u64) -> Self {
        let mut bit = 0;
        let mut g = Self::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if mask >> bit & 1 == 1 {
                    g.insert_edge(u, v);
                }
                bit += 1;
            }
        }
        g
    }

    pub fn from_json(j: &GraphJson) -> Result<Self> {
        let edges: Vec<(usize, usize)> = j.edges.iter().map(|e| (e[0], e[1])).collect();
        Self::from_edges(j.n, &edges)
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            n: self.n(),
            edges: self.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        }
    }

    fn insert_edge(&mut self, u: usize, v: usize) {
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    /// Adds an edge; duplicates are ignored.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.n();
        for w in [u, v] {
            if w >= n {
                return Err(Error::VertexOutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(Error::Loop(u));
        }
        self.insert_edge(u, v);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn neighbors(&self, u: usize) -> &FixedBitSet {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].count_ones(..)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n() {
            out.extend(self.adj[u].ones().filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones(..)).sum::<usize>() / 2
    }

    pub fn complement(&self) -> Graph {
        Graph::from_fn(self.n(), |u, v| !self.has_edge(u, v))
    }

    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        Graph::from_fn(vertices.len(), |a, b| self.has_edge(vertices[a], vertices[b]))
    }

    pub fn is_clique(&self, vs: &[usize]) -> bool {
        vs.iter().tuple_combinations().all(|(&a, &b)| a != b && self.has_edge(a, b))
    }

    pub fn is_independent(&self, vs: &[usize]) -> bool {
        vs.iter().tuple_combinations().all(|(&a, &b)| !self.has_edge(a, b))
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n();
        if n == 0 {
            return true;
        }
        let mut seen = FixedBitSet::with_capacity(n);
        let mut stack = vec![0];
        seen.insert(0);
        while let Some(u) = stack.pop() {
            for v in self.adj[u].ones() {
                if !seen.contains(v) {
                    seen.insert(v);
                    stack.push(v);
                }
            }
        }
        seen.count_ones(..) == n
    }

    fn check_vertices(&self, vs: &[usize]) -> Result<()> {
        match vs.iter().find(|&&v| v >= self.n()) {
            Some(&v) => Err(Error::VertexOutOfRange { vertex: v, n: self.n() }),
            None => Ok(()),
        }
    }

    /// All maximal cliques, each sorted, in lexicographic order.
    pub fn maximal_cliques(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut out = Vec::new();
        let mut p = FixedBitSet::with_capacity(n);
        p.insert_range(..);
        let x = FixedBitSet::with_capacity(n);
        self.bron_kerbosch(&mut Vec::new(), p, x, &mut |c| {
            let mut c = c.to_vec();
            c.sort_unstable();
            out.push(c);
        });
        out.sort();
        out
    }

    fn bron_kerbosch(&self, r: &mut Vec<usize>, mut p: FixedBitSet, mut x: FixedBitSet, report: &mut dyn FnMut(&[usize])) {
        if p.is_clear() && x.is_clear() {
            if !r.is_empty() {
                report(r);
            }
            return;
        }
        // Pivot on the vertex of P ∪ X with most neighbours in P.
        let pivot = p
            .ones()
            .chain(x.ones())
            .max_by_key(|&u| self.adj[u].intersection(&p).count())
            .expect("P or X nonempty");
        let candidates: Vec<usize> = p.difference(&self.adj[pivot]).collect();
        for v in candidates {
            r.push(v);
            let np = p.intersection(&self.adj[v]).collect::<FixedBitSet>();
            let nx = x.intersection(&self.adj[v]).collect::<FixedBitSet>();
            self.bron_kerbosch(r, grow(np, self.n()), grow(nx, self.n()), report);
            r.pop();
            p.set(v, false);
            x.insert(v);
        }
    }

    /// Size of a largest clique.
    pub fn clique_number(&self) -> Result<usize> {
        if self.n() == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut best = 0;
        let n = self.n();
        let mut p = FixedBitSet::with_capacity(n);
        p.insert_range(..);
        self.max_clique_search(0, p, &mut best);
        Ok(best)
    }

    fn max_clique_search(&self, size: usize, p: FixedBitSet, best: &mut usize) {
        if p.is_clear() {
            *best = (*best).max(size);
            return;
        }
        let mut p = p;
        while !p.is_clear() {
            if size + p.count_ones(..) <= *best {
                return;
            }
            let v = p.ones().next().expect("nonempty");
            let np = p.intersection(&self.adj[v]).collect::<FixedBitSet>();
            self.max_clique_search(size + 1, grow(np, self.n()), best);
            p.set(v, false);
        }
    }
}

fn grow(mut s: FixedBitSet, n: usize) -> FixedBitSet {
    s.grow(n);
    s
}

/// Ordered tuple of vertex subsets of a host graph, each sorted.
pub type PartSystem = Vec<Vec<usize>>;

/// Whether every `a ∈ A`, `b ∈ B` with `a != b` is an edge. Vacuous when
/// either side is empty.
pub fn is_complete_bipartite(h: &Graph, a: &[usize], b: &[usize]) -> Result<bool> {
    h.check_vertices(a)?;
    h.check_vertices(b)?;
    Ok(a.iter().all(|&x| b.iter().all(|&y| x == y || h.has_edge(x, y))))
}

fn check_disjoint(parts: &[Vec<usize>]) -> Result<()> {
    for (i, j) in (0..parts.len()).tuple_combinations() {
        if parts[i].iter().any(|v| parts[j].contains(v)) {
            return Err(Error::OverlappingParts(i, j));
        }
    }
    Ok(())
}

/// Complete multipartite with independent parts: every cross-part pair is an
/// edge and no pair inside a part is.
pub fn is_induced_multipartite(h: &Graph, parts: &[Vec<usize>]) -> Result<bool> {
    for p in parts {
        h.check_vertices(p)?;
    }
    check_disjoint(parts)?;
    for (i, j) in (0..parts.len()).tuple_combinations() {
        if !is_complete_bipartite(h, &parts[i], &parts[j])? {
            return Ok(false);
        }
    }
    Ok(parts.iter().all(|p| h.is_independent(p)))
}

/// Complete multipartite (not necessarily induced) on pairwise-disjoint parts.
pub fn is_complete_multipartite(h: &Graph, parts: &[Vec<usize>]) -> Result<bool> {
    for p in parts {
        h.check_vertices(p)?;
    }
    check_disjoint(parts)?;
    for (i, j) in (0..parts.len()).tuple_combinations() {
        if !is_complete_bipartite(h, &parts[i], &parts[j])? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Which cells [`enumerate_multipartite_cells`] returns.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CellFilter {
    /// Require every part to be independent in the host graph.
    pub induced: bool,
    /// Only cells that are not faces of a larger cell.
    pub maximal_only: bool,
    /// Return each unordered system once (parts sorted by minimal element)
    /// instead of all `g!` orderings.
    pub unordered: bool,
}

/// Ordered `g`-tuples of pairwise-disjoint nonempty parts of `V(h)` whose
/// cross-part pairs are all edges: the cells of `Hom(K_g, h)`.
///
/// Output is sorted lexicographically.
pub fn enumerate_multipartite_cells(h: &Graph, g: usize, filter: CellFilter) -> Vec<PartSystem> {
    let mut unordered = Vec::new();
    if g == 0 {
        return unordered;
    }
    let mut parts: Vec<Vec<usize>> = Vec::new();
    grow_parts(h, g, filter.induced, 0, &mut parts, &mut unordered);
    if filter.maximal_only {
        unordered.retain(|p| is_maximal_cell(h, p, filter.induced));
    }
    let mut out = if filter.unordered {
        unordered
    } else {
        unordered
            .iter()
            .flat_map(|p| p.iter().cloned().permutations(g).collect::<Vec<_>>())
            .collect()
    };
    out.sort();
    out
}

/// Restricted-growth assignment: vertex `v` goes nowhere, into an existing
/// part, or opens a new part, so parts appear in order of their minima.
fn grow_parts(h: &Graph, g: usize, induced: bool, v: usize, parts: &mut Vec<Vec<usize>>, out: &mut Vec<PartSystem>) {
    if v == h.n() {
        if parts.len() == g {
            out.push(parts.clone());
        }
        return;
    }
    // Not enough vertices left to open the missing parts.
    if parts.len() + (h.n() - v) < g {
        return;
    }
    grow_parts(h, g, induced, v + 1, parts, out);
    for j in 0..parts.len() {
        if fits_part(h, induced, v, j, parts) {
            parts[j].push(v);
            grow_parts(h, g, induced, v + 1, parts, out);
            parts[j].pop();
        }
    }
    if parts.len() < g && parts.iter().flatten().all(|&u| h.has_edge(u, v)) {
        parts.push(vec![v]);
        grow_parts(h, g, induced, v + 1, parts, out);
        parts.pop();
    }
}

fn fits_part(h: &Graph, induced: bool, v: usize, j: usize, parts: &[Vec<usize>]) -> bool {
    parts.iter().enumerate().all(|(i, p)| {
        if i == j {
            !induced || p.iter().all(|&u| !h.has_edge(u, v))
        } else {
            p.iter().all(|&u| h.has_edge(u, v))
        }
    })
}

/// No single vertex can be added to any part.
fn is_maximal_cell(h: &Graph, parts: &[Vec<usize>], induced: bool) -> bool {
    (0..h.n())
        .filter(|v| !parts.iter().any(|p| p.contains(v)))
        .all(|v| (0..parts.len()).all(|j| !fits_part(h, induced, v, j, parts)))
}
