use std::collections::BTreeSet;

use homplex_core::complex::{common_face_test, LabelTuple, ProjectedCell, DEFAULT_FACE_BUDGET};
use homplex_core::dissection::*;
use homplex_core::hom::is_projection_polytopal;
use homplex_core::homology::reduced_homology;

fn p(k: usize, m: usize) -> DissectionParams {
    DissectionParams::new(k, m).unwrap()
}

fn small_range() -> impl Iterator<Item = DissectionParams> {
    [(3, 3), (3, 4), (4, 3), (5, 3)].into_iter().map(|(k, m)| p(k, m))
}

#[test]
fn diagonal_count_and_clique_number() {
    for k in 3..=7 {
        for m in 1..=6 {
            let q = p(k, m);
            let n = q.polygon_size();
            assert_eq!(allowable_diagonals(q).len(), (m - 1) * n / 2, "k={k} m={m}");
            if m >= 2 {
                assert_eq!(build_independence_graph(q).clique_number().unwrap(), m - 1, "k={k} m={m}");
            }
        }
    }
}

#[test]
fn diagonal_formula_matches_a_scan_of_all_chords() {
    // A chord is allowable iff it occurs in some dissection.
    for (k, m) in [(3, 3), (3, 4), (4, 3), (4, 4), (5, 3), (6, 3)] {
        let q = p(k, m);
        let used: BTreeSet<Diagonal> = enumerate_dissections(q).into_iter().flatten().collect();
        let listed: BTreeSet<Diagonal> = allowable_diagonals(q).into_iter().collect();
        assert_eq!(used, listed, "k={k} m={m}");
    }
}

#[test]
fn facets_of_t_are_the_dissections() {
    for (k, m) in [(3, 3), (3, 4), (3, 5), (4, 3), (4, 4), (5, 3), (5, 4)] {
        let q = p(k, m);
        let ds = allowable_diagonals(q);
        let t = build_t(q).unwrap();
        let from_t: BTreeSet<Vec<Diagonal>> = t.facets().iter().map(|f| f.iter().map(|&i| ds[i]).collect()).collect();
        let direct: BTreeSet<Vec<Diagonal>> = enumerate_dissections(q).into_iter().collect();
        assert_eq!(from_t, direct, "k={k} m={m}");
        assert_eq!(direct.len(), fuss_count(q), "k={k} m={m}");
        assert!(t.facets().iter().all(|f| f.len() == m - 1));
    }
}

#[test]
fn octagon_noncrossing_complex() {
    let t = build_t(p(4, 3)).unwrap();
    assert_eq!(t.f_vector(100).unwrap(), vec![8, 12]);
}

#[test]
fn noncrossing_complex_is_a_wedge_of_spheres() {
    for q in small_range() {
        let h = reduced_homology(&build_t(q).unwrap(), DEFAULT_FACE_BUDGET).unwrap();
        let expected: Vec<(usize, usize)> = vec![(q.m - 2, wedge_rank(q))];
        assert_eq!(h.nonzero_ranks(), expected, "{q:?}");
        assert!(!h.has_torsion());
    }
}

#[test]
fn d_plus_homology_of_small_cases() {
    for (k, m, d, r) in [(3, 3, 1, 1), (4, 3, 1, 1), (5, 3, 1, 1), (3, 4, 2, 1)] {
        let h = reduced_homology(&build_d_plus(p(k, m)).unwrap(), DEFAULT_FACE_BUDGET).unwrap();
        assert_eq!(h.nonzero_ranks(), vec![(d, r)], "k={k} m={m}");
        assert!(!h.has_torsion());
    }
}

#[test]
fn cellular_homology_of_d_against_d_plus() {
    for q in small_range() {
        let cells = d_cell_complex(q, DEFAULT_FACE_BUDGET).unwrap();
        let chain = cells.chain_complex();
        assert!(chain.boundary_squares_to_zero());
        let from_cells = chain.reduced_homology();
        let from_simplices = reduced_homology(&build_d_plus(q).unwrap(), DEFAULT_FACE_BUDGET).unwrap();
        assert!(!from_cells.has_torsion());
        if (q.k, q.m) == (3, 4) {
            // The hexagon case: D is the flip graph of the hexagon with the
            // three squares of the 3-dimensional associahedron filled in,
            // f = (14, 21, 3), so H̃₁ = Z^5. D₊ has H̃₂ = Z instead: the two
            // complexes are not homotopy equivalent here.
            assert_eq!(cells.f_vector(), vec![14, 21, 3]);
            assert_eq!(from_cells.nonzero_ranks(), vec![(1, 5)]);
            assert_eq!(from_simplices.nonzero_ranks(), vec![(2, 1)]);
        } else {
            assert_eq!(from_cells.nonzero_ranks(), from_simplices.nonzero_ranks(), "{q:?}");
        }
    }
}

#[test]
fn octagon_dissections_form_a_moebius_band_with_annulus_cover() {
    let q = p(4, 3);
    let d = d_cell_complex(q, DEFAULT_FACE_BUDGET).unwrap();
    assert_eq!(d.f_vector()[0], 12);
    assert!(d.is_pseudomanifold_with_boundary());
    assert_eq!(d.reduced_homology().unwrap().nonzero_ranks(), vec![(1, 1)]);
    assert_eq!(d.relative_top_rank(), 0);

    let cover = hom_cell_complex(q, DEFAULT_FACE_BUDGET).unwrap();
    assert_eq!(cover.f_vector()[0], 24);
    assert!(cover.is_pseudomanifold_with_boundary());
    assert_eq!(cover.reduced_homology().unwrap().nonzero_ranks(), vec![(1, 1)]);
    assert_eq!(cover.relative_top_rank(), 1);
}

#[test]
fn measured_dimensions() {
    for (k, m) in [(3, 3), (3, 4), (4, 3), (4, 4), (5, 3), (5, 4)] {
        let q = p(k, m);
        assert_eq!(dimension_of_d(q).unwrap(), dimension_formula(q), "k={k} m={m}");
    }
}

#[test]
fn flip_graph_two_ways() {
    for (k, m) in [(3, 3), (3, 4), (4, 3), (5, 3), (4, 4), (4, 2), (6, 2)] {
        let q = p(k, m);
        let (a, ga) = flip_graph(q).unwrap();
        let (b, gb) = flip_graph_by_exchange(q).unwrap();
        assert_eq!(a, b);
        assert_eq!(ga, gb, "k={k} m={m}");
        assert!(ga.is_connected());
    }
    let (ds, g) = flip_graph(p(3, 3)).unwrap();
    assert_eq!((ds.len(), g.edge_count()), (5, 5));
    assert!((0..5).all(|v| g.degree(v) == 2));
    let (ds, g) = flip_graph(p(4, 3)).unwrap();
    assert_eq!(ds.len(), 12);
    assert!((0..12).all(|v| g.degree(v) >= 1));
}

#[test]
fn noncrossing_complex_from_transversal_faces() {
    for (k, m) in [(3, 3), (3, 4), (4, 3), (5, 3)] {
        let q = p(k, m);
        assert_eq!(transversal_top_faces(q).unwrap(), build_t(q).unwrap(), "k={k} m={m}");
        assert!(build_t(q).unwrap().is_subcomplex_of(&build_d_plus(q).unwrap()));
    }
}

#[test]
fn independent_cliques_complex() {
    for (k, m) in [(3, 3), (3, 4), (4, 3), (5, 3)] {
        let q = p(k, m);
        let ic = build_ic_delta(q).unwrap();
        let d_plus_t = build_d_plus_t(q).unwrap();
        assert_eq!(build_ic_delta_t(q).unwrap(), d_plus_t, "k={k} m={m}");
        assert!(d_plus_t.is_subcomplex_of(&ic));
        // Against the untruncated projection the inclusion is strict.
        let full = build_d_plus_untruncated(q).unwrap();
        assert!(ic.is_subcomplex_of(&full) && !full.is_subcomplex_of(&ic));
        assert_eq!(full.facets().len(), 1);
    }
}

#[test]
fn long_diagonals_of_the_hexagon_leave_the_transversal_complex() {
    // The three long diagonals pairwise cross, so they form one clique, but
    // every other diagonal crosses one of them: no transversal completion.
    let q = p(3, 4);
    let ds = allowable_diagonals(q);
    let long: Vec<usize> = (0..ds.len()).filter(|&i| ds[i].b - ds[i].a == 3).collect();
    assert_eq!(long.len(), 3);
    assert!(build_ic_delta(q).unwrap().contains_face(&long));
    assert!(!build_d_plus(q).unwrap().contains_face(&long));
}

#[test]
fn projected_dissection_complexes_are_polytopal() {
    for (k, m) in [(3, 3), (3, 4), (4, 3)] {
        let q = p(k, m);
        let ind = build_independence_graph(q);
        let r = is_projection_polytopal(m - 1, &ind).unwrap();
        assert_eq!(r.criterion, Some(true));
        assert_eq!(r.geometric, Some(true), "k={k} m={m}");
        assert!(common_face_test(&build_d(q).unwrap()).unwrap().is_complex());
    }
}

#[test]
fn meets_use_a_unique_matching() {
    let q = p(4, 3);
    let cells: Vec<ProjectedCell> = build_d(q).unwrap();
    let n = allowable_diagonals(q).len();
    for c in &cells {
        for d in &cells {
            let shared: BTreeSet<&Vec<i64>> = c.vertices.iter().filter(|v| d.vertices.contains(v)).collect();
            match meet_cells(&c.parts, &d.parts) {
                Some(meet) => {
                    let m = ProjectedCell::from_parts(&meet, n).unwrap();
                    let expect: BTreeSet<&Vec<i64>> = m.vertices.iter().collect();
                    assert_eq!(shared, expect);
                }
                None => {
                    // The shared vertices span no face of `c`.
                    let faces = LabelTuple::hom(c.parts.clone()).unwrap().faces();
                    assert!(faces.iter().all(|f| {
                        let fv = ProjectedCell::from_parts(&f.parts, n).unwrap().vertices;
                        fv.iter().collect::<BTreeSet<_>>() != shared
                    }));
                }
            }
        }
    }
}
