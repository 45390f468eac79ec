use std::collections::BTreeSet;

use homplex_core::complex::{LabelTuple, ProjectedCell};
use homplex_core::graph::{isomorphism_classes, Graph};
use homplex_core::hom::*;
use homplex_core::linalg::{hull_vertex_flags, section_vertices, RationalVector};
use homplex_core::verify::{run_suite, Status, Suite, VerifyOptions};
use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;

fn classes_up_to(n: usize) -> Vec<Graph> {
    (1..=n).flat_map(isomorphism_classes).collect()
}

fn all_cells(hom: &HomComplex) -> Vec<LabelTuple> {
    hom.all_faces(usize::MAX).unwrap()
}

#[test]
fn projections_are_invariant_under_permuting_parts() {
    for h in classes_up_to(5) {
        for g in 1..=4 {
            let hom = build_hom(&Graph::complete(g), &h, HomMode::Hom).unwrap();
            for c in all_cells(&hom) {
                let base = project_pi(&c, h.n()).unwrap();
                for perm in (0..g).permutations(g) {
                    assert_eq!(project_pi(&permute_parts(&c, &perm), h.n()).unwrap(), base);
                }
            }
        }
    }
}

/// For the path 0-1-2 the only nontrivial automorphism swaps the ends.
#[test]
fn equal_projections_need_not_come_from_automorphisms() {
    let p3 = Graph::path(3);
    let mut witness = None;
    'search: for h in classes_up_to(4) {
        let hom = build_hom(&p3, &h, HomMode::Hom).unwrap();
        let cells = all_cells(&hom);
        for (a, b) in cells.iter().tuple_combinations() {
            let swapped = permute_parts(a, &[2, 1, 0]);
            if &swapped != b && project_pi(a, h.n()).unwrap() == project_pi(b, h.n()).unwrap() {
                witness = Some((h.clone(), a.clone(), b.clone()));
                break 'search;
            }
        }
    }
    let (h, a, b) = witness.expect("a witness among graphs on at most 4 vertices");
    // Recheck by hand: the multisets of part-wise vertex choices agree.
    let points = |t: &LabelTuple| ProjectedCell::from_parts(&t.parts, h.n()).unwrap().points;
    assert_eq!(points(&a), points(&b));
    assert_ne!(a.parts, b.parts);
}

#[test]
fn pi_box_does_not_collapse_faces() {
    for h in classes_up_to(5) {
        for g in 1..=3 {
            assert!(pi_box_is_immersion(g, &h), "g = {g}, h = {:?}", h.edges());
        }
    }
}

#[test]
fn induced_cells_are_all_cells_exactly_at_the_clique_number() {
    for h in classes_up_to(6) {
        let omega = h.clique_number().unwrap();
        for g in 1..=3.min(omega) {
            let kg = Graph::complete(g);
            let a = build_hom(&kg, &h, HomMode::Hom).unwrap().cells;
            let b = build_hom(&kg, &h, HomMode::Ihom).unwrap().cells;
            assert_eq!(a == b, omega == g, "g = {g}, h = {:?}", h.edges());
        }
    }
}

/// The join-type version differs as soon as `H` has an edge: the face
/// `(V(H), ∅, ..., ∅)` of `Hom₊` puts an edge inside a part, whatever the
/// clique number.
#[test]
fn induced_join_cells_differ_once_there_is_an_edge() {
    for h in classes_up_to(6) {
        let omega = h.clique_number().unwrap();
        for g in 1..=3.min(omega) {
            let kg = Graph::complete(g);
            let a = build_hom(&kg, &h, HomMode::HomPlus).unwrap().cells;
            let b = build_hom(&kg, &h, HomMode::IhomPlus).unwrap().cells;
            assert_eq!(a == b, h.edge_count() == 0, "g = {g}, h = {:?}", h.edges());
        }
    }
    let k2 = Graph::complete(2);
    let plus = build_hom(&k2, &k2, HomMode::HomPlus).unwrap();
    assert!(plus.cells.iter().any(|c| c.parts == vec![vec![0, 1], vec![]]));
}

#[test]
fn octahedron_folds_the_cuboctahedron_in_half() {
    let cells = projected_complex(&Graph::complete(2), &Graph::complete(4), HomMode::Hom).unwrap();
    let sizes: Vec<usize> = cells.iter().map(|c| c.vertices.len()).sorted().collect();
    assert_eq!(sizes, vec![3, 3, 3, 3, 4, 4, 4]);
    assert!(skeleton_in_hypersimplex_check(2, &Graph::complete(4)).unwrap());
    // All twelve edges of the octahedron appear.
    assert_eq!(projected_edges(2, &Graph::complete(4)).unwrap().len(), 12);
}

#[test]
fn one_vertex_source_projects_to_the_simplex() {
    for h in classes_up_to(4) {
        let cells = projected_complex(&Graph::complete(1), &h, HomMode::Hom).unwrap();
        assert_eq!(cells.len(), 1);
        assert_eq!(cells[0].vertices.len(), h.n());
        assert!(skeleton_in_hypersimplex_check(1, &h).unwrap());
    }
}

#[test]
fn hexagon_from_three_overlapping_segments() {
    let third = BigRational::new(1.into(), 3.into());
    let pts = minkowski_vertices(&[vec![0, 1], vec![0, 2], vec![1, 2]], &[third.clone(), third.clone(), third], 3).unwrap();
    let inside: Vec<&MinkowskiPoint> = pts.iter().filter(|p| !p.is_vertex).collect();
    assert_eq!(pts.len(), 7);
    assert_eq!(inside.len(), 1);
    assert_eq!(inside[0].point.to_strings(), vec!["1/3", "1/3", "1/3"]);
    let spec = BipartiteSpec {
        left: 3,
        right: 3,
        edges: vec![(0, 0), (0, 1), (1, 0), (1, 2), (2, 1), (2, 2)],
    };
    let (g, h, cell) = permutohedron_to_hom(&spec).unwrap();
    assert_eq!(g.edge_count(), 0);
    assert_eq!(h.edge_count(), 0);
    assert_eq!(project_pi(&cell, 3).unwrap().vertices.len(), 6);
}

fn bipartite_spec() -> impl Strategy<Value = BipartiteSpec> {
    (1usize..=4, 2usize..=5).prop_flat_map(|(left, right)| {
        prop::collection::vec(prop::collection::btree_set(0..right, 1..=right.min(3)), left).prop_map(move |parts| BipartiteSpec {
            left,
            right,
            edges: parts.iter().enumerate().flat_map(|(i, p)| p.iter().map(move |&j| (i, j))).collect(),
        })
    })
}

fn weights(m: usize) -> impl Strategy<Value = Vec<BigRational>> {
    prop::collection::vec(1i64..=4, m).prop_map(|w| {
        let total: i64 = w.iter().sum();
        w.into_iter().map(|x| BigRational::new(x.into(), total.into())).collect()
    })
}

fn scale_to_ints(points: &[RationalVector], factor: i64) -> Vec<Vec<i64>> {
    let f = BigRational::from_integer(factor.into());
    points
        .iter()
        .map(|p| p.entries().iter().map(|x| (x * &f).to_integer().to_i64().unwrap()).collect())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    /// The cell built from a bipartite graph is a Hom cell whose projection
    /// is the unit-weight Minkowski sum; disjoint neighbourhoods give a
    /// product of simplices with no repeated points.
    #[test]
    fn bipartite_graphs_give_hom_cells(spec in bipartite_spec()) {
        let (g, h, cell) = permutohedron_to_hom(&spec).unwrap();
        let hom = build_hom(&g, &h, HomMode::Hom).unwrap();
        prop_assert!(hom.cells.iter().any(|c| c.parts.iter().zip(&cell.parts).all(|(big, small)| small.iter().all(|v| big.contains(v)))));
        let m = cell.parts.len();
        let w = vec![BigRational::new(BigInt::one(), (m as i64).into()); m];
        let sum = minkowski_vertices(&cell.parts, &w, spec.right).unwrap();
        let sum_vertices: Vec<RationalVector> = sum.iter().filter(|p| p.is_vertex).map(|p| p.point.clone()).collect();
        let projected = project_pi(&cell, spec.right).unwrap();
        prop_assert_eq!(scale_to_ints(&sum_vertices, m as i64).into_iter().sorted().collect::<Vec<_>>(), projected.vertices.clone());
        let disjoint = cell.parts.iter().tuple_combinations().all(|(a, b)| a.iter().all(|x| !b.contains(x)));
        prop_assert_eq!(disjoint, g.edge_count() == m * (m - 1) / 2);
        if disjoint {
            let product: usize = cell.parts.iter().map(Vec::len).product();
            prop_assert_eq!(projected.vertices.len(), product);
            prop_assert_eq!(projected.points.iter().dedup().count(), product);
        }
    }

    /// Any weighting: slicing the join of the parts at tail `λ` and
    /// forgetting blocks gives the `λ`-weighted Minkowski sum.
    #[test]
    fn weighted_slices_give_weighted_minkowski_sums(
        (spec, lambda) in bipartite_spec().prop_flat_map(|s| { let m = s.left; (Just(s), weights(m)) })
    ) {
        let parts = spec.parts().unwrap();
        let (g, h) = (parts.len(), spec.right);
        let cell = LabelTuple::hom(parts.clone()).unwrap();
        let join = join_simplex_vertices(&cell, h);
        let constraints: Vec<(usize, BigRational)> = lambda.iter().enumerate().map(|(i, l)| (g * h + i, l.clone())).collect();
        let slice = section_vertices(&join, &constraints).unwrap();
        let image: Vec<RationalVector> = slice
            .iter()
            .map(|x| {
                let e = x.entries();
                RationalVector::new((0..h).map(|v| (0..g).fold(BigRational::zero(), |a, i| a + &e[i * h + v])).collect())
            })
            .sorted()
            .dedup()
            .collect();
        let denom: i64 = lambda.iter().map(|l| l.denom().to_i64().unwrap()).fold(1, num_integer::lcm);
        let ints = scale_to_ints(&image, denom);
        let flags = hull_vertex_flags(&ints).unwrap();
        let from_slice: BTreeSet<Vec<i64>> = ints.into_iter().zip(flags).filter_map(|(p, f)| f.then_some(p)).collect();
        let sum = minkowski_vertices(&parts, &lambda, h).unwrap();
        let direct: BTreeSet<Vec<i64>> = scale_to_ints(&sum.iter().filter(|p| p.is_vertex).map(|p| p.point.clone()).collect::<Vec<_>>(), denom).into_iter().collect();
        prop_assert_eq!(from_slice, direct);
    }
}

#[test]
fn cayley_square_on_small_pairs() {
    let pairs = [
        (Graph::complete(2), Graph::complete(3)),
        (Graph::path(3), Graph::cycle(4)),
        (Graph::empty(2), Graph::complete(2)),
        (Graph::complete(3), Graph::complete(4)),
        (Graph::cycle(4), Graph::complete(3)),
    ];
    for (g, h) in pairs {
        let c = check_cayley_square(&g, &h, 128, 7).unwrap();
        assert!(c.slice_identity && c.diagram_commutes, "{:?} -> {:?}", g.edges(), h.edges());
    }
}

#[test]
fn printed_examples_all_pass() {
    let report = run_suite(Suite::Examples, &VerifyOptions::default());
    for c in &report.checks {
        assert_eq!(c.status, Status::Pass, "{}: {}", c.name, c.measured);
    }
    assert!(report.checks.len() >= 10);
}
