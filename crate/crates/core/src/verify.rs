//! Verification suites: every check the library can run against printed
//! values or independent computations, bundled as JSON-ready reports.
//!
//! A suite never fails with an error; problems become check lines. Checks
//! over the resource budget are `skipped`, out-of-desk-scale comparisons are
//! `reported` without counting towards the verdict.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use serde_json::{json, Value};

use crate::complex::{CommonFaceVerdict, LabelTuple, TupleMode, DEFAULT_FACE_BUDGET};
use crate::cyclic::{
    a_vector, check_phi_psi, chi, chi_inverse, composition_complex, composition_graph, lower_facets, minimal_subpaths, phi, psi,
    verify_staircase,
};
use crate::dissection::{
    allowable_diagonals, build_d_plus, build_independence_graph, build_t, dimension_formula, facet_dimension_ranges, fuss_count,
    wedge_rank, DissectionParams,
};
use crate::error::{Error, Result};
use crate::graph::{isomorphism_classes, Graph};
use crate::hom::{
    apply_int, build_hom, cayley_slice_scaled, check_cayley_square, is_projection_polytopal, join_simplex_vertices, minkowski_vertices,
    pi_box_matrix, pi_delta, project_pi, projected_complex, projected_edges, skeleton_in_hypersimplex_check, slice_by_section, HomMode,
};
use crate::homology::reduced_homology;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    /// Computed and compared, but not asserted.
    Reported,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub measured: Value,
    pub expected: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    /// Wall-clock time; kept out of the JSON so reports stay byte-stable.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl Check {
    pub fn asserted(name: impl Into<String>, ok: bool, measured: impl Serialize, expected: impl Serialize) -> Self {
        Check {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            measured: json!(measured),
            expected: json!(expected),
            note: None,
            elapsed: Duration::ZERO,
        }
    }

    pub fn reported(name: impl Into<String>, measured: impl Serialize, expected: impl Serialize) -> Self {
        Check {
            status: Status::Reported,
            ..Check::asserted(name, true, measured, expected)
        }
    }

    pub fn skipped(name: impl Into<String>, note: impl Into<String>) -> Self {
        Check {
            status: Status::Skipped,
            note: Some(note.into()),
            ..Check::asserted(name, true, Value::Null, Value::Null)
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

/// Runs a check, timing it and turning errors into check lines.
fn run(name: &str, f: impl FnOnce() -> Result<Check>) -> Check {
    let start = Instant::now();
    let mut c = match f() {
        Ok(c) => c,
        Err(e @ Error::BudgetExceeded { .. }) => Check::skipped(name, e.to_string()),
        Err(e) => Check::asserted(name, false, Value::Null, Value::Null).with_note(e.to_string()),
    };
    c.elapsed = start.elapsed();
    c
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifySuiteReport {
    pub suite: String,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub reported: usize,
    pub checks: Vec<Check>,
}

impl VerifySuiteReport {
    fn new(suite: Suite, checks: Vec<Check>) -> Self {
        let count = |s: Status| checks.iter().filter(|c| c.status == s).count();
        VerifySuiteReport {
            suite: suite.name().to_string(),
            passed: count(Status::Pass),
            failed: count(Status::Fail),
            skipped: count(Status::Skipped),
            reported: count(Status::Reported),
            checks,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn elapsed(&self) -> Duration {
        self.checks.iter().map(|c| c.elapsed).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Examples,
    SliceIdentity,
    Polytopality,
    Hypersimplex,
    DissectionTable,
    NoncrossingHomology,
    Dimensions,
    CompositionDuality,
    Staircase,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Examples,
        Suite::SliceIdentity,
        Suite::Polytopality,
        Suite::Hypersimplex,
        Suite::DissectionTable,
        Suite::NoncrossingHomology,
        Suite::Dimensions,
        Suite::CompositionDuality,
        Suite::Staircase,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Examples => "examples",
            Suite::SliceIdentity => "thm27",
            Suite::Polytopality => "thm36",
            Suite::Hypersimplex => "prop35",
            Suite::DissectionTable => "table1",
            Suite::NoncrossingHomology => "tzanaki",
            Suite::Dimensions => "prop46",
            Suite::CompositionDuality => "thm55",
            Suite::Staircase => "thm51",
        }
    }

    /// Default for `max_size`: vertices of `H` for the graph sweeps, the
    /// cost bound `#diagonals · (m - 1)` for the dissection tables, `r` for
    /// the composition complexes.
    pub fn default_max_size(self) -> usize {
        match self {
            Suite::SliceIdentity => 5,
            Suite::Polytopality | Suite::Hypersimplex => 6,
            // 98 keeps every entry that finishes in seconds; (7,4) costs 99
            // and takes minutes.
            Suite::DissectionTable | Suite::Dimensions => 98,
            Suite::NoncrossingHomology => 120,
            Suite::CompositionDuality => 5,
            Suite::Examples | Suite::Staircase => 0,
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Overrides [`Suite::default_max_size`].
    pub max_size: Option<usize>,
    pub budget: usize,
    pub seed: u64,
    /// Faces per pair getting the coordinate checks in the slice sweep.
    pub face_cap: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_size: None,
            budget: DEFAULT_FACE_BUDGET,
            seed: 2024,
            face_cap: 128,
        }
    }
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> VerifySuiteReport {
    let max = opts.max_size.unwrap_or(suite.default_max_size());
    let checks = match suite {
        Suite::Examples => examples(),
        Suite::SliceIdentity => slice_sweep(max, opts),
        Suite::Polytopality => polytopality_sweep(max),
        Suite::Hypersimplex => hypersimplex_sweep(max),
        Suite::DissectionTable => dissection_table(max, opts.budget),
        Suite::NoncrossingHomology => noncrossing_homology(max, opts.budget),
        Suite::Dimensions => dimensions(max),
        Suite::CompositionDuality => composition_duality(max),
        Suite::Staircase => staircase(),
    };
    VerifySuiteReport::new(suite, checks)
}

// ---------------------------------------------------------------- examples

fn examples() -> Vec<Check> {
    vec![
        run("prism_slice_is_half_minkowski_sum", prism_slice),
        run("hexagon_simplex_vertices", || {
            let rows: BTreeSet<Vec<i64>> = join_simplex_vertices(&hexagon_cell(), 3).into_iter().collect();
            let expected = printed_rows(&HEXAGON_SIMPLEX);
            Ok(Check::asserted("hexagon_simplex_vertices", rows == expected, &rows, &expected))
        }),
        run("hexagon_cube_slice", || {
            let t = hexagon_cell();
            let slice: BTreeSet<Vec<i64>> = cayley_slice_scaled(&t, 3)?.into_iter().collect();
            let by_section: BTreeSet<Vec<i64>> = slice_by_section(&t, 3)?.into_iter().collect();
            let expected = printed_rows(&HEXAGON_CUBE);
            let ok = slice == expected && by_section == expected;
            Ok(Check::asserted("hexagon_cube_slice", ok, &slice, &expected))
        }),
        run("hexagon_box_projection", || {
            let m = pi_box_matrix(3, 3);
            let mut image: Vec<Vec<i64>> = cayley_slice_scaled(&hexagon_cell(), 3)?.iter().map(|x| apply_int(&m, x)).collect();
            image.sort();
            let mut expected: Vec<Vec<i64>> = printed_rows_multi(&HEXAGON_BOX);
            expected.sort();
            Ok(Check::asserted("hexagon_box_projection", image == expected, &image, &expected))
        }),
        run("hexagon_vertices", || {
            let m = pi_box_matrix(3, 3);
            let points: BTreeSet<Vec<i64>> = cayley_slice_scaled(&hexagon_cell(), 3)?
                .iter()
                .map(|x| pi_delta(&apply_int(&m, x), 3))
                .collect();
            let cell = project_pi(&hexagon_cell(), 3)?;
            let hexagon: BTreeSet<Vec<i64>> = HEXAGON.iter().map(|r| r.to_vec()).collect();
            let vertices: BTreeSet<Vec<i64>> = cell.vertices.iter().cloned().collect();
            let mut with_center = hexagon.clone();
            with_center.insert(vec![1, 1, 1]);
            let ok = vertices == hexagon && points == with_center && cell.dimension() == 2;
            Ok(Check::asserted(
                "hexagon_vertices",
                ok,
                json!({"vertices": vertices, "points": points}),
                json!({"vertices": hexagon, "points": with_center}),
            ))
        }),
        run("cuboctahedron", || {
            let hom = build_hom(&Graph::complete(2), &Graph::complete(4), HomMode::Hom)?;
            let f = hom.f_vector(DEFAULT_FACE_BUDGET)?;
            let shapes = (
                hom.cells.iter().filter(|c| c.dimension() == 2 && vertex_count(c) == 3).count(),
                hom.cells.iter().filter(|c| c.dimension() == 2 && vertex_count(c) == 4).count(),
            );
            let ok = f == [12, 24, 14] && shapes == (8, 6);
            Ok(Check::asserted(
                "cuboctahedron",
                ok,
                json!({"f": f, "triangles_squares": shapes}),
                json!({"f": [12, 24, 14], "triangles_squares": [8, 6]}),
            ))
        }),
        run("internal_squares_meet_badly", internal_squares),
        run("octahedron_skeleton", || {
            let edges = projected_edges(2, &Graph::complete(4))?;
            let octahedron: BTreeSet<(Vec<i64>, Vec<i64>)> = (0..4)
                .combinations(2)
                .map(|p| unit_sum(&p, 4))
                .tuple_combinations()
                .filter(|(a, b)| hamming(a, b) == 2)
                .map(|(a, b)| (a.clone().min(b.clone()), a.max(b)))
                .collect();
            Ok(Check::asserted(
                "octahedron_skeleton",
                edges == octahedron,
                edges.len(),
                octahedron.len(),
            ))
        }),
        run("unequal_faces_with_equal_projections", projection_without_automorphism),
        run("empty_without_triangles", || {
            let hom = build_hom(&Graph::complete(3), &Graph::cycle(5), HomMode::Hom)?;
            Ok(Check::asserted("empty_without_triangles", hom.is_empty(), hom.cells.len(), 0))
        }),
        run("compositions_of_two_into_three", || {
            let (comps, g) = composition_graph(2, 3);
            let cells = composition_complex(2, 3)?;
            let mut f = vec![0usize; 3];
            for (_, c) in &cells {
                f[c.dimension()] += 1;
            }
            let dual = check_phi_psi(2, 3)?;
            let ok = comps.len() == 6 && g.edge_count() == 8 && f == [6, 8, 3] && dual.passed();
            Ok(Check::asserted(
                "compositions_of_two_into_three",
                ok,
                json!({"vertices": comps.len(), "edges": g.edge_count(), "f": f}),
                json!({"vertices": 6, "edges": 8, "f": [6, 8, 3]}),
            ))
        }),
        run("lattice_path_and_lower_facets", lattice_path_example),
    ]
}

const HEXAGON_SIMPLEX: [[i64; 12]; 6] = [
    [1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0],
    [0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0],
    [0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1],
    [0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1],
];

const HEXAGON_CUBE: [[i64; 12]; 8] = [
    [1, 0, 0, 1, 0, 0, 0, 0, 1, 1, 1, 1],
    [1, 0, 0, 0, 0, 1, 0, 0, 1, 1, 1, 1],
    [0, 1, 0, 1, 0, 0, 0, 0, 1, 1, 1, 1],
    [0, 1, 0, 0, 0, 1, 0, 0, 1, 1, 1, 1],
    [1, 0, 0, 1, 0, 0, 0, 1, 0, 1, 1, 1],
    [1, 0, 0, 0, 0, 1, 0, 1, 0, 1, 1, 1],
    [0, 1, 0, 1, 0, 0, 0, 1, 0, 1, 1, 1],
    [0, 1, 0, 0, 0, 1, 0, 1, 0, 1, 1, 1],
];

const HEXAGON_BOX: [[i64; 6]; 8] = [
    [2, 0, 1, 1, 1, 1],
    [1, 0, 2, 1, 1, 1],
    [1, 1, 1, 1, 1, 1],
    [0, 1, 2, 1, 1, 1],
    [2, 1, 0, 1, 1, 1],
    [1, 1, 1, 1, 1, 1],
    [1, 2, 0, 1, 1, 1],
    [0, 2, 1, 1, 1, 1],
];

const HEXAGON: [[i64; 3]; 6] = [[2, 0, 1], [1, 0, 2], [0, 1, 2], [2, 1, 0], [1, 2, 0], [0, 2, 1]];

fn hexagon_cell() -> LabelTuple {
    LabelTuple::new(vec![vec![0, 1], vec![0, 2], vec![1, 2]], TupleMode::HomPlus).expect("valid")
}

fn printed_rows<const N: usize>(rows: &[[i64; N]]) -> BTreeSet<Vec<i64>> {
    rows.iter().map(|r| r.to_vec()).collect()
}

fn printed_rows_multi<const N: usize>(rows: &[[i64; N]]) -> Vec<Vec<i64>> {
    rows.iter().map(|r| r.to_vec()).collect()
}

fn vertex_count(c: &LabelTuple) -> usize {
    c.parts.iter().map(Vec::len).product()
}

fn unit_sum(vs: &[usize], n: usize) -> Vec<i64> {
    let mut x = vec![0; n];
    for &v in vs {
        x[v] += 1;
    }
    x
}

fn hamming(a: &[i64], b: &[i64]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// Two parts `{3,4}`, `{4,5}` of a 3-element set: the slice of the
/// tetrahedron is a quadrilateral whose projection is `½(σ₁ + σ₂)`.
fn prism_slice() -> Result<Check> {
    let parts = vec![vec![0, 1], vec![1, 2]];
    let t = LabelTuple::new(parts.clone(), TupleMode::HomPlus)?;
    let tetra = join_simplex_vertices(&t, 3);
    let slice = slice_by_section(&t, 3)?;
    let m = pi_box_matrix(2, 3);
    let image: BTreeSet<Vec<i64>> = slice.iter().map(|x| pi_delta(&apply_int(&m, x), 2)).collect();
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let sum: BTreeSet<Vec<i64>> = minkowski_vertices(&parts, &[half.clone(), half], 3)?
        .into_iter()
        .filter(|p| p.is_vertex)
        .map(|p| {
            p.point
                .entries()
                .iter()
                .map(|x| (x * BigInt::from(2)).to_integer().try_into().expect("small"))
                .collect()
        })
        .collect();
    let ok = tetra.len() == 4 && slice.len() == 4 && image == sum && sum.len() == 4;
    Ok(Check::asserted(
        "prism_slice_is_half_minkowski_sum",
        ok,
        json!({"slice_vertices": slice.len(), "projection": image}),
        json!({"slice_vertices": 4, "projection": sum}),
    ))
}

fn internal_squares() -> Result<Check> {
    let cells = projected_complex(&Graph::complete(2), &Graph::complete(4), HomMode::Hom)?;
    let squares: Vec<usize> = (0..cells.len()).filter(|&i| cells[i].vertices.len() == 4).collect();
    let verdict = crate::complex::common_face_test(&cells)?;
    let (ok, measured) = match &verdict {
        CommonFaceVerdict::BadPair {
            first,
            second,
            points,
            circuit,
        } => (
            squares.contains(first) && squares.contains(second) && circuit.verify(points),
            json!({"first": cells[*first].parts, "second": cells[*second].parts}),
        ),
        CommonFaceVerdict::Complex => (false, json!("complex")),
    };
    Ok(Check::asserted(
        "internal_squares_meet_badly",
        ok && squares.len() == 3,
        measured,
        "two of the three internal squares",
    ))
}

/// For `G` a path on three vertices and `H = K_3`, two vertices of
/// `Hom(G, H)` with the same projection not related by an automorphism.
fn projection_without_automorphism() -> Result<Check> {
    let g = Graph::path(3);
    let hom = build_hom(&g, &Graph::complete(3), HomMode::Hom)?;
    let autos: Vec<Vec<usize>> = (0..3)
        .permutations(3)
        .filter(|p| g.edges().iter().all(|&(u, v)| g.has_edge(p[u], p[v])))
        .collect();
    let faces = hom.all_faces(DEFAULT_FACE_BUDGET)?;
    let mut witness = None;
    'outer: for (s, t) in faces.iter().tuple_combinations() {
        if project_pi(s, 3)?.points != project_pi(t, 3)?.points {
            continue;
        }
        let related = autos.iter().any(|p| (0..3).all(|x| s.parts[x] == t.parts[p[x]]));
        if !related {
            witness = Some((s.parts.clone(), t.parts.clone()));
            break 'outer;
        }
    }
    Ok(Check::asserted(
        "unequal_faces_with_equal_projections",
        witness.is_some(),
        witness,
        "a pair",
    ))
}

fn lattice_path_example() -> Result<Check> {
    let (r, s) = (4, 3);
    let path = vec![(1, 1), (2, 1), (3, 1), (3, 2), (3, 3), (4, 3)];
    let subpaths = minimal_subpaths(&path, r);
    let a: Vec<Vec<usize>> = subpaths.iter().map(|m| a_vector(m, r, s)).collect::<Result<_>>()?;
    let facets: Vec<Vec<usize>> = a.iter().map(|c| chi_inverse(c)).collect::<Result<_>>()?;
    let face = phi(&path, r, s)?;
    let back = psi(&face, r, s)?;
    let chi_check = chi(&[2, 3, 5, 6], 6, 4)?;
    let expected_a = vec![vec![3, 0, 1], vec![2, 1, 1], vec![2, 0, 2]];
    let expected_f = vec![vec![4, 5, 6, 7], vec![3, 4, 6, 7], vec![3, 4, 5, 6]];
    let ok = a == expected_a
        && facets == expected_f
        && face == [4, 6]
        && back == path
        && chi_check == [1, 1, 0]
        && lower_facets(8, 4).len() == 15;
    Ok(Check::asserted(
        "lattice_path_and_lower_facets",
        ok,
        json!({"a": a, "facets": facets, "phi": face, "chi_2356": chi_check}),
        json!({"a": expected_a, "facets": expected_f, "phi": [4, 6], "chi_2356": [1, 1, 0]}),
    ))
}

// ------------------------------------------------------------ graph sweeps

fn classes_up_to(n: usize) -> Vec<Graph> {
    (1..=n).flat_map(isomorphism_classes).collect()
}

/// Slice identity and commuting square over all pairs of isomorphism
/// classes with at most 4 vertices and 200 seeded random pairs with at
/// most `max` vertices.
fn slice_sweep(max: usize, opts: &VerifyOptions) -> Vec<Check> {
    let small = classes_up_to(max.min(4));
    let mut pairs: Vec<(Graph, Graph)> = small
        .iter()
        .cartesian_product(&small)
        .map(|(g, h)| (g.clone(), h.clone()))
        .collect();
    let exhaustive = pairs.len();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(opts.seed);
    let random_graph = |rng: &mut rand_chacha::ChaCha8Rng| {
        let n = rng.gen_range(1..=max);
        let mask = rng.gen_range(0..1u64 << (n * (n - 1) / 2));
        Graph::from_pair_mask(n, mask)
    };
    for _ in 0..200 {
        let g = random_graph(&mut rng);
        let h = random_graph(&mut rng);
        pairs.push((g, h));
    }
    let mut slice_fail = Vec::new();
    let mut square_fail = Vec::new();
    let mut faces = 0usize;
    let mut sampled = 0usize;
    let mut errors = Vec::new();
    let start = Instant::now();
    for (i, (g, h)) in pairs.iter().enumerate() {
        match check_cayley_square(g, h, opts.face_cap, opts.seed.wrapping_add(i as u64)) {
            Ok(c) => {
                faces += c.faces_checked;
                sampled += usize::from(c.sampled);
                if !c.slice_identity {
                    slice_fail.push((g.to_json(), h.to_json()));
                }
                if !c.diagram_commutes {
                    square_fail.push((g.to_json(), h.to_json()));
                }
            }
            Err(e) => errors.push(e.to_string()),
        }
    }
    let elapsed = start.elapsed();
    let summary = json!({"pairs": pairs.len(), "exhaustive_pairs": exhaustive, "faces_checked": faces, "sampled_pairs": sampled});
    let mut a = Check::asserted(
        "slice_identity",
        slice_fail.is_empty() && errors.is_empty(),
        json!({"summary": summary, "failures": slice_fail, "errors": errors}),
        "no failures",
    );
    let mut b = Check::asserted(
        "diagram_commutes",
        square_fail.is_empty() && errors.is_empty(),
        json!({"summary": summary, "failures": square_fail}),
        "no failures",
    );
    a.elapsed = elapsed / 2;
    b.elapsed = elapsed / 2;
    vec![a, b]
}

fn polytopality_sweep(max: usize) -> Vec<Check> {
    let mut checks = vec![run("internal_squares_meet_badly", internal_squares)];
    checks.push(run("criterion_matches_geometry", || {
        let mut cases = 0;
        let mut polytopal = 0;
        // Split by direction: clique number g but not a complex, versus
        // clique number above g and a complex anyway.
        let mut sufficiency_failures = Vec::new();
        let mut necessity_failures = Vec::new();
        for h in classes_up_to(max) {
            for g in [2, 3] {
                let r = is_projection_polytopal(g, &h)?;
                cases += 1;
                polytopal += usize::from(r.geometric == Some(true));
                if !r.agree() {
                    let row = json!({"g": g, "omega": r.clique_number, "h": h.to_json()});
                    if r.criterion == Some(true) {
                        sufficiency_failures.push(row);
                    } else {
                        necessity_failures.push(row);
                    }
                }
            }
        }
        let ok = sufficiency_failures.is_empty() && necessity_failures.is_empty();
        Ok(Check::asserted(
            "criterion_matches_geometry",
            ok,
            json!({
                "cases": cases,
                "polytopal": polytopal,
                "sufficiency_failures": sufficiency_failures,
                "necessity_failures": necessity_failures,
            }),
            json!({"sufficiency_failures": [], "necessity_failures": []}),
        ))
    }));
    checks
}

fn hypersimplex_sweep(max: usize) -> Vec<Check> {
    vec![run("skeleton_in_hypersimplex", || {
        let mut cases = 0;
        let mut failures = Vec::new();
        for h in classes_up_to(max) {
            for g in [2, 3] {
                if h.clique_number()? < g {
                    continue;
                }
                cases += 1;
                if !skeleton_in_hypersimplex_check(g, &h)? {
                    failures.push(json!({"g": g, "h": h.to_json()}));
                }
            }
        }
        Ok(Check::asserted(
            "skeleton_in_hypersimplex",
            failures.is_empty(),
            json!({"cases": cases, "failures": failures}),
            json!({"failures": []}),
        ))
    })]
}

// ------------------------------------------------------------- dissections

/// One printed entry: facet dimension ranges of `D₊` and `D`, and the
/// nonzero reduced homology ranks (`None` when not printed).
#[derive(Clone, Copy, Debug)]
pub struct TableEntry {
    pub k: usize,
    pub m: usize,
    pub d_plus: (usize, usize),
    pub d: Option<(usize, usize)>,
    pub ranks: Option<&'static [(usize, usize)]>,
}

const fn entry(
    k: usize,
    m: usize,
    d_plus: (usize, usize),
    d: Option<(usize, usize)>,
    ranks: Option<&'static [(usize, usize)]>,
) -> TableEntry {
    TableEntry { k, m, d_plus, d, ranks }
}

pub const TABLE: [TableEntry; 25] = [
    entry(3, 3, (2, 2), Some((1, 1)), Some(&[(1, 1)])),
    entry(3, 4, (3, 4), Some((1, 2)), Some(&[(2, 1)])),
    entry(3, 5, (4, 5), Some((1, 2)), Some(&[(3, 1)])),
    entry(3, 6, (5, 7), Some((1, 3)), Some(&[(4, 1)])),
    entry(3, 7, (7, 8), Some((2, 3)), Some(&[(5, 1)])),
    entry(3, 8, (8, 10), Some((2, 4)), Some(&[(6, 1)])),
    entry(3, 9, (9, 11), Some((2, 4)), None),
    entry(4, 3, (3, 3), Some((2, 2)), Some(&[(1, 1)])),
    entry(4, 4, (4, 6), Some((2, 4)), Some(&[(3, 1)])),
    entry(4, 5, (5, 7), Some((2, 4)), Some(&[(3, 4), (4, 4)])),
    entry(4, 6, (6, 10), Some((2, 6)), Some(&[(5, 1)])),
    entry(4, 7, (7, 11), Some((2, 6)), Some(&[(5, 17), (6, 20)])),
    entry(4, 8, (8, 14), None, None),
    entry(5, 3, (4, 4), Some((3, 3)), Some(&[(1, 1)])),
    entry(5, 4, (5, 8), Some((3, 6)), Some(&[(3, 1)])),
    entry(5, 5, (6, 9), Some((3, 6)), Some(&[(3, 1)])),
    entry(5, 6, (7, 13), Some((3, 9)), Some(&[(5, 17)])),
    entry(5, 7, (8, 14), None, None),
    entry(6, 3, (5, 5), Some((4, 4)), Some(&[(1, 1)])),
    entry(6, 4, (6, 10), Some((4, 8)), Some(&[(3, 1)])),
    entry(6, 5, (7, 11), Some((4, 8)), Some(&[(3, 1)])),
    entry(6, 6, (8, 16), None, None),
    entry(7, 3, (6, 6), Some((5, 5)), Some(&[(1, 1)])),
    entry(7, 4, (7, 12), Some((5, 10)), Some(&[(3, 1)])),
    entry(7, 5, (8, 13), None, None),
];

impl TableEntry {
    /// Larger entries are compared but not asserted.
    pub fn asserted(&self) -> bool {
        !(self.m >= 5 || (self.k >= 5 && self.m >= 4))
    }
}

/// Size proxy for the cost of enumerating `Hom(K_{m-1}, I(k, m))`.
pub fn dissection_cost(p: DissectionParams) -> usize {
    allowable_diagonals(p).len() * (p.m - 1)
}

fn dissection_table(max: usize, budget: usize) -> Vec<Check> {
    TABLE
        .iter()
        .map(|e| {
            let name = format!("D+({},{})", e.k, e.m);
            let p = match DissectionParams::new(e.k, e.m) {
                Ok(p) => p,
                Err(err) => return Check::asserted(&name, false, Value::Null, Value::Null).with_note(err.to_string()),
            };
            if dissection_cost(p) > max {
                return Check::skipped(&name, format!("size {} above max-size {max}", dissection_cost(p)));
            }
            run(&name, || {
                let (plus, cells) = facet_dimension_ranges(p)?;
                let measured_ranks = match e.ranks {
                    Some(_) => {
                        let h = reduced_homology(&build_d_plus(p)?, budget)?;
                        Some((h.nonzero_ranks(), h.has_torsion()))
                    }
                    None => None,
                };
                let mut ok = plus == e.d_plus && e.d.is_none_or(|d| d == cells);
                if let (Some(want), Some((got, torsion))) = (e.ranks, &measured_ranks) {
                    ok &= want == got.as_slice() && !torsion;
                }
                let measured = json!({
                    "d_plus": plus,
                    "d": cells,
                    "ranks": measured_ranks.as_ref().map(|r| &r.0),
                    "torsion": measured_ranks.as_ref().map(|r| r.1),
                });
                let expected = json!({"d_plus": e.d_plus, "d": e.d, "ranks": e.ranks, "torsion": false});
                Ok(if e.asserted() {
                    Check::asserted(&name, ok, measured, expected)
                } else {
                    Check::reported(&name, measured, expected).with_note(if ok { "matches" } else { "differs" })
                })
            })
        })
        .collect()
}

fn noncrossing_homology(max: usize, budget: usize) -> Vec<Check> {
    let mut checks = Vec::new();
    // Values read off the wedge formula for the printed cases.
    for (k, m, rank) in [(3, 3, 1), (3, 4, 1), (4, 3, 5), (5, 3, 12)] {
        let name = format!("T({k},{m})_printed");
        checks.push(run(&name, || {
            let p = DissectionParams::new(k, m)?;
            let h = reduced_homology(&build_t(p)?, budget)?;
            let want = vec![(m - 2, rank)];
            let ok = h.nonzero_ranks() == want && !h.has_torsion() && wedge_rank(p) == rank;
            Ok(Check::asserted(&name, ok, h.nonzero_ranks(), want))
        }));
    }
    for k in 3..=7 {
        for m in 3..=6 {
            let name = format!("T({k},{m})");
            let Ok(p) = DissectionParams::new(k, m) else { continue };
            if dissection_cost(p) > max {
                checks.push(Check::skipped(&name, format!("size {} above max-size {max}", dissection_cost(p))));
                continue;
            }
            checks.push(run(&name, || {
                let t = build_t(p)?;
                let h = reduced_homology(&t, budget)?;
                let want = vec![(m - 2, wedge_rank(p))];
                let ok = h.nonzero_ranks() == want && !h.has_torsion() && t.facets().len() == fuss_count(p);
                Ok(Check::asserted(
                    &name,
                    ok,
                    json!({"ranks": h.nonzero_ranks(), "facets": t.facets().len()}),
                    json!({"ranks": want, "facets": fuss_count(p)}),
                ))
            }));
        }
    }
    checks.push(run("clique_number", || {
        let mut bad = Vec::new();
        for k in 3..=7 {
            for m in 2..=6 {
                let p = DissectionParams::new(k, m)?;
                let n = allowable_diagonals(p).len();
                let omega = build_independence_graph(p).clique_number()?;
                if n != (m - 1) * (m * (k - 2) + 2) / 2 || omega != m - 1 {
                    bad.push((k, m, n, omega));
                }
            }
        }
        Ok(Check::asserted(
            "clique_number",
            bad.is_empty(),
            bad,
            Vec::<(usize, usize, usize, usize)>::new(),
        ))
    }));
    checks
}

fn dimensions(max: usize) -> Vec<Check> {
    let mut checks = Vec::new();
    for k in 3..=7 {
        for m in 3..=6 {
            let p = DissectionParams::new(k, m).expect("valid");
            let name = format!("dim({k},{m})");
            if dissection_cost(p) > max {
                checks.push(Check::skipped(&name, format!("size {} above max-size {max}", dissection_cost(p))));
                continue;
            }
            checks.push(run(&name, || {
                let (plus, cells) = facet_dimension_ranges(p)?;
                let measured = (cells.1, plus.1);
                let want = dimension_formula(p);
                Ok(Check::asserted(&name, measured == want, measured, want))
            }));
        }
    }
    checks
}

// ------------------------------------------------------------------ cyclic

fn composition_duality(max_r: usize) -> Vec<Check> {
    let mut checks = Vec::new();
    for r in 1..=max_r {
        for s in 1..=4 {
            let name = format!("C({r},{s})");
            checks.push(run(&name, || {
                let rep = check_phi_psi(r, s)?;
                Ok(Check::asserted(&name, rep.passed(), &rep, "all fields true"))
            }));
        }
    }
    checks.push(run("hole_size_roundtrip", || {
        let mut bad = Vec::new();
        for r in 1..=6 {
            for s in 2..=4 {
                let (d, n) = (2 * s - 2, r + 2 * s - 2);
                for f in lower_facets(n, d) {
                    if chi_inverse(&chi(&f, n, d)?)? != f {
                        bad.push(f);
                    }
                }
            }
        }
        Ok(Check::asserted(
            "hole_size_roundtrip",
            bad.is_empty(),
            bad,
            Vec::<Vec<usize>>::new(),
        ))
    }));
    checks
}

fn staircase() -> Vec<Check> {
    let mut checks = Vec::new();
    for (k, m, r, s) in [(4, 6, 4, 3), (4, 3, 2, 2)] {
        let tag = format!("({k},{m},{r},{s})");
        let rep = match DissectionParams::new(k, m).and_then(|p| verify_staircase(p, r, s)) {
            Ok(rep) => rep,
            Err(e) => {
                checks.push(Check::asserted(format!("staircase{tag}"), false, Value::Null, Value::Null).with_note(e.to_string()));
                continue;
            }
        };
        checks.push(Check::asserted(
            format!("induced_copy{tag}"),
            rep.induced_isomorphism,
            json!({"injective": rep.injective, "homomorphism": rep.homomorphism, "extra_edges": rep.extra_edges}),
            json!({"injective": true, "homomorphism": true, "extra_edges": []}),
        ));
        checks.push(Check::asserted(
            format!("facets_are_full_paths{tag}"),
            rep.facets_are_paths && rep.hom_facets == rep.full_paths,
            rep.hom_facets,
            rep.full_paths,
        ));
        checks.push(Check::asserted(
            format!("staircase_in_d_plus{tag}"),
            rep.sigma_in_d_plus,
            rep.sigma_in_d_plus,
            true,
        ));
        checks.push(Check::asserted(
            format!("slice_in_projected_hom{tag}"),
            rep.slice_in_projected_hom,
            rep.slice_in_projected_hom,
            true,
        ));
        checks.push(Check::asserted(
            format!("slice_in_d{tag}"),
            rep.slice_in_d,
            json!({"completion": rep.completion, "slice_in_d": rep.slice_in_d}),
            json!({"slice_in_d": true}),
        ));
    }
    checks
}
