use std::collections::BTreeSet;

use homplex_core::linalg::*;
use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn matrix(rows: &[Vec<i64>]) -> IntMatrix {
    IntMatrix::from_rows(rows)
}

fn submatrix(m: &IntMatrix, rows: &[usize], cols: &[usize]) -> IntMatrix {
    IntMatrix::from_fn(rows.len(), cols.len(), |i, j| m.get(rows[i], cols[j]).clone())
}

/// Invariant factors from determinantal divisors: `d_k` is the gcd of all
/// `k × k` minors and the factors are `d_k / d_{k-1}`.
fn factors_by_minors(m: &IntMatrix) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut prev = BigInt::from(1);
    for k in 1..=m.rows().min(m.cols()) {
        let mut d = BigInt::zero();
        for rows in (0..m.rows()).combinations(k) {
            for cols in (0..m.cols()).combinations(k) {
                d = d.gcd(&determinant(&submatrix(m, &rows, &cols)));
            }
        }
        if d.is_zero() {
            break;
        }
        out.push(&d / &prev);
        prev = d;
    }
    out
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..=6, c), r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn smith_form_matches_determinantal_divisors(rows in small_matrix()) {
        let m = matrix(&rows);
        let snf: Vec<BigInt> = smith_normal_form(&m).into_iter().map(|x| x.abs()).collect();
        prop_assert_eq!(&snf, &factors_by_minors(&m));
        prop_assert_eq!(snf.len(), rank(&m));
        prop_assert!(snf.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
    }

    #[test]
    fn smith_form_is_invariant_under_unimodular_moves(
        rows in small_matrix(),
        seed in any::<u64>(),
        factor in -3i64..=3,
    ) {
        let m = matrix(&rows);
        let (r, c) = (m.rows(), m.cols());
        let mut rp: Vec<usize> = (0..r).collect();
        let mut cp: Vec<usize> = (0..c).collect();
        rp.rotate_left((seed as usize) % r);
        cp.rotate_right((seed as usize / 7) % c);
        cp.reverse();
        let mut moved = submatrix(&m, &rp, &cp);
        if r >= 2 {
            // Row 1 += factor * row 0.
            for j in 0..c {
                let v = moved.get(1, j) + BigInt::from(factor) * moved.get(0, j);
                moved.set(1, j, v);
            }
        }
        let a: Vec<BigInt> = smith_normal_form(&m).into_iter().map(|x| x.abs()).collect();
        let b: Vec<BigInt> = smith_normal_form(&moved).into_iter().map(|x| x.abs()).collect();
        prop_assert_eq!(a, b);
        prop_assert_eq!(smith_normal_form(&m.transpose()).len(), rank(&m));
    }

    #[test]
    fn kernel_has_complementary_dimension(rows in small_matrix()) {
        let m = matrix(&rows);
        let ker = rational_kernel(&m);
        prop_assert_eq!(ker.len() + rank(&m), m.cols());
        for v in &ker {
            prop_assert!(m.apply(v).entries().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn circuits_are_the_minimal_dependent_sets(points in distinct_points()) {
        let found = affine_circuits(&points, points.len()).unwrap();
        for c in &found {
            prop_assert!(c.verify(&points));
        }
        let supports: BTreeSet<Vec<usize>> = found.iter().map(|c| c.support()).collect();
        prop_assert_eq!(supports.len(), found.len());
        prop_assert_eq!(supports, brute_force_circuits(&points));
    }
}

fn distinct_points() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (2usize..=3, 3usize..=7).prop_flat_map(|(d, n)| {
        prop::collection::btree_set(prop::collection::vec(0i64..=2, d), n).prop_map(|s| s.into_iter().collect::<Vec<_>>())
    })
}

fn dependent(points: &[Vec<i64>], idx: &[usize]) -> bool {
    let sub: Vec<Vec<i64>> = idx.iter().map(|&i| points[i].clone()).collect();
    affine_rank(&sub).unwrap() < sub.len()
}

fn brute_force_circuits(points: &[Vec<i64>]) -> BTreeSet<Vec<usize>> {
    let n = points.len();
    (1..=n)
        .flat_map(|k| (0..n).combinations(k))
        .filter(|s| {
            dependent(points, s)
                && s.iter().all(|&drop| {
                    let rest: Vec<usize> = s.iter().copied().filter(|&x| x != drop).collect();
                    !dependent(points, &rest)
                })
        })
        .collect()
}

#[test]
fn known_smith_forms() {
    let m = matrix(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let snf: Vec<BigInt> = smith_normal_form(&m).into_iter().map(|x| x.abs()).collect();
    assert_eq!(snf, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
    assert!(smith_normal_form(&IntMatrix::zeros(3, 2)).is_empty());
}

#[test]
fn affine_rank_of_a_square_and_its_circuit() {
    let pts = vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]];
    assert_eq!(affine_rank(&pts).unwrap(), 3);
    let cs = affine_circuits(&pts, 4).unwrap();
    assert_eq!(cs.len(), 1);
    let c = &cs[0];
    let half = BigRational::new(1.into(), 2.into());
    assert!(c.positive_coefficients.iter().chain(&c.negative_coefficients).all(|x| *x == half));
}

#[test]
fn convex_hull_membership() {
    let tri = vec![vec![0, 0], vec![4, 0], vec![0, 4]];
    assert!(in_convex_hull(&[1, 1], &tri).unwrap());
    assert!(in_convex_hull(&[4, 0], &tri).unwrap());
    assert!(!in_convex_hull(&[3, 3], &tri).unwrap());
    let mut pts = tri.clone();
    pts.push(vec![1, 1]);
    assert_eq!(hull_vertex_flags(&pts).unwrap(), vec![true, true, true, false]);
}

#[test]
fn section_of_a_triangle() {
    let tri = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
    let half = BigRational::new(1.into(), 2.into());
    let seg = section_vertices(&tri, &[(0, half)]).unwrap();
    let got: BTreeSet<Vec<String>> = seg.iter().map(|v| v.to_strings()).collect();
    let want: BTreeSet<Vec<String>> = [
        vec!["1/2".to_string(), "1/2".into(), "0".into()],
        vec!["1/2".to_string(), "0".into(), "1/2".into()],
    ]
    .into_iter()
    .collect();
    assert_eq!(got, want);
}

/// Carathéodory route: `p` is in the hull iff some affinely independent
/// subset has `p` in its affine hull with non-negative coordinates.
fn hull_by_subsets(p: &[i64], points: &[Vec<i64>]) -> bool {
    let lift = |q: &[i64]| -> Vec<BigRational> {
        q.iter()
            .map(|&x| BigRational::from_integer(x.into()))
            .chain([BigRational::from_integer(1.into())])
            .collect()
    };
    let target = lift(p);
    (1..=points.len()).any(|k| {
        (0..points.len()).combinations(k).any(|s| {
            let sub: Vec<Vec<i64>> = s.iter().map(|&i| points[i].clone()).collect();
            if affine_rank(&sub).unwrap() < k {
                return false;
            }
            // Solve sum l_i lift(q_i) = lift(p) by elimination.
            let rows = target.len();
            let mut a: Vec<Vec<BigRational>> = (0..rows)
                .map(|r| sub.iter().map(|q| lift(q)[r].clone()).chain([target[r].clone()]).collect())
                .collect();
            let mut pivots = Vec::new();
            let mut row = 0;
            for col in 0..k {
                let Some(pr) = (row..rows).find(|&r| !a[r][col].is_zero()) else {
                    continue;
                };
                a.swap(row, pr);
                let lead = a[row][col].clone();
                for x in a[row].iter_mut() {
                    *x = &*x / &lead;
                }
                for r in 0..rows {
                    if r != row && !a[r][col].is_zero() {
                        let f = a[r][col].clone();
                        let src = a[row].clone();
                        for (x, y) in a[r].iter_mut().zip(src) {
                            *x = &*x - &f * y;
                        }
                    }
                }
                pivots.push(col);
                row += 1;
            }
            let consistent = (row..rows).all(|r| a[r][k].is_zero());
            consistent && (0..row).all(|r| !a[r][k].is_negative())
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn hull_membership_matches_caratheodory(points in distinct_points(), p in prop::collection::vec(0i64..=2, 3)) {
        let d = points[0].len();
        let p = &p[..d];
        prop_assert_eq!(in_convex_hull(p, &points).unwrap(), hull_by_subsets(p, &points));
    }
}
