use glbc_core::generators::stacked_polytope_coords;
use glbc_core::geometry::lp::{LinearProgram, LpOutcome};
use glbc_core::geometry::{
    certify_geometric_triangulation, full_dim_ok, pair_intersection_ok, simplex_volume, PointConfiguration,
};
use glbc_core::Face;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn q(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}

/// Solves a square system by Gauss–Jordan; `None` when singular.
fn solve_square(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = a.len();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        b.swap(c, p);
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = &a[r][c] / &a[c][c];
                for k in 0..n {
                    let t = &f * &a[c][k];
                    a[r][k] -= t;
                }
                let t = &f * &b[c];
                b[r] -= t;
            }
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

/// All basic feasible solutions, for full-row-rank `A`.
fn basic_feasible_solutions(lp: &LinearProgram) -> Vec<Vec<BigRational>> {
    let (m, n) = (lp.a.len(), lp.c.len());
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != m {
            continue;
        }
        let cols: Vec<usize> = (0..n).filter(|j| mask >> j & 1 == 1).collect();
        let sub = lp.a.iter().map(|row| cols.iter().map(|&j| row[j].clone()).collect()).collect();
        if let Some(xb) = solve_square(sub, lp.b.clone()) {
            if xb.iter().all(|v| !v.is_negative()) {
                let mut x = vec![q(0); n];
                for (k, &j) in cols.iter().enumerate() {
                    x[j] = xb[k].clone();
                }
                out.push(x);
            }
        }
    }
    out
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Bounded LPs: the last row caps the sum of the variables through a slack.
fn arb_lp() -> impl Strategy<Value = LinearProgram> {
    (1usize..=2, 2usize..=4).prop_flat_map(|(m, n)| {
        (
            prop::collection::vec(prop::collection::vec(-3i64..=3, n), m),
            prop::collection::vec(-4i64..=6, m),
            prop::collection::vec(-5i64..=5, n),
        )
            .prop_map(move |(a, b, c)| {
                let mut rows: Vec<Vec<BigRational>> = a
                    .iter()
                    .map(|row| row.iter().map(|&x| q(x)).chain(std::iter::once(q(0))).collect())
                    .collect();
                rows.push((0..=n).map(|_| q(1)).collect());
                let mut rhs: Vec<BigRational> = b.iter().map(|&x| q(x)).collect();
                rhs.push(q(10));
                let mut obj: Vec<BigRational> = c.iter().map(|&x| q(x)).collect();
                obj.push(q(0));
                LinearProgram { a: rows, b: rhs, c: obj }
            })
    })
}

fn full_row_rank(lp: &LinearProgram) -> bool {
    let m = lp.a.len();
    let n = lp.c.len();
    (0u32..(1 << n)).any(|mask| {
        mask.count_ones() as usize == m && {
            let cols: Vec<usize> = (0..n).filter(|j| mask >> j & 1 == 1).collect();
            let sub = lp.a.iter().map(|row| cols.iter().map(|&j| row[j].clone()).collect()).collect();
            solve_square(sub, vec![q(0); m]).is_some()
        }
    })
}

fn arb_points(dim: usize, count: usize) -> impl Strategy<Value = PointConfiguration> {
    prop::collection::vec(prop::collection::vec(-6i64..=6, dim), count)
        .prop_map(move |pts| PointConfiguration::new(dim, pts.iter().map(|p| p.iter().map(|&x| q(x)).collect()).collect()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn lp_optimum_matches_vertex_enumeration(lp in arb_lp()) {
        prop_assume!(full_row_rank(&lp));
        let vertices = basic_feasible_solutions(&lp);
        match lp.solve() {
            LpOutcome::Optimal { x, value } => {
                for (row, b) in lp.a.iter().zip(&lp.b) {
                    prop_assert_eq!(&dot(row, &x), b);
                }
                prop_assert!(x.iter().all(|v| !v.is_negative()));
                prop_assert_eq!(&dot(&lp.c, &x), &value);
                let best = vertices.iter().map(|v| dot(&lp.c, v)).max().unwrap();
                prop_assert_eq!(value, best);
            }
            LpOutcome::Infeasible => prop_assert!(vertices.is_empty()),
            LpOutcome::Unbounded => prop_assert!(false, "bounded program reported unbounded"),
        }
    }

    #[test]
    fn pair_check_is_symmetric(coords in arb_points(2, 6), a in 1u64..64, b in 1u64..64) {
        let (f1, f2) = (Face::from_bits(a), Face::from_bits(b));
        prop_assume!(f1.card() <= 3 && f2.card() <= 3);
        prop_assume!(full_dim_ok(f1, &coords) && full_dim_ok(f2, &coords));
        let x = pair_intersection_ok(f1, f2, &coords).unwrap();
        let y = pair_intersection_ok(f2, f1, &coords).unwrap();
        prop_assert_eq!(x.ok, y.ok);
        prop_assert_eq!(x.witness.is_some(), !x.ok);
    }

    #[test]
    fn pair_check_on_the_line(xs in prop::collection::hash_set(-20i64..=20, 4), a in 1u64..16, b in 1u64..16) {
        let xs: Vec<i64> = xs.into_iter().collect();
        let coords = PointConfiguration::new(1, xs.iter().map(|&x| vec![q(x)]).collect()).unwrap();
        let (f1, f2) = (Face::from_bits(a), Face::from_bits(b));
        prop_assume!(f1.card() <= 2 && f2.card() <= 2);
        let hull = |f: Face| {
            let v: Vec<i64> = f.vertices().map(|i| xs[i]).collect();
            (*v.iter().min().unwrap(), *v.iter().max().unwrap())
        };
        let ((l1, h1), (l2, h2)) = (hull(f1), hull(f2));
        let (lo, hi) = (l1.max(l2), h1.min(h2));
        let common = f1.intersection(f2);
        let expected = if common.is_empty() { lo > hi } else { hull(common) == (lo, hi) };
        prop_assert_eq!(pair_intersection_ok(f1, f2, &coords).unwrap().ok, expected);
    }
}

#[test]
fn stacked_volumes_add_up() {
    for d in 3..=4 {
        for n in d + 1..=9 {
            let (sphere, coords) = stacked_polytope_coords(d, n, 17 * n as u64).unwrap();
            let ball = sphere.delta_i(d - 2);
            let sum: BigRational = ball.facets().iter().map(|&f| simplex_volume(f, &coords).unwrap()).sum();
            let rep = certify_geometric_triangulation(&ball, &sphere, &coords).unwrap();
            assert!(rep.pass);
            assert_eq!(rep.volume_polytope, sum);
            assert_eq!(rep.volume_facets, sum);
        }
    }
}

#[test]
fn decimal_coordinates_are_rejected() {
    assert!(PointConfiguration::from_json(r#"{"dim": 1, "coords": [["0.5"], ["1"]]}"#).is_err());
    assert!(PointConfiguration::from_json(r#"{"dim": 1, "coords": [["1/2"], ["1"]]}"#).is_ok());
}
