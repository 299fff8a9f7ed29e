use std::collections::BTreeSet;

use glbc_core::generators::{
    cross_polytope, cycle, cyclic_boundary, join_stacked_ball, simplex_boundary, stacked_ball_and_sphere,
    stacked_polytope_coords, standard_complex, GeneratorSpec,
};
use glbc_core::homology::{interior_faces, is_homology_ball, is_homology_sphere};
use glbc_core::{Face, FieldSpec};

const Q: FieldSpec = FieldSpec::Rationals;

#[test]
fn generated_spheres_and_balls() {
    let mut spheres = Vec::new();
    for d in 1..=6 {
        spheres.push(simplex_boundary(d).unwrap());
        spheres.push(cross_polytope(d).unwrap());
    }
    for m in 3..=7 {
        spheres.push(cycle(m).unwrap());
    }
    for (d, n) in [(3, 6), (4, 7), (4, 9), (5, 8), (6, 10)] {
        spheres.push(cyclic_boundary(d, n).unwrap());
    }
    let mut balls = Vec::new();
    for seed in 0..10 {
        let s = stacked_ball_and_sphere(2 + seed as usize % 5, 10, seed).unwrap();
        spheres.push(s.sphere);
        balls.push(s.ball);
    }
    for (m, k) in [(3, 1), (4, 2), (4, 3), (5, 2)] {
        balls.push(join_stacked_ball(m, k).unwrap());
    }
    for s in &spheres {
        assert!(is_homology_sphere(s, Q).is_sphere(), "{:?}", s.facets());
    }
    for b in &balls {
        assert!(is_homology_ball(b, Q).is_ball(), "{:?}", b.facets());
    }
}

#[test]
fn stacked_spheres_have_flat_h_vectors() {
    for d in 3..=6 {
        for n in d + 2..=12 {
            let h = stacked_ball_and_sphere(d, n, (d * 31 + n) as u64).unwrap().sphere.h_vector();
            for i in 1..d {
                assert_eq!(h.0[i], (n - d) as i64, "d = {d}, n = {n}");
            }
        }
    }
}

#[test]
fn cyclic_polytopes_are_strict() {
    for d in 4..=6 {
        for n in d + 2..=d + 4 {
            let h = cyclic_boundary(d, n).unwrap().h_vector();
            assert!(h.0[1] < h.0[2], "C({d},{n}) has h = {h:?}");
        }
    }
}

#[test]
fn join_interior_faces() {
    for m in 3..=6 {
        for k in 1..=3 {
            let ball = join_stacked_ball(m, k).unwrap();
            let apex = m;
            let sigma = Face::range(m + k + 2).difference(Face::range(m + 1));
            let cone = cycle(m).unwrap().cone().unwrap();
            let expected: BTreeSet<Face> =
                cone.faces().filter(|f| f.contains(apex)).map(|f| f.union(sigma)).collect();
            let got: BTreeSet<Face> = interior_faces(&ball, Q).unwrap().into_iter().collect();
            assert_eq!(got, expected, "m = {m}, k = {k}");
        }
    }
}

#[test]
fn generators_are_deterministic() {
    for seed in [0, 1, 99, u64::MAX] {
        let a = stacked_ball_and_sphere(4, 11, seed).unwrap();
        let b = stacked_ball_and_sphere(4, 11, seed).unwrap();
        assert_eq!(a.ball.to_json(), b.ball.to_json());
        assert_eq!(a.sphere.to_json(), b.sphere.to_json());
        let (s1, p1) = stacked_polytope_coords(3, 8, seed).unwrap();
        let (s2, p2) = stacked_polytope_coords(3, 8, seed).unwrap();
        assert_eq!(s1.to_json(), s2.to_json());
        assert_eq!(p1.to_json(), p2.to_json());
        assert_eq!(s1, stacked_ball_and_sphere(3, 8, seed).unwrap().sphere);
    }
    let spec = GeneratorSpec::Stacked { d: 3, n: 9, seed: 5 };
    assert_eq!(standard_complex(&spec).unwrap(), standard_complex(&spec).unwrap());
}

#[test]
fn parameter_ranges_are_validated() {
    assert!(cyclic_boundary(4, 4).is_err());
    assert!(cycle(2).is_err());
    assert!(stacked_ball_and_sphere(3, 3, 0).is_err());
    assert!(join_stacked_ball(2, 1).is_err());
    assert!(simplex_boundary(0).is_err());
}
