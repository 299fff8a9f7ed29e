//! Example families: simplex and cross-polytope boundaries, cycles, cyclic
//! polytopes, stacked balls with their boundary spheres (combinatorial and
//! with rational coordinates), join-stacked balls and the Rudin ball fixture.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use crate::complex::{Face, SimplicialComplex, MAX_VERTICES};
use crate::error::{Error, Result};
use crate::geometry::{orientation, PointConfiguration};
use crate::linalg::ExactMatrix;
use crate::rng::seeded;

/// Environment variable naming the Rudin ball fixture file.
pub const RUDIN_FIXTURE_ENV: &str = "GLBC_RUDIN_FIXTURE";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum GeneratorSpec {
    SimplexBoundary { d: usize },
    CrossPolytope { d: usize },
    Cycle { m: usize },
    Cyclic { d: usize, n: usize },
    Stacked { d: usize, n: usize, seed: u64 },
    JoinStacked { m: usize, k: usize },
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter(msg()))
    }
}

fn check_vertices(n: usize) -> Result<()> {
    check(n <= MAX_VERTICES, || format!("{n} vertices exceed the limit of {MAX_VERTICES}"))
}

/// `∂Δ^d`, the boundary of the `d`-simplex on `d + 1` vertices.
pub fn simplex_boundary(d: usize) -> Result<SimplicialComplex> {
    check(d >= 1, || "simplex boundary needs d >= 1".into())?;
    check_vertices(d + 1)?;
    SimplicialComplex::from_facets(d + 1, Face::range(d + 1).ridges())
}

/// Boundary of the `d`-dimensional cross-polytope; `i` and `i + d` are antipodal.
pub fn cross_polytope(d: usize) -> Result<SimplicialComplex> {
    check(d >= 1, || "cross-polytope needs d >= 1".into())?;
    check_vertices(2 * d)?;
    let facets = (0..1u64 << d).map(|mask| {
        (0..d).fold(Face::EMPTY, |f, i| f.with(if mask >> i & 1 == 1 { i + d } else { i }))
    });
    SimplicialComplex::from_facets(2 * d, facets)
}

pub fn cycle(m: usize) -> Result<SimplicialComplex> {
    check(m >= 3, || "a cycle needs at least 3 vertices".into())?;
    check_vertices(m)?;
    SimplicialComplex::from_facets(m, (0..m).map(|i| Face::singleton(i).with((i + 1) % m)))
}

/// Boundary of the cyclic `d`-polytope on `n` vertices via Gale's evenness condition.
pub fn cyclic_boundary(d: usize, n: usize) -> Result<SimplicialComplex> {
    check(d >= 2, || "cyclic polytopes need d >= 2".into())?;
    check(n > d, || format!("cyclic polytope C({d},{n}) needs n >= d + 1"))?;
    check_vertices(n)?;
    let facets = Face::range(n).subsets().filter(|s| s.card() == d && gale_even(*s, n));
    SimplicialComplex::from_facets(n, facets)
}

fn gale_even(s: Face, n: usize) -> bool {
    let outside: Vec<usize> = (0..n).filter(|&v| !s.contains(v)).collect();
    outside.windows(2).all(|w| {
        let between = (w[0] + 1..w[1]).filter(|&k| s.contains(k)).count();
        between % 2 == 0
    })
}

pub fn standard_complex(spec: &GeneratorSpec) -> Result<SimplicialComplex> {
    match *spec {
        GeneratorSpec::SimplexBoundary { d } => simplex_boundary(d),
        GeneratorSpec::CrossPolytope { d } => cross_polytope(d),
        GeneratorSpec::Cycle { m } => cycle(m),
        GeneratorSpec::Cyclic { d, n } => cyclic_boundary(d, n),
        GeneratorSpec::Stacked { d, n, seed } => Ok(stacked_ball_and_sphere(d, n, seed)?.sphere),
        GeneratorSpec::JoinStacked { m, k } => join_stacked_ball(m, k),
    }
}

/// A stacked ball, its boundary and the order in which simplices were glued.
#[derive(Clone, Debug)]
pub struct StackedBall {
    pub d: usize,
    pub seed: u64,
    pub ball: SimplicialComplex,
    pub sphere: SimplicialComplex,
    /// Facets of the ball in construction order; this order is a shelling.
    pub order: Vec<Face>,
    /// For each new vertex `d + 1 + i`, the boundary facet it was glued onto.
    pub glued_onto: Vec<Face>,
}

fn stacking_plan(d: usize, n: usize, seed: u64) -> (Vec<Face>, BTreeSet<Face>) {
    let mut rng = seeded(seed);
    let mut boundary: BTreeSet<Face> = Face::range(d + 1).ridges().collect();
    let mut choices = Vec::with_capacity(n - d - 1);
    for v in d + 1..n {
        let k = rng.random_range(0..boundary.len());
        let chosen = *boundary.iter().nth(k).unwrap();
        boundary.remove(&chosen);
        for r in chosen.ridges() {
            boundary.insert(r.with(v));
        }
        choices.push(chosen);
    }
    (choices, boundary)
}

/// Starts from a `d`-simplex and glues `n - d - 1` further simplices onto
/// seeded choices of boundary facets.
pub fn stacked_ball_and_sphere(d: usize, n: usize, seed: u64) -> Result<StackedBall> {
    check(d >= 1, || "stacked balls need d >= 1".into())?;
    check(n > d, || format!("stacked {d}-ball needs n >= {}", d + 1))?;
    check_vertices(n)?;
    let (choices, boundary) = stacking_plan(d, n, seed);
    let mut order = vec![Face::range(d + 1)];
    order.extend(choices.iter().enumerate().map(|(i, f)| f.with(d + 1 + i)));
    Ok(StackedBall {
        d,
        seed,
        ball: SimplicialComplex::from_facets(n, order.iter().copied())?,
        sphere: SimplicialComplex::from_facets(n, boundary)?,
        order,
        glued_onto: choices,
    })
}

/// `(cone over the m-cycle) * (k-simplex)`, a `(k + 3)`-ball on `m + k + 2`
/// vertices. The apex is vertex `m` and the simplex is `m + 1 ..= m + k + 1`.
pub fn join_stacked_ball(m: usize, k: usize) -> Result<SimplicialComplex> {
    check(m >= 3, || "join-stacked ball needs m >= 3".into())?;
    check(k >= 1, || "join-stacked ball needs k >= 1".into())?;
    check_vertices(m + k + 2)?;
    cycle(m)?.cone()?.join(&SimplicialComplex::simplex(k + 1))
}

/// The balls `K8 = join_stacked_ball(4, 2)` and `K9 = join_stacked_ball(4, 3)`.
pub fn k8() -> SimplicialComplex {
    join_stacked_ball(4, 2).expect("valid parameters")
}

pub fn k9() -> SimplicialComplex {
    join_stacked_ball(4, 3).expect("valid parameters")
}

/// Rational coordinates for a stacked `d`-polytope on `n` vertices.
///
/// Vertices start at the unit simplex; each further vertex is placed beyond
/// the facet chosen by the same plan as [`stacked_ball_and_sphere`], at the
/// facet barycenter plus `ε` times an outward normal, halving `ε` until the
/// point is beyond that facet and beneath all others. The returned complex
/// is identical to the combinatorial stacked sphere for the same seed.
pub fn stacked_polytope_coords(d: usize, n: usize, seed: u64) -> Result<(SimplicialComplex, PointConfiguration)> {
    check(d >= 2, || "stacked polytope coordinates need d >= 2".into())?;
    let stacked = stacked_ball_and_sphere(d, n, seed)?;
    let zero = BigRational::zero;
    let mut points: Vec<Vec<BigRational>> = vec![vec![zero(); d]];
    for i in 0..d {
        let mut e = vec![zero(); d];
        e[i] = BigRational::one();
        points.push(e);
    }
    let mut boundary: BTreeSet<Face> = Face::range(d + 1).ridges().collect();
    for (step, &facet) in stacked.glued_onto.iter().enumerate() {
        let v = d + 1 + step;
        let centroid = centroid(&points);
        let fv: Vec<&Vec<BigRational>> = facet.vertices().map(|u| &points[u]).collect();
        let normal = outward_normal(&fv, &centroid);
        let k = BigRational::from_integer((fv.len() as i64).into());
        let bary: Vec<BigRational> = (0..d).map(|j| fv.iter().map(|p| &p[j]).sum::<BigRational>() / &k).collect();
        let mut eps = BigRational::one();
        let candidate = loop {
            let q: Vec<BigRational> = (0..d).map(|j| &bary[j] + &eps * &normal[j]).collect();
            let placed = boundary.iter().all(|&g| {
                let gv: Vec<&Vec<BigRational>> = g.vertices().map(|u| &points[u]).collect();
                let inside = orientation(&gv, &centroid);
                let side = orientation(&gv, &q);
                if g == facet {
                    side == -inside && side != 0
                } else {
                    side == inside
                }
            });
            if placed {
                break q;
            }
            eps /= BigRational::from_integer(2.into());
        };
        points.push(candidate);
        boundary.remove(&facet);
        for r in facet.ridges() {
            boundary.insert(r.with(v));
        }
    }
    debug_assert_eq!(SimplicialComplex::from_facets(n, boundary.iter().copied()).unwrap(), stacked.sphere);
    Ok((stacked.sphere, PointConfiguration::new(d, points)?))
}

fn centroid(points: &[Vec<BigRational>]) -> Vec<BigRational> {
    let k = BigRational::from_integer((points.len() as i64).into());
    (0..points[0].len()).map(|j| points.iter().map(|p| &p[j]).sum::<BigRational>() / &k).collect()
}

/// Normal of the hyperplane through `facet`, pointing away from `inside`.
fn outward_normal(facet: &[&Vec<BigRational>], inside: &[BigRational]) -> Vec<BigRational> {
    let base = facet[0];
    let rows: Vec<Vec<BigRational>> = facet[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    let mut normal = ExactMatrix::from_rows(rows).nullspace().remove(0);
    let towards_inside: BigRational =
        normal.iter().zip(inside.iter().zip(base)).map(|(nv, (a, b))| nv * (a - b)).sum();
    if towards_inside > BigRational::zero() {
        for x in &mut normal {
            *x = -x.clone();
        }
    }
    normal
}

/// Loads the Rudin ball from `path`, or from the file named by
/// `GLBC_RUDIN_FIXTURE` when `path` is `None`.
pub fn rudin_fixture(path: Option<&Path>) -> Result<SimplicialComplex> {
    let path: PathBuf = match path {
        Some(p) => p.to_path_buf(),
        None => std::env::var_os(RUDIN_FIXTURE_ENV)
            .map(PathBuf::from)
            .ok_or_else(|| Error::FixtureUnavailable(format!("{RUDIN_FIXTURE_ENV} is not set")))?,
    };
    let text = std::fs::read_to_string(&path)
        .map_err(|e| Error::FixtureUnavailable(format!("{}: {e}", path.display())))?;
    SimplicialComplex::from_json(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{is_homology_ball, is_homology_sphere, stackedness_index};
    use crate::linalg::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn standard_families() {
        let o = cross_polytope(3).unwrap();
        assert_eq!(o.facets().len(), 8);
        assert_eq!(o.missing_faces(None).len(), 3);
        assert_eq!(cycle(5).unwrap().h_vector().0, vec![1, 3, 1]);
        let s = simplex_boundary(4).unwrap();
        assert_eq!(s.facets().len(), 5);
        assert!(s.facets().iter().all(|f| f.card() == 4));
        assert!(cycle(2).is_err() && simplex_boundary(0).is_err());
    }

    #[test]
    fn cyclic_polytopes() {
        assert_eq!(cyclic_boundary(2, 6).unwrap(), cycle(6).unwrap());
        assert_eq!(cyclic_boundary(4, 5).unwrap(), simplex_boundary(4).unwrap());
        let c47 = cyclic_boundary(4, 7).unwrap();
        assert_eq!(c47.facets().len(), 14);
        assert_eq!(c47.h_vector().0, vec![1, 3, 6, 3, 1]);
        assert!(cyclic_boundary(4, 4).is_err());
    }

    #[test]
    fn stacked_counts_and_shape() {
        for d in 2..6 {
            for n in d + 1..d + 6 {
                let s = stacked_ball_and_sphere(d, n, 7 + n as u64).unwrap();
                assert_eq!(s.sphere.facets().len(), (d + 1) + (n - d - 1) * (d - 1));
                assert_eq!(s.ball.facets().len(), n - d);
                assert!(is_homology_ball(&s.ball, Q).is_ball());
                assert!(is_homology_sphere(&s.sphere, Q).is_sphere());
                let expected_index = if n > d + 1 { 1 } else { 0 };
                assert_eq!(stackedness_index(&s.ball, Q).unwrap(), expected_index);
            }
        }
        let s = stacked_ball_and_sphere(3, 4, 0).unwrap();
        assert_eq!(s.ball, SimplicialComplex::simplex(4));
        assert_eq!(s.sphere, simplex_boundary(3).unwrap());
    }

    #[test]
    fn stacked_is_deterministic() {
        let a = stacked_ball_and_sphere(4, 10, 42).unwrap();
        let b = stacked_ball_and_sphere(4, 10, 42).unwrap();
        assert_eq!(a.ball.to_json(), b.ball.to_json());
        assert_eq!(a.sphere.to_json(), b.sphere.to_json());
    }

    #[test]
    fn join_family() {
        let k = k8();
        assert_eq!((k.n(), k.dim(), k.facets().len()), (8, 5, 4));
        assert_eq!(stackedness_index(&k, Q).unwrap(), 2);
        let k = k9();
        assert_eq!((k.n(), k.dim()), (9, 6));
        assert_eq!(stackedness_index(&k, Q).unwrap(), 2);
    }

    #[test]
    fn coordinates_match_combinatorics() {
        let (sphere, coords) = stacked_polytope_coords(3, 5, 11).unwrap();
        assert_eq!(sphere, stacked_ball_and_sphere(3, 5, 11).unwrap().sphere);
        assert_eq!(coords.points().len(), 5);
        let (s, c) = stacked_polytope_coords(3, 4, 0).unwrap();
        assert_eq!(s, simplex_boundary(3).unwrap());
        assert_eq!(c.points()[2][1], BigRational::one());
    }

    #[test]
    fn missing_fixture_is_reported() {
        let err = rudin_fixture(Some(Path::new("/nonexistent/rudin.json"))).unwrap_err();
        assert!(matches!(err, Error::FixtureUnavailable(_)));
    }
}
