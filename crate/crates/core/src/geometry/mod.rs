//! Exact rational convex geometry: orientation, simplex volumes, pairwise
//! intersection tests and certification that a complex triangulates a
//! simplicial polytope.

pub mod lp;

use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize, Serializer};

use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::linalg::{sign, ExactMatrix};
use lp::{LinearProgram, LpOutcome};

pub type Rational = BigRational;

/// One exact rational point per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConfiguration {
    dim: usize,
    points: Vec<Vec<Rational>>,
}

/// JSON form: `{"dim": 2, "coords": [["0","0"], ["1/2","3"]]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoordinateFile {
    pub dim: usize,
    pub coords: Vec<Vec<String>>,
}

impl PointConfiguration {
    pub fn new(dim: usize, points: Vec<Vec<Rational>>) -> Result<Self> {
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::Parse(format!("point of length {} in dimension {dim}", p.len())));
        }
        Ok(PointConfiguration { dim, points })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Vec<Rational>] {
        &self.points
    }

    pub fn point(&self, v: usize) -> &[Rational] {
        &self.points[v]
    }

    pub fn from_file(file: CoordinateFile) -> Result<Self> {
        let points = file
            .coords
            .iter()
            .map(|p| {
                p.iter()
                    .map(|s| {
                        Rational::from_str(s.trim())
                            .map_err(|_| Error::Parse(format!("`{s}` is not an exact rational")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(file.dim, points)
    }

    pub fn to_file(&self) -> CoordinateFile {
        CoordinateFile {
            dim: self.dim,
            coords: self.points.iter().map(|p| p.iter().map(|x| x.to_string()).collect()).collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_file(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("coordinates serialize")
    }

    fn face_points(&self, face: Face) -> Vec<&[Rational]> {
        face.vertices().map(|v| self.point(v)).collect()
    }
}

fn differences(points: &[&[Rational]], base: &[Rational]) -> Vec<Vec<Rational>> {
    points.iter().map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect()).collect()
}

/// Sign of `det[p_1 - p_0, ..., p_{d-1} - p_0, q - p_0]` for `d` points spanning a hyperplane.
pub fn orientation<P: AsRef<[Rational]>>(hyperplane: &[P], q: &[Rational]) -> i32 {
    let base = hyperplane[0].as_ref();
    let mut rows: Vec<&[Rational]> = hyperplane[1..].iter().map(|p| p.as_ref()).collect();
    rows.push(q);
    sign(&ExactMatrix::from_rows(differences(&rows, base)).determinant())
}

fn factorial(d: usize) -> Rational {
    (1..=d as i64).fold(Rational::one(), |acc, k| acc * Rational::from_integer(k.into()))
}

/// `|det(v_i - v_0)| / d!` for `d + 1` points in `ℝ^d`.
pub fn simplex_volume_of_points<P: AsRef<[Rational]>>(points: &[P]) -> Rational {
    let d = points[0].as_ref().len();
    assert_eq!(points.len(), d + 1, "a d-simplex needs d + 1 points");
    let rest: Vec<&[Rational]> = points[1..].iter().map(|p| p.as_ref()).collect();
    ExactMatrix::from_rows(differences(&rest, points[0].as_ref())).determinant().abs() / factorial(d)
}

pub fn simplex_volume(face: Face, coords: &PointConfiguration) -> Result<Rational> {
    if face.card() != coords.dim() + 1 {
        return Err(Error::InvalidParameter(format!(
            "volume needs {} vertices, face {face:?} has {}",
            coords.dim() + 1,
            face.card()
        )));
    }
    Ok(simplex_volume_of_points(&coords.face_points(face)))
}

/// True iff the vertices of `face` are affinely independent.
pub fn full_dim_ok(face: Face, coords: &PointConfiguration) -> bool {
    let pts = coords.face_points(face);
    if pts.len() <= 1 {
        return true;
    }
    let m = ExactMatrix::from_rows(differences(&pts[1..], pts[0]));
    m.rank_by_elimination() == pts.len() - 1
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCheck {
    pub ok: bool,
    /// A point of `[F1] ∩ [F2]` outside `[F1 ∩ F2]` when the check fails.
    pub witness: Option<Vec<Rational>>,
}

fn intersection_lp(f1: &[&[Rational]], f2: &[&[Rational]], objective: Vec<Rational>) -> LinearProgram {
    let d = f1[0].len();
    let (k1, k2) = (f1.len(), f2.len());
    let zero = Rational::zero;
    let mut a = Vec::with_capacity(d + 2);
    for j in 0..d {
        let mut row: Vec<Rational> = f1.iter().map(|p| p[j].clone()).collect();
        row.extend(f2.iter().map(|p| -p[j].clone()));
        a.push(row);
    }
    let mut s1 = vec![Rational::one(); k1];
    s1.extend((0..k2).map(|_| zero()));
    let mut s2: Vec<Rational> = (0..k1).map(|_| zero()).collect();
    s2.extend((0..k2).map(|_| Rational::one()));
    a.push(s1);
    a.push(s2);
    let mut b: Vec<Rational> = (0..d).map(|_| zero()).collect();
    b.push(Rational::one());
    b.push(Rational::one());
    LinearProgram { a, b, c: objective }
}

fn combination(points: &[&[Rational]], weights: &[Rational]) -> Vec<Rational> {
    let d = points[0].len();
    (0..d).map(|j| points.iter().zip(weights).map(|(p, w)| &p[j] * w).sum()).collect()
}

/// Decides `[F1] ∩ [F2] = [F1 ∩ F2]` by exact linear programming.
///
/// With `G = F1 ∩ F2`, maximizes the barycentric mass on `F1 \ G` (and on
/// `F2 \ G`) over common points; both optima vanish iff the property holds.
/// For disjoint faces the property holds iff the system is infeasible.
pub fn pair_intersection_ok(f1: Face, f2: Face, coords: &PointConfiguration) -> Result<PairCheck> {
    for f in [f1, f2] {
        if !full_dim_ok(f, coords) {
            return Err(Error::Precondition(format!("face {f:?} is affinely dependent")));
        }
    }
    let p1 = coords.face_points(f1);
    let p2 = coords.face_points(f2);
    let common = f1.intersection(f2);
    let excess = |face: Face, first: bool| -> Vec<Rational> {
        let outside: Vec<Rational> =
            face.vertices().map(|v| if common.contains(v) { Rational::zero() } else { Rational::one() }).collect();
        let zeros = |k: usize| (0..k).map(|_| Rational::zero()).collect::<Vec<_>>();
        if first {
            [outside, zeros(f2.card())].concat()
        } else {
            [zeros(f1.card()), outside].concat()
        }
    };
    if common.is_empty() {
        let lp = intersection_lp(&p1, &p2, vec![Rational::zero(); f1.card() + f2.card()]);
        return Ok(match lp.solve() {
            LpOutcome::Optimal { x, .. } => {
                Some(combination(&p1, &x[..f1.card()])).map_or(PairCheck { ok: true, witness: None }, |w| PairCheck {
                    ok: false,
                    witness: Some(w),
                })
            }
            _ => PairCheck { ok: true, witness: None },
        });
    }
    for first in [true, false] {
        let lp = intersection_lp(&p1, &p2, excess(if first { f1 } else { f2 }, first));
        if let LpOutcome::Optimal { x, value } = lp.solve() {
            debug_assert!(lp.is_feasible(&x));
            if value.is_positive() {
                return Ok(PairCheck { ok: false, witness: Some(combination(&p1, &x[..f1.card()])) });
            }
        }
    }
    Ok(PairCheck { ok: true, witness: None })
}

fn ser_rational<S: Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(x)
}

fn ser_point<S: Serializer>(p: &Option<Vec<Rational>>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match p {
        None => s.serialize_none(),
        Some(v) => s.collect_seq(v.iter().map(|x| x.to_string())),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GeometricTriangulationReport {
    pub full_dim_ok: bool,
    pub offending_facet: Option<Face>,
    pub pairwise_ok: bool,
    pub offending_pair: Option<(Face, Face)>,
    #[serde(serialize_with = "ser_point")]
    pub witness: Option<Vec<Rational>>,
    #[serde(serialize_with = "ser_rational")]
    pub volume_polytope: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub volume_facets: Rational,
    pub cone_volumes_positive: bool,
    pub pass: bool,
}

/// Checks the preconditions of [`certify_geometric_triangulation`].
fn check_boundary_pairing(
    triangulation: &SimplicialComplex,
    boundary: &SimplicialComplex,
    coords: &PointConfiguration,
) -> Result<()> {
    let d = coords.dim();
    let pre = |msg: String| Err(Error::Precondition(msg));
    if coords.points().len() != boundary.n() || triangulation.n() != boundary.n() {
        return pre(format!(
            "{} points for complexes on {} and {} vertices",
            coords.points().len(),
            triangulation.n(),
            boundary.n()
        ));
    }
    if !triangulation.is_pure() || triangulation.dim() != d as isize {
        return pre(format!("triangulation must be pure of dimension {d}"));
    }
    if triangulation.vertex_set() != boundary.vertex_set() {
        return pre("triangulation and boundary have different vertex sets".into());
    }
    if let Some(f) = boundary.facets().iter().find(|f| !triangulation.contains(**f)) {
        return pre(format!("boundary facet {f:?} is not a face of the triangulation"));
    }
    let used: Vec<usize> = boundary.vertex_set().vertices().collect();
    for &facet in boundary.facets() {
        if facet.card() != d {
            return pre(format!("boundary facet {facet:?} does not have {d} vertices"));
        }
        let hyper = coords.face_points(facet);
        let signs: Vec<i32> =
            used.iter().filter(|&&v| !facet.contains(v)).map(|&v| orientation(&hyper, coords.point(v))).collect();
        if signs.iter().any(|&s| s == 0 || s != signs[0]) {
            return pre(format!("boundary facet {facet:?} does not span a supporting hyperplane"));
        }
    }
    Ok(())
}

/// Certifies that `triangulation` is a geometric triangulation of the
/// polytope with boundary complex `boundary` and vertices `coords`.
///
/// Checks that every facet is full-dimensional, that every pair of facets
/// meets in their common face, and that the facet volumes add up exactly to
/// the volume of the polytope (computed as a sum of cones from the vertex
/// centroid over the boundary facets). Given the first two checks the pieces
/// have disjoint interiors inside the polytope, so equal volume forces the
/// union to be the whole polytope.
pub fn certify_geometric_triangulation(
    triangulation: &SimplicialComplex,
    boundary: &SimplicialComplex,
    coords: &PointConfiguration,
) -> Result<GeometricTriangulationReport> {
    check_boundary_pairing(triangulation, boundary, coords)?;
    let facets = triangulation.facets();
    let offending_facet = facets.iter().copied().find(|f| !full_dim_ok(*f, coords));

    let mut offending_pair = None;
    let mut witness = None;
    if offending_facet.is_none() {
        'pairs: for (i, &a) in facets.iter().enumerate() {
            for &b in &facets[i + 1..] {
                let check = pair_intersection_ok(a, b, coords)?;
                if !check.ok {
                    offending_pair = Some((a, b));
                    witness = check.witness;
                    break 'pairs;
                }
            }
        }
    }

    let used: Vec<&[Rational]> = boundary.vertex_set().vertices().map(|v| coords.point(v)).collect();
    let k = Rational::from_integer((used.len() as i64).into());
    let centroid: Vec<Rational> = (0..coords.dim()).map(|j| used.iter().map(|p| &p[j]).sum::<Rational>() / &k).collect();
    let mut cone_volumes_positive = true;
    let mut volume_polytope = Rational::zero();
    for &f in boundary.facets() {
        let mut pts = coords.face_points(f);
        pts.push(&centroid);
        let v = simplex_volume_of_points(&pts);
        cone_volumes_positive &= v.is_positive();
        volume_polytope += v;
    }
    let mut volume_facets = Rational::zero();
    for &f in facets {
        volume_facets += simplex_volume(f, coords)?;
    }
    let pass = offending_facet.is_none()
        && offending_pair.is_none()
        && cone_volumes_positive
        && volume_facets == volume_polytope;
    Ok(GeometricTriangulationReport {
        full_dim_ok: offending_facet.is_none(),
        offending_facet,
        pairwise_ok: offending_facet.is_none() && offending_pair.is_none(),
        offending_pair,
        witness,
        volume_polytope,
        volume_facets,
        cone_volumes_positive,
        pass,
    })
}

/// Adds one flipped simplex to a triangulation: for adjacent facets `R + a`
/// and `R + b`, the simplex `(R - u) + a + b`. The result overlaps the
/// original facets, so it is a negative control for the pairwise check.
pub fn swapped_diagonal_corruption(
    triangulation: &SimplicialComplex,
    coords: &PointConfiguration,
) -> Option<SimplicialComplex> {
    let facets = triangulation.facets();
    for (i, &f1) in facets.iter().enumerate() {
        for &f2 in &facets[i + 1..] {
            let ridge = f1.intersection(f2);
            if ridge.card() + 1 != f1.card() {
                continue;
            }
            let ab = f1.symmetric_difference(f2);
            for u in ridge.vertices() {
                let flipped = ridge.without(u).union(ab);
                if !triangulation.contains(flipped) && full_dim_ok(flipped, coords) {
                    let mut new_facets = facets.to_vec();
                    new_facets.push(flipped);
                    return SimplicialComplex::from_facets(triangulation.n(), new_facets).ok();
                }
            }
        }
    }
    None
}
