//! Reduced simplicial homology over a field and the link conditions built
//! on it: homology spheres and balls, boundary complexes, stackedness and
//! Reisner's Cohen–Macaulay criterion.

use std::collections::HashMap;

use serde::Serialize;

use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::linalg::{small_integer_rank, FieldSpec};

/// Reduced Betti numbers `b̃_{-1}, ..., b̃_dim` over `field`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiVector {
    pub field: FieldSpec,
    /// `values[i + 1]` is `b̃_i`.
    pub values: Vec<usize>,
}

impl BettiVector {
    /// `b̃_i`, zero outside `-1..=dim`.
    pub fn get(&self, i: isize) -> usize {
        usize::try_from(i + 1)
            .ok()
            .and_then(|k| self.values.get(k).copied())
            .unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&b| b == 0)
    }
}

/// Ranks of the augmented boundary maps `∂_c : C_{c-1} → C_{c-2}` indexed
/// by face cardinality `c >= 1` (so `rank[1]` is the augmentation).
fn boundary_ranks(complex: &SimplicialComplex, field: FieldSpec) -> Vec<usize> {
    let top = (complex.dim() + 1).max(0) as usize;
    let mut ranks = vec![0; top + 2];
    for card in 1..=top {
        let rows_faces = complex.faces_of_card(card);
        let cols_faces = complex.faces_of_card(card - 1);
        if rows_faces.is_empty() {
            continue;
        }
        let col_index: HashMap<Face, usize> =
            cols_faces.iter().enumerate().map(|(i, f)| (*f, i)).collect();
        let rows: Vec<Vec<i64>> = rows_faces
            .iter()
            .map(|f| {
                let mut row = vec![0i64; cols_faces.len()];
                for (pos, v) in f.vertices().enumerate() {
                    row[col_index[&f.without(v)]] = if pos % 2 == 0 { 1 } else { -1 };
                }
                row
            })
            .collect();
        ranks[card] = small_integer_rank(&rows, cols_faces.len(), field);
    }
    ranks
}

/// Reduced Betti numbers by ranks of boundary matrices on lexicographically
/// ordered face bases.
pub fn betti_numbers(complex: &SimplicialComplex, field: FieldSpec) -> BettiVector {
    let f = complex.f_vector();
    let ranks = boundary_ranks(complex, field);
    let values = (0..f.0.len())
        .map(|card| f.0[card] as usize - ranks[card] - ranks[card + 1])
        .collect();
    BettiVector { field, values }
}

/// A face and homology degree where a link condition fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub face: Face,
    pub index: isize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VerdictKind {
    Sphere,
    Ball,
    Neither,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BallSphereVerdict {
    pub kind: VerdictKind,
    pub dim: isize,
    pub betti: BettiVector,
    pub witness: Option<Witness>,
    /// Set for inputs of dimension `<= 0`, where the definitions degenerate.
    pub low_dimensional: bool,
}

impl BallSphereVerdict {
    pub fn is_sphere(&self) -> bool {
        self.kind == VerdictKind::Sphere
    }

    pub fn is_ball(&self) -> bool {
        self.kind == VerdictKind::Ball
    }
}

/// Betti numbers of every link of one complex, computed on demand.
pub struct LinkHomology<'a> {
    complex: &'a SimplicialComplex,
    field: FieldSpec,
    cache: HashMap<Face, BettiVector>,
}

impl<'a> LinkHomology<'a> {
    pub fn new(complex: &'a SimplicialComplex, field: FieldSpec) -> Self {
        LinkHomology { complex, field, cache: HashMap::new() }
    }

    pub fn betti(&mut self, face: Face) -> Result<&BettiVector> {
        if !self.cache.contains_key(&face) {
            let lk = self.complex.link(face)?;
            let b = betti_numbers(&lk.complex, self.field);
            self.cache.insert(face, b);
        }
        Ok(&self.cache[&face])
    }

    /// Link dimension, from the facets containing `face`.
    fn link_dim(&self, face: Face) -> isize {
        self.complex
            .facets()
            .iter()
            .filter(|f| face.is_subset(**f))
            .map(|f| f.dim() - face.card() as isize)
            .max()
            .unwrap_or(-2)
    }
}

/// Checks `H̃_{d-#F-i}(lk F) = k` for `i = 0` and `0` for `i > 0` at every face,
/// with `d` the target dimension.
fn sphere_witness(
    complex: &SimplicialComplex,
    d: isize,
    links: &mut LinkHomology<'_>,
) -> Result<Option<Witness>> {
    for face in complex.faces() {
        let top = d - face.card() as isize;
        let b = links.betti(face)?;
        if b.get(top) != 1 {
            return Ok(Some(Witness { face, index: top }));
        }
        if let Some(i) = (-1..top).find(|&i| b.get(i) != 0) {
            return Ok(Some(Witness { face, index: i }));
        }
    }
    Ok(None)
}

pub fn is_homology_sphere(complex: &SimplicialComplex, field: FieldSpec) -> BallSphereVerdict {
    let d = complex.dim();
    let mut links = LinkHomology::new(complex, field);
    let witness = sphere_witness(complex, d, &mut links).expect("faces of the complex have links");
    BallSphereVerdict {
        kind: if witness.is_none() { VerdictKind::Sphere } else { VerdictKind::Neither },
        dim: d,
        betti: betti_numbers(complex, field),
        witness,
        low_dimensional: d <= 0,
    }
}

/// Result of the link conditions of a homology ball.
enum BallLinks {
    Ok { boundary_faces: Vec<Face> },
    Fails(Witness),
}

fn ball_links(complex: &SimplicialComplex, links: &mut LinkHomology<'_>) -> Result<BallLinks> {
    let d = complex.dim();
    let mut boundary_faces = Vec::new();
    for face in complex.faces() {
        let top = d - face.card() as isize;
        let b = links.betti(face)?;
        if b.get(top) > 1 {
            return Ok(BallLinks::Fails(Witness { face, index: top }));
        }
        if let Some(i) = (-1..top).find(|&i| b.get(i) != 0) {
            return Ok(BallLinks::Fails(Witness { face, index: i }));
        }
        if b.get(top) == 0 {
            boundary_faces.push(face);
        }
    }
    Ok(BallLinks::Ok { boundary_faces })
}

/// Builds the complex on a face set, or returns a face whose subsets are missing.
fn closed_complex(n: usize, faces: &[Face]) -> std::result::Result<SimplicialComplex, Face> {
    let set: std::collections::HashSet<Face> = faces.iter().copied().collect();
    for &f in faces {
        if let Some(r) = f.ridges().find(|r| !set.contains(r)) {
            return Err(r);
        }
    }
    Ok(SimplicialComplex::from_facets(n, faces.iter().copied()).expect("nonempty face set"))
}

pub fn is_homology_ball(complex: &SimplicialComplex, field: FieldSpec) -> BallSphereVerdict {
    let d = complex.dim();
    let mut links = LinkHomology::new(complex, field);
    let neither = |witness| BallSphereVerdict {
        kind: VerdictKind::Neither,
        dim: d,
        betti: betti_numbers(complex, field),
        witness: Some(witness),
        low_dimensional: d <= 0,
    };
    let boundary_faces = match ball_links(complex, &mut links).expect("faces have links") {
        BallLinks::Fails(w) => return neither(w),
        BallLinks::Ok { boundary_faces } => boundary_faces,
    };
    if boundary_faces.is_empty() {
        // every face, ∅ included, has nonvanishing top link homology
        return neither(Witness { face: Face::EMPTY, index: d });
    }
    let boundary = match closed_complex(complex.n(), &boundary_faces) {
        Ok(b) => b,
        Err(face) => return neither(Witness { face, index: d - face.card() as isize }),
    };
    let sphere = is_homology_sphere(&boundary, field);
    if boundary.dim() != d - 1 {
        return neither(Witness { face: Face::EMPTY, index: d - 1 });
    }
    if let Some(w) = sphere.witness {
        return neither(w);
    }
    BallSphereVerdict {
        kind: VerdictKind::Ball,
        dim: d,
        betti: betti_numbers(complex, field),
        witness: None,
        low_dimensional: d <= 0,
    }
}

/// `∂Δ = {F ∈ Δ : H̃_{d-#F}(lk F) = 0}`.
pub fn boundary_complex(complex: &SimplicialComplex, field: FieldSpec) -> Result<SimplicialComplex> {
    let mut links = LinkHomology::new(complex, field);
    match ball_links(complex, &mut links)? {
        BallLinks::Fails(w) => Err(Error::NotABall(format!(
            "link of {:?} has wrong homology in degree {}",
            w.face, w.index
        ))),
        BallLinks::Ok { boundary_faces } if boundary_faces.is_empty() => {
            Err(Error::NotABall("boundary is void".into()))
        }
        BallLinks::Ok { boundary_faces } => closed_complex(complex.n(), &boundary_faces)
            .map_err(|f| Error::NotABall(format!("boundary faces are not closed under subsets at {f:?}"))),
    }
}

/// Faces of a homology ball not on its boundary, sorted by size then lexicographically.
pub fn interior_faces(ball: &SimplicialComplex, field: FieldSpec) -> Result<Vec<Face>> {
    let verdict = is_homology_ball(ball, field);
    if !verdict.is_ball() {
        return Err(Error::NotABall(format!("witness {:?}", verdict.witness)));
    }
    let boundary = boundary_complex(ball, field)?;
    Ok(ball.faces().filter(|f| !boundary.contains(*f)).collect())
}

/// The least `s = r - 1 >= 0` such that the ball has no interior faces of
/// dimension `<= d - r`, i.e. `d` minus the smallest interior face dimension.
pub fn stackedness_index(ball: &SimplicialComplex, field: FieldSpec) -> Result<usize> {
    let d = ball.dim();
    let interior = interior_faces(ball, field)?;
    let min_dim = interior.iter().map(|f| f.dim()).min().expect("facets are interior");
    Ok((d - min_dim) as usize)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CmVerdict {
    pub cohen_macaulay: bool,
    pub witness: Option<Witness>,
}

/// Reisner's criterion: `H̃_i(lk F) = 0` for all `i != dim lk F`, at every face.
pub fn is_cohen_macaulay(complex: &SimplicialComplex, field: FieldSpec) -> CmVerdict {
    let mut links = LinkHomology::new(complex, field);
    for face in complex.faces() {
        let top = links.link_dim(face);
        let b = links.betti(face).expect("face of the complex");
        if let Some(i) = (-1..top).find(|&i| b.get(i) != 0) {
            return CmVerdict { cohen_macaulay: false, witness: Some(Witness { face, index: i }) };
        }
    }
    CmVerdict { cohen_macaulay: true, witness: None }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: usize, faces: &[&[usize]]) -> SimplicialComplex {
        SimplicialComplex::from_vertex_lists(n, faces).unwrap()
    }

    fn octahedron() -> SimplicialComplex {
        let facets: Vec<Vec<usize>> = (0..8usize)
            .map(|m| (0..3).map(|i| if m >> i & 1 == 1 { i + 3 } else { i }).collect())
            .collect();
        SimplicialComplex::from_vertex_lists(6, &facets).unwrap()
    }

    fn b5() -> SimplicialComplex {
        c(5, &[&[0, 1, 2, 3], &[0, 1, 2, 4]])
    }

    fn k8() -> SimplicialComplex {
        let square = c(4, &[&[0, 1], &[1, 2], &[2, 3], &[0, 3]]);
        square.cone().unwrap().join(&SimplicialComplex::simplex(3)).unwrap()
    }

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn betti_examples() {
        assert_eq!(betti_numbers(&octahedron(), Q).values, vec![0, 0, 0, 1]);
        assert!(betti_numbers(&b5(), Q).is_zero());
        let k5 = SimplicialComplex::simplex(5).skeleton(1);
        assert_eq!(betti_numbers(&k5, Q).get(1), 6);
        assert_eq!(betti_numbers(&SimplicialComplex::empty_face(0), Q).values, vec![1]);
        let two_points = c(2, &[&[0], &[1]]);
        assert_eq!(betti_numbers(&two_points, Q).values, vec![0, 1]);
    }

    #[test]
    fn projective_plane_depends_on_characteristic() {
        // 6-vertex RP^2
        let rp2 = c(
            6,
            &[
                &[0, 1, 2], &[0, 2, 3], &[0, 3, 4], &[0, 4, 5], &[0, 1, 5],
                &[1, 2, 4], &[2, 3, 5], &[1, 3, 4], &[2, 4, 5], &[1, 3, 5],
            ],
        );
        assert!(betti_numbers(&rp2, Q).is_zero());
        assert_eq!(betti_numbers(&rp2, FieldSpec::Prime(2)).values, vec![0, 0, 1, 1]);
        assert!(!is_homology_sphere(&rp2, FieldSpec::Prime(2)).is_sphere());
    }

    #[test]
    fn spheres() {
        assert!(is_homology_sphere(&octahedron(), Q).is_sphere());
        let v = is_homology_sphere(&b5(), Q);
        assert_eq!(v.kind, VerdictKind::Neither);
        assert_eq!(v.witness, Some(Witness { face: Face::EMPTY, index: 3 }));
        let s0 = is_homology_sphere(&c(2, &[&[0], &[1]]), Q);
        assert!(s0.is_sphere() && s0.low_dimensional);
    }

    #[test]
    fn balls() {
        assert!(is_homology_ball(&b5(), Q).is_ball());
        let k = k8();
        assert_eq!(k.dim(), 5);
        assert!(is_homology_ball(&k, Q).is_ball());
        let o = is_homology_ball(&octahedron(), Q);
        assert_eq!(o.kind, VerdictKind::Neither);
        assert_eq!(o.witness.unwrap().face, Face::EMPTY);
    }

    #[test]
    fn boundaries() {
        let expected = c(5, &[&[0, 1, 3], &[0, 2, 3], &[1, 2, 3], &[0, 1, 4], &[0, 2, 4], &[1, 2, 4]]);
        assert_eq!(boundary_complex(&b5(), Q).unwrap(), expected);
        let s = SimplicialComplex::simplex(4);
        assert_eq!(
            boundary_complex(&s, Q).unwrap(),
            SimplicialComplex::from_facets(4, Face::range(4).ridges()).unwrap()
        );
        let bk = boundary_complex(&k8(), Q).unwrap();
        assert_eq!(bk.dim(), 4);
        assert_eq!(bk.vertex_set().card(), 8);
        assert!(is_homology_sphere(&bk, Q).is_sphere());
        assert!(matches!(boundary_complex(&octahedron(), Q), Err(Error::NotABall(_))));
    }

    #[test]
    fn stackedness() {
        assert_eq!(stackedness_index(&SimplicialComplex::simplex(5), Q).unwrap(), 0);
        assert_eq!(stackedness_index(&b5(), Q).unwrap(), 1);
        assert_eq!(stackedness_index(&k8(), Q).unwrap(), 2);
        assert!(stackedness_index(&octahedron(), Q).is_err());
    }

    #[test]
    fn cohen_macaulay() {
        assert!(is_cohen_macaulay(&octahedron(), Q).cohen_macaulay);
        assert!(is_cohen_macaulay(&b5(), Q).cohen_macaulay);
        let bowtie = c(5, &[&[0, 1, 2], &[2, 3, 4]]);
        let v = is_cohen_macaulay(&bowtie, Q);
        assert!(!v.cohen_macaulay);
        assert_eq!(v.witness, Some(Witness { face: Face::singleton(2), index: 0 }));
    }
}
