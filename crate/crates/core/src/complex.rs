//! Finite abstract simplicial complexes stored by their facets.
//!
//! Vertices are the contiguous integers `0..n` with `n <= 64`, so every face
//! is a 64-bit vertex mask. A complex is identified with its canonical facet
//! list (an antichain, sorted lexicographically); the full face lattice is
//! computed on demand and cached.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 64;

/// A finite set of vertices, stored as a bit mask.
///
/// The ordering is lexicographic on the increasing vertex sequences, so
/// `{0,1} < {0,1,2} < {0,2} < {1}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Face(u64);

impl Face {
    pub const EMPTY: Face = Face(0);

    pub fn from_bits(bits: u64) -> Face {
        Face(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(v: usize) -> Face {
        debug_assert!(v < MAX_VERTICES);
        Face(1u64 << v)
    }

    /// Builds a face from a vertex list, rejecting repeated vertices.
    pub fn from_vertices(vertices: &[usize]) -> Result<Face> {
        let mut bits = 0u64;
        for &v in vertices {
            if v >= MAX_VERTICES {
                return Err(Error::TooManyVertices { n: v + 1, max: MAX_VERTICES });
            }
            if bits & (1 << v) != 0 {
                return Err(Error::DuplicateVertex(v));
            }
            bits |= 1 << v;
        }
        Ok(Face(bits))
    }

    /// The full simplex on `0..k`.
    pub fn range(k: usize) -> Face {
        debug_assert!(k <= MAX_VERTICES);
        if k == MAX_VERTICES {
            Face(u64::MAX)
        } else {
            Face((1u64 << k) - 1)
        }
    }

    pub fn card(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn dim(self) -> isize {
        self.card() as isize - 1
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 & (1 << v) != 0
    }

    pub fn is_subset(self, other: Face) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Face) -> Face {
        Face(self.0 | other.0)
    }

    pub fn intersection(self, other: Face) -> Face {
        Face(self.0 & other.0)
    }

    pub fn difference(self, other: Face) -> Face {
        Face(self.0 & !other.0)
    }

    pub fn symmetric_difference(self, other: Face) -> Face {
        Face(self.0 ^ other.0)
    }

    pub fn with(self, v: usize) -> Face {
        Face(self.0 | (1 << v))
    }

    pub fn without(self, v: usize) -> Face {
        Face(self.0 & !(1 << v))
    }

    pub fn max_vertex(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    pub fn vertices(self) -> FaceVertices {
        FaceVertices(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.vertices().collect()
    }

    /// All subsets, the empty face included.
    pub fn subsets(self) -> impl Iterator<Item = Face> {
        let full = self.0;
        let mut next = Some(full);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == 0 { None } else { Some((cur - 1) & full) };
            Some(Face(cur))
        })
    }

    /// Faces obtained by deleting one vertex.
    pub fn ridges(self) -> impl Iterator<Item = Face> {
        self.vertices().map(move |v| self.without(v))
    }

    /// Shifts every vertex up by `offset`.
    pub fn shifted(self, offset: usize) -> Face {
        Face(self.0 << offset)
    }
}

impl Ord for Face {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.0 == other.0 {
            return Ordering::Equal;
        }
        // Both sequences agree below the first differing vertex t. The set that
        // lacks t is a proper prefix of the other iff it has nothing above t.
        let t = (self.0 ^ other.0).trailing_zeros();
        let self_has_t = self.0 >> t & 1 == 1;
        let lacking = if self_has_t { other.0 } else { self.0 };
        let holder_first = lacking >> t != 0;
        if self_has_t == holder_first {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl PartialOrd for Face {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.vertices()).finish()
    }
}

impl Serialize for Face {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.vertices())
    }
}

impl<'de> Deserialize<'de> for Face {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        Face::from_vertices(&v).map_err(serde::de::Error::custom)
    }
}

pub struct FaceVertices(u64);

impl Iterator for FaceVertices {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for FaceVertices {}

/// Face counts `f_{-1}, f_0, ..., f_dim`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FVector(pub Vec<u64>);

impl FVector {
    /// `f_i`, zero outside the stored range.
    pub fn get(&self, i: isize) -> u64 {
        usize::try_from(i + 1)
            .ok()
            .and_then(|k| self.0.get(k).copied())
            .unwrap_or(0)
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }
}

/// `h_0, ..., h_d` with `d = dim + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HVector(pub Vec<i64>);

impl HVector {
    pub fn get(&self, i: usize) -> i64 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn is_symmetric(&self) -> bool {
        let h = &self.0;
        (0..h.len()).all(|i| h[i] == h[h.len() - 1 - i])
    }
}

#[derive(Debug)]
struct FaceIndex {
    /// `by_card[k]` holds the faces of cardinality `k`, sorted.
    by_card: Vec<Vec<Face>>,
    all: HashSet<Face>,
}

/// A simplicial complex on the vertex set `0..n`.
#[derive(Clone)]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<Face>,
    faces: OnceLock<Arc<FaceIndex>>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.facets == other.facets
    }
}

impl Eq for SimplicialComplex {}

impl std::hash::Hash for SimplicialComplex {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.facets.hash(state);
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("n", &self.n)
            .field("facets", &self.facets)
            .finish()
    }
}

/// Keeps the inclusion-maximal faces, sorted lexicographically.
fn maximal_faces(mut faces: Vec<Face>) -> Vec<Face> {
    faces.sort_by(|a, b| b.card().cmp(&a.card()).then(a.cmp(b)));
    faces.dedup();
    let mut kept: Vec<Face> = Vec::with_capacity(faces.len());
    for f in faces {
        if !kept.iter().any(|g| f.is_subset(*g)) {
            kept.push(f);
        }
    }
    kept.sort();
    kept
}

impl SimplicialComplex {
    /// The complex generated by `faces`; non-maximal faces are absorbed.
    pub fn from_facets(n: usize, faces: impl IntoIterator<Item = Face>) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices { n, max: MAX_VERTICES });
        }
        let faces: Vec<Face> = faces.into_iter().collect();
        if faces.is_empty() {
            return Err(Error::VoidComplex);
        }
        let range = Face::range(n);
        for f in &faces {
            if !f.is_subset(range) {
                let v = f.difference(range).vertices().next().unwrap_or(n);
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
        }
        Ok(Self::from_antichain_unchecked(n, maximal_faces(faces)))
    }

    /// Like [`from_facets`](Self::from_facets) but from plain vertex lists.
    pub fn from_vertex_lists<V: AsRef<[usize]>>(n: usize, faces: &[V]) -> Result<Self> {
        let faces = faces
            .iter()
            .map(|f| {
                let f = f.as_ref();
                if let Some(&v) = f.iter().find(|&&v| v >= n) {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                Face::from_vertices(f)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_facets(n, faces)
    }

    fn from_antichain_unchecked(n: usize, facets: Vec<Face>) -> Self {
        SimplicialComplex { n, facets, faces: OnceLock::new() }
    }

    /// The complex `{∅}` on `n` (unused) vertices.
    pub fn empty_face(n: usize) -> Self {
        Self::from_antichain_unchecked(n, vec![Face::EMPTY])
    }

    /// The full simplex on all `n` vertices.
    pub fn simplex(n: usize) -> Self {
        Self::from_antichain_unchecked(n, vec![Face::range(n)])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn dim(&self) -> isize {
        self.facets.iter().map(|f| f.dim()).max().unwrap_or(-1)
    }

    pub fn is_pure(&self) -> bool {
        let d = self.dim();
        self.facets.iter().all(|f| f.dim() == d)
    }

    /// Vertices that belong to some face.
    pub fn vertex_set(&self) -> Face {
        self.facets.iter().fold(Face::EMPTY, |acc, f| acc.union(*f))
    }

    fn index(&self) -> &FaceIndex {
        self.faces.get_or_init(|| {
            let mut all: HashSet<Face> = HashSet::new();
            for f in &self.facets {
                all.extend(f.subsets());
            }
            let top = (self.dim() + 1).max(0) as usize;
            let mut by_card = vec![Vec::new(); top + 1];
            for f in &all {
                by_card[f.card()].push(*f);
            }
            for level in &mut by_card {
                level.sort();
            }
            Arc::new(FaceIndex { by_card, all })
        })
    }

    pub fn contains(&self, face: Face) -> bool {
        self.index().all.contains(&face)
    }

    /// Faces of cardinality `card`, sorted lexicographically.
    pub fn faces_of_card(&self, card: usize) -> &[Face] {
        self.index().by_card.get(card).map(Vec::as_slice).unwrap_or(&[])
    }

    /// All faces, by increasing cardinality and then lexicographically.
    pub fn faces(&self) -> impl Iterator<Item = Face> + '_ {
        self.index().by_card.iter().flatten().copied()
    }

    pub fn num_faces(&self) -> usize {
        self.index().all.len()
    }

    pub fn f_vector(&self) -> FVector {
        FVector(self.index().by_card.iter().map(|l| l.len() as u64).collect())
    }

    /// `h_i = Σ_{j≤i} (-1)^{i-j} C(d-j, i-j) f_{j-1}` with `d = dim + 1`.
    pub fn h_vector(&self) -> HVector {
        let f = self.f_vector();
        let d = (self.dim() + 1) as usize;
        let h = (0..=d)
            .map(|i| {
                (0..=i)
                    .map(|j| {
                        let sign = if (i - j) % 2 == 0 { 1 } else { -1 };
                        sign * binomial(d - j, i - j) as i128 * f.get(j as isize - 1) as i128
                    })
                    .sum::<i128>() as i64
            })
            .collect();
        HVector(h)
    }

    /// Minimal non-faces, optionally restricted to cardinality `<= max_card`.
    ///
    /// A singleton `{v}` for an unused vertex slot `v < n` is a missing face.
    pub fn missing_faces(&self, max_card: Option<usize>) -> Vec<Face> {
        let cap = ((self.dim() + 2) as usize).min(max_card.unwrap_or(usize::MAX));
        let mut out = Vec::new();
        for card in 1..=cap {
            for &f in self.faces_of_card(card - 1) {
                let start = f.max_vertex().map_or(0, |m| m + 1);
                for v in start..self.n {
                    let g = f.with(v);
                    if !self.contains(g) && g.ridges().all(|r| self.contains(r)) {
                        out.push(g);
                    }
                }
            }
        }
        out.sort_by(|a, b| a.card().cmp(&b.card()).then(a.cmp(b)));
        out
    }

    /// `Δ(i)`: all vertex sets whose subsets of size `<= i+1` are faces.
    ///
    /// Its missing faces are the missing faces of `self` of size `<= i+1`.
    pub fn delta_i(&self, i: usize) -> SimplicialComplex {
        let k0 = i + 1;
        let mut levels: Vec<HashSet<Face>> = Vec::new();
        for card in 0..=k0 {
            levels.push(self.faces_of_card(card).iter().copied().collect());
        }
        loop {
            let prev = levels.last().unwrap();
            if prev.is_empty() {
                break;
            }
            let mut next = HashSet::new();
            for &f in prev {
                let start = f.max_vertex().map_or(0, |m| m + 1);
                for v in start..self.n {
                    let g = f.with(v);
                    if g.ridges().all(|r| prev.contains(&r)) {
                        next.insert(g);
                    }
                }
            }
            levels.push(next);
        }
        let mut facets = Vec::new();
        for card in 0..levels.len() - 1 {
            for &f in &levels[card] {
                let extendable = (0..self.n)
                    .filter(|&v| !f.contains(v))
                    .any(|v| levels[card + 1].contains(&f.with(v)));
                if !extendable {
                    facets.push(f);
                }
            }
        }
        facets.sort();
        SimplicialComplex::from_antichain_unchecked(self.n, facets)
    }

    /// `lk(F) = {G : F ∪ G ∈ Δ, F ∩ G = ∅}`, re-indexed over `[n] \ F`.
    pub fn link(&self, face: Face) -> Result<Link> {
        if !self.contains(face) {
            return Err(Error::NotAFace(face.to_vec()));
        }
        let vertices: Vec<usize> = (0..self.n).filter(|&v| !face.contains(v)).collect();
        let mut new_index = [usize::MAX; MAX_VERTICES];
        for (k, &v) in vertices.iter().enumerate() {
            new_index[v] = k;
        }
        let relabel = |g: Face| {
            g.vertices().fold(Face::EMPTY, |acc, v| acc.with(new_index[v]))
        };
        let pieces: Vec<Face> = self
            .facets
            .iter()
            .filter(|f| face.is_subset(**f))
            .map(|f| relabel(f.difference(face)))
            .collect();
        let complex = SimplicialComplex::from_antichain_unchecked(vertices.len(), maximal_faces(pieces));
        Ok(Link { complex, vertices })
    }

    /// All faces of cardinality at most `k + 1`.
    pub fn skeleton(&self, k: usize) -> SimplicialComplex {
        let mut facets: Vec<Face> = self.facets.iter().copied().filter(|f| f.card() <= k + 1).collect();
        if self.facets.iter().any(|f| f.card() > k + 1) {
            facets.extend(self.faces_of_card(k + 1).iter().copied());
        }
        SimplicialComplex::from_antichain_unchecked(self.n, maximal_faces(facets))
    }

    /// The join, with the vertices of `other` shifted past those of `self`.
    pub fn join(&self, other: &SimplicialComplex) -> Result<SimplicialComplex> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices { n, max: MAX_VERTICES });
        }
        let facets = self
            .facets
            .iter()
            .flat_map(|f| other.facets.iter().map(move |g| f.union(g.shifted(self.n))))
            .collect();
        Ok(SimplicialComplex::from_antichain_unchecked(n, maximal_faces(facets)))
    }

    /// The cone with apex `n` (a new vertex).
    pub fn cone(&self) -> Result<SimplicialComplex> {
        self.join(&SimplicialComplex::simplex(1))
    }

    /// Renames vertex `v` to `map[v]` in a complex on `n_new` vertices.
    pub fn relabel(&self, map: &[usize], n_new: usize) -> Result<SimplicialComplex> {
        let facets = self
            .facets
            .iter()
            .map(|f| {
                let vs: Vec<usize> = f.vertices().map(|v| map[v]).collect();
                Face::from_vertices(&vs)
            })
            .collect::<Result<Vec<_>>>()?;
        SimplicialComplex::from_facets(n_new, facets)
    }

    pub fn to_file(&self) -> ComplexFile {
        ComplexFile { n: self.n, facets: self.facets.iter().map(|f| f.to_vec()).collect() }
    }
}

/// A link together with the original label of each of its vertices.
#[derive(Clone, Debug)]
pub struct Link {
    pub complex: SimplicialComplex,
    pub vertices: Vec<usize>,
}

/// JSON form: `{"n": 5, "facets": [[0,1,2,3],[0,1,2,4]]}`, 0-based ids.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ComplexFile {
    pub n: usize,
    pub facets: Vec<Vec<usize>>,
}

impl ComplexFile {
    pub fn into_complex(self) -> Result<SimplicialComplex> {
        SimplicialComplex::from_vertex_lists(self.n, &self.facets)
    }
}

impl SimplicialComplex {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str::<ComplexFile>(text)?.into_complex()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("complex serializes")
    }
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Groups faces by a key; small helper for callers that memoize per face.
pub type FaceMap<T> = HashMap<Face, T>;
