use std::collections::{HashMap, HashSet};

use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::homology::{boundary_complex, is_homology_ball, stackedness_index};
use crate::linalg::FieldSpec;

/// Inputs above this many vertices are rejected.
pub const MAX_PROBE_VERTICES: usize = 8;

#[derive(Clone, Copy, Debug)]
pub struct UniquenessLimits {
    /// Maximum number of partial facet sets explored.
    pub max_states: usize,
}

impl Default for UniquenessLimits {
    fn default() -> Self {
        UniquenessLimits { max_states: 200_000 }
    }
}

/// Candidate `d`-simplices and the ridge bookkeeping for the search.
struct Enumerator {
    candidates: Vec<Face>,
    /// Target count per ridge: 1 on the sphere, otherwise 0 or 2.
    on_sphere: HashSet<Face>,
    counts: HashMap<Face, u8>,
    chosen: Vec<bool>,
    seen: HashSet<Vec<bool>>,
    found: Vec<Vec<Face>>,
    states: usize,
    limit: usize,
}

impl Enumerator {
    fn overflows(&self, f: Face) -> bool {
        f.ridges().any(|r| {
            let c = self.counts.get(&r).copied().unwrap_or(0);
            c >= if self.on_sphere.contains(&r) { 1 } else { 2 }
        })
    }

    /// Least ridge whose count is below its target.
    fn deficit(&self) -> Option<Face> {
        let mut open: Vec<Face> = self
            .on_sphere
            .iter()
            .filter(|r| self.counts.get(r).copied().unwrap_or(0) == 0)
            .copied()
            .chain(self.counts.iter().filter(|(r, &c)| c == 1 && !self.on_sphere.contains(r)).map(|(r, _)| *r))
            .collect();
        open.sort();
        open.first().copied()
    }

    fn toggle(&mut self, i: usize, on: bool) {
        self.chosen[i] = on;
        for r in self.candidates[i].ridges() {
            let c = self.counts.entry(r).or_insert(0);
            if on {
                *c += 1;
            } else {
                *c -= 1;
            }
        }
    }

    fn explore(&mut self) -> Result<()> {
        if !self.seen.insert(self.chosen.clone()) {
            return Ok(());
        }
        self.states += 1;
        if self.states > self.limit {
            return Err(Error::ResourceBudget(format!("uniqueness probe exceeded {} states", self.limit)));
        }
        match self.deficit() {
            Some(ridge) => {
                for i in 0..self.candidates.len() {
                    let f = self.candidates[i];
                    if !self.chosen[i] && ridge.is_subset(f) && !self.overflows(f) {
                        self.toggle(i, true);
                        self.explore()?;
                        self.toggle(i, false);
                    }
                }
            }
            None => {
                self.found.push((0..self.candidates.len()).filter(|&i| self.chosen[i]).map(|i| self.candidates[i]).collect());
                // Closed configurations may still be extended by further
                // facets whose ridges close up among themselves.
                for i in 0..self.candidates.len() {
                    if !self.chosen[i] && !self.overflows(self.candidates[i]) {
                        self.toggle(i, true);
                        self.explore()?;
                        self.toggle(i, false);
                    }
                }
            }
        }
        Ok(())
    }
}

/// All `(r-1)`-stacked homology `d`-balls on the vertices of the homology
/// `(d-1)`-sphere `Δ` whose boundary is `Δ`, found by exhaustive search.
///
/// Candidates are pure `d`-complexes in which every facet of `Δ` lies in
/// exactly one facet and every other ridge in zero or two, as in any
/// homology ball with boundary `Δ`; they contain every face of `Δ`.
pub fn uniqueness_probe(
    complex: &SimplicialComplex,
    r: usize,
    field: FieldSpec,
    limits: &UniquenessLimits,
) -> Result<Vec<SimplicialComplex>> {
    let n = complex.n();
    if n > MAX_PROBE_VERTICES {
        return Err(Error::InvalidParameter(format!("uniqueness probe is limited to {MAX_PROBE_VERTICES} vertices, got {n}")));
    }
    if !complex.is_pure() || complex.dim() < 0 {
        return Err(Error::NotPure);
    }
    let d = (complex.dim() + 1) as usize;
    if r < 1 || r > d {
        return Err(Error::InvalidParameter(format!("r = {r} out of range for d = {d}")));
    }
    let vertices = complex.vertex_set();
    let candidates: Vec<Face> = vertices.subsets().filter(|f| f.card() == d + 1).collect::<Vec<_>>();
    let mut candidates = candidates;
    candidates.sort();
    let mut search = Enumerator {
        chosen: vec![false; candidates.len()],
        candidates,
        on_sphere: complex.facets().iter().copied().collect(),
        counts: HashMap::new(),
        seen: HashSet::new(),
        found: Vec::new(),
        states: 0,
        limit: limits.max_states,
    };
    search.explore()?;

    let mut balls = Vec::new();
    for facets in search.found {
        let b = SimplicialComplex::from_facets(n, facets)?;
        let ball = is_homology_ball(&b, field);
        if !ball.is_ball() || ball.dim != d as isize {
            continue;
        }
        if boundary_complex(&b, field)? != *complex {
            continue;
        }
        if stackedness_index(&b, field)? < r {
            balls.push(b);
        }
    }
    balls.sort_by(|a, b| a.facets().cmp(b.facets()));
    balls.dedup();
    Ok(balls)
}
