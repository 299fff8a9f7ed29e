use std::collections::HashSet;

use serde::Serialize;

use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};

/// A shelling order, or a proof by exhaustion that none exists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShellingCertificate {
    /// Set when the search space was exhausted without finding a shelling.
    pub refuted: bool,
    pub order: Vec<Face>,
    /// Dimension of the intersection of each facet with the union of the
    /// previous ones; `None` for the first facet.
    pub intersection_dims: Vec<Option<isize>>,
    /// Search nodes visited.
    pub nodes: usize,
}

/// Ridges of `facet` lying in an earlier facet, if they form a pure
/// codimension-one complex equal to `facet ∩ (union of earlier)`.
fn attaching_ridges(facet: Face, earlier: impl Iterator<Item = Face> + Clone) -> Option<Vec<Face>> {
    let k = facet.card();
    let ridges: Vec<Face> =
        facet.ridges().filter(|r| earlier.clone().any(|g| r.is_subset(g))).collect();
    if ridges.is_empty() {
        return None;
    }
    let covered = earlier.into_iter().all(|g| {
        let common = facet.intersection(g);
        common.card() == k - 1 || ridges.iter().any(|r| common.is_subset(*r))
    });
    covered.then_some(ridges)
}

impl ShellingCertificate {
    /// Replays the order, re-checking every step.
    pub fn validate(&self, complex: &SimplicialComplex) -> bool {
        if self.refuted {
            return false;
        }
        let mut sorted = self.order.clone();
        sorted.sort();
        if sorted != complex.facets() {
            return false;
        }
        self.order.iter().enumerate().all(|(i, &f)| {
            let expected = if i == 0 {
                None
            } else {
                match attaching_ridges(f, self.order[..i].iter().copied()) {
                    Some(_) => Some(f.dim() - 1),
                    None => return false,
                }
            };
            self.intersection_dims[i] == expected
        })
    }
}

struct Search<'a> {
    facets: &'a [Face],
    used: Vec<bool>,
    order: Vec<usize>,
    failed: HashSet<Vec<bool>>,
    nodes: usize,
    budget: usize,
}

impl Search<'_> {
    fn run(&mut self) -> Result<bool> {
        if self.order.len() == self.facets.len() {
            return Ok(true);
        }
        if self.failed.contains(&self.used) {
            return Ok(false);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::ResourceBudget(format!("shelling search exceeded {} nodes", self.budget)));
        }
        for i in 0..self.facets.len() {
            if self.used[i] {
                continue;
            }
            let ok = self.order.is_empty() || {
                let earlier = self.order.iter().map(|&j| self.facets[j]);
                attaching_ridges(self.facets[i], earlier).is_some()
            };
            if !ok {
                continue;
            }
            self.used[i] = true;
            self.order.push(i);
            if self.run()? {
                return Ok(true);
            }
            self.order.pop();
            self.used[i] = false;
        }
        self.failed.insert(self.used.clone());
        Ok(false)
    }
}

/// Backtracking search for a shelling order of a pure complex.
///
/// Whether a facet may be added depends only on the set of facets already
/// placed, so failed sets are remembered. `budget` bounds the number of
/// search nodes.
pub fn is_shellable(complex: &SimplicialComplex, budget: usize) -> Result<ShellingCertificate> {
    if !complex.is_pure() {
        return Err(Error::NotPure);
    }
    let facets = complex.facets();
    let mut search = Search {
        facets,
        used: vec![false; facets.len()],
        order: Vec::new(),
        failed: HashSet::new(),
        nodes: 0,
        budget,
    };
    let found = search.run()?;
    if !found {
        return Ok(ShellingCertificate { refuted: true, order: Vec::new(), intersection_dims: Vec::new(), nodes: search.nodes });
    }
    let order: Vec<Face> = search.order.iter().map(|&i| facets[i]).collect();
    let intersection_dims = order.iter().enumerate().map(|(i, f)| (i > 0).then(|| f.dim() - 1)).collect();
    Ok(ShellingCertificate { refuted: false, order, intersection_dims, nodes: search.nodes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cross_polytope, stacked_ball_and_sphere};

    fn cx(n: usize, f: &[&[usize]]) -> SimplicialComplex {
        SimplicialComplex::from_vertex_lists(n, f).unwrap()
    }

    #[test]
    fn ball_with_two_facets() {
        let b5 = cx(5, &[&[0, 1, 2, 3], &[0, 1, 2, 4]]);
        let cert = is_shellable(&b5, 100).unwrap();
        assert_eq!(cert.order, b5.facets());
        assert_eq!(cert.intersection_dims, vec![None, Some(2)]);
        assert!(cert.validate(&b5));
    }

    #[test]
    fn spheres_and_stacked_balls_shell() {
        let oct = cross_polytope(3).unwrap();
        assert!(is_shellable(&oct, 10_000).unwrap().validate(&oct));
        for seed in 0..5 {
            let s = stacked_ball_and_sphere(3, 8, seed).unwrap();
            assert!(is_shellable(&s.ball, 10_000).unwrap().validate(&s.ball));
        }
    }

    #[test]
    fn non_shellable_and_invalid() {
        // two triangles meeting in a vertex
        let bowtie = cx(5, &[&[0, 1, 2], &[2, 3, 4]]);
        let cert = is_shellable(&bowtie, 100).unwrap();
        assert!(cert.refuted);
        assert!(!cert.validate(&bowtie));
        assert!(matches!(is_shellable(&cx(3, &[&[0, 1], &[2]]), 10), Err(Error::NotPure)));
        let tampered = ShellingCertificate {
            refuted: false,
            order: vec![Face::from_vertices(&[0, 1, 2]).unwrap(), Face::from_vertices(&[2, 3, 4]).unwrap()],
            intersection_dims: vec![None, Some(1)],
            nodes: 0,
        };
        assert!(!tampered.validate(&bowtie));
        assert!(matches!(is_shellable(&cross_polytope(4).unwrap(), 0), Err(Error::ResourceBudget(_))));
    }
}
