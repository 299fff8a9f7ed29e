//! Artinian reductions `A = S / (I_Δ + (Θ))` by linear algebra in each degree,
//! and the weak Lefschetz property.
//!
//! Θ is drawn in solved form `θ_j = x_{n-d+j} + Σ_{f < n-d} c_{jf} x_f`, which
//! is a generic point of the Grassmannian of d-dimensional spaces of linear
//! forms. Eliminating the last `d` variables identifies `S/(Θ)` with the
//! polynomial ring in the first `m = n - d` variables, in which every degree
//! of `A` is the cokernel of an integer matrix.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::poly::Monomial;
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::linalg::{pivots_over_q, rank_over_q};
use crate::rng;

/// Default bound `B` for random coefficients in `[-B, B]`.
pub const COEFFICIENT_BOUND: i64 = 1000;
/// Default number of attempts for randomized constructions.
pub const RETRY_LIMIT: usize = 3;

type SparsePoly = BTreeMap<Vec<u32>, BigInt>;

/// Substitution data: images of the `n` variables as linear forms in the
/// first `m` variables.
struct Substitution {
    m: usize,
    images: Vec<Vec<BigInt>>,
}

impl Substitution {
    fn from_theta(n: usize, d: usize, c: &[Vec<i64>]) -> Self {
        let m = n - d;
        let mut images = Vec::with_capacity(n);
        for f in 0..m {
            let mut e = vec![BigInt::zero(); m];
            e[f] = BigInt::one();
            images.push(e);
        }
        for row in c {
            images.push(row.iter().map(|&x| BigInt::from(-x)).collect());
        }
        Substitution { m, images }
    }

    fn linear(&self, coeffs: &[i64]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.m];
        for (img, &c) in self.images.iter().zip(coeffs) {
            for (o, x) in out.iter_mut().zip(img) {
                *o += x * c;
            }
        }
        out
    }

    /// Image of the squarefree monomial on `vars`.
    fn monomial(&self, vars: impl IntoIterator<Item = usize>) -> SparsePoly {
        let mut acc: SparsePoly = BTreeMap::from([(vec![0; self.m], BigInt::one())]);
        for v in vars {
            acc = multiply_linear(&acc, &self.images[v]);
        }
        acc.retain(|_, c| !c.is_zero());
        acc
    }
}

fn multiply_linear(p: &SparsePoly, linear: &[BigInt]) -> SparsePoly {
    let mut out = SparsePoly::new();
    for (exps, c) in p {
        for (i, a) in linear.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            let mut e = exps.clone();
            e[i] += 1;
            *out.entry(e).or_insert_with(BigInt::zero) += c * a;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// The degree-`k` piece of the relation space and the monomial basis of `S'_k`.
struct DegreePiece {
    monomials: Vec<Monomial>,
    index: HashMap<Vec<u32>, usize>,
    relations: Vec<Vec<BigInt>>,
    relation_rank: usize,
}

impl DegreePiece {
    fn build(m: usize, k: u32, generators: &[(u32, SparsePoly)]) -> Self {
        let monomials = Monomial::all_of_degree(m, k);
        let index: HashMap<Vec<u32>, usize> =
            monomials.iter().enumerate().map(|(i, mo)| (mo.exponents().to_vec(), i)).collect();
        let mut relations = Vec::new();
        for (deg, g) in generators.iter().filter(|(deg, g)| *deg <= k && !g.is_empty()) {
            for mult in Monomial::all_of_degree(m, k - deg) {
                let mut row = vec![BigInt::zero(); monomials.len()];
                for (exps, c) in g {
                    let e: Vec<u32> = exps.iter().zip(mult.exponents()).map(|(a, b)| a + b).collect();
                    row[index[&e]] += c;
                }
                relations.push(row);
            }
        }
        let relation_rank = rank_over_q(&relations, monomials.len(), None);
        DegreePiece { monomials, index, relations, relation_rank }
    }

    fn dim(&self) -> usize {
        self.monomials.len() - self.relation_rank
    }
}

/// `A = S/(I_Δ + (Θ))` with monomial coset bases in each degree.
#[derive(Clone, Debug, Serialize)]
pub struct GradedQuotient {
    pub n: usize,
    pub d: usize,
    /// Θ as a `d × n` integer matrix.
    pub theta: Vec<Vec<i64>>,
    pub seed: u64,
    /// Number of draws of Θ, including the successful one.
    pub attempts: usize,
    pub degree_cap: usize,
    pub dims: Vec<usize>,
    /// Coset bases in the first `n - d` variables (as monomials of `S`),
    /// each sorted decreasingly.
    pub bases: Vec<Vec<Monomial>>,
    #[serde(skip)]
    pieces: Vec<PieceData>,
    #[serde(skip)]
    substitution_images: Vec<Vec<BigInt>>,
}

#[derive(Clone, Debug)]
struct PieceData {
    monomials: Vec<Monomial>,
    index: HashMap<Vec<u32>, usize>,
    relations: Vec<Vec<BigInt>>,
    relation_rank: usize,
    basis_columns: Vec<usize>,
}

fn draw_theta(n: usize, d: usize, seed: u64, bound: i64) -> Vec<Vec<i64>> {
    let mut g = rng::seeded(seed);
    let m = n - d;
    (0..d).map(|_| (0..m).map(|_| rng::coefficient(&mut g, bound)).collect()).collect()
}

fn full_theta(n: usize, d: usize, c: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let m = n - d;
    c.iter()
        .enumerate()
        .map(|(j, row)| {
            let mut full = row.clone();
            full.extend((0..d).map(|i| i64::from(i == j)));
            debug_assert_eq!(full.len(), m + d);
            full
        })
        .collect()
}

fn try_reduction(complex: &SimplicialComplex, seed: u64, attempts: usize) -> Option<GradedQuotient> {
    let n = complex.n();
    let d = (complex.dim() + 1) as usize;
    let h = complex.h_vector();
    let c = draw_theta(n, d, seed, COEFFICIENT_BOUND);
    let sub = Substitution::from_theta(n, d, &c);
    let generators: Vec<(u32, SparsePoly)> = complex
        .missing_faces(Some(d + 1))
        .into_iter()
        .map(|f| (f.card() as u32, sub.monomial(f.vertices())))
        .collect();

    let degree_cap = d + 1;
    let mut pieces = Vec::with_capacity(degree_cap + 1);
    for k in 0..=degree_cap {
        let piece = DegreePiece::build(sub.m, k as u32, &generators);
        let expected = if k <= d { h.get(k) } else { 0 };
        if piece.dim() as i64 != expected {
            return None;
        }
        let basis_columns = coset_basis(&piece);
        pieces.push(PieceData {
            monomials: piece.monomials,
            index: piece.index,
            relations: piece.relations,
            relation_rank: piece.relation_rank,
            basis_columns,
        });
    }
    let lift = |m: &Monomial| {
        let mut e = m.exponents().to_vec();
        e.resize(n, 0);
        Monomial::new(e)
    };
    Some(GradedQuotient {
        n,
        d,
        theta: full_theta(n, d, &c),
        seed,
        attempts,
        degree_cap,
        dims: pieces.iter().map(|p| p.basis_columns.len()).collect(),
        bases: pieces.iter().map(|p| p.basis_columns.iter().map(|&i| lift(&p.monomials[i])).collect()).collect(),
        pieces,
        substitution_images: sub.images,
    })
}

/// Non-pivot columns of an echelon form of the relations: a monomial basis
/// of a complement of the relation space.
fn coset_basis(piece: &DegreePiece) -> Vec<usize> {
    let cols = piece.monomials.len();
    if piece.relation_rank == 0 {
        return (0..cols).collect();
    }
    let pivots = pivots_over_q(&piece.relations, cols, piece.relation_rank, 8)
        .into_iter()
        .next()
        .expect("some prime reproduces the rational rank");
    let mut is_pivot = vec![false; cols];
    for p in pivots {
        is_pivot[p] = true;
    }
    (0..cols).filter(|&c| !is_pivot[c]).collect()
}

/// Computes an artinian reduction of `𝕜[Δ]` by a random l.s.o.p.
///
/// The dimensions of `A` are checked against the h-vector of `Δ` in every
/// degree up to `d`, and `A_{d+1} = 0`; since `A` is generated in degree one,
/// a vanishing degree forces all later degrees to vanish. A mismatch means
/// Θ was not an l.s.o.p. (or `Δ` is not Cohen–Macaulay); a fresh Θ is then
/// drawn, up to [`RETRY_LIMIT`] draws in total.
pub fn artinian_reduction(complex: &SimplicialComplex, seed: u64) -> Result<GradedQuotient> {
    let n = complex.n();
    let d = (complex.dim() + 1) as usize;
    if d > n {
        return Err(Error::InvalidParameter("complex has more dimensions than vertices".into()));
    }
    let mut seeds = Vec::new();
    for attempt in 0..RETRY_LIMIT {
        let s = rng::derive_seed(seed, attempt as u64);
        seeds.push(s);
        if let Some(q) = try_reduction(complex, s, attempt + 1) {
            return Ok(q);
        }
    }
    Err(Error::LsopNotFound { attempts: RETRY_LIMIT, seeds })
}

impl GradedQuotient {
    /// Rank of multiplication by the linear form `w` (coefficients over all
    /// `n` variables) from `A_k` to `A_{k+1}`.
    pub fn multiplication_rank(&self, w: &[i64], k: usize) -> usize {
        assert!(k < self.degree_cap);
        let src = &self.pieces[k];
        let dst = &self.pieces[k + 1];
        let sub = Substitution { m: self.n - self.d, images: self.substitution_images.clone() };
        let wl = sub.linear(w);
        let mut rows = dst.relations.clone();
        for &b in &src.basis_columns {
            let mut row = vec![BigInt::zero(); dst.monomials.len()];
            let base = src.monomials[b].exponents();
            for (i, a) in wl.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
                let mut e = base.to_vec();
                e[i] += 1;
                row[dst.index[&e]] += a;
            }
            rows.push(row);
        }
        let bound = dst.relation_rank + src.basis_columns.len().min(dst.basis_columns.len());
        rank_over_q(&rows, dst.monomials.len(), Some(bound)) - dst.relation_rank
    }

    /// Relation matrix and column monomials of degree `k`, in the ring of the
    /// first `n - d` variables.
    pub fn relations(&self, k: usize) -> (&[Vec<BigInt>], &[Monomial]) {
        (&self.pieces[k].relations, &self.pieces[k].monomials)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum WlpVerdict {
    Holds,
    /// Multiplication `A_k → A_{k+1}` was not of maximal rank for any tried
    /// `w`. One-sided: an unlucky draw cannot be ruled out.
    FailsAtDegree { k: usize },
    LsopNotFound,
}

#[derive(Clone, Debug, Serialize)]
pub struct WlpReport {
    pub dims: Vec<usize>,
    /// `ranks[k]` is the rank of `×w : A_k → A_{k+1}` for `k < d`.
    pub ranks: Vec<usize>,
    pub verdict: WlpVerdict,
    pub w: Vec<i64>,
    pub theta_seed: u64,
    pub w_seed: u64,
    /// Draws of `w`, including the last one.
    pub w_attempts: usize,
    pub theta_attempts: usize,
    /// The dims rise weakly and then fall weakly.
    pub unimodal: bool,
    /// Once a map is surjective, all later maps are.
    pub surjectivity_propagates: bool,
}

impl WlpReport {
    pub fn holds(&self) -> bool {
        self.verdict == WlpVerdict::Holds
    }
}

fn is_unimodal(dims: &[usize]) -> bool {
    let peak = dims.iter().enumerate().max_by_key(|(i, &v)| (v, std::cmp::Reverse(*i))).map_or(0, |(i, _)| i);
    dims[..=peak].windows(2).all(|w| w[0] <= w[1]) && dims[peak..].windows(2).all(|w| w[0] >= w[1])
}

/// Tests the weak Lefschetz property of a random artinian reduction.
pub fn wlp_check(complex: &SimplicialComplex, seed: u64) -> Result<WlpReport> {
    let n = complex.n();
    let quotient = match artinian_reduction(complex, seed) {
        Ok(q) => q,
        Err(Error::LsopNotFound { attempts, .. }) => {
            return Ok(WlpReport {
                dims: Vec::new(),
                ranks: Vec::new(),
                verdict: WlpVerdict::LsopNotFound,
                w: Vec::new(),
                theta_seed: seed,
                w_seed: seed,
                w_attempts: 0,
                theta_attempts: attempts,
                unimodal: false,
                surjectivity_propagates: false,
            })
        }
        Err(e) => return Err(e),
    };
    wlp_on_quotient(&quotient, n, seed)
}

/// Runs the Lefschetz test on an already computed quotient.
pub fn wlp_on_quotient(quotient: &GradedQuotient, n: usize, seed: u64) -> Result<WlpReport> {
    let d = quotient.d;
    let dims = quotient.dims.clone();
    let mut last = None;
    for attempt in 0..RETRY_LIMIT {
        let w_seed = rng::derive_seed(seed ^ 0x5757_5757, attempt as u64);
        let mut g = rng::seeded(w_seed);
        let w: Vec<i64> = (0..n).map(|_| rng::coefficient(&mut g, COEFFICIENT_BOUND)).collect();
        let ranks: Vec<usize> = (0..d).map(|k| quotient.multiplication_rank(&w, k)).collect();
        let failing = (0..d).find(|&k| ranks[k] != dims[k].min(dims[k + 1]));
        let verdict = match failing {
            None => WlpVerdict::Holds,
            Some(k) => WlpVerdict::FailsAtDegree { k },
        };
        let surjective: Vec<bool> = (0..d).map(|k| ranks[k] == dims[k + 1]).collect();
        let surjectivity_propagates = surjective.windows(2).all(|s| !s[0] || s[1]);
        let report = WlpReport {
            unimodal: is_unimodal(&dims[..=d]),
            surjectivity_propagates,
            dims: dims.clone(),
            ranks,
            verdict,
            w,
            theta_seed: quotient.seed,
            w_seed,
            w_attempts: attempt + 1,
            theta_attempts: quotient.attempts,
        };
        if report.holds() {
            return Ok(report);
        }
        last = Some(report);
    }
    Ok(last.expect("at least one attempt"))
}
