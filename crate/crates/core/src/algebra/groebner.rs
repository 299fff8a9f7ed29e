//! Buchberger's algorithm for degrevlex, generic initial ideals and the
//! truncation criterion for Cohen–Macaulayness.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::poly::{minimize_monomials, rational, Ideal, Monomial, Polynomial};
use super::quotient::{wlp_check, COEFFICIENT_BOUND};
use super::{sr_ideal, truncate_ideal};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::homology::is_homology_sphere;
use crate::linalg::{rank_over_q, ExactMatrix, FieldSpec};
use crate::rng;

/// Default S-pair budget.
pub const DEFAULT_MAX_SPAIRS: usize = 20_000;

#[derive(Clone, Copy, Debug)]
pub struct GbOptions {
    /// Abort after reducing this many S-polynomials.
    pub max_spairs: usize,
    /// For homogeneous input: only compute the basis up to this degree.
    pub degree_cap: Option<u32>,
}

impl Default for GbOptions {
    fn default() -> Self {
        GbOptions { max_spairs: DEFAULT_MAX_SPAIRS, degree_cap: None }
    }
}

fn find_divisor<'a>(basis: &'a [Polynomial], m: &Monomial) -> Option<&'a Polynomial> {
    basis.iter().find(|g| g.leading_monomial().is_some_and(|l| l.divides(m)))
}

/// Full reduction of `p` by a list of monic polynomials.
pub fn reduce(p: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let n = p.nvars();
    let mut rest: BTreeMap<Monomial, BigRational> = p.clone().into_map();
    let mut out: BTreeMap<Monomial, BigRational> = BTreeMap::new();
    while let Some((m, c)) = rest.pop_last() {
        match find_divisor(basis, &m) {
            Some(g) => {
                let q = m.div(g.leading_monomial().expect("nonzero"));
                for (t, a) in &g.terms()[1..] {
                    let key = t.mul(&q);
                    let entry = rest.entry(key).or_insert_with(BigRational::zero);
                    *entry -= &c * a;
                    if entry.is_zero() {
                        let key = t.mul(&q);
                        rest.remove(&key);
                    }
                }
            }
            None => {
                out.insert(m, c);
            }
        }
    }
    Polynomial::from_sorted_map(n, out)
}

fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (lf, lg) = (f.leading_monomial().unwrap(), g.leading_monomial().unwrap());
    let l = lf.lcm(lg);
    f.mul_term(&l.div(lf), &BigRational::one()).sub(&g.mul_term(&l.div(lg), &BigRational::one()))
}

/// Reduced Gröbner basis under degrevlex with `x_1 > ... > x_n`, sorted by
/// increasing leading monomial, every element monic.
///
/// Pairs are processed by increasing degree of their lcm, ties by index,
/// skipping pairs with coprime leading monomials and pairs covered by
/// Buchberger's chain criterion. With `degree_cap` (homogeneous input only)
/// the result is a Gröbner basis of the ideal in degrees `<= cap`.
pub fn buchberger_degrevlex(generators: &[Polynomial], opts: &GbOptions) -> Result<Vec<Polynomial>> {
    let Some(n) = generators.first().map(Polynomial::nvars) else {
        return Ok(Vec::new());
    };
    if opts.degree_cap.is_some() && !generators.iter().all(Polynomial::is_homogeneous) {
        return Err(Error::InvalidParameter("a degree cap needs homogeneous generators".into()));
    }
    let within = |deg: u32| opts.degree_cap.is_none_or(|cap| deg <= cap);
    let mut input: Vec<Polynomial> =
        generators.iter().filter(|g| !g.is_zero() && within(g.degree().unwrap())).map(Polynomial::monic).collect();
    input.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));

    let mut basis: Vec<Polynomial> = Vec::new();
    let mut pending: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
    let mut reductions = 0usize;

    let add = |p: Polynomial, basis: &mut Vec<Polynomial>, pending: &mut BTreeSet<(u32, usize, usize)>| {
        let j = basis.len();
        let lj = p.leading_monomial().unwrap().clone();
        basis.push(p);
        for (i, g) in basis[..j].iter().enumerate() {
            let deg = g.leading_monomial().unwrap().lcm(&lj).degree();
            if within(deg) {
                pending.insert((deg, i, j));
            }
        }
    };

    for g in input {
        let r = reduce(&g, &basis);
        if !r.is_zero() {
            add(r.monic(), &mut basis, &mut pending);
        }
    }

    while let Some((deg, i, j)) = pending.pop_first() {
        let (li, lj) = (basis[i].leading_monomial().unwrap(), basis[j].leading_monomial().unwrap());
        if li.is_coprime(lj) {
            continue;
        }
        let l = li.lcm(lj);
        let key = |a: usize, b: usize| {
            let (a, b) = (a.min(b), a.max(b));
            let deg = basis[a].leading_monomial().unwrap().lcm(basis[b].leading_monomial().unwrap()).degree();
            (deg, a, b)
        };
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].leading_monomial().unwrap().divides(&l)
                && !pending.contains(&key(i, k))
                && !pending.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        reductions += 1;
        if reductions > opts.max_spairs {
            return Err(Error::ResourceBudget(format!(
                "more than {} S-pair reductions (current degree {deg})",
                opts.max_spairs
            )));
        }
        let r = reduce(&s_polynomial(&basis[i], &basis[j]), &basis);
        if !r.is_zero() {
            add(r.monic(), &mut basis, &mut pending);
        }
    }

    // Minimize, then inter-reduce.
    basis.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    let mut minimal: Vec<Polynomial> = Vec::new();
    for g in basis {
        if find_divisor(&minimal, g.leading_monomial().unwrap()).is_none() {
            minimal.push(g);
        }
    }
    let reduced = (0..minimal.len())
        .map(|k| {
            let head = Polynomial::from_terms(n, [minimal[k].terms()[0].clone()]);
            let others: Vec<Polynomial> =
                minimal.iter().enumerate().filter(|(m, _)| *m != k).map(|(_, g)| g.clone()).collect();
            let tail = Polynomial::from_terms(n, minimal[k].terms()[1..].iter().cloned());
            head.add(&reduce(&tail, &others))
        })
        .collect();
    Ok(reduced)
}

#[derive(Clone, Copy, Debug)]
pub struct GinOptions {
    pub seed: u64,
    pub max_spairs: usize,
    /// Compute the generic initial ideal only up to this degree.
    pub degree_cap: Option<u32>,
}

impl GinOptions {
    pub fn new(seed: u64) -> Self {
        GinOptions { seed, max_spairs: DEFAULT_MAX_SPAIRS, degree_cap: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GinResult {
    pub n: usize,
    /// Minimal monomial generators, increasing.
    pub generators: Vec<Monomial>,
    pub degrees: Vec<u32>,
    pub seed: u64,
    pub second_seed: u64,
    /// Generators are only complete up to this degree.
    pub degree_cap: Option<u32>,
    pub strongly_stable: bool,
}

impl GinResult {
    pub fn contains(&self, m: &Monomial) -> bool {
        self.generators.iter().any(|g| g.divides(m))
    }

    pub fn as_ideal(&self) -> Ideal {
        Ideal::from_monomials(self.n, self.generators.iter().cloned())
    }
}

/// A random invertible integer matrix with entries in `[-B, B]`.
fn random_coordinates(n: usize, seed: u64) -> Vec<Vec<i64>> {
    for k in 0.. {
        let mut g = rng::seeded(rng::derive_seed(seed, k));
        let m: Vec<Vec<i64>> =
            (0..n).map(|_| (0..n).map(|_| rng::coefficient(&mut g, COEFFICIENT_BOUND)).collect()).collect();
        if !ExactMatrix::from_integer_rows(&m).determinant().is_zero() {
            return m;
        }
    }
    unreachable!()
}

/// `x_i ↦ Σ_j g_ij x_j` applied to every generator.
pub fn change_coordinates(ideal: &Ideal, matrix: &[Vec<i64>]) -> Vec<Polynomial> {
    let images: Vec<Polynomial> =
        matrix.iter().map(|row| Polynomial::linear(&row.iter().map(|&x| rational(x)).collect::<Vec<_>>())).collect();
    ideal.generators().iter().map(|g| g.substitute(&images)).collect()
}

fn initial_ideal_in_coordinates(ideal: &Ideal, seed: u64, opts: &GinOptions) -> Result<Vec<Monomial>> {
    let g = random_coordinates(ideal.nvars(), seed);
    let gens = change_coordinates(ideal, &g);
    let gb = buchberger_degrevlex(&gens, &GbOptions { max_spairs: opts.max_spairs, degree_cap: opts.degree_cap })?;
    Ok(minimize_monomials(gb.iter().filter_map(|p| p.leading_monomial().cloned()).collect()))
}

/// True iff `m x_i / x_j` lies in the ideal for every generator `m`, every
/// `x_j | m` and every `i < j`.
pub fn is_strongly_stable(generators: &[Monomial]) -> bool {
    generators.iter().all(|m| {
        (0..m.nvars()).filter(|&j| m.exponents()[j] > 0).all(|j| {
            (0..j).all(|i| {
                let mut e = m.exponents().to_vec();
                e[j] -= 1;
                e[i] += 1;
                let moved = Monomial::new(e);
                generators.iter().any(|g| g.divides(&moved))
            })
        })
    })
}

/// Generic initial ideal of a homogeneous ideal over ℚ under degrevlex.
///
/// Two independent random coordinate changes must give the same initial
/// ideal, otherwise [`Error::SeedsDisagree`] is returned.
pub fn gin(ideal: &Ideal, opts: &GinOptions) -> Result<GinResult> {
    if !ideal.is_homogeneous() {
        return Err(Error::InvalidParameter("gin needs a homogeneous ideal".into()));
    }
    let n = ideal.nvars();
    let second_seed = rng::derive_seed(opts.seed, 1_000_003);
    let (first, second) = if ideal.is_zero() {
        (Vec::new(), Vec::new())
    } else {
        (initial_ideal_in_coordinates(ideal, opts.seed, opts)?, initial_ideal_in_coordinates(ideal, second_seed, opts)?)
    };
    if first != second {
        return Err(Error::SeedsDisagree { seed_a: opts.seed, seed_b: second_seed });
    }
    Ok(GinResult {
        n,
        degrees: first.iter().map(Monomial::degree).collect(),
        strongly_stable: is_strongly_stable(&first),
        generators: first,
        seed: opts.seed,
        second_seed,
        degree_cap: opts.degree_cap,
    })
}

/// `dim_ℚ (S/I)_k` for `k = 0..=up_to`, for a monomial ideal given by
/// generators, by counting standard monomials.
pub fn hilbert_function_monomial(n: usize, generators: &[Monomial], up_to: u32) -> Vec<usize> {
    (0..=up_to)
        .map(|k| Monomial::all_of_degree(n, k).iter().filter(|m| !generators.iter().any(|g| g.divides(m))).count())
        .collect()
}

/// `dim_ℚ (S/I)_k` for `k = 0..=up_to` by ranks of the spaces spanned by
/// multiples of the generators (homogeneous ideals only).
pub fn hilbert_function(ideal: &Ideal, up_to: u32) -> Result<Vec<usize>> {
    if !ideal.is_homogeneous() {
        return Err(Error::InvalidParameter("Hilbert functions need a homogeneous ideal".into()));
    }
    let n = ideal.nvars();
    let integral: Vec<Vec<(Monomial, BigInt)>> = ideal
        .generators()
        .iter()
        .map(|g| {
            let l = g.terms().iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
            g.terms().iter().map(|(m, c)| (m.clone(), (c * BigRational::from_integer(l.clone())).to_integer())).collect()
        })
        .collect();
    let mut out = Vec::new();
    for k in 0..=up_to {
        let monomials = Monomial::all_of_degree(n, k);
        let index: std::collections::HashMap<&Monomial, usize> = monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut rows = Vec::new();
        for g in &integral {
            let deg = g[0].0.degree();
            if deg > k {
                continue;
            }
            for mult in Monomial::all_of_degree(n, k - deg) {
                let mut row = vec![BigInt::zero(); monomials.len()];
                for (m, c) in g {
                    row[index[&m.mul(&mult)]] += c;
                }
                rows.push(row);
            }
        }
        out.push(monomials.len() - rank_over_q(&rows, monomials.len(), None));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum TruncationVerdict {
    /// `Δ(r-1)` is Cohen–Macaulay of the given Krull dimension.
    CohenMacaulay { dim: usize },
    /// One of the generator checks failed.
    Fails { check: String },
    PreconditionFailed { reason: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct TruncationCmReport {
    pub r: usize,
    pub d: usize,
    pub gin_generators: Option<Vec<String>>,
    /// No generator of degree `<= r` involves the last `d + 1` variables.
    pub no_late_variables: Option<bool>,
    /// Every degree-`r` monomial in the first `n - d - 1` variables is in gin.
    pub contains_leading_power_block: Option<bool>,
    /// No minimal generator in degree `r + 1`.
    pub no_generators_in_degree_r_plus_1: Option<bool>,
    /// `gin(I_{<=r})` equals the degree `<= r` part of `gin(I)`.
    pub truncation_matches: Option<bool>,
    pub gin_seeds: Option<(u64, u64)>,
    pub verdict: TruncationVerdict,
}

/// Certifies that `Δ(r-1)` is Cohen–Macaulay of dimension `d + 1` from the
/// generic initial ideal of `I_Δ`, for a homology sphere `Δ` with the WLP and
/// `h_{r-1} = h_r`, `r <= d/2`.
pub fn truncation_cm_check(
    complex: &SimplicialComplex,
    r: usize,
    seed: u64,
    max_spairs: usize,
    cross_check: bool,
) -> Result<TruncationCmReport> {
    let n = complex.n();
    let d = (complex.dim() + 1) as usize;
    let mut report = TruncationCmReport {
        r,
        d,
        gin_generators: None,
        no_late_variables: None,
        contains_leading_power_block: None,
        no_generators_in_degree_r_plus_1: None,
        truncation_matches: None,
        gin_seeds: None,
        verdict: TruncationVerdict::PreconditionFailed { reason: String::new() },
    };
    let h = complex.h_vector();
    let reason = if r < 1 || 2 * r > d {
        Some(format!("need 1 <= r <= d/2, got r = {r}, d = {d}"))
    } else if h.get(r - 1) != h.get(r) {
        Some(format!("h_{} = {} differs from h_{r} = {}", r - 1, h.get(r - 1), h.get(r)))
    } else if !is_homology_sphere(complex, FieldSpec::Rationals).is_sphere() {
        Some("not a homology sphere over Q".into())
    } else if !wlp_check(complex, seed)?.holds() {
        Some("the weak Lefschetz property was not certified".into())
    } else {
        None
    };
    if let Some(reason) = reason {
        report.verdict = TruncationVerdict::PreconditionFailed { reason };
        return Ok(report);
    }

    let ideal = sr_ideal(complex);
    let cap = (r + 1) as u32;
    let j = gin(&ideal, &GinOptions { seed, max_spairs, degree_cap: Some(cap) })?;
    report.gin_seeds = Some((j.seed, j.second_seed));
    report.gin_generators = Some(j.generators.iter().map(|m| m.to_string()).collect());
    let low: Vec<Monomial> = j.generators.iter().filter(|m| m.degree() <= r as u32).cloned().collect();
    let first = n - d - 1;
    let a = low.iter().all(|m| m.max_var().is_none_or(|v| v < first));
    let b = Monomial::all_of_degree(first, r as u32).iter().all(|m| {
        let mut e = m.exponents().to_vec();
        e.resize(n, 0);
        j.contains(&Monomial::new(e))
    });
    let c = j.degrees.iter().all(|&deg| deg != cap);
    report.no_late_variables = Some(a);
    report.contains_leading_power_block = Some(b);
    report.no_generators_in_degree_r_plus_1 = Some(c);
    if cross_check {
        let truncated = gin(&truncate_ideal(&ideal, r as u32), &GinOptions { seed, max_spairs, degree_cap: Some(cap) })?;
        report.truncation_matches = Some(truncated.generators == low);
    }
    let failed = [
        (a, "generators involve the last d + 1 variables"),
        (b, "missing degree-r monomials in the first n - d - 1 variables"),
        (c, "minimal generators in degree r + 1"),
        (report.truncation_matches != Some(false), "gin of the truncation differs"),
    ]
    .into_iter()
    .find(|(ok, _)| !ok);
    report.verdict = match failed {
        None => TruncationVerdict::CohenMacaulay { dim: d + 1 },
        Some((_, why)) => TruncationVerdict::Fails { check: why.into() },
    };
    Ok(report)
}
