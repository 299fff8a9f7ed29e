//! Monomials, polynomials and ideals in `ℚ[x_1, ..., x_n]`.
//!
//! Variables are 0-based internally and printed 1-based (`x1` is variable 0).
//! Term order is degrevlex with `x_1 > x_2 > ... > x_n`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
    degree: u32,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial { exps: vec![0; n], degree: 0 }
    }

    pub fn new(exps: Vec<u32>) -> Self {
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut exps = vec![0; n];
        exps[i] = 1;
        Monomial { exps, degree: 1 }
    }

    /// The squarefree monomial `x_F`.
    pub fn squarefree(n: usize, vars: impl IntoIterator<Item = usize>) -> Self {
        let mut exps = vec![0; n];
        for v in vars {
            exps[v] = 1;
        }
        Self::new(exps)
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(), degree: self.degree + other.degree }
    }

    /// `self / other`; requires `other | self`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect(), degree: self.degree - other.degree }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Self::new(self.exps.iter().zip(&other.exps).map(|(&a, &b)| a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Largest index of a variable dividing the monomial.
    pub fn max_var(&self) -> Option<usize> {
        self.exps.iter().rposition(|&e| e > 0)
    }

    pub fn times_var(&self, i: usize) -> Monomial {
        let mut m = self.clone();
        m.exps[i] += 1;
        m.degree += 1;
        m
    }

    /// All monomials of degree `k` in `n` variables, in decreasing order.
    pub fn all_of_degree(n: usize, k: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut exps = vec![0u32; n];
        fn rec(i: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            let n = exps.len();
            if i + 1 == n {
                exps[i] = left;
                out.push(Monomial::new(exps.clone()));
                exps[i] = 0;
                return;
            }
            for e in (0..=left).rev() {
                exps[i] = e;
                rec(i + 1, left - e, exps, out);
            }
            exps[i] = 0;
        }
        if n == 0 {
            if k == 0 {
                out.push(Monomial::one(0));
            }
            return out;
        }
        rec(0, k, &mut exps, &mut out);
        out.sort_by(|a, b| b.cmp(a));
        out
    }
}

impl Ord for Monomial {
    /// Degrevlex: higher degree first; ties broken by the last differing
    /// exponent, the smaller exponent winning.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| {
            for (a, b) in self.exps.iter().zip(&other.exps).rev() {
                if a != b {
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate().filter(|(_, &e)| e > 0) {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "x{}^{}", i + 1, e)?;
            first = false;
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

impl Serialize for Monomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A polynomial as a list of terms, largest monomial first, no zero
/// coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: Vec<(Monomial, BigRational)>,
}

impl Polynomial {
    pub fn zero(n: usize) -> Self {
        Polynomial { nvars: n, terms: Vec::new() }
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Monomial, BigRational)>) -> Self {
        let mut map: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), n, "monomial in the wrong ring");
            *map.entry(m).or_insert_with(BigRational::zero) += c;
        }
        Self::from_map(n, map)
    }

    fn from_map(n: usize, map: BTreeMap<Monomial, BigRational>) -> Self {
        Polynomial { nvars: n, terms: map.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn monomial(m: Monomial) -> Self {
        Polynomial { nvars: m.nvars(), terms: vec![(m, BigRational::one())] }
    }

    /// `Σ c_i x_i`.
    pub fn linear(coeffs: &[BigRational]) -> Self {
        let n = coeffs.len();
        Self::from_terms(n, coeffs.iter().enumerate().map(|(i, c)| (Monomial::var(n, i), c.clone())))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coefficient(&self) -> Option<&BigRational> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].0.degree() == w[1].0.degree())
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    /// Scales to leading coefficient one.
    pub fn monic(&self) -> Self {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &BigRational) -> Self {
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect() }
    }

    pub fn add(&self, other: &Polynomial) -> Self {
        Self::from_terms(self.nvars, self.terms.iter().chain(&other.terms).cloned())
    }

    pub fn sub(&self, other: &Polynomial) -> Self {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn mul(&self, other: &Polynomial) -> Self {
        let mut map: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                *map.entry(a.mul(b)).or_insert_with(BigRational::zero) += ca * cb;
            }
        }
        Self::from_map(self.nvars, map)
    }

    /// Substitutes `x_i ↦ images[i]` (all images in a common ring).
    pub fn substitute(&self, images: &[Polynomial]) -> Self {
        assert_eq!(images.len(), self.nvars);
        let target = images.first().map_or(0, |p| p.nvars);
        let mut total = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut prod = Polynomial { nvars: target, terms: vec![(Monomial::one(target), c.clone())] };
            for (i, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    prod = prod.mul(&images[i]);
                }
            }
            total = total.add(&prod);
        }
        total
    }

    pub(crate) fn into_map(self) -> BTreeMap<Monomial, BigRational> {
        self.terms.into_iter().collect()
    }

    pub(crate) fn from_sorted_map(n: usize, map: BTreeMap<Monomial, BigRational>) -> Self {
        Self::from_map(n, map)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            write!(f, "{}", c.abs())?;
            if m.degree() > 0 {
                write!(f, " {m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses `"3 x1^2 x2 - 1/2 x3 + x4"`: terms joined by `+`/`-`, each an
/// optional rational coefficient followed by factors `x<i>` or `x<i>^<e>`.
pub fn parse_polynomial(n: usize, text: &str) -> Result<Polynomial> {
    let text = text.replace('\u{2212}', "-");
    let bad = |why: &str| Error::Parse(format!("polynomial `{text}`: {why}"));
    let mut pieces: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    for ch in text.chars() {
        if ch == '+' || ch == '-' {
            if !cur.trim().is_empty() {
                pieces.push((neg, std::mem::take(&mut cur)));
            } else if !pieces.is_empty() || !cur.trim().is_empty() {
                return Err(bad("dangling sign"));
            }
            cur.clear();
            neg = ch == '-';
        } else {
            cur.push(ch);
        }
    }
    if cur.trim().is_empty() {
        return Err(bad("empty term"));
    }
    pieces.push((neg, cur));

    let mut terms = Vec::new();
    for (neg, piece) in pieces {
        let mut coeff = BigRational::one();
        let mut exps = vec![0u32; n];
        for (k, tok) in piece.split(|c: char| c.is_whitespace() || c == '*').filter(|t| !t.is_empty()).enumerate() {
            if let Some(rest) = tok.strip_prefix('x') {
                let (idx, exp) = match rest.split_once('^') {
                    Some((i, e)) => (i, e.parse::<u32>().map_err(|_| bad("bad exponent"))?),
                    None => (rest, 1),
                };
                let i: usize = idx.parse().map_err(|_| bad("bad variable index"))?;
                if i == 0 || i > n {
                    return Err(bad(&format!("variable x{i} outside x1..x{n}")));
                }
                exps[i - 1] += exp;
            } else if k == 0 {
                coeff = BigRational::from_str(tok).map_err(|_| bad(&format!("bad coefficient `{tok}`")))?;
            } else {
                return Err(bad(&format!("unexpected token `{tok}`")));
            }
        }
        if neg {
            coeff = -coeff;
        }
        terms.push((Monomial::new(exps), coeff));
    }
    Ok(Polynomial::from_terms(n, terms))
}

/// An ideal given by generators in `ℚ[x_1, ..., x_n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    n: usize,
    generators: Vec<Polynomial>,
}

/// JSON form: `{"n": 4, "generators": ["1 x1^1 x3^1", "1 x2^1 x4^1"]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IdealFile {
    pub n: usize,
    pub generators: Vec<String>,
}

impl Ideal {
    /// Drops zero generators.
    pub fn new(n: usize, generators: Vec<Polynomial>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.nvars() != n) {
            return Err(Error::InvalidParameter(format!("generator {g} lives in {} variables, not {n}", g.nvars())));
        }
        Ok(Ideal { n, generators: generators.into_iter().filter(|g| !g.is_zero()).collect() })
    }

    pub fn from_monomials(n: usize, monomials: impl IntoIterator<Item = Monomial>) -> Self {
        Ideal { n, generators: monomials.into_iter().map(Polynomial::monomial).collect() }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.generators.iter().all(Polynomial::is_homogeneous)
    }

    pub fn is_monomial(&self) -> bool {
        self.generators.iter().all(Polynomial::is_monomial)
    }

    /// Leading monomials of the generators (the generators themselves for a
    /// monomial ideal).
    pub fn monomials(&self) -> Vec<Monomial> {
        self.generators.iter().filter_map(|g| g.leading_monomial().cloned()).collect()
    }

    pub fn max_degree(&self) -> u32 {
        self.generators.iter().filter_map(Polynomial::degree).max().unwrap_or(0)
    }

    pub fn to_file(&self) -> IdealFile {
        IdealFile { n: self.n, generators: self.generators.iter().map(|g| g.to_string()).collect() }
    }

    pub fn from_file(file: &IdealFile) -> Result<Self> {
        let gens = file.generators.iter().map(|g| parse_polynomial(file.n, g)).collect::<Result<Vec<_>>>()?;
        Self::new(file.n, gens)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_file(&serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("ideal serializes")
    }
}

/// Minimal generators of the monomial ideal generated by `monomials`,
/// in increasing order.
pub fn minimize_monomials(mut monomials: Vec<Monomial>) -> Vec<Monomial> {
    monomials.sort();
    monomials.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for m in monomials {
        if !out.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
    }
    out
}

pub(crate) fn rational(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}
