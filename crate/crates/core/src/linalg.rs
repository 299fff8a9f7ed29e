//! Exact linear algebra over ℚ and prime fields.
//!
//! Ranks over ℚ are computed multi-modularly: an integer matrix has the
//! same rank over ℚ as over 𝔽_p unless `p` divides every maximal nonzero
//! minor. Reducing modulo enough primes that their product exceeds the
//! Hadamard bound of those minors therefore yields the rational rank
//! exactly, and the prime list is fixed so the result is deterministic.
//! A plain fraction-based elimination ([`ExactMatrix::rref`]) is kept for
//! small matrices, determinants and null spaces.

use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Coefficient field for homology and rank computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum FieldSpec {
    #[default]
    Rationals,
    Prime(u32),
}

impl FieldSpec {
    pub fn prime(p: u32) -> Result<FieldSpec> {
        if p >= 1 << 31 || !is_prime(p as u64) {
            return Err(Error::InvalidField(format!("{p} is not a prime below 2^31")));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn characteristic(self) -> u32 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => p,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "q" | "Q" | "rationals" => Ok(FieldSpec::Rationals),
            other => {
                let digits = other.trim_start_matches(['F', 'f']);
                let p: u32 = digits
                    .parse()
                    .map_err(|_| Error::InvalidField(format!("expected `q` or a prime, got `{s}`")))?;
                FieldSpec::prime(p)
            }
        }
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Deterministic Miller–Rabin, valid for all `n < 2^32`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    assert!(n < 1 << 32, "primality test is only certified below 2^32");
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'bases: for a in [2u64, 7, 61] {
        let mut x = pow_mod(a % n, d, n);
        if x == 0 || x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = x * x % n;
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

static PRIMES: Mutex<Vec<u64>> = Mutex::new(Vec::new());

/// The `count` largest primes below 2^31, in decreasing order.
fn modular_primes(count: usize) -> Vec<u64> {
    let mut cache = PRIMES.lock().unwrap_or_else(|e| e.into_inner());
    let mut candidate = cache.last().map_or((1u64 << 31) - 1, |p| p - 2);
    while cache.len() < count {
        if is_prime(candidate) {
            cache.push(candidate);
        }
        candidate -= 2;
    }
    cache[..count].to_vec()
}

/// Every prime used by the multi-modular rank exceeds 2^30.
const PRIME_BITS: u64 = 30;

/// In-place row reduction modulo `p`; returns the pivot columns.
///
/// The pivot in each column is the first remaining row with a nonzero entry.
pub fn echelon_mod_p(rows: &mut [Vec<u64>], cols: usize, p: u64) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else {
            continue;
        };
        rows.swap(r, k);
        let inv = inv_mod(rows[r][c], p);
        for x in rows[r][c..].iter_mut() {
            *x = *x * inv % p;
        }
        let (head, tail) = rows.split_at_mut(r + 1);
        let pivot_row = &head[r];
        for row in tail.iter_mut() {
            let factor = row[c];
            if factor == 0 {
                continue;
            }
            let neg = p - factor;
            for j in c..cols {
                if pivot_row[j] != 0 {
                    row[j] = (row[j] + neg * pivot_row[j]) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank_mod_p(mut rows: Vec<Vec<u64>>, cols: usize, p: u64) -> usize {
    echelon_mod_p(&mut rows, cols, p).len()
}

/// Integer rows in the two sizes that occur in practice.
enum IntRows<'a> {
    Small(Vec<Vec<i64>>),
    Big(&'a [Vec<BigInt>]),
}

impl IntRows<'_> {
    fn reduce(&self, p: u64) -> Vec<Vec<u64>> {
        match self {
            IntRows::Small(rows) => rows
                .iter()
                .map(|r| r.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect())
                .collect(),
            IntRows::Big(rows) => {
                let bp = BigInt::from(p);
                rows.iter()
                    .map(|r| {
                        r.iter()
                            .map(|x| {
                                if x.is_zero() {
                                    0
                                } else {
                                    x.mod_floor(&bp).to_u64().unwrap()
                                }
                            })
                            .collect()
                    })
                    .collect()
            }
        }
    }
}

/// Upper bound (in bits) on the absolute value of any minor.
fn hadamard_bits(rows: &[Vec<BigInt>], cols: usize) -> u64 {
    let mut bits: Vec<u64> = rows
        .iter()
        .map(|r| {
            let norm2: BigInt = r.iter().map(|x| x * x).sum();
            if norm2.is_zero() {
                0
            } else {
                norm2.bits().div_ceil(2)
            }
        })
        .filter(|&b| b > 0)
        .collect();
    bits.sort_unstable_by(|a, b| b.cmp(a));
    bits.iter().take(cols.min(rows.len())).sum()
}

/// Exact rank over ℚ of an integer matrix.
///
/// `upper`, when given, must be a proven upper bound for the rank; reaching it
/// ends the computation early.
pub fn rank_over_q(rows: &[Vec<BigInt>], cols: usize, upper: Option<usize>) -> usize {
    let rows: Vec<Vec<BigInt>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    if rows.is_empty() || cols == 0 {
        return 0;
    }
    let cap = upper.unwrap_or(usize::MAX).min(rows.len()).min(cols);
    let small: Option<Vec<Vec<i64>>> =
        rows.iter().map(|r| r.iter().map(|x| x.to_i64()).collect()).collect();
    let int_rows = match small {
        Some(s) => IntRows::Small(s),
        None => IntRows::Big(&rows),
    };
    let needed = (hadamard_bits(&rows, cols) / PRIME_BITS + 1) as usize;
    let mut best = 0;
    for p in modular_primes(needed) {
        best = best.max(rank_mod_p(int_rows.reduce(p), cols, p));
        if best >= cap {
            break;
        }
    }
    best
}

/// Pivot columns of the echelon forms modulo the first `tries` primes, keeping
/// only those with exactly `rank` pivots.
///
/// Columns independent modulo p are independent over ℚ, so every returned set
/// is a column basis when `rank` is the rational rank.
pub fn pivots_over_q(rows: &[Vec<BigInt>], cols: usize, rank: usize, tries: usize) -> Vec<Vec<usize>> {
    let small: Option<Vec<Vec<i64>>> =
        rows.iter().map(|r| r.iter().map(|x| x.to_i64()).collect()).collect();
    let int_rows = match small {
        Some(s) => IntRows::Small(s),
        None => IntRows::Big(rows),
    };
    modular_primes(tries)
        .into_iter()
        .map(|p| {
            let mut m = int_rows.reduce(p);
            echelon_mod_p(&mut m, cols, p)
        })
        .filter(|piv| piv.len() == rank)
        .collect()
}

/// Rank over a field of an integer matrix.
pub fn integer_rank(rows: &[Vec<BigInt>], cols: usize, field: FieldSpec) -> usize {
    match field {
        FieldSpec::Rationals => rank_over_q(rows, cols, None),
        FieldSpec::Prime(p) => {
            let ir = IntRows::Big(rows);
            rank_mod_p(ir.reduce(p as u64), cols, p as u64)
        }
    }
}

/// Rank over a field of a small-integer matrix.
pub fn small_integer_rank(rows: &[Vec<i64>], cols: usize, field: FieldSpec) -> usize {
    match field {
        FieldSpec::Rationals => {
            let big: Vec<Vec<BigInt>> =
                rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
            rank_over_q(&big, cols, None)
        }
        FieldSpec::Prime(p) => {
            let p = p as u64;
            let m = rows.iter().map(|r| r.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect()).collect();
            rank_mod_p(m, cols, p)
        }
    }
}

/// A dense matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, entries: vec![BigRational::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        ExactMatrix { rows: rows.len(), cols, entries: rows.into_iter().flatten().collect() }
    }

    pub fn from_integer_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: BigRational) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[BigRational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// Each row scaled by the least common multiple of its denominators.
    pub fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
            })
            .collect()
    }

    pub fn rank(&self, field: FieldSpec) -> Result<usize> {
        match field {
            FieldSpec::Rationals => Ok(rank_over_q(&self.integer_rows(), self.cols, None)),
            FieldSpec::Prime(p) => {
                let bp = BigInt::from(p);
                let mut m = Vec::with_capacity(self.rows);
                for r in 0..self.rows {
                    let mut row = Vec::with_capacity(self.cols);
                    for x in self.row(r) {
                        let den = x.denom().mod_floor(&bp).to_u64().unwrap();
                        if den == 0 {
                            return Err(Error::NotInvertible(x.to_string()));
                        }
                        let num = x.numer().mod_floor(&bp).to_u64().unwrap();
                        row.push(num * inv_mod(den, p as u64) % p as u64);
                    }
                    m.push(row);
                }
                Ok(rank_mod_p(m, self.cols, p as u64))
            }
        }
    }

    /// Reduced row echelon form by rational Gaussian elimination.
    ///
    /// Returns the pivot columns; the matrix is replaced by its RREF.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(k) = (r..self.rows).find(|&k| !self.get(k, c).is_zero()) else {
                continue;
            };
            if k != r {
                for j in 0..self.cols {
                    self.entries.swap(k * self.cols + j, r * self.cols + j);
                }
            }
            let inv = self.get(r, c).recip();
            for j in c..self.cols {
                let v = self.get(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || self.get(i, c).is_zero() {
                    continue;
                }
                let factor = self.get(i, c).clone();
                for j in c..self.cols {
                    if self.get(r, j).is_zero() {
                        continue;
                    }
                    let v = self.get(i, j) - &factor * self.get(r, j);
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Rank by rational elimination; independent of the multi-modular path.
    pub fn rank_by_elimination(&self) -> usize {
        self.clone().rref().len()
    }

    pub fn determinant(&self) -> BigRational {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let mut det = BigRational::one();
        for c in 0..m.cols {
            let Some(k) = (c..m.rows).find(|&k| !m.get(k, c).is_zero()) else {
                return BigRational::zero();
            };
            if k != c {
                for j in 0..m.cols {
                    m.entries.swap(k * m.cols + j, c * m.cols + j);
                }
                det = -det;
            }
            let pivot = m.get(c, c).clone();
            det *= &pivot;
            for i in c + 1..m.rows {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c) / &pivot;
                for j in c..m.cols {
                    let v = m.get(i, j) - &factor * m.get(c, j);
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    /// A basis of `{x : M x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<BigRational>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![BigRational::zero(); self.cols];
                v[f] = BigRational::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -m.get(r, f).clone();
                }
                v
            })
            .collect()
    }
}

/// Sign of a rational as -1, 0 or 1.
pub fn sign(x: &BigRational) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}
