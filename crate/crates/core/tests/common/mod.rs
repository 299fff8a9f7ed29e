//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Rank by plain Gaussian elimination, over ℚ or modulo a prime.
pub fn rank(mut rows: Vec<Vec<i64>>, p: Option<i64>) -> usize {
    match p {
        Some(p) => {
            for row in &mut rows {
                for x in row.iter_mut() {
                    *x = x.rem_euclid(p);
                }
            }
            let inv = |a: i64| (1..p).find(|b| a * b % p == 1).unwrap();
            let mut r = 0;
            let cols = rows.first().map_or(0, Vec::len);
            for c in 0..cols {
                let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else { continue };
                rows.swap(r, k);
                let s = inv(rows[r][c]);
                for k in 0..rows.len() {
                    if k != r && rows[k][c] != 0 {
                        let m = rows[k][c] * s % p;
                        for j in 0..cols {
                            rows[k][j] = (rows[k][j] - m * rows[r][j]).rem_euclid(p);
                        }
                    }
                }
                r += 1;
            }
            r
        }
        None => {
            let mut m: Vec<Vec<BigRational>> =
                rows.iter().map(|row| row.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect();
            let cols = m.first().map_or(0, Vec::len);
            let mut r = 0;
            for c in 0..cols {
                let Some(k) = (r..m.len()).find(|&k| !m[k][c].is_zero()) else { continue };
                m.swap(r, k);
                let s = BigRational::one() / m[r][c].clone();
                for k in 0..m.len() {
                    if k != r && !m[k][c].is_zero() {
                        let f = m[k][c].clone() * &s;
                        for j in 0..cols {
                            let t = f.clone() * &m[r][j];
                            m[k][j] -= t;
                        }
                    }
                }
                r += 1;
            }
            r
        }
    }
}

/// Reduced Betti numbers `b̃_{-1}, b̃_0, …` of the complex whose faces are
/// `faces` (closed under subsets, containing the empty face).
pub fn oracle_betti(faces: &[u64], p: Option<i64>) -> Vec<usize> {
    let top = faces.iter().map(|f| f.count_ones() as usize).max().unwrap_or(0);
    let by_card: Vec<Vec<u64>> =
        (0..=top).map(|k| faces.iter().copied().filter(|f| f.count_ones() as usize == k).collect()).collect();
    // boundary from cardinality k to k-1, k = 1..=top
    let mut ranks = vec![0usize; top + 2];
    for k in 1..=top {
        let index: HashMap<u64, usize> = by_card[k - 1].iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let rows: Vec<Vec<i64>> = by_card[k]
            .iter()
            .map(|&f| {
                let mut row = vec![0i64; by_card[k - 1].len()];
                let verts: Vec<u32> = (0..64).filter(|v| f >> v & 1 == 1).collect();
                for (pos, v) in verts.iter().enumerate() {
                    row[index[&(f & !(1u64 << v))]] = if pos % 2 == 0 { 1 } else { -1 };
                }
                row
            })
            .collect();
        ranks[k] = rank(rows, p);
    }
    (0..=top).map(|k| by_card[k].len() - ranks[k] - ranks[k + 1]).collect()
}
