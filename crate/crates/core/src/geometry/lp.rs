//! Exact two-phase simplex method over ℚ with Bland's anti-cycling rule.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `maximize c·x` subject to `A x = b`, `x >= 0`.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    pub a: Vec<Vec<BigRational>>,
    pub b: Vec<BigRational>,
    pub c: Vec<BigRational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { x: Vec<BigRational>, value: BigRational },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<BigRational>>,
    basis: Vec<usize>,
    /// Number of columns, the right-hand side excluded.
    width: usize,
}

enum Step {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &BigRational {
        &self.rows[i][self.width]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Runs simplex iterations maximizing `cost` over the columns `< allowed`.
    fn optimize(&mut self, cost: &[BigRational], allowed: usize) -> Step {
        loop {
            let entering = (0..allowed).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let reduced = &cost[j]
                    - self.basis.iter().enumerate().map(|(i, &bj)| &cost[bj] * &self.rows[i][j]).sum::<BigRational>();
                reduced.is_positive()
            });
            let Some(j) = entering else {
                return Step::Optimal;
            };
            let mut leave: Option<(usize, BigRational)> = None;
            for i in 0..self.rows.len() {
                if !self.rows[i][j].is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / &self.rows[i][j];
                let better = match &leave {
                    None => true,
                    Some((k, best)) => ratio < *best || (ratio == *best && self.basis[i] < self.basis[*k]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                None => return Step::Unbounded,
                Some((i, _)) => self.pivot(i, j),
            }
        }
    }

    fn solution(&self, n: usize) -> Vec<BigRational> {
        let mut x = vec![BigRational::zero(); n];
        for (i, &bj) in self.basis.iter().enumerate() {
            if bj < n {
                x[bj] = self.rhs(i).clone();
            }
        }
        x
    }
}

impl LinearProgram {
    pub fn num_vars(&self) -> usize {
        self.c.len()
    }

    pub fn solve(&self) -> LpOutcome {
        let n = self.num_vars();
        let m = self.a.len();
        let width = n + m;
        let mut rows = Vec::with_capacity(m);
        for (i, (row, bi)) in self.a.iter().zip(&self.b).enumerate() {
            let flip = bi.is_negative();
            let mut t: Vec<BigRational> = row.iter().map(|x| if flip { -x.clone() } else { x.clone() }).collect();
            t.extend((0..m).map(|k| if k == i { BigRational::one() } else { BigRational::zero() }));
            t.push(if flip { -bi.clone() } else { bi.clone() });
            rows.push(t);
        }
        let mut tab = Tableau { rows, basis: (n..n + m).collect(), width };

        // Phase 1: maximize -(sum of artificials).
        let mut phase1 = vec![BigRational::zero(); width];
        for x in &mut phase1[n..] {
            *x = -BigRational::one();
        }
        tab.optimize(&phase1, width);
        let infeasibility: BigRational =
            tab.basis.iter().enumerate().filter(|(_, &bj)| bj >= n).map(|(i, _)| tab.rhs(i).clone()).sum();
        if infeasibility.is_positive() {
            return LpOutcome::Infeasible;
        }
        // Drive zero-level artificials out of the basis, dropping redundant rows.
        let mut i = 0;
        while i < tab.rows.len() {
            if tab.basis[i] >= n {
                match (0..n).find(|&j| !tab.rows[i][j].is_zero()) {
                    Some(j) => tab.pivot(i, j),
                    None => {
                        tab.rows.remove(i);
                        tab.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }

        let mut phase2 = self.c.clone();
        phase2.extend((0..m).map(|_| BigRational::zero()));
        match tab.optimize(&phase2, n) {
            Step::Unbounded => LpOutcome::Unbounded,
            Step::Optimal => {
                let x = tab.solution(n);
                let value = self.c.iter().zip(&x).map(|(c, x)| c * x).sum();
                debug_assert!(self.is_feasible(&x));
                LpOutcome::Optimal { x, value }
            }
        }
    }

    /// Re-substitutes a point into every constraint.
    pub fn is_feasible(&self, x: &[BigRational]) -> bool {
        x.len() == self.num_vars()
            && x.iter().all(|v| !v.is_negative())
            && self
                .a
                .iter()
                .zip(&self.b)
                .all(|(row, bi)| row.iter().zip(x).map(|(a, v)| a * v).sum::<BigRational>() == *bi)
    }
}
