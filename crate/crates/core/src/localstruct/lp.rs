//! Dense tableau simplex over checked `Ratio<i128>`, Bland's rule.
//!
//! Solves `max c·x` subject to `A x <= b`, `x >= 0`, with `b >= 0` so the
//! slack basis is feasible. Any arithmetic overflow surfaces as
//! [`Error::Overflow`] instead of a wrong answer.

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = Ratio<i128>;

#[derive(Clone, Debug, Default)]
pub struct Lp {
    pub vars: usize,
    pub objective: Vec<Q>,
    /// Sparse rows `(coefficients, rhs)`.
    pub rows: Vec<(Vec<(usize, Q)>, Q)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub value: Q,
    pub x: Vec<Q>,
    pub pivots: usize,
}

fn ov() -> Error {
    Error::Overflow
}

fn add(a: &Q, b: &Q) -> Result<Q> {
    a.checked_add(b).ok_or_else(ov)
}
fn sub(a: &Q, b: &Q) -> Result<Q> {
    a.checked_sub(b).ok_or_else(ov)
}
fn mul(a: &Q, b: &Q) -> Result<Q> {
    a.checked_mul(b).ok_or_else(ov)
}
fn div(a: &Q, b: &Q) -> Result<Q> {
    a.checked_div(b).ok_or_else(ov)
}

impl Lp {
    pub fn new(vars: usize) -> Self {
        Lp { vars, objective: vec![Q::zero(); vars], rows: Vec::new() }
    }

    pub fn row(&mut self, coeffs: Vec<(usize, Q)>, rhs: Q) {
        self.rows.push((coeffs, rhs));
    }

    /// Adds `Σ x_i <= rhs` over the given variables with unit coefficients.
    pub fn unit_row(&mut self, vars: &[usize], rhs: i128) {
        self.row(vars.iter().map(|&v| (v, Q::one())).collect(), Q::from_integer(rhs));
    }

    pub fn solve(&self) -> Result<LpSolution> {
        let (m, n) = (self.rows.len(), self.vars);
        let width = n + m + 1;
        // row-major tableau; the last column is the rhs
        let mut t = vec![Q::zero(); m * width];
        let mut basis: Vec<usize> = (n..n + m).collect();
        for (r, (coeffs, rhs)) in self.rows.iter().enumerate() {
            if rhs.is_negative() {
                return Err(Error::invalid("simplex needs a non-negative right-hand side"));
            }
            for (v, c) in coeffs {
                if *v >= n {
                    return Err(Error::invalid("row refers to an unknown variable"));
                }
                let cell = &mut t[r * width + v];
                *cell = add(cell, c)?;
            }
            t[r * width + n + r] = Q::one();
            t[r * width + width - 1] = *rhs;
        }
        // reduced costs c_j - z_j, maximising
        let mut cost = vec![Q::zero(); width];
        cost[..n].copy_from_slice(&self.objective);
        let mut value = Q::zero();
        let mut pivots = 0usize;
        loop {
            let Some(enter) = (0..n + m).find(|&j| cost[j].is_positive()) else { break };
            let mut leave: Option<(usize, Q)> = None;
            for r in 0..m {
                let a = t[r * width + enter];
                if a.is_positive() {
                    let ratio = div(&t[r * width + width - 1], &a)?;
                    let better = match &leave {
                        None => true,
                        Some((lr, lv)) => ratio < *lv || (ratio == *lv && basis[r] < basis[*lr]),
                    };
                    if better {
                        leave = Some((r, ratio));
                    }
                }
            }
            let Some((pr, _)) = leave else {
                return Err(Error::invalid("linear program is unbounded"));
            };
            pivots += 1;
            let piv = t[pr * width + enter];
            for j in 0..width {
                let cell = &mut t[pr * width + j];
                *cell = div(cell, &piv)?;
            }
            let prow: Vec<Q> = t[pr * width..(pr + 1) * width].to_vec();
            for r in 0..m {
                if r == pr {
                    continue;
                }
                let f = t[r * width + enter];
                if f.is_zero() {
                    continue;
                }
                for j in 0..width {
                    if !prow[j].is_zero() {
                        let cell = &mut t[r * width + j];
                        *cell = sub(cell, &mul(&f, &prow[j])?)?;
                    }
                }
            }
            let f = cost[enter];
            for j in 0..width - 1 {
                if !prow[j].is_zero() {
                    cost[j] = sub(&cost[j], &mul(&f, &prow[j])?)?;
                }
            }
            value = add(&value, &mul(&f, &prow[width - 1])?)?;
            basis[pr] = enter;
        }
        let mut x = vec![Q::zero(); n];
        for (r, &b) in basis.iter().enumerate() {
            if b < n {
                x[b] = t[r * width + width - 1];
            }
        }
        Ok(LpSolution { value, x, pivots })
    }
}
