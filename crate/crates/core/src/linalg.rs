//! Exact dense linear algebra over the Gaussian rationals.
//!
//! Small systems only: structure-constant extraction, generator-basis
//! expansion, and the inner-derivation feasibility search all reduce to
//! `A x = b` with a few dozen rows. Infeasible systems come back with a
//! checkable certificate: a row combination annihilating `A` but not `b`.

use crate::scalar::GaussianRational;

/// Row-major matrix of Gaussian rationals.
#[derive(Debug, Clone)]
pub struct QMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<GaussianRational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![GaussianRational::zero(); rows * cols],
        }
    }

    pub fn at(&self, r: usize, c: usize) -> &GaussianRational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: GaussianRational) {
        self.data[r * self.cols + c] = v;
    }
}

/// Outcome of an exact linear solve.
#[derive(Debug, Clone)]
pub enum SolveOutcome {
    Solution {
        /// One solution of `A x = b`.
        particular: Vec<GaussianRational>,
        /// Basis of the kernel of `A`.
        nullspace: Vec<Vec<GaussianRational>>,
    },
    Infeasible {
        /// Coefficients `lambda` with `lambda^T A = 0` and `lambda^T b != 0`.
        certificate: Vec<GaussianRational>,
        rank: usize,
        augmented_rank: usize,
    },
}

/// Gauss-Jordan elimination of `[A | b]`, tracking row operations so an
/// infeasible system yields a verifiable certificate.
pub fn solve(a: &QMatrix, b: &[GaussianRational]) -> SolveOutcome {
    assert_eq!(a.rows, b.len(), "rhs length must match row count");
    let rows = a.rows;
    let cols = a.cols;
    // Working copy: A, then b, then an identity block recording row ops.
    let width = cols + 1 + rows;
    let mut m = QMatrix::zeros(rows, width);
    for r in 0..rows {
        for c in 0..cols {
            m.set(r, c, a.at(r, c).clone());
        }
        m.set(r, cols, b[r].clone());
        m.set(r, cols + 1 + r, GaussianRational::one());
    }

    let mut pivot_col_of_row = Vec::new();
    let mut pivot_row = 0usize;
    for col in 0..cols {
        let Some(src) = (pivot_row..rows).find(|&r| !m.at(r, col).is_zero()) else {
            continue;
        };
        if src != pivot_row {
            for c in 0..width {
                let tmp = m.at(src, c).clone();
                m.set(src, c, m.at(pivot_row, c).clone());
                m.set(pivot_row, c, tmp);
            }
        }
        let inv = m.at(pivot_row, col).inv().expect("pivot is nonzero");
        for c in 0..width {
            m.set(pivot_row, c, m.at(pivot_row, c) * &inv);
        }
        for r in 0..rows {
            if r != pivot_row && !m.at(r, col).is_zero() {
                let factor = m.at(r, col).clone();
                for c in 0..width {
                    let v = m.at(r, c) - &(&factor * m.at(pivot_row, c));
                    m.set(r, c, v);
                }
            }
        }
        pivot_col_of_row.push(col);
        pivot_row += 1;
        if pivot_row == rows {
            break;
        }
    }
    let rank = pivot_row;

    // A zero row with a nonzero rhs certifies infeasibility.
    for r in rank..rows {
        if !m.at(r, cols).is_zero() {
            let certificate: Vec<GaussianRational> =
                (0..rows).map(|c| m.at(r, cols + 1 + c).clone()).collect();
            return SolveOutcome::Infeasible {
                certificate,
                rank,
                augmented_rank: rank + 1,
            };
        }
    }

    let mut particular = vec![GaussianRational::zero(); cols];
    for (r, &col) in pivot_col_of_row.iter().enumerate() {
        particular[col] = m.at(r, cols).clone();
    }

    let pivot_set: std::collections::BTreeSet<usize> = pivot_col_of_row.iter().copied().collect();
    let mut nullspace = Vec::new();
    for free in (0..cols).filter(|c| !pivot_set.contains(c)) {
        let mut v = vec![GaussianRational::zero(); cols];
        v[free] = GaussianRational::one();
        for (r, &col) in pivot_col_of_row.iter().enumerate() {
            v[col] = -m.at(r, free);
        }
        nullspace.push(v);
    }

    SolveOutcome::Solution { particular, nullspace }
}

/// Checks a certificate: `lambda^T A = 0` and `lambda^T b != 0`.
pub fn certificate_is_valid(a: &QMatrix, b: &[GaussianRational], lambda: &[GaussianRational]) -> bool {
    if lambda.len() != a.rows {
        return false;
    }
    for c in 0..a.cols {
        let mut acc = GaussianRational::zero();
        for r in 0..a.rows {
            acc = &acc + &(&lambda[r] * a.at(r, c));
        }
        if !acc.is_zero() {
            return false;
        }
    }
    let mut acc = GaussianRational::zero();
    for r in 0..a.rows {
        acc = &acc + &(&lambda[r] * &b[r]);
    }
    !acc.is_zero()
}
