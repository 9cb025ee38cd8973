//! Exact dense linear algebra.
//!
//! Elimination routines are generic over [`Field`]; integer normal forms work
//! directly on `i64` matrices with overflow-checked arithmetic.

use crate::error::{Error, Result};
use crate::scalar::Field;

/// Determinant of a square matrix by Gaussian elimination.
pub fn determinant<F: Field>(matrix: &[Vec<F>]) -> F {
    let n = matrix.len();
    let mut a: Vec<Vec<F>> = matrix.to_vec();
    debug_assert!(a.iter().all(|row| row.len() == n));
    let mut det = F::one();
    let mut odd_swaps = false;
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return F::zero();
        };
        if pivot != col {
            a.swap(pivot, col);
            odd_swaps = !odd_swaps;
        }
        let p = a[col][col].clone();
        det = det * p.clone();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone() / p.clone();
            for c in col..n {
                let delta = factor.clone() * a[col][c].clone();
                a[r][c] = a[r][c].clone() - delta;
            }
        }
    }
    // subtraction from zero keeps unbound constants (e.g. Fp::one) well defined
    if odd_swaps {
        F::zero() - det
    } else {
        det
    }
}

/// Rank of an arbitrary (possibly empty) matrix.
pub fn rank<F: Field>(matrix: &[Vec<F>]) -> usize {
    let rows = matrix.len();
    if rows == 0 {
        return 0;
    }
    let cols = matrix[0].len();
    let mut a: Vec<Vec<F>> = matrix.to_vec();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(pivot, rank);
        let p = a[rank][col].clone();
        for r in rank + 1..rows {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone() / p.clone();
            for c in col..cols {
                let delta = factor.clone() * a[rank][c].clone();
                a[r][c] = a[r][c].clone() - delta;
            }
        }
        rank += 1;
    }
    rank
}

/// Solves the square system `A x = b`; `None` when `A` is singular.
pub fn solve<F: Field>(matrix: &[Vec<F>], rhs: &[F]) -> Option<Vec<F>> {
    let n = matrix.len();
    let mut a: Vec<Vec<F>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(pivot, col);
        let p = a[col][col].clone();
        for c in col..=n {
            a[col][c] = a[col][c].clone() / p.clone();
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in col..=n {
                let delta = factor.clone() * a[col][c].clone();
                a[r][c] = a[r][c].clone() - delta;
            }
        }
    }
    Some(a.into_iter().map(|mut row| row.pop().unwrap()).collect())
}

pub fn det3(rows: [[i64; 3]; 3]) -> i128 {
    let r = rows.map(|row| row.map(i128::from));
    r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1]) - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
        + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0])
}

pub(crate) fn checked(v: Option<i64>) -> Result<i64> {
    v.ok_or(Error::Overflow)
}

/// Smith normal form `P A Q = D` of an integer matrix, with unimodular `P`, `Q`.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub p: Vec<Vec<i64>>,
    pub q: Vec<Vec<i64>>,
    /// Diagonal entries of `D`, non-negative, each dividing the next
    /// (zeros last).
    pub diagonal: Vec<i64>,
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

fn row_combine(m: &mut [Vec<i64>], target: usize, source: usize, factor: i64) -> Result<()> {
    if factor == 0 {
        return Ok(());
    }
    for c in 0..m[target].len() {
        let add = checked(m[source][c].checked_mul(factor))?;
        m[target][c] = checked(m[target][c].checked_add(add))?;
    }
    Ok(())
}

fn col_combine(m: &mut [Vec<i64>], target: usize, source: usize, factor: i64) -> Result<()> {
    if factor == 0 {
        return Ok(());
    }
    for row in m.iter_mut() {
        let add = checked(row[source].checked_mul(factor))?;
        row[target] = checked(row[target].checked_add(add))?;
    }
    Ok(())
}

fn swap_cols(m: &mut [Vec<i64>], a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// Computes the Smith normal form together with both transformation matrices.
pub fn smith_normal_form(a: &[Vec<i64>]) -> Result<SmithForm> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut d: Vec<Vec<i64>> = a.to_vec();
    let mut p = identity(rows);
    let mut q = identity(cols);

    for t in 0..rows.min(cols) {
        // smallest nonzero entry in the remaining block becomes the pivot
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if d[i][j] != 0 && best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                break;
            };
            d.swap(t, bi);
            p.swap(t, bi);
            swap_cols(&mut d, t, bj);
            swap_cols(&mut q, t, bj);

            let pivot = d[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let f = d[i][t] / pivot;
                row_combine(&mut d, i, t, -f)?;
                row_combine(&mut p, i, t, -f)?;
                if d[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let f = d[t][j] / pivot;
                col_combine(&mut d, j, t, -f)?;
                col_combine(&mut q, j, t, -f)?;
                if d[t][j] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility: pivot must divide the whole remaining block
            let offender =
                (t + 1..rows).flat_map(|i| (t + 1..cols).map(move |j| (i, j))).find(|&(i, j)| d[i][j] % pivot != 0);
            match offender {
                Some((i, _)) => {
                    row_combine(&mut d, t, i, 1)?;
                    row_combine(&mut p, t, i, 1)?;
                }
                None => break,
            }
        }
        if d[t][t] < 0 {
            for c in 0..cols {
                d[t][c] = -d[t][c];
            }
            for c in 0..rows {
                p[t][c] = -p[t][c];
            }
        }
    }
    let diagonal = (0..rows.min(cols)).map(|i| d[i][i]).collect();
    Ok(SmithForm { p, q, diagonal })
}

pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner)
                        .try_fold(0i64, |acc, k| checked(row[k].checked_mul(b[k][j]).and_then(|v| v.checked_add(acc))))
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &[Vec<i64>], v: &[i64]) -> Result<Vec<i64>> {
    a.iter()
        .map(|row| {
            row.iter().zip(v).try_fold(0i64, |acc, (x, y)| checked(x.checked_mul(*y).and_then(|t| t.checked_add(acc))))
        })
        .collect()
}
