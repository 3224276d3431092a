//! Small dense matrices over a cyclotomic field.
//!
//! Used for the per-component grids of a block matrix and for test oracles;
//! sizes are expected to stay in the tens.

use alloc::{vec, vec::Vec};

use crate::cyclo::{CycloElem, RootField};
use crate::error::{Error, Result};

pub type Dense = Vec<Vec<CycloElem>>;

pub fn identity(field: &RootField, n: usize) -> Dense {
    (0..n).map(|i| (0..n).map(|j| if i == j { field.one() } else { field.zero() }).collect()).collect()
}

/// Product that skips zero entries of the left factor.
pub fn mul(field: &RootField, a: &Dense, b: &Dense) -> Result<Dense> {
    let inner = b.len();
    if a.iter().any(|row| row.len() != inner) {
        return Err(Error::Shape("inner dimensions differ".into()));
    }
    let cols = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![field.zero(); cols]; a.len()];
    for (i, row) in a.iter().enumerate() {
        for (k, x) in row.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b[k].iter().enumerate() {
                if !y.is_zero() {
                    out[i][j] = &out[i][j] + &(x * y);
                }
            }
        }
    }
    Ok(out)
}

fn check_square(a: &Dense) -> Result<usize> {
    let n = a.len();
    if a.iter().any(|row| row.len() != n) {
        return Err(Error::Shape("matrix is not square".into()));
    }
    Ok(n)
}

pub fn det(field: &RootField, a: &Dense) -> Result<CycloElem> {
    let n = check_square(a)?;
    let mut m = a.clone();
    let mut acc = field.one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Ok(field.zero());
        };
        if pivot != col {
            m.swap(pivot, col);
            acc = -acc;
        }
        let p = m[col][col].clone();
        acc = &acc * &p;
        let p_inv = p.inverse()?;
        for row in col + 1..n {
            if m[row][col].is_zero() {
                continue;
            }
            let factor = &m[row][col] * &p_inv;
            let (top, bottom) = m.split_at_mut(row);
            for (x, pivot) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *x = &*x - &(&factor * pivot);
            }
        }
    }
    Ok(acc)
}

/// Gauss-Jordan inverse; `NotInvertible` on a singular matrix.
pub fn inverse(field: &RootField, a: &Dense) -> Result<Dense> {
    let n = check_square(a)?;
    let mut m = a.clone();
    let mut inv = identity(field, n);
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero()).ok_or(Error::NotInvertible)?;
        m.swap(pivot, col);
        inv.swap(pivot, col);
        let p_inv = m[col][col].inverse()?;
        for j in 0..n {
            m[col][j] = &m[col][j] * &p_inv;
            inv[col][j] = &inv[col][j] * &p_inv;
        }
        for row in 0..n {
            if row == col || m[row][col].is_zero() {
                continue;
            }
            let factor = m[row][col].clone();
            for j in 0..n {
                let d1 = &factor * &m[col][j];
                m[row][j] = &m[row][j] - &d1;
                let d2 = &factor * &inv[col][j];
                inv[row][j] = &inv[row][j] - &d2;
            }
        }
    }
    Ok(inv)
}

pub fn trace(field: &RootField, a: &Dense) -> CycloElem {
    a.iter().enumerate().fold(field.zero(), |acc, (i, row)| &acc + &row[i])
}
