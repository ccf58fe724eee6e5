//! Hermite and Smith normal forms of integer matrices.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Ring;

/// Column-style Hermite normal form of a nonsingular square matrix whose
/// columns generate a full-rank sublattice of `Z^n`.
///
/// The result `H = M U` (with `U` unimodular) is upper triangular with a
/// positive diagonal and `0 <= H[i][j] < H[i][i]` for `j > i`. Two matrices
/// generate the same lattice iff their Hermite forms are equal.
pub fn hermite_normal_form<T: Ring>(m: &Matrix<T>) -> Result<Matrix<T>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("HNF expects a square matrix".into()));
    }
    let n = m.rows();
    let mut h = m.clone();
    for i in (0..n).rev() {
        for j in 0..i {
            let x = h.get(i, j).clone();
            if x.is_zero() {
                continue;
            }
            let y = h.get(i, i).clone();
            let eg = x.extended_gcd(&y);
            let (g, s, t) = (eg.gcd, eg.x, eg.y);
            let (xg, yg) = (x / g.clone(), y / g);
            // [col_j, col_i] <- [yg*col_j - xg*col_i, s*col_j + t*col_i]; det = 1
            for r in 0..n {
                let cj = h.get(r, j).clone();
                let ci = h.get(r, i).clone();
                h.set(r, j, yg.clone() * cj.clone() - xg.clone() * ci.clone());
                h.set(r, i, s.clone() * cj + t.clone() * ci);
            }
        }
        if h.get(i, i).is_zero() {
            return Err(Error::Precondition("HNF of a singular matrix".into()));
        }
        if h.get(i, i).is_negative() {
            for r in 0..n {
                let v = -h.get(r, i).clone();
                h.set(r, i, v);
            }
        }
        let piv = h.get(i, i).clone();
        for j in i + 1..n {
            let q = h.get(i, j).div_floor(&piv);
            if q.is_zero() {
                continue;
            }
            for r in 0..n {
                let v = h.get(r, j).clone() - q.clone() * h.get(r, i).clone();
                h.set(r, j, v);
            }
        }
    }
    Ok(h)
}

/// Smith normal form diagonal of an arbitrary `m x n` integer matrix:
/// `min(m, n)` non-negative entries `d_1 | d_2 | ...`, zeros last.
pub fn smith_diagonal<T: Ring>(m: &Matrix<T>) -> Vec<T> {
    let (rows, cols) = (m.rows(), m.cols());
    let k = rows.min(cols);
    let mut a = m.clone();
    for t in 0..k {
        loop {
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| !a.get(i, j).is_zero())
                .min_by(|&(i1, j1), &(i2, j2)| a.get(i1, j1).abs().cmp(&a.get(i2, j2).abs()));
            let Some((pi, pj)) = pivot else {
                return finish(a, k);
            };
            a.swap_rows(t, pi);
            a.swap_cols(t, pj);
            let p = a.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..rows {
                let q = a.get(i, t).clone() / p.clone();
                if !q.is_zero() {
                    for j in t..cols {
                        let v = a.get(i, j).clone() - q.clone() * a.get(t, j).clone();
                        a.set(i, j, v);
                    }
                }
                clean &= a.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                let q = a.get(t, j).clone() / p.clone();
                if !q.is_zero() {
                    for i in t..rows {
                        let v = a.get(i, j).clone() - q.clone() * a.get(i, t).clone();
                        a.set(i, j, v);
                    }
                }
                clean &= a.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            // the pivot must divide the whole remaining block
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !a.get(i, j).is_multiple_of(&p));
            match bad {
                Some((i, _)) => {
                    for j in t..cols {
                        let v = a.get(t, j).clone() + a.get(i, j).clone();
                        a.set(t, j, v);
                    }
                }
                None => break,
            }
        }
    }
    finish(a, k)
}

fn finish<T: Ring>(a: Matrix<T>, k: usize) -> Vec<T> {
    (0..k).map(|i| a.get(i, i).abs()).collect()
}

/// Rank over Q, read off the Smith diagonal.
pub fn rank<T: Ring>(m: &Matrix<T>) -> usize {
    smith_diagonal(m).iter().filter(|d| !d.is_zero()).count()
}
