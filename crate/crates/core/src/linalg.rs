//! Small dense matrices over a [`Scalar`].

use crate::scalar::Scalar;

pub type Matrix<S> = Vec<Vec<S>>;

pub fn identity<S: Scalar>(d: usize) -> Matrix<S> {
    (0..d).map(|i| (0..d).map(|j| if i == j { S::one() } else { S::zero() }).collect()).collect()
}

pub fn matmul<S: Scalar>(a: &[Vec<S>], b: &[Vec<S>]) -> Matrix<S> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(S::zero(), |acc, k| acc.add(&row[k].mul(&b[k][j]))))
                .collect()
        })
        .collect()
}

pub fn matvec<S: Scalar>(a: &[Vec<S>], v: &[S]) -> Vec<S> {
    a.iter().map(|row| row.iter().zip(v).fold(S::zero(), |acc, (x, y)| acc.add(&x.mul(y)))).collect()
}

pub fn transpose<S: Scalar>(a: &[Vec<S>]) -> Matrix<S> {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn approx_eq<S: Scalar>(a: &[Vec<S>], b: &[Vec<S>]) -> bool {
    a.len() == b.len()
        && a.iter().zip(b).all(|(r, s)| r.len() == s.len() && r.iter().zip(s).all(|(x, y)| x.approx_eq(y)))
}

/// Gauss-Jordan inverse; `None` if singular.
pub fn inverse<S: Scalar>(a: &[Vec<S>]) -> Option<Matrix<S>> {
    let d = a.len();
    let mut m: Matrix<S> = a.to_vec();
    let mut inv = identity::<S>(d);
    for col in 0..d {
        let pivot = (col..d)
            .filter(|&r| !m[r][col].is_negligible())
            .max_by(|&r, &s| m[r][col].magnitude().total_cmp(&m[s][col].magnitude()))?;
        m.swap(col, pivot);
        inv.swap(col, pivot);
        let p = m[col][col].inv()?;
        for j in 0..d {
            m[col][j] = m[col][j].mul(&p);
            inv[col][j] = inv[col][j].mul(&p);
        }
        for r in 0..d {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for j in 0..d {
                m[r][j] = m[r][j].sub(&f.mul(&m[col][j]));
                inv[r][j] = inv[r][j].sub(&f.mul(&inv[col][j]));
            }
        }
    }
    Some(inv)
}

/// Rank by Gaussian elimination.
pub fn rank<S: Scalar>(a: &[Vec<S>]) -> usize {
    let mut m: Matrix<S> = a.to_vec();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_negligible()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for i in r + 1..rows {
            if m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].mul(&inv);
            for j in c..cols {
                m[i][j] = m[i][j].sub(&f.mul(&m[r][j]));
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}
