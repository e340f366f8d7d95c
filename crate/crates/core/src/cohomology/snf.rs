use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// `U · M · V = D` with `D` diagonal, nonnegative, each entry dividing the
/// next; `U`, `V` unimodular.
#[derive(Clone, Debug, PartialEq)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
    pub u: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
    pub rows: usize,
    pub cols: usize,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }

    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diagonal.iter().filter(|d| !d.is_zero() && !d.is_one()).cloned().collect()
    }

    /// Some integer `x` with `M x = b`, if one exists.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(b.len(), self.rows);
        let ub: Vec<BigInt> = self.u.iter().map(|row| row.iter().zip(b).map(|(a, x)| a * x).sum()).collect();
        let mut w = vec![BigInt::zero(); self.cols];
        for (i, target) in ub.iter().enumerate() {
            let d = self.diagonal.get(i).cloned().unwrap_or_else(BigInt::zero);
            if d.is_zero() {
                if !target.is_zero() {
                    return None;
                }
            } else {
                let (q, r) = target.div_rem(&d);
                if !r.is_zero() {
                    return None;
                }
                w[i] = q;
            }
        }
        Some(self.v.iter().map(|row| row.iter().zip(&w).map(|(a, x)| a * x).sum()).collect())
    }
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

pub fn smith_normal_form(m: &[Vec<BigInt>], cols: usize) -> SmithForm {
    let rows = m.len();
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // Pivot: smallest nonzero absolute value in the remaining block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        u.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        for row in v.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut changed = false;
            for i in (t + 1)..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in 0..cols {
                    let x = &a[t][j] * &q;
                    a[i][j] -= x;
                }
                for j in 0..rows {
                    let x = &u[t][j] * &q;
                    u[i][j] -= x;
                }
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    u.swap(t, i);
                    changed = true;
                }
            }
            for j in (t + 1)..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for i in 0..rows {
                    let x = &a[i][t] * &q;
                    a[i][j] -= x;
                }
                for i in 0..cols {
                    let x = &v[i][t] * &q;
                    v[i][j] -= x;
                }
                if !a[t][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    for row in v.iter_mut() {
                        row.swap(t, j);
                    }
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            // Divisibility: fold any entry not divisible by the pivot into row t.
            let mut fixed = true;
            'scan: for i in (t + 1)..rows {
                for j in (t + 1)..cols {
                    if !(&a[i][j] % &a[t][t]).is_zero() {
                        for k in 0..cols {
                            let x = a[i][k].clone();
                            a[t][k] += x;
                        }
                        for k in 0..rows {
                            let x = u[i][k].clone();
                            u[t][k] += x;
                        }
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if fixed {
                break;
            }
        }
        if a[t][t].is_negative() {
            for j in 0..cols {
                a[t][j] = -&a[t][j];
            }
            for j in 0..rows {
                u[t][j] = -&u[t][j];
            }
        }
        t += 1;
    }
    let diagonal = (0..rows.min(cols)).map(|i| a[i][i].clone()).collect();
    SmithForm { diagonal, u, v, rows, cols }
}
