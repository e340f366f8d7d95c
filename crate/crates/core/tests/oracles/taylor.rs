//! Taylor coefficients and affine substitution for polynomials.

use std::collections::BTreeMap;

use super::cx::{poly_add, poly_add_term, poly_mul, poly_partial, poly_scale, Cx, Poly};

/// `α ↦ ∂^α f / α!` for every `α` with `|α| ≤ max_degree`.
pub fn taylor_coefficients(f: &Poly, dim: usize, max_degree: u32) -> BTreeMap<Vec<u32>, Poly> {
    let mut out = BTreeMap::new();
    let mut stack: Vec<(Vec<u32>, Poly)> = vec![(vec![0; dim], f.clone())];
    while let Some((alpha, g)) = stack.pop() {
        if g.is_empty() {
            continue;
        }
        let fact: i64 = alpha.iter().map(|&e| (1..=e as i64).product::<i64>()).product();
        out.insert(alpha.clone(), poly_scale(&g, &Cx::rat(1, fact)));
        let total: u32 = alpha.iter().sum();
        if total == max_degree {
            continue;
        }
        // Extend only at or after the last nonzero index to visit each α once.
        let last = alpha.iter().rposition(|&e| e > 0).unwrap_or(0);
        for i in last..dim {
            let mut a2 = alpha.clone();
            a2[i] += 1;
            stack.push((a2, poly_partial(&g, i)));
        }
    }
    out
}

/// `f(Ax + b)` by expanding each substituted coordinate.
pub fn compose_affine(f: &Poly, a: &[Vec<Cx>], b: &[Cx]) -> Poly {
    let dim = b.len();
    let coord: Vec<Poly> = (0..dim)
        .map(|i| {
            let mut p = Poly::new();
            poly_add_term(&mut p, vec![0; dim], &b[i]);
            for (j, aij) in a[i].iter().enumerate() {
                let mut k = vec![0; dim];
                k[j] = 1;
                poly_add_term(&mut p, k, aij);
            }
            p
        })
        .collect();
    let mut out = Poly::new();
    for (key, c) in f {
        let mut term = Poly::new();
        poly_add_term(&mut term, vec![0; dim], c);
        for (i, &e) in key.iter().enumerate() {
            for _ in 0..e {
                term = poly_mul(&term, &coord[i]);
            }
        }
        out = poly_add(&out, &term);
    }
    out
}

pub fn evaluate(f: &Poly, x: &[Cx]) -> Cx {
    let mut acc = Cx::zero();
    for (k, c) in f {
        let mut t = c.clone();
        for (i, &e) in k.iter().enumerate() {
            t = t.mul(&x[i].pow(e as u32));
        }
        acc = acc.add(&t);
    }
    acc
}

