//! Closed-form Moyal product
//! `f ⋆ g = Σ_k (iħ/2)ᵏ/k! Λ^{a₁b₁}…Λ^{a_kb_k} ∂_{a₁…a_k}f ∂_{b₁…b_k}g`
//! with the standard bracket matrix `Λ = [[0, I], [−I, 0]]`.

use super::cx::{poly_add, poly_mul, poly_scale, q, Cx, Poly};

/// `Λ^{ab}` as `(b, sign)` for the unique nonzero entry of row `a`.
fn partner(n: usize, a: usize) -> (usize, i64) {
    if a < n {
        (a + n, 1)
    } else {
        (a - n, -1)
    }
}

fn factorial(k: u32) -> i64 {
    (1..=k as i64).product()
}

fn bidifferential(
    n: usize,
    f: &Poly,
    g: &Poly,
    k: u32,
    partial: &dyn Fn(&Poly, usize) -> Poly,
) -> Poly {
    let d = 2 * n;
    let mut out = Poly::new();
    let total = d.pow(k);
    for code in 0..total {
        let mut c = code;
        let mut df = f.clone();
        let mut dg = g.clone();
        let mut sign = 1;
        for _ in 0..k {
            let a = c % d;
            c /= d;
            let (b, s) = partner(n, a);
            sign *= s;
            df = partial(&df, a);
            dg = partial(&dg, b);
        }
        out = poly_add(&out, &poly_scale(&poly_mul(&df, &dg), &Cx::rat(sign, 1)));
    }
    out
}

fn star_with(n: usize, f: &Poly, g: &Poly, max_order: u32, partial: &dyn Fn(&Poly, usize) -> Poly) -> Vec<Poly> {
    (0..=max_order)
        .map(|k| {
            let coeff = Cx::i().scale(&q(1, 2)).pow(k).scale(&q(1, factorial(k)));
            poly_scale(&bidifferential(n, f, g, k, partial), &coeff)
        })
        .collect()
}

/// ħ-coefficients `0..=max_order` of `f ⋆ g` for polynomials on `ℝ²ⁿ`.
pub fn polynomial_star(n: usize, f: &Poly, g: &Poly, max_order: u32) -> Vec<Poly> {
    star_with(n, f, g, max_order, &super::cx::poly_partial)
}

/// Same for trigonometric polynomials on `𝕋²ⁿ` (flat, `θ = 0`).
pub fn fourier_star(n: usize, f: &Poly, g: &Poly, max_order: u32) -> Vec<Poly> {
    star_with(n, f, g, max_order, &super::cx::fourier_partial)
}
