use crate::base::Ring;
use crate::error::{Error, Result};
use crate::equivariance::gnabla::GnablaElement;
use crate::fedosov::FedosovConnection;
use crate::scalar::Scalar;
use crate::weyl::WeylKey;

/// Scalar power series in ħ, truncated after `len` terms.
type Series<S> = Vec<S>;

fn series_mul<S: Scalar>(a: &[S], b: &[S], len: usize) -> Series<S> {
    let mut out = vec![S::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out
}

/// Reads `r = R_{kl}(ħ) yˡ dxᵏ`, requiring constant coefficients and no
/// other monomials.
fn linear_r<S: Scalar>(fc: &FedosovConnection<S>, len: usize) -> Result<Vec<Vec<Series<S>>>> {
    let d = fc.manifold().dim();
    let mut table = vec![vec![vec![S::zero(); len]; d]; d];
    let r = fc.r();
    for (mask, a) in r.components() {
        let k = mask.trailing_zeros() as usize;
        for (key, f) in a.terms() {
            if key.y_degree() != 1 || !f.is_constant() {
                return Err(Error::Unsupported(
                    "harmonic witness needs r linear in y with constant coefficients (flat torus data, constant θ)".into(),
                ));
            }
            let l = key.y.iter().position(|&e| e == 1).expect("y-degree one");
            if (key.hbar as usize) < len {
                table[k][l][key.hbar as usize] = f.constant_term();
            }
        }
    }
    Ok(table)
}

/// `g = exp(λ·y)` with `λ = −(I − RΛ)⁻¹ c`, so that `𝔻g = Σ cᵢ dxⁱ`. Only
/// for flat connections on the torus with constant `θ`.
pub fn harmonic_witness<S: Scalar>(fc: &FedosovConnection<S>, c: &[S]) -> Result<GnablaElement<S>> {
    let m = fc.manifold();
    let d = m.dim();
    if m.kind != Ring::Torus {
        return Err(Error::Unsupported("harmonic witnesses are built on the torus only".into()));
    }
    if !fc.connection().is_flat() {
        return Err(Error::Unsupported("harmonic witnesses need the flat symplectic connection".into()));
    }
    if c.len() != d {
        return Err(Error::Mismatch(format!("covector of length {} on a {d}-dimensional base", c.len())));
    }
    let len = fc.trunc() as usize / 2 + 1;
    let r = linear_r(fc, len)?;
    let lambda_mat: Vec<Vec<S>> = m.omega_matrix();
    // M = R Λ, a matrix of series with zero ħ⁰ part.
    let mut mm = vec![vec![vec![S::zero(); len]; d]; d];
    for k in 0..d {
        for j in 0..d {
            for l in 0..d {
                if lambda_mat[l][j].is_zero() {
                    continue;
                }
                for (h, x) in r[k][l].iter().enumerate() {
                    mm[k][j][h] = mm[k][j][h].add(&x.mul(&lambda_mat[l][j]));
                }
            }
        }
    }
    if mm.iter().flatten().any(|s| !s[0].is_zero()) {
        return Err(Error::Unsupported("r has an ħ⁰ linear part; the Neumann series does not terminate".into()));
    }
    // λ = −Σ_j Mʲ c.
    let mut power: Vec<Series<S>> = c
        .iter()
        .map(|x| {
            let mut s = vec![S::zero(); len];
            s[0] = x.clone();
            s
        })
        .collect();
    let mut lambda: Vec<Series<S>> = power.iter().map(|s| s.iter().map(S::neg).collect()).collect();
    for _ in 0..len {
        let next: Vec<Series<S>> = (0..d)
            .map(|k| {
                let mut acc = vec![S::zero(); len];
                for j in 0..d {
                    let p = series_mul(&mm[k][j], &power[j], len);
                    for h in 0..len {
                        acc[h] = acc[h].add(&p[h]);
                    }
                }
                acc
            })
            .collect();
        power = next;
        for k in 0..d {
            for h in 0..len {
                lambda[k][h] = lambda[k][h].sub(&power[k][h]);
            }
        }
    }
    let space = fc.space();
    let mut exponent = space.zero();
    for (l, series) in lambda.iter().enumerate() {
        for (h, x) in series.iter().enumerate() {
            let mut y = vec![0; d];
            y[l] = 1;
            exponent.add_term(WeylKey::new(h as u32, y), &space.base_one().scale(x));
        }
    }
    GnablaElement::new(fc, &exponent.exp()?)
}
