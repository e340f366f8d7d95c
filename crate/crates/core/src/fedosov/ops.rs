use crate::error::Result;
use crate::fedosov::form::WeylForm;
use crate::geometry::{mask_indices, wedge_sign, AffineConnection};
use crate::scalar::Scalar;
use crate::weyl::{WeylElement, WeylKey};

/// `δ = dxᵏ ∧ ∂/∂yᵏ`.
pub fn delta<S: Scalar>(s: &WeylForm<S>) -> WeylForm<S> {
    let mut out = WeylForm::zero(s.space(), s.degree() + 1);
    for (m, a) in s.components() {
        for k in 0..s.dim() {
            if let Some(sign) = wedge_sign(1 << k, *m) {
                let da = a.partial_y(k);
                out.add_mask((1 << k) | m, &da.scale(&S::from_i64(sign)));
            }
        }
    }
    out
}

/// Contracting homotopy: on `yᵅ dx^I` with `|α| = a`, `|I| = q ≥ 1`,
/// `δ⁻¹ = (1/(a+q)) Σ_k yᵏ ι_{∂ₖ}`; zero on 0-forms.
pub fn delta_inv<S: Scalar>(s: &WeylForm<S>) -> WeylForm<S> {
    if s.degree() == 0 {
        return WeylForm::zero(s.space(), 0);
    }
    let mut out = WeylForm::zero(s.space(), s.degree() - 1);
    let q = s.degree() as u32;
    for (m, a) in s.components() {
        for (pos, k) in mask_indices(*m).into_iter().enumerate() {
            let sign = if pos % 2 == 0 { 1 } else { -1 };
            let rest = m & !(1 << k);
            let mut piece = s.space().zero();
            for (key, f) in a.terms() {
                let weight = S::from_ratio(sign, (key.y_degree() + q) as i64);
                let mut y = key.y.clone();
                y[k] += 1;
                piece.add_term(WeylKey::new(key.hbar, y), &f.scale(&weight));
            }
            out.add_mask(rest, &piece);
        }
    }
    out
}

/// Projection onto `y`-degree 0 and form degree 0.
pub fn project_00<S: Scalar>(s: &WeylForm<S>) -> WeylForm<S> {
    if s.degree() == 0 {
        s.central_part()
    } else {
        WeylForm::zero(s.space(), s.degree())
    }
}

/// `∇₀ a = dxᵏ ∧ (∂ₖ a − Γᵐₖⱼ yʲ ∂_{yᵐ} a)`, extended to forms with
/// `∇₀(dxᴵ) = 0`. The connection is not re-validated here.
pub fn nabla0_unchecked<S: Scalar>(c: &AffineConnection<S>, s: &WeylForm<S>) -> WeylForm<S> {
    let d = s.dim();
    let mut out = WeylForm::zero(s.space(), s.degree() + 1);
    let flat = c.is_flat();
    for (m, a) in s.components() {
        let dy: Vec<WeylElement<S>> = if flat { Vec::new() } else { (0..d).map(|i| a.partial_y(i)).collect() };
        for k in 0..d {
            let Some(sign) = wedge_sign(1 << k, *m) else { continue };
            let mut term = a.partial_x(k);
            if !flat {
                for (mm, dya) in dy.iter().enumerate() {
                    if dya.is_zero() {
                        continue;
                    }
                    for j in 0..d {
                        let g = c.symbol(mm, k, j);
                        if g.is_zero() {
                            continue;
                        }
                        term = term.sub(&dya.sym_mul_y(j).scale_base(g));
                    }
                }
            }
            out.add_mask((1 << k) | m, &term.scale(&S::from_i64(sign)));
        }
    }
    out
}

/// Checked form of [`nabla0_unchecked`].
pub fn nabla0<S: Scalar>(c: &AffineConnection<S>, s: &WeylForm<S>) -> Result<WeylForm<S>> {
    c.require_symplectic()?;
    Ok(nabla0_unchecked(c, s))
}

/// The y-quadratic 1-form `Γ̃` with `∇₀ = d + (1/iħ)[Γ̃, ·]`:
/// `Γ̃ = ½ G_{imk} yⁱ yᵐ dxᵏ`, `G_{imk} = ω_{lm} Γˡ_{ki}`.
pub fn inner_connection<S: Scalar>(c: &AffineConnection<S>, space: &crate::weyl::WeylSpace<S>) -> WeylForm<S> {
    let d = space.dim();
    let mut out = WeylForm::zero(space, 1);
    let half = S::from_ratio(1, 2);
    for k in 0..d {
        let mut comp = space.zero();
        for i in 0..d {
            for m in 0..d {
                // ω_{lm} Γˡ_{ki} = −Γ_{m;ki} (lowered first index).
                let g = c.lowered(m, k, i).neg();
                if g.is_zero() {
                    continue;
                }
                let mut y = vec![0; d];
                y[i] += 1;
                y[m] += 1;
                comp.add_term(WeylKey::new(0, y), &g.scale(&half));
            }
        }
        out.add_mask(1 << k, &comp);
    }
    out
}

/// `R̃ = dΓ̃ + (1/iħ) Γ̃ ∧ Γ̃`, the y-quadratic curvature term of `∇₀`.
pub fn inner_curvature<S: Scalar>(gamma: &WeylForm<S>) -> WeylForm<S> {
    let cap = gamma.trunc();
    let sq = gamma.wedge_capped(gamma, cap + 2).div_ihbar().expect("Γ̃ ∧ Γ̃ is a commutator");
    gamma.d_coefficients().add(&sq)
}
