use crate::error::{Error, Result};
use crate::base::BaseSeries;
use crate::fedosov::{delta, delta_inv, nabla0_unchecked, sigma, star, tau, FedosovConnection, WeylForm};
use crate::geometry::{AffineSymplecto, FormSeries};
use crate::scalar::Scalar;
use crate::weyl::WeylElement;

/// `A(s) = U ∘ γ*s ∘ U⁻¹`.
pub fn apply_lift<S: Scalar>(
    unit: &WeylElement<S>,
    unit_inverse: &WeylElement<S>,
    g: &AffineSymplecto<S>,
    s: &WeylElement<S>,
) -> WeylElement<S> {
    unit.mul(&g.pullback_weyl(s)).mul(unit_inverse)
}

/// Solve for `U` with `Ad U ∘ γ*` carrying flat sections of `source` to flat
/// sections of `target`:
/// `−δU + ∇₀U + (1/iħ)(r′U − U γ*r) − ηU = 0`, `η = −p` where
/// `γ*θ − θ′ = dp`, normalized by `δ⁻¹`-recursion from `U = 1 + …`.
///
/// Requires `γ*Γ = Γ′` and equal ħ⁰ parts of `γ*r` and `r′`; otherwise the
/// intertwiner is not an element of the formal Weyl algebra.
pub fn solve_lift<S: Scalar>(
    source: &FedosovConnection<S>,
    target: &FedosovConnection<S>,
    g: &AffineSymplecto<S>,
    primitive: Option<&FormSeries<S>>,
) -> Result<WeylElement<S>> {
    if source.manifold() != target.manifold() || source.trunc() != target.trunc() {
        return Err(Error::Mismatch("source and target connections live on different spaces".into()));
    }
    if g.ring() != source.manifold().kind || g.dim() != source.manifold().dim() {
        return Err(Error::Mismatch("symplectomorphism acts on a different base".into()));
    }
    let pulled = source.pullback(g);
    if !pulled.connection().sub(target.connection()).is_negligible() {
        return Err(Error::Unsupported(
            "γ*Γ differs from the target connection; only lifts between equal symplectic connections are solved".into(),
        ));
    }
    let gap = pulled.theta().sub(target.theta());
    let eta = match primitive {
        None => {
            if !gap.is_negligible() {
                return Err(Error::Precondition(
                    "γ*θ differs from the target θ; supply a primitive p with γ*θ − θ′ = dp".into(),
                ));
            }
            None
        }
        Some(p) => {
            if p.degree() != 1 || p.ring() != gap.ring() || p.dim() != gap.dim() {
                return Err(Error::Mismatch("the primitive must be a 1-form series on the base".into()));
            }
            let order = gap.order().min(p.order());
            if !p.exterior_d().with_order(order).sub(&gap.with_order(order)).is_negligible() {
                return Err(Error::Precondition("dp does not equal γ*θ − θ′".into()));
            }
            Some(p.neg())
        }
    };
    let r_target = target.r();
    let r_pulled = pulled.r();
    let lowest = r_target.sub(&r_pulled).map(|a| a.filter(|k| k.hbar == 0));
    if !lowest.is_negligible() {
        return Err(Error::Unsupported(
            "γ*r and r′ differ at ħ⁰; the intertwiner would need an exponent of negative ħ-order".into(),
        ));
    }

    let trunc = target.trunc();
    let space = target.space();
    let mut parts: Vec<WeylElement<S>> = vec![space.one()];
    for j in 0..trunc {
        let mut rhs = WeylForm::zero(&space, 1);
        rhs = rhs.add(&nabla0_unchecked(target.connection(), &WeylForm::from_element(parts[j as usize].clone())));
        let cap = j + 2;
        for e in 3..=(j + 2) {
            let f = (j + 2 - e) as usize;
            if parts[f].is_zero() {
                continue;
            }
            let uf = WeylForm::from_element(parts[f].restamp(cap));
            let mut prod = WeylForm::zero(&space.with_trunc(cap), 1);
            if let Some(rt) = target.r_part(e) {
                prod = prod.add(&rt.restamp(cap).wedge_capped(&uf, cap));
            }
            if let Some(rs) = pulled.r_part(e) {
                prod = prod.sub(&uf.wedge_capped(&rs.restamp(cap), cap));
            }
            rhs = rhs.add(&prod.div_ihbar()?.grading_project(j));
        }
        if let Some(eta) = &eta {
            for k in 0..=(j / 2) {
                let Ok(term) = eta.term(k) else { break };
                let prev = &parts[(j - 2 * k) as usize];
                if term.is_zero() || prev.is_zero() {
                    continue;
                }
                let central = WeylForm::from_scalar_form(&space, term).mul_hbar(k);
                rhs = rhs.sub(&central.wedge_capped(&WeylForm::from_element(prev.clone()), trunc));
            }
        }
        let rhs = rhs.grading_project(j);
        let next = delta_inv(&rhs).component(0).grading_project(j + 1);
        let check = delta(&WeylForm::from_element(next.clone())).sub(&rhs);
        if !check.is_negligible() {
            return Err(Error::Consistency(format!(
                "lift equation has no solution at degree {j}: residual norm {}",
                check.max_abs()
            )));
        }
        parts.push(next);
    }
    let mut u = space.zero();
    for p in &parts {
        u = u.add(p);
    }
    Ok(u)
}

/// Lift of a symplectomorphism preserving the data of one connection.
pub fn self_lift<S: Scalar>(
    fc: &FedosovConnection<S>,
    g: &AffineSymplecto<S>,
    primitive: Option<&FormSeries<S>>,
) -> Result<WeylElement<S>> {
    solve_lift(fc, fc, g, primitive)
}

/// `σ(U · γ*τ(f) · U⁻¹)`: the function-level map induced by a lift.
pub fn transport<S: Scalar>(
    source: &FedosovConnection<S>,
    unit: &WeylElement<S>,
    unit_inverse: &WeylElement<S>,
    g: &AffineSymplecto<S>,
    f: &BaseSeries<S>,
) -> Result<BaseSeries<S>> {
    Ok(sigma(&apply_lift(unit, unit_inverse, g, &tau(source, f)?)))
}

/// `Φ(f ⋆ h) − Φ(f) ⋆′ Φ(h)` for the map `Φ` induced by a lift from
/// `source` to `target`; zero through the reliable order for a genuine lift.
pub fn morphism_residual<S: Scalar>(
    source: &FedosovConnection<S>,
    target: &FedosovConnection<S>,
    unit: &WeylElement<S>,
    g: &AffineSymplecto<S>,
    f: &BaseSeries<S>,
    h: &BaseSeries<S>,
) -> Result<BaseSeries<S>> {
    let inv = unit.inverse()?;
    let lhs = transport(source, unit, &inv, g, &star(source, f, h)?)?;
    let rhs = star(target, &transport(source, unit, &inv, g, f)?, &transport(source, unit, &inv, g, h)?)?;
    Ok(lhs.sub(&rhs))
}
