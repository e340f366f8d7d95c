use std::fmt;

use crate::base::{BaseSeries, Ring};
use crate::cohomology::periods::{t1_class, T1Class};
use crate::equivariance::GnablaElement;
use crate::error::{Error, Result};
use crate::fedosov::{sigma, tau, FedosovConnection};
use crate::geometry::{AffineSymplecto, GroupAction, GroupKind, Shift};
use crate::linalg;
use crate::scalar::Scalar;

fn single_generator<S: Scalar>(act: &GroupAction<S>) -> Result<&AffineSymplecto<S>> {
    match act.kind() {
        GroupKind::FreeAbelian { rank: 1 } => Ok(&act.generators()[0]),
        other => Err(Error::Unsupported(format!("expected a ℤ-action, got {other:?}"))),
    }
}

fn require_invariant<S: Scalar>(fc: &FedosovConnection<S>, g: &AffineSymplecto<S>) -> Result<()> {
    if fc.pullback(g).same_data(fc) {
        Ok(())
    } else {
        Err(Error::Precondition("the connection is not invariant under the generator".into()))
    }
}

/// `γ*(b) ⋆ g ⋆ b⁻¹` for an invariant connection.
pub fn twisted_conjugate_series<S: Scalar>(
    fc: &FedosovConnection<S>,
    gamma: &AffineSymplecto<S>,
    g: &BaseSeries<S>,
    b: &BaseSeries<S>,
) -> Result<BaseSeries<S>> {
    require_invariant(fc, gamma)?;
    let tb = tau(fc, b)?;
    let prod = gamma.pullback_weyl(&tb).mul(&tau(fc, g)?).mul(&tb.inverse()?);
    Ok(sigma(&prod))
}

/// `γ*(b) · g · b⁻¹` in the equivariance group.
pub fn twisted_conjugate_element<S: Scalar>(
    fc: &FedosovConnection<S>,
    gamma: &AffineSymplecto<S>,
    g: &GnablaElement<S>,
    b: &GnablaElement<S>,
) -> Result<GnablaElement<S>> {
    require_invariant(fc, gamma)?;
    let u = gamma.pullback_weyl(b.unit()).mul(g.unit()).mul(b.inverse_unit());
    GnablaElement::new(fc, &u)
}

/// `g₀(p)` for a ℤ-action whose generator fixes `p`; invariant under
/// `g ↦ γ*(b) ⋆ g ⋆ b⁻¹` because the ħ⁰ star product is pointwise.
pub fn fixed_point_invariant<S: Scalar>(act: &GroupAction<S>, p: &[S], g: &BaseSeries<S>) -> Result<S> {
    let gen = single_generator(act)?;
    if !gen.fixes(p)? {
        return Err(Error::Precondition("the point is not fixed by the generator".into()));
    }
    g.coefficient(0)?.evaluate(p)
}

/// A fixed point of a euclidean affine map, if one is found.
pub fn find_fixed_point<S: Scalar>(g: &AffineSymplecto<S>) -> Option<Vec<S>> {
    let Shift::Vector(b) = g.shift() else { return None };
    let d = g.dim();
    let mut m = g.linear_part().clone();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = row[i].sub(&S::one());
    }
    match linalg::inverse(&m) {
        Some(inv) => Some(linalg::matvec(&inv, b).iter().map(S::neg).collect()),
        None => {
            let origin = vec![S::zero(); d];
            g.fixes(&origin).ok()?.then_some(origin)
        }
    }
}

/// Separating invariants of a class in `H¹(ℤ, 𝒢̄∇)`: the `T¹` class on the
/// torus and the value at a fixed point on the plane.
#[derive(Clone, PartialEq)]
pub struct ZH1Report<S> {
    pub t1: Option<T1Class<S>>,
    pub fixed_point: Option<(Vec<S>, S)>,
}

impl<S: Scalar> fmt::Debug for ZH1Report<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ZH1Report").field("t1", &self.t1).field("fixed_point", &self.fixed_point).finish()
    }
}

impl<S: Scalar> ZH1Report<S> {
    /// Different reports certify different classes; equal reports say nothing.
    pub fn distinguishes(&self, other: &Self) -> bool {
        let t1 = match (&self.t1, &other.t1) {
            (Some(a), Some(b)) => !a.same(b),
            _ => false,
        };
        let fp = match (&self.fixed_point, &other.fixed_point) {
            (Some((p, a)), Some((q, b))) => p == q && !a.approx_eq(b),
            _ => false,
        };
        t1 || fp
    }
}

pub fn z_h1_invariants<S: Scalar>(
    fc: &FedosovConnection<S>,
    act: &GroupAction<S>,
    g: &GnablaElement<S>,
) -> Result<ZH1Report<S>> {
    let gen = single_generator(act)?;
    let t1 = match fc.manifold().kind {
        Ring::Torus => Some(t1_class(g)?),
        Ring::Euclidean => None,
    };
    let fixed_point = match fc.manifold().kind {
        Ring::Euclidean => match find_fixed_point(gen) {
            Some(p) => {
                let v = g.unit().leading().evaluate(&p)?;
                Some((p, v))
            }
            None => None,
        },
        Ring::Torus => None,
    };
    Ok(ZH1Report { t1, fixed_point })
}
