use std::fmt;

use crate::base::{BaseFunction, BaseSeries, Ring};
use crate::error::{Error, Result};
use crate::fedosov::{FedosovConnection, WeylForm};
use crate::geometry::{FormSeries, ScalarForm};
use crate::scalar::Scalar;
use crate::weyl::{WeylElement, WeylKey};

/// First `y`-dependent monomial of a form: wedge indices (0-based), key and
/// coefficient.
pub type NoncentralTerm<S> = (Vec<usize>, WeylKey, BaseFunction<S>);

pub(crate) fn describe_term<S: Scalar>(t: &NoncentralTerm<S>) -> String {
    let (idx, key, f) = t;
    let dx: Vec<String> = idx.iter().map(|i| format!("dx{}", i + 1)).collect();
    let form = if dx.is_empty() { String::new() } else { format!(" {}", dx.join("∧")) };
    format!("({f}) ħ^{} y^{:?}{form}", key.hbar, key.y)
}

/// Invertible section `U` with `U⁻¹∇U` central, together with that 1-form.
#[derive(Clone)]
pub struct GnablaElement<S> {
    unit: WeylElement<S>,
    inverse: WeylElement<S>,
    beta: FormSeries<S>,
}

impl<S: Scalar> fmt::Debug for GnablaElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GnablaElement").field("unit", &self.unit).field("beta", &self.beta).finish()
    }
}

/// Why a section is not in the equivariance group.
#[derive(Clone)]
pub struct Rejection<S> {
    pub residual_norm: f64,
    pub first_noncentral: NoncentralTerm<S>,
}

impl<S: Scalar> fmt::Debug for Rejection<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "U⁻¹∇U has y-dependent term {} (norm {})", describe_term(&self.first_noncentral), self.residual_norm)
    }
}

pub enum Membership<S> {
    Member(GnablaElement<S>),
    Rejected(Rejection<S>),
}

impl<S: Scalar> Membership<S> {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member(_))
    }

    pub fn member(self) -> Option<GnablaElement<S>> {
        match self {
            Membership::Member(g) => Some(g),
            Membership::Rejected(_) => None,
        }
    }

    pub fn rejection(&self) -> Option<&Rejection<S>> {
        match self {
            Membership::Member(_) => None,
            Membership::Rejected(r) => Some(r),
        }
    }
}

/// Test `U⁻¹∇U` for centrality through degree `D − 1`. `U` must carry the
/// connection's truncation and be invertible.
pub fn gnabla_membership<S: Scalar>(fc: &FedosovConnection<S>, u: &WeylElement<S>) -> Result<Membership<S>> {
    fc.space().check_same(u.space())?;
    let inverse = u.inverse()?;
    let du = fc.nabla(&WeylForm::from_element(u.clone()))?;
    let cap = du.trunc();
    let beta_form = WeylForm::from_element(inverse.restamp(cap)).wedge_capped(&du, cap);
    if let Some(term) = beta_form.first_noncentral() {
        return Ok(Membership::Rejected(Rejection {
            residual_norm: beta_form.noncentral_part().max_abs(),
            first_noncentral: term,
        }));
    }
    let beta = beta_form.central_series(cap / 2);
    if let Some((k, idx, f)) = beta.closedness_defect() {
        return Err(Error::Consistency(format!(
            "U⁻¹∇U is central but not closed: ħ^{k} component {idx:?} of its differential is {f}"
        )));
    }
    Ok(Membership::Member(GnablaElement { unit: u.clone(), inverse, beta }))
}

impl<S: Scalar> GnablaElement<S> {
    /// Membership as a hard requirement.
    pub fn new(fc: &FedosovConnection<S>, u: &WeylElement<S>) -> Result<Self> {
        match gnabla_membership(fc, u)? {
            Membership::Member(g) => Ok(g),
            Membership::Rejected(r) => Err(Error::Precondition(format!("not in the equivariance group: {r:?}"))),
        }
    }

    pub fn unit(&self) -> &WeylElement<S> {
        &self.unit
    }

    pub fn inverse_unit(&self) -> &WeylElement<S> {
        &self.inverse
    }

    /// `U⁻¹∇U` as a closed 1-form series.
    pub fn beta(&self) -> &FormSeries<S> {
        &self.beta
    }

    pub fn product(&self, fc: &FedosovConnection<S>, other: &Self) -> Result<Self> {
        Self::new(fc, &self.unit.mul(&other.unit))
    }

    pub fn inverse(&self, fc: &FedosovConnection<S>) -> Result<Self> {
        Self::new(fc, &self.inverse)
    }

    /// Representative with leading component divided out when it is a unit
    /// of the base ring; equal classes modulo central factors usually share
    /// this normal form.
    pub fn canonical(&self, fc: &FedosovConnection<S>) -> Result<Self> {
        match self.unit.leading().unit_inverse() {
            Some(inv) => Self::new(fc, &self.unit.scale_base(&inv)),
            None => Ok(self.clone()),
        }
    }

    /// Same class modulo central sections: `U V⁻¹` is y-free.
    pub fn same_class(&self, other: &Self) -> bool {
        self.unit.mul(&other.inverse).noncentral_part().is_negligible()
    }
}

/// `𝔻g = g⁻¹∇g`.
pub fn dmap<S: Scalar>(g: &GnablaElement<S>) -> FormSeries<S> {
    g.beta.clone()
}

/// Data of a central section `c · e^{i m·x} · exp(Σ_{k≥1} ħᵏ a_k)`; the
/// Fourier mode `m` is only available on the torus.
#[derive(Clone, Debug)]
pub struct CentralExponent<S: Scalar> {
    pub constant: S,
    pub mode: Option<Vec<i32>>,
    pub tail: BaseSeries<S>,
}

impl<S: Scalar> CentralExponent<S> {
    /// `dα` for `α = log c + i m·x + Σ ħᵏ a_k`.
    pub fn differential(&self) -> FormSeries<S> {
        let (ring, dim) = (self.tail.ring(), self.tail.dim());
        let mut terms = Vec::new();
        for (k, a) in self.tail.terms().iter().enumerate() {
            let mut form = ScalarForm::function(a.clone()).exterior_d();
            if k == 0 {
                if let Some(m) = &self.mode {
                    for (j, &mj) in m.iter().enumerate() {
                        if mj != 0 {
                            let c = BaseFunction::constant(ring, dim, S::i().mul(&S::from_i64(mj as i64)));
                            form.add_component(&[j], &c);
                        }
                    }
                }
            }
            terms.push(form);
        }
        FormSeries::from_terms(terms, self.tail.order())
    }
}

/// The section `c · e^{i m·x} · exp(ħ a₁ + ħ² a₂ + …)` at the connection's
/// truncation; a member of the equivariance group with `𝔻 = dα`.
pub fn central_witness<S: Scalar>(fc: &FedosovConnection<S>, data: &CentralExponent<S>) -> Result<GnablaElement<S>> {
    let space = fc.space();
    let (ring, dim) = (space.ring(), space.dim());
    if data.tail.ring() != ring || data.tail.dim() != dim {
        return Err(Error::Mismatch("exponent over a different base".into()));
    }
    if !data.tail.coefficient(0)?.is_zero() {
        return Err(Error::Unsupported(
            "the ħ⁰ part of a central exponent must be a Fourier mode (torus) or absent".into(),
        ));
    }
    if data.constant.is_zero() {
        return Err(Error::NotInvertible("central constant is zero".into()));
    }
    let lead = match (&data.mode, ring) {
        (None, _) => BaseFunction::constant(ring, dim, data.constant.clone()),
        (Some(m), Ring::Torus) if m.len() == dim => BaseFunction::term(ring, dim, m.clone(), data.constant.clone()),
        (Some(_), Ring::Torus) => return Err(Error::Mismatch("Fourier mode has the wrong length".into())),
        (Some(_), Ring::Euclidean) => {
            return Err(Error::Unsupported("e^{i m·x} is not a polynomial on the plane".into()));
        }
    };
    let tail = space.from_series(data.tail.terms());
    let u = tail.exp()?.scale_base(&lead);
    GnablaElement::new(fc, &u)
}
