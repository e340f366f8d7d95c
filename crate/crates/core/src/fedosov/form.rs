use std::collections::BTreeMap;
use std::fmt;

use crate::base::BaseFunction;
use crate::error::Result;
use crate::geometry::{mask_indices, wedge_sign, AffineSymplecto, FormSeries, ScalarForm};
use crate::scalar::Scalar;
use crate::weyl::{WeylElement, WeylKey, WeylSpace};

/// Differential form on the base with Weyl-section coefficients.
#[derive(Clone)]
pub struct WeylForm<S> {
    space: WeylSpace<S>,
    degree: usize,
    comps: BTreeMap<u32, WeylElement<S>>,
}

impl<S: Scalar> PartialEq for WeylForm<S> {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.degree == other.degree && self.comps == other.comps
    }
}

impl<S: Scalar> fmt::Debug for WeylForm<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.comps.is_empty() {
            return write!(f, "0 ({}-form, D={})", self.degree, self.space.trunc());
        }
        for (m, a) in &self.comps {
            let idx: Vec<usize> = mask_indices(*m).iter().map(|i| i + 1).collect();
            writeln!(f, "dx{idx:?}: {a}")?;
        }
        Ok(())
    }
}

impl<S: Scalar> WeylForm<S> {
    pub fn zero(space: &WeylSpace<S>, degree: usize) -> Self {
        WeylForm { space: space.clone(), degree, comps: BTreeMap::new() }
    }

    pub fn from_element(a: WeylElement<S>) -> Self {
        let mut out = Self::zero(a.space(), 0);
        out.add_mask(0, &a);
        out
    }

    /// `a dx^{i₁} ∧ …` in the given index order.
    pub fn monomial(a: WeylElement<S>, indices: &[usize]) -> Self {
        let mut out = Self::zero(a.space(), indices.len());
        if let Some((mask, sign)) = crate::geometry::form_mask(indices) {
            out.add_mask(mask, &a.scale(&S::from_i64(sign)));
        }
        out
    }

    /// `Σ_k ħᵏ β_k` as a central Weyl form.
    pub fn from_form_series(space: &WeylSpace<S>, series: &FormSeries<S>) -> Self {
        let mut out = Self::zero(space, series.degree());
        for (k, t) in series.terms().iter().enumerate() {
            out = out.add(&Self::from_scalar_form(space, t).mul_hbar(k as u32));
        }
        out
    }

    pub fn from_scalar_form(space: &WeylSpace<S>, form: &ScalarForm<S>) -> Self {
        let mut out = Self::zero(space, form.degree());
        for (m, f) in form.components() {
            out.add_mask(*m, &space.from_base(f.clone()));
        }
        out
    }

    pub fn space(&self) -> &WeylSpace<S> {
        &self.space
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn trunc(&self) -> u32 {
        self.space.trunc()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn components(&self) -> impl Iterator<Item = (&u32, &WeylElement<S>)> {
        self.comps.iter()
    }

    pub fn component(&self, mask: u32) -> WeylElement<S> {
        self.comps.get(&mask).cloned().unwrap_or_else(|| self.space.zero())
    }

    /// Coefficient of `dx^{i+1}` of a 1-form.
    pub fn one_form_component(&self, i: usize) -> WeylElement<S> {
        debug_assert_eq!(self.degree, 1);
        self.component(1 << i)
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn is_negligible(&self) -> bool {
        self.comps.values().all(WeylElement::is_negligible)
    }

    pub fn max_abs(&self) -> f64 {
        self.comps.values().map(WeylElement::max_abs).fold(0.0, f64::max)
    }

    pub fn add_mask(&mut self, mask: u32, a: &WeylElement<S>) {
        debug_assert_eq!(mask.count_ones() as usize, self.degree);
        let a = if a.trunc() == self.space.trunc() { a.clone() } else { a.restamp(self.space.trunc()) };
        if a.is_zero() {
            return;
        }
        match self.comps.get_mut(&mask) {
            Some(slot) => {
                slot.add_scaled(&a, &S::one());
                if slot.is_zero() {
                    self.comps.remove(&mask);
                }
            }
            None => {
                self.comps.insert(mask, a);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree, "adding forms of different degree");
        let mut out = self.clone();
        for (m, a) in &other.comps {
            out.add_mask(*m, a);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(WeylElement::neg)
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|a| a.scale(c))
    }

    pub fn mul_hbar(&self, p: u32) -> Self {
        self.map(|a| a.mul_hbar(p))
    }

    /// Apply `op` to every coefficient; results are restamped to this
    /// form's truncation.
    pub fn map(&self, mut op: impl FnMut(&WeylElement<S>) -> WeylElement<S>) -> Self {
        let mut out = Self::zero(&self.space, self.degree);
        for (m, a) in &self.comps {
            out.add_mask(*m, &op(a));
        }
        out
    }

    /// Change the stamped truncation (see [`WeylElement::restamp`]).
    pub fn restamp(&self, trunc: u32) -> Self {
        let space = self.space.with_trunc(trunc);
        let mut out = Self::zero(&space, self.degree);
        for (m, a) in &self.comps {
            out.add_mask(*m, &a.restamp(trunc));
        }
        out
    }

    pub fn grading_project(&self, d: u32) -> Self {
        self.map(|a| a.grading_project(d))
    }

    /// Keeps monomials with `y`-degree zero.
    pub fn central_part(&self) -> Self {
        self.map(WeylElement::central_part)
    }

    pub fn noncentral_part(&self) -> Self {
        self.map(WeylElement::noncentral_part)
    }

    /// First y-dependent monomial `(wedge indices, ħ power, y index, coefficient)`.
    pub fn first_noncentral(&self) -> Option<(Vec<usize>, WeylKey, BaseFunction<S>)> {
        for (m, a) in &self.comps {
            for (k, f) in a.terms() {
                if k.y_degree() > 0 && !f.is_negligible() {
                    return Some((mask_indices(*m), k.clone(), f.clone()));
                }
            }
        }
        None
    }

    /// `y`-free part as a series of scalar forms through `ħ^order`.
    pub fn central_series(&self, order: u32) -> FormSeries<S> {
        let ring = self.space.ring();
        let dim = self.dim();
        let mut terms = vec![ScalarForm::zero(ring, dim, self.degree); order as usize + 1];
        for (m, a) in &self.comps {
            for (k, f) in a.terms() {
                if k.y_degree() == 0 && k.hbar <= order {
                    terms[k.hbar as usize].add_mask(*m, f);
                }
            }
        }
        FormSeries::from_terms(terms, order)
    }

    /// `a ∧ b` with the Weyl product on coefficients, capped at `cap`.
    pub(crate) fn wedge_capped(&self, other: &Self, cap: u32) -> Self {
        let space = self.space.with_trunc(cap);
        let mut out = Self::zero(&space, self.degree + other.degree);
        for (ma, a) in &self.comps {
            for (mb, b) in &other.comps {
                if let Some(sign) = wedge_sign(*ma, *mb) {
                    let p = a.mul_capped(b, cap);
                    if sign == 1 {
                        out.add_mask(ma | mb, &p);
                    } else {
                        out.add_mask(ma | mb, &p.neg());
                    }
                }
            }
        }
        out
    }

    /// Graded commutator `a ∧ b − (−1)^{pq} b ∧ a`, capped at `cap`.
    pub(crate) fn bracket_capped(&self, other: &Self, cap: u32) -> Self {
        let ab = self.wedge_capped(other, cap);
        let ba = other.wedge_capped(self, cap);
        if (self.degree * other.degree).is_multiple_of(2) {
            ab.sub(&ba)
        } else {
            ab.add(&ba)
        }
    }

    /// `(1/iħ)[a, b]` reliable through `cap` (products capped at `cap + 2`).
    pub(crate) fn bracket_over_ihbar_capped(&self, other: &Self, cap: u32) -> Self {
        self.bracket_capped(other, cap + 2).div_ihbar().expect("graded commutator divisible by ħ")
    }

    pub(crate) fn div_ihbar(&self) -> Result<Self> {
        let trunc = self.space.trunc().saturating_sub(2);
        let mut out = Self::zero(&self.space.with_trunc(trunc), self.degree);
        for (m, a) in &self.comps {
            out.add_mask(*m, &a.div_ihbar()?);
        }
        Ok(out)
    }

    /// Exterior derivative acting on the base coefficients only.
    pub fn d_coefficients(&self) -> Self {
        let mut out = Self::zero(&self.space, self.degree + 1);
        for (m, a) in &self.comps {
            for k in 0..self.dim() {
                if let Some(sign) = wedge_sign(1 << k, *m) {
                    let da = a.partial_x(k);
                    out.add_mask((1 << k) | m, &da.scale(&S::from_i64(sign)));
                }
            }
        }
        out
    }

    /// `γ*` on coefficients, fiber variables and `dx`.
    pub fn pullback(&self, g: &AffineSymplecto<S>) -> Self {
        let mut out = Self::zero(&self.space, self.degree);
        for (m, a) in &self.comps {
            let pa = g.pullback_weyl(a);
            for (m2, c) in g.pullback_wedge(*m) {
                out.add_mask(m2, &pa.scale(&c));
            }
        }
        out
    }
}
