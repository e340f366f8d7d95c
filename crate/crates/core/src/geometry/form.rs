use std::collections::BTreeMap;
use std::fmt;

use crate::base::{BaseFunction, Ring};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Indices set in a wedge mask, ascending.
pub fn mask_indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

/// Sign of `dx^A ∧ dx^B` relative to the sorted wedge `dx^{A∪B}`, or `None`
/// if the index sets overlap.
pub fn wedge_sign(a: u32, b: u32) -> Option<i64> {
    if a & b != 0 {
        return None;
    }
    let mut swaps = 0u32;
    for i in mask_indices(a) {
        swaps += (b & ((1u32 << i) - 1)).count_ones();
    }
    Some(if swaps.is_multiple_of(2) { 1 } else { -1 })
}

/// Sorts an index list into a mask, returning the permutation sign; `None`
/// for repeated indices.
pub(crate) fn indices_to_mask(indices: &[usize]) -> Option<(u32, i64)> {
    let mut mask = 0u32;
    let mut sign = 1;
    for &i in indices {
        let bit = 1u32 << i;
        let s = wedge_sign(mask, bit)?;
        sign *= s;
        mask |= bit;
    }
    Some((mask, sign))
}

/// Scalar differential form with base-function coefficients, stored on
/// sorted wedge monomials.
#[derive(Clone, PartialEq)]
pub struct ScalarForm<S> {
    degree: usize,
    dim: usize,
    ring: Ring,
    coeffs: BTreeMap<u32, BaseFunction<S>>,
}

impl<S: Scalar> fmt::Debug for ScalarForm<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0 ({}-form)", self.degree);
        }
        let mut first = true;
        for (m, c) in &self.coeffs {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for i in mask_indices(*m) {
                write!(f, " dx{}", i + 1)?;
            }
        }
        Ok(())
    }
}

impl<S: Scalar> ScalarForm<S> {
    pub fn zero(ring: Ring, dim: usize, degree: usize) -> Self {
        assert!(dim <= 32 && degree <= dim, "form degree {degree} on a {dim}-dimensional base");
        ScalarForm { degree, dim, ring, coeffs: BTreeMap::new() }
    }

    pub fn function(f: BaseFunction<S>) -> Self {
        let mut out = Self::zero(f.ring(), f.dim(), 0);
        out.add_mask(0, &f);
        out
    }

    /// `f dx^{i₁} ∧ … ∧ dx^{i_p}` for any index order.
    pub fn monomial(f: BaseFunction<S>, indices: &[usize]) -> Self {
        let mut out = Self::zero(f.ring(), f.dim(), indices.len());
        out.add_component(indices, &f);
        out
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn components(&self) -> impl Iterator<Item = (&u32, &BaseFunction<S>)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_negligible(&self) -> bool {
        self.coeffs.values().all(BaseFunction::is_negligible)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.values().map(BaseFunction::max_abs).fold(0.0, f64::max)
    }

    pub fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring || self.dim != other.dim || self.degree != other.degree {
            return Err(Error::Mismatch(format!(
                "{}-form on ({}, dim {}) vs {}-form on ({}, dim {})",
                self.degree, self.ring, self.dim, other.degree, other.ring, other.dim
            )));
        }
        Ok(())
    }

    pub fn add_mask(&mut self, mask: u32, f: &BaseFunction<S>) {
        assert_eq!(mask.count_ones() as usize, self.degree, "wedge mask of wrong degree");
        if f.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&mask) {
            Some(slot) => {
                slot.add_scaled(f, &S::one());
                if slot.is_zero() {
                    self.coeffs.remove(&mask);
                }
            }
            None => {
                self.coeffs.insert(mask, f.clone());
            }
        }
    }

    /// Adds `f dx^{i₁} ∧ …` in the given index order; repeated indices vanish.
    pub fn add_component(&mut self, indices: &[usize], f: &BaseFunction<S>) {
        if let Some((mask, sign)) = indices_to_mask(indices) {
            self.add_mask(mask, &f.scale(&S::from_i64(sign)));
        }
    }

    /// Coefficient of `dx^{i₁} ∧ …` in the given index order (antisymmetric).
    pub fn component(&self, indices: &[usize]) -> BaseFunction<S> {
        match indices_to_mask(indices) {
            Some((mask, sign)) => self.coefficient(mask).scale(&S::from_i64(sign)),
            None => BaseFunction::zero(self.ring, self.dim),
        }
    }

    pub fn coefficient(&self, mask: u32) -> BaseFunction<S> {
        self.coeffs.get(&mask).cloned().unwrap_or_else(|| BaseFunction::zero(self.ring, self.dim))
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_compatible(other).unwrap_or_else(|e| panic!("{e}"));
        let mut out = self.clone();
        for (m, f) in &other.coeffs {
            out.add_mask(*m, f);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&S::one().neg())
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|f| f.scale(c))
    }

    pub fn mul_function(&self, g: &BaseFunction<S>) -> Self {
        self.map(|f| f.mul(g))
    }

    pub fn map(&self, mut op: impl FnMut(&BaseFunction<S>) -> BaseFunction<S>) -> Self {
        let mut out = Self::zero(self.ring, self.dim, self.degree);
        for (m, f) in &self.coeffs {
            out.add_mask(*m, &op(f));
        }
        out
    }

    pub fn wedge(&self, other: &Self) -> Self {
        assert!(self.ring == other.ring && self.dim == other.dim, "wedge of forms on different bases");
        let mut out = Self::zero(self.ring, self.dim, self.degree + other.degree);
        for (ma, fa) in &self.coeffs {
            for (mb, fb) in &other.coeffs {
                if let Some(sign) = wedge_sign(*ma, *mb) {
                    out.add_mask(ma | mb, &fa.mul(fb).scale(&S::from_i64(sign)));
                }
            }
        }
        out
    }

    pub fn exterior_d(&self) -> Self {
        let mut out = Self::zero(self.ring, self.dim, (self.degree + 1).min(self.dim));
        if self.degree == self.dim {
            return out;
        }
        for (m, f) in &self.coeffs {
            for k in 0..self.dim {
                let bit = 1u32 << k;
                if let Some(sign) = wedge_sign(bit, *m) {
                    let df = f.partial(k);
                    if !df.is_zero() {
                        out.add_mask(bit | m, &df.scale(&S::from_i64(sign)));
                    }
                }
            }
        }
        out
    }

    /// First nonzero coefficient of `dβ`, if any.
    pub fn closedness_defect(&self) -> Option<(Vec<usize>, BaseFunction<S>)> {
        let d = self.exterior_d();
        d.coeffs.iter().find(|(_, f)| !f.is_negligible()).map(|(m, f)| (mask_indices(*m), f.clone()))
    }

    /// Keep only the constant (zero-frequency / constant-monomial) part of
    /// every coefficient.
    pub fn constant_part(&self) -> Self {
        self.map(|f| BaseFunction::constant(self.ring, self.dim, f.constant_term()))
    }

    pub fn pruned(&self) -> Self {
        self.map(BaseFunction::pruned)
    }
}

/// `Σ_k ħᵏ β_k` with every `β_k` of the same degree; `order` is the highest
/// ħ power that is reliable. Comparisons above it are refused.
#[derive(Clone, PartialEq)]
pub struct FormSeries<S> {
    terms: Vec<ScalarForm<S>>,
    order: u32,
}

impl<S: Scalar> fmt::Debug for FormSeries<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, t) in self.terms.iter().enumerate() {
            if !t.is_zero() {
                writeln!(f, "ħ^{k}: {t:?}")?;
            }
        }
        write!(f, "(reliable through ħ^{})", self.order)
    }
}

impl<S: Scalar> FormSeries<S> {
    pub fn zero(ring: Ring, dim: usize, degree: usize, order: u32) -> Self {
        FormSeries { terms: vec![ScalarForm::zero(ring, dim, degree); order as usize + 1], order }
    }

    /// `β` placed at ħ⁰, exact at every order.
    pub fn constant(form: ScalarForm<S>, order: u32) -> Self {
        Self::from_terms(vec![form], order)
    }

    /// Missing orders are zero; terms beyond `order` are dropped.
    pub fn from_terms(mut terms: Vec<ScalarForm<S>>, order: u32) -> Self {
        assert!(!terms.is_empty(), "form series needs at least one term");
        let template = terms[0].clone();
        terms.truncate(order as usize + 1);
        while terms.len() < order as usize + 1 {
            terms.push(ScalarForm::zero(template.ring(), template.dim(), template.degree()));
        }
        FormSeries { terms, order }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.terms[0].degree()
    }

    pub fn ring(&self) -> Ring {
        self.terms[0].ring()
    }

    pub fn dim(&self) -> usize {
        self.terms[0].dim()
    }

    pub fn terms(&self) -> &[ScalarForm<S>] {
        &self.terms
    }

    pub fn term(&self, k: u32) -> Result<&ScalarForm<S>> {
        self.terms.get(k as usize).ok_or_else(|| {
            Error::Precondition(format!("ħ^{k} is beyond the reliable order {}", self.order))
        })
    }

    /// Restrict to a lower reliable order.
    pub fn with_order(&self, order: u32) -> Self {
        Self::from_terms(self.terms.clone(), order.min(self.order))
    }

    fn zip(&self, other: &Self, op: impl Fn(&ScalarForm<S>, &ScalarForm<S>) -> ScalarForm<S>) -> Self {
        let order = self.order.min(other.order);
        let terms = (0..=order as usize).map(|k| op(&self.terms[k], &other.terms[k])).collect();
        FormSeries { terms, order }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, ScalarForm::add)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, ScalarForm::sub)
    }

    pub fn neg(&self) -> Self {
        self.map(ScalarForm::neg)
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|t| t.scale(c))
    }

    pub fn map(&self, op: impl Fn(&ScalarForm<S>) -> ScalarForm<S>) -> Self {
        FormSeries { terms: self.terms.iter().map(op).collect(), order: self.order }
    }

    pub fn exterior_d(&self) -> Self {
        self.map(ScalarForm::exterior_d)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(ScalarForm::is_zero)
    }

    pub fn is_negligible(&self) -> bool {
        self.terms.iter().all(ScalarForm::is_negligible)
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.iter().map(ScalarForm::max_abs).fold(0.0, f64::max)
    }

    /// Equality through `min(order)`; errors if either side is asked for more.
    pub fn agrees_through(&self, other: &Self, order: u32) -> Result<bool> {
        if order > self.order || order > other.order {
            return Err(Error::Precondition(format!(
                "comparison through ħ^{order} exceeds reliable orders {} and {}",
                self.order, other.order
            )));
        }
        Ok((0..=order as usize).all(|k| self.terms[k].sub(&other.terms[k]).is_negligible()))
    }

    /// First `(ħ power, wedge indices, coefficient)` with `dβ ≠ 0`.
    pub fn closedness_defect(&self) -> Option<(u32, Vec<usize>, BaseFunction<S>)> {
        self.terms
            .iter()
            .enumerate()
            .find_map(|(k, t)| t.closedness_defect().map(|(idx, f)| (k as u32, idx, f)))
    }

    pub fn check_closed(&self) -> Result<()> {
        match self.closedness_defect() {
            None => Ok(()),
            Some((k, idx, f)) => Err(Error::NotClosed(format!(
                "ħ^{k} part has d-coefficient {f} on dx{:?}",
                idx.iter().map(|i| i + 1).collect::<Vec<_>>()
            ))),
        }
    }
}
