//! Coefficient functions on the base manifold.
//!
//! On `ℝ²ⁿ` a [`BaseFunction`] is a polynomial keyed by exponent vectors; on
//! the torus `𝕋²ⁿ` (coordinates of period `2π`) it is a finite Fourier sum
//! `Σ c_m e^{i m·x}` keyed by integer frequency vectors. Zero coefficients
//! are never stored.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ring {
    Euclidean,
    Torus,
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ring::Euclidean => "euclidean",
            Ring::Torus => "torus",
        })
    }
}

/// Exponent vector (euclidean) or frequency vector (torus).
pub type BaseKey = Vec<i32>;

#[derive(Clone, PartialEq)]
pub struct BaseFunction<S> {
    ring: Ring,
    dim: usize,
    terms: BTreeMap<BaseKey, S>,
}

impl<S: Scalar> fmt::Debug for BaseFunction<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<S: Scalar> fmt::Display for BaseFunction<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (key, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            match self.ring {
                Ring::Euclidean => {
                    for (i, &e) in key.iter().enumerate() {
                        match e {
                            0 => {}
                            1 => write!(f, "·x{}", i + 1)?,
                            _ => write!(f, "·x{}^{}", i + 1, e)?,
                        }
                    }
                }
                Ring::Torus => {
                    if key.iter().any(|&m| m != 0) {
                        write!(f, "·e^{{i{key:?}·x}}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl<S: Scalar> BaseFunction<S> {
    pub fn zero(ring: Ring, dim: usize) -> Self {
        BaseFunction { ring, dim, terms: BTreeMap::new() }
    }

    pub fn constant(ring: Ring, dim: usize, c: S) -> Self {
        Self::term(ring, dim, vec![0; dim], c)
    }

    pub fn one(ring: Ring, dim: usize) -> Self {
        Self::constant(ring, dim, S::one())
    }

    /// Single term `c · x^key` (euclidean) or `c · e^{i key·x}` (torus).
    pub fn term(ring: Ring, dim: usize, key: BaseKey, c: S) -> Self {
        assert_eq!(key.len(), dim, "key length must equal the base dimension");
        if ring == Ring::Euclidean {
            assert!(key.iter().all(|&e| e >= 0), "negative polynomial exponent");
        }
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(key, c);
        }
        BaseFunction { ring, dim, terms }
    }

    /// The coordinate function `x^{i+1}` on `ℝ²ⁿ` (0-based index).
    pub fn coordinate(dim: usize, i: usize) -> Self {
        let mut key = vec![0; dim];
        key[i] = 1;
        Self::term(Ring::Euclidean, dim, key, S::one())
    }

    /// Build from explicit `(key, coefficient)` pairs; duplicates are summed.
    pub fn from_terms(ring: Ring, dim: usize, terms: impl IntoIterator<Item = (BaseKey, S)>) -> Self {
        let mut out = Self::zero(ring, dim);
        for (k, c) in terms {
            out.add_term(k, &c);
        }
        out
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BaseKey, &S)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Zero up to the scalar tolerance.
    pub fn is_negligible(&self) -> bool {
        self.terms.values().all(Scalar::is_negligible)
    }

    pub fn coefficient(&self, key: &[i32]) -> S {
        self.terms.get(key).cloned().unwrap_or_else(S::zero)
    }

    /// Coefficient of the constant monomial / zero frequency.
    pub fn constant_term(&self) -> S {
        self.coefficient(&vec![0; self.dim])
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|k| k.iter().all(|&e| e == 0))
    }

    pub fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring || self.dim != other.dim {
            return Err(Error::Mismatch(format!(
                "base functions over ({}, dim {}) and ({}, dim {})",
                self.ring, self.dim, other.ring, other.dim
            )));
        }
        Ok(())
    }

    fn assert_compatible(&self, other: &Self) {
        if let Err(e) = self.check_compatible(other) {
            panic!("{e}");
        }
    }

    pub fn add_term(&mut self, key: BaseKey, c: &S) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add(c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &Self, c: &S) {
        self.assert_compatible(other);
        if c.is_zero() {
            return;
        }
        let unit = *c == S::one();
        for (k, v) in &other.terms {
            if unit {
                self.add_term(k.clone(), v);
            } else {
                self.add_term(k.clone(), &v.mul(c));
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &S::one());
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &S::one().neg());
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&S::one().neg())
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(self.ring, self.dim);
        }
        let terms = self
            .terms
            .iter()
            .filter_map(|(k, v)| {
                let p = v.mul(c);
                (!p.is_zero()).then(|| (k.clone(), p))
            })
            .collect();
        BaseFunction { ring: self.ring, dim: self.dim, terms }
    }

    /// Pointwise product. Keys add in both rings (exponents resp. frequencies).
    pub fn mul(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        let mut out = Self::zero(self.ring, self.dim);
        if self.is_zero() || other.is_zero() {
            return out;
        }
        for (ka, va) in &self.terms {
            for (kb, vb) in &other.terms {
                let key: BaseKey = ka.iter().zip(kb).map(|(a, b)| a + b).collect();
                out.add_term(key, &va.mul(vb));
            }
        }
        out
    }

    /// `∂/∂x^{i+1}`.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.ring, self.dim);
        for (k, v) in &self.terms {
            let e = k[i];
            if e == 0 {
                continue;
            }
            match self.ring {
                Ring::Euclidean => {
                    let mut key = k.clone();
                    key[i] -= 1;
                    out.add_term(key, &v.mul(&S::from_i64(e as i64)));
                }
                Ring::Torus => {
                    out.add_term(k.clone(), &v.mul(&S::i()).mul(&S::from_i64(e as i64)));
                }
            }
        }
        out
    }

    /// Maximum total polynomial degree (euclidean) or maximum `|m|₁` (torus).
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.iter().map(|e| e.unsigned_abs()).sum()).max()
    }

    /// Exact evaluation of a polynomial at a point.
    pub fn evaluate(&self, point: &[S]) -> Result<S> {
        if self.ring != Ring::Euclidean {
            return Err(Error::Unsupported(
                "exact evaluation is only available for polynomials; use evaluate_c64 on the torus".into(),
            ));
        }
        if point.len() != self.dim {
            return Err(Error::Mismatch(format!("point of length {} for dim {}", point.len(), self.dim)));
        }
        let mut acc = S::zero();
        for (k, v) in &self.terms {
            let mut t = v.clone();
            for (x, &e) in point.iter().zip(k) {
                t = t.mul(&x.pow(e as u32));
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Floating point evaluation at a real point, valid for both rings.
    pub fn evaluate_c64(&self, point: &[f64]) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, v) in &self.terms {
            let (cr, ci) = v.to_c64();
            let (br, bi) = match self.ring {
                Ring::Euclidean => (k.iter().zip(point).map(|(&e, &x)| x.powi(e)).product::<f64>(), 0.0),
                Ring::Torus => {
                    let phase: f64 = k.iter().zip(point).map(|(&m, &x)| m as f64 * x).sum();
                    (phase.cos(), phase.sin())
                }
            };
            re += cr * br - ci * bi;
            im += cr * bi + ci * br;
        }
        (re, im)
    }

    /// A torus function is real valued iff `c_{-m} = conj(c_m)`; a polynomial
    /// iff every coefficient is real.
    pub fn is_real(&self) -> bool {
        match self.ring {
            Ring::Euclidean => self.terms.values().all(|c| c.sub(&c.conj()).is_negligible()),
            Ring::Torus => self.terms.iter().all(|(k, c)| {
                let neg: BaseKey = k.iter().map(|m| -m).collect();
                self.coefficient(&neg).sub(&c.conj()).is_negligible()
            }),
        }
    }

    /// Drop coefficients below the scalar tolerance.
    pub fn pruned(&self) -> Self {
        let terms = self.terms.iter().filter(|(_, c)| !c.is_negligible()).map(|(k, c)| (k.clone(), c.clone())).collect();
        BaseFunction { ring: self.ring, dim: self.dim, terms }
    }

    /// Largest coefficient magnitude, used for residual norms.
    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(Scalar::magnitude).fold(0.0, f64::max)
    }

    /// Multiplicative inverse when the function is a unit of its ring: a
    /// nonzero constant for polynomials, a single Fourier mode on the torus.
    pub fn unit_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (k, c) = self.terms.iter().next()?;
        let inv = c.inv()?;
        match self.ring {
            Ring::Euclidean if k.iter().all(|&e| e == 0) => Some(Self::term(self.ring, self.dim, k.clone(), inv)),
            Ring::Euclidean => None,
            Ring::Torus => Some(Self::term(self.ring, self.dim, k.iter().map(|m| -m).collect(), inv)),
        }
    }
}

/// `Σ_k ħᵏ f_k` reliable through `ħ^order`; reading or comparing beyond the
/// reliable order is refused.
#[derive(Clone, PartialEq)]
pub struct BaseSeries<S> {
    terms: Vec<BaseFunction<S>>,
    order: u32,
}

impl<S: Scalar> fmt::Debug for BaseSeries<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, t) in self.terms.iter().enumerate() {
            if !t.is_zero() {
                writeln!(f, "ħ^{k}: {t}")?;
            }
        }
        write!(f, "(reliable through ħ^{})", self.order)
    }
}

impl<S: Scalar> BaseSeries<S> {
    /// Missing orders are zero, extra terms beyond `order` are dropped.
    pub fn new(ring: Ring, dim: usize, mut terms: Vec<BaseFunction<S>>, order: u32) -> Self {
        terms.truncate(order as usize + 1);
        while terms.len() < order as usize + 1 {
            terms.push(BaseFunction::zero(ring, dim));
        }
        BaseSeries { terms, order }
    }

    /// A function with no ħ corrections, exact through `order`.
    pub fn constant(f: BaseFunction<S>, order: u32) -> Self {
        let (ring, dim) = (f.ring(), f.dim());
        Self::new(ring, dim, vec![f], order)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn ring(&self) -> Ring {
        self.terms[0].ring()
    }

    pub fn dim(&self) -> usize {
        self.terms[0].dim()
    }

    pub fn terms(&self) -> &[BaseFunction<S>] {
        &self.terms
    }

    pub fn coefficient(&self, k: u32) -> Result<&BaseFunction<S>> {
        self.terms.get(k as usize).ok_or_else(|| {
            Error::Precondition(format!("ħ^{k} is beyond the reliable order {}", self.order))
        })
    }

    pub fn with_order(&self, order: u32) -> Self {
        Self::new(self.ring(), self.dim(), self.terms.clone(), order.min(self.order))
    }

    fn zip(&self, other: &Self, op: impl Fn(&BaseFunction<S>, &BaseFunction<S>) -> BaseFunction<S>) -> Self {
        let order = self.order.min(other.order);
        let terms = (0..=order as usize).map(|k| op(&self.terms[k], &other.terms[k])).collect();
        BaseSeries { terms, order }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, BaseFunction::add)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, BaseFunction::sub)
    }

    pub fn scale(&self, c: &S) -> Self {
        BaseSeries { terms: self.terms.iter().map(|t| t.scale(c)).collect(), order: self.order }
    }

    /// Multiply by `ħ^p`; the reliable order grows accordingly.
    pub fn mul_hbar(&self, p: u32) -> Self {
        let zero = BaseFunction::zero(self.ring(), self.dim());
        let mut terms = vec![zero; p as usize];
        terms.extend(self.terms.iter().cloned());
        BaseSeries { terms, order: self.order + p }
    }

    pub fn is_negligible(&self) -> bool {
        self.terms.iter().all(BaseFunction::is_negligible)
    }

    /// Lowest ħ power with a nonzero coefficient, `None` if zero through the
    /// reliable order.
    pub fn valuation(&self) -> Option<u32> {
        self.terms.iter().position(|t| !t.is_negligible()).map(|k| k as u32)
    }

    /// Equality through `ħ^order`; errors if that exceeds either side.
    pub fn agrees_through(&self, other: &Self, order: u32) -> Result<bool> {
        if order > self.order || order > other.order {
            return Err(Error::Precondition(format!(
                "comparison through ħ^{order} exceeds reliable orders {} and {}",
                self.order, other.order
            )));
        }
        Ok((0..=order as usize).all(|k| self.terms[k].sub(&other.terms[k]).is_negligible()))
    }
}
