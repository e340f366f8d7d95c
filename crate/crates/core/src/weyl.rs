//! Truncated Weyl algebra sections.
//!
//! An element is a finite sum `Σ ħᵏ yᵅ f_{k,α}(x)` of symmetric-ordered
//! monomials in the fiber generators `y¹ … y²ⁿ` with base-function
//! coefficients. Grading: `|ħ| = 2`, `|yⁱ| = 1`; only keys with
//! `2k + |α| ≤ D` are stored. The product is the Moyal product
//! `a ∘ b = Σ_m (iħ/2)^m / m! Λ^{i₁j₁}…Λ^{i_mj_m} ∂_{y^{i₁}}…a ∂_{y^{j₁}}…b`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::base::{BaseFunction, Ring};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Fiber multi-index.
pub type YIndex = Vec<u32>;

type Moyal<S> = Arc<Vec<(u32, YIndex, S)>>;

/// Constant bracket matrix `Λ` with `[yⁱ, yʲ] = iħ Λⁱʲ`.
///
/// Holds a cache of monomial structure constants; the cache never changes
/// observable behaviour.
pub struct FiberPoisson<S> {
    matrix: Vec<Vec<S>>,
    cache: RwLock<HashMap<(YIndex, YIndex), Moyal<S>>>,
}

impl<S: Scalar> fmt::Debug for FiberPoisson<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiberPoisson").field("matrix", &self.matrix).finish()
    }
}

impl<S: Scalar> PartialEq for FiberPoisson<S> {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

/// The standard symplectic matrix `J = [[0, I], [-I, 0]]` of size `2n`.
pub fn standard_j<S: Scalar>(n: usize) -> Vec<Vec<S>> {
    let mut j = vec![vec![S::zero(); 2 * n]; 2 * n];
    for i in 0..n {
        j[i][n + i] = S::one();
        j[n + i][i] = S::one().neg();
    }
    j
}

impl<S: Scalar> FiberPoisson<S> {
    /// `Λ = J`, the convention used throughout the crate.
    pub fn standard(n: usize) -> Self {
        Self::unchecked(standard_j(n))
    }

    pub fn new(matrix: Vec<Vec<S>>) -> Result<Self> {
        let d = matrix.len();
        if d == 0 || !d.is_multiple_of(2) || matrix.iter().any(|row| row.len() != d) {
            return Err(Error::Invalid("bracket matrix must be square of even size".into()));
        }
        for i in 0..d {
            for j in 0..d {
                if !matrix[i][j].add(&matrix[j][i]).is_negligible() {
                    return Err(Error::Invalid(format!("bracket matrix not antisymmetric at ({i}, {j})")));
                }
            }
        }
        if crate::linalg::inverse(&matrix).is_none() {
            return Err(Error::Invalid("bracket matrix is singular".into()));
        }
        Ok(Self::unchecked(matrix))
    }

    fn unchecked(matrix: Vec<Vec<S>>) -> Self {
        FiberPoisson { matrix, cache: RwLock::new(HashMap::new()) }
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &S {
        &self.matrix[i][j]
    }

    pub fn matrix(&self) -> &[Vec<S>] {
        &self.matrix
    }

    /// `yᵅ ∘ yᵝ = Σ ħ^m c yᵞ` as a list of `(m, γ, c)`.
    fn monomial_product(&self, a: &[u32], b: &[u32]) -> Moyal<S> {
        let key = (a.to_vec(), b.to_vec());
        if let Some(hit) = self.cache.read().expect("cache poisoned").get(&key) {
            return hit.clone();
        }
        let d = self.dim();
        let half_i = S::i().mul(&S::from_ratio(1, 2));
        let mut out: BTreeMap<(u32, YIndex), S> = BTreeMap::new();
        let mut level: BTreeMap<(YIndex, YIndex), S> = BTreeMap::new();
        level.insert(key.clone(), S::one());
        let mut m = 0u32;
        while !level.is_empty() {
            for ((l, r), c) in &level {
                let gamma: YIndex = l.iter().zip(r).map(|(x, y)| x + y).collect();
                let slot = out.entry((m, gamma)).or_insert_with(S::zero);
                *slot = slot.add(c);
            }
            m += 1;
            let factor = half_i.mul(&S::from_ratio(1, m as i64));
            let mut next: BTreeMap<(YIndex, YIndex), S> = BTreeMap::new();
            for ((l, r), c) in &level {
                for i in 0..d {
                    if l[i] == 0 {
                        continue;
                    }
                    for j in 0..d {
                        let lam = &self.matrix[i][j];
                        if r[j] == 0 || lam.is_zero() {
                            continue;
                        }
                        let mut l2 = l.clone();
                        let mut r2 = r.clone();
                        l2[i] -= 1;
                        r2[j] -= 1;
                        let w = c.mul(lam).mul(&S::from_i64((l[i] * r[j]) as i64)).mul(&factor);
                        let slot = next.entry((l2, r2)).or_insert_with(S::zero);
                        *slot = slot.add(&w);
                    }
                }
            }
            next.retain(|_, c| !c.is_zero());
            level = next;
        }
        let list: Moyal<S> =
            Arc::new(out.into_iter().filter(|(_, c)| !c.is_zero()).map(|((m, g), c)| (m, g, c)).collect());
        self.cache.write().expect("cache poisoned").insert(key, list.clone());
        list
    }
}

/// Key of a Weyl monomial `ħᵏ yᵅ`, ordered lexicographically by `(k, α)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeylKey {
    pub hbar: u32,
    pub y: YIndex,
}

impl WeylKey {
    pub fn new(hbar: u32, y: YIndex) -> Self {
        WeylKey { hbar, y }
    }

    /// Total degree `2k + |α|`.
    pub fn degree(&self) -> u32 {
        2 * self.hbar + self.y_degree()
    }

    pub fn y_degree(&self) -> u32 {
        self.y.iter().sum()
    }
}

/// Everything two operands must agree on: fiber, coefficient ring and
/// truncation degree.
#[derive(Clone)]
pub struct WeylSpace<S> {
    fiber: Arc<FiberPoisson<S>>,
    ring: Ring,
    trunc: u32,
}

impl<S: Scalar> fmt::Debug for WeylSpace<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylSpace(dim {}, {}, D={})", self.dim(), self.ring, self.trunc)
    }
}

impl<S: Scalar> PartialEq for WeylSpace<S> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring
            && self.trunc == other.trunc
            && (Arc::ptr_eq(&self.fiber, &other.fiber) || self.fiber == other.fiber)
    }
}

impl<S: Scalar> WeylSpace<S> {
    pub fn new(fiber: Arc<FiberPoisson<S>>, ring: Ring, trunc: u32) -> Self {
        WeylSpace { fiber, ring, trunc }
    }

    /// Standard fiber `Λ = J` over a `2n`-dimensional base.
    pub fn standard(n: usize, ring: Ring, trunc: u32) -> Self {
        Self::new(Arc::new(FiberPoisson::standard(n)), ring, trunc)
    }

    pub fn fiber(&self) -> &Arc<FiberPoisson<S>> {
        &self.fiber
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn dim(&self) -> usize {
        self.fiber.dim()
    }

    pub fn half_dim(&self) -> usize {
        self.fiber.dim() / 2
    }

    pub fn with_trunc(&self, trunc: u32) -> Self {
        WeylSpace { fiber: self.fiber.clone(), ring: self.ring, trunc }
    }

    /// Same fiber and ring; truncation may differ.
    pub fn same_family(&self, other: &Self) -> bool {
        self.ring == other.ring && (Arc::ptr_eq(&self.fiber, &other.fiber) || self.fiber == other.fiber)
    }

    pub fn check_family(&self, other: &Self) -> Result<()> {
        if self.same_family(other) {
            Ok(())
        } else {
            Err(Error::Mismatch(format!(
                "Weyl sections over ({}, dim {}) and ({}, dim {}) with different fibers or rings",
                self.ring,
                self.dim(),
                other.ring,
                other.dim()
            )))
        }
    }

    pub fn check_same(&self, other: &Self) -> Result<()> {
        self.check_family(other)?;
        if self.trunc != other.trunc {
            return Err(Error::Mismatch(format!("truncation degrees {} and {}", self.trunc, other.trunc)));
        }
        Ok(())
    }

    pub fn zero(&self) -> WeylElement<S> {
        WeylElement { space: self.clone(), terms: BTreeMap::new() }
    }

    pub fn one(&self) -> WeylElement<S> {
        self.constant(S::one())
    }

    pub fn constant(&self, c: S) -> WeylElement<S> {
        self.from_base(BaseFunction::constant(self.ring, self.dim(), c))
    }

    pub fn base_zero(&self) -> BaseFunction<S> {
        BaseFunction::zero(self.ring, self.dim())
    }

    pub fn base_one(&self) -> BaseFunction<S> {
        BaseFunction::one(self.ring, self.dim())
    }

    /// A y-independent, ħ-free section.
    pub fn from_base(&self, f: BaseFunction<S>) -> WeylElement<S> {
        self.monomial(0, vec![0; self.dim()], f)
    }

    /// `ħᵏ yᵅ f`, dropped if above the truncation degree.
    pub fn monomial(&self, hbar: u32, y: YIndex, f: BaseFunction<S>) -> WeylElement<S> {
        let mut out = self.zero();
        out.add_term(WeylKey::new(hbar, y), &f);
        out
    }

    /// The fiber generator `y^{i+1}` (0-based).
    pub fn generator(&self, i: usize) -> WeylElement<S> {
        let mut y = vec![0; self.dim()];
        y[i] = 1;
        self.monomial(0, y, self.base_one())
    }

    pub fn hbar(&self) -> WeylElement<S> {
        self.monomial(1, vec![0; self.dim()], self.base_one())
    }

    /// `Σ_k ħᵏ f_k` for a base-function series.
    pub fn from_series(&self, series: &[BaseFunction<S>]) -> WeylElement<S> {
        let mut out = self.zero();
        for (k, f) in series.iter().enumerate() {
            out.add_term(WeylKey::new(k as u32, vec![0; self.dim()]), f);
        }
        out
    }
}

#[derive(Clone)]
pub struct WeylElement<S> {
    space: WeylSpace<S>,
    terms: BTreeMap<WeylKey, BaseFunction<S>>,
}

impl<S: Scalar> PartialEq for WeylElement<S> {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.terms == other.terms
    }
}

impl<S: Scalar> fmt::Debug for WeylElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<S: Scalar> fmt::Display for WeylElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0 [D={}]", self.space.trunc);
        }
        let mut first = true;
        for (key, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "[{c}]")?;
            if key.hbar > 0 {
                write!(f, "·ħ^{}", key.hbar)?;
            }
            for (i, &e) in key.y.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "·y{}", i + 1)?,
                    _ => write!(f, "·y{}^{}", i + 1, e)?,
                }
            }
        }
        write!(f, " [D={}]", self.space.trunc)
    }
}

impl<S: Scalar> WeylElement<S> {
    pub fn space(&self) -> &WeylSpace<S> {
        &self.space
    }

    pub fn trunc(&self) -> u32 {
        self.space.trunc
    }

    pub fn ring(&self) -> Ring {
        self.space.ring
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WeylKey, &BaseFunction<S>)> {
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

    pub fn is_negligible(&self) -> bool {
        self.terms.values().all(BaseFunction::is_negligible)
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(BaseFunction::max_abs).fold(0.0, f64::max)
    }

    pub fn coefficient(&self, hbar: u32, y: &[u32]) -> BaseFunction<S> {
        self.terms
            .get(&WeylKey::new(hbar, y.to_vec()))
            .cloned()
            .unwrap_or_else(|| self.space.base_zero())
    }

    /// The `(k, α) = (0, 0)` component.
    pub fn leading(&self) -> BaseFunction<S> {
        self.coefficient(0, &vec![0; self.dim()])
    }

    /// Adds `ħᵏ yᵅ f` unless the key is above the truncation degree.
    pub fn add_term(&mut self, key: WeylKey, f: &BaseFunction<S>) {
        if key.degree() > self.space.trunc || f.is_zero() {
            return;
        }
        debug_assert_eq!(key.y.len(), self.dim());
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(f.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                o.get_mut().add_scaled(f, &S::one());
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn assert_same(&self, other: &Self) {
        if let Err(e) = self.space.check_same(&other.space) {
            panic!("{e}");
        }
    }

    /// `self += c · other`; both must live in the same space.
    pub fn add_scaled(&mut self, other: &Self, c: &S) {
        self.assert_same(other);
        if c.is_zero() {
            return;
        }
        for (k, f) in &other.terms {
            if *c == S::one() {
                self.add_term(k.clone(), f);
            } else {
                self.add_term(k.clone(), &f.scale(c));
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
        self.map_coefficients(|f| f.scale(c))
    }

    /// Multiplication by a central base function.
    pub fn scale_base(&self, g: &BaseFunction<S>) -> Self {
        self.map_coefficients(|f| f.mul(g))
    }

    pub fn map_coefficients(&self, mut op: impl FnMut(&BaseFunction<S>) -> BaseFunction<S>) -> Self {
        let mut out = self.space.zero();
        for (k, f) in &self.terms {
            out.add_term(k.clone(), &op(f));
        }
        out
    }

    /// Multiply by `ħ^p`, dropping what falls above the truncation.
    pub fn mul_hbar(&self, p: u32) -> Self {
        let mut out = self.space.zero();
        for (k, f) in &self.terms {
            out.add_term(WeylKey::new(k.hbar + p, k.y.clone()), f);
        }
        out
    }

    /// Lower the truncation degree, dropping monomials above it.
    pub fn truncate(&self, trunc: u32) -> Self {
        assert!(trunc <= self.space.trunc, "truncate cannot raise the truncation degree");
        self.restamp(trunc)
    }

    /// Change the stamped truncation degree. Raising it asserts that the
    /// element is exact beyond its old truncation, which only holds for
    /// elements known in closed form.
    pub fn restamp(&self, trunc: u32) -> Self {
        let space = self.space.with_trunc(trunc);
        let terms = self.terms.iter().filter(|(k, _)| k.degree() <= trunc).map(|(k, f)| (k.clone(), f.clone())).collect();
        WeylElement { space, terms }
    }

    /// Keeps exactly the monomials of total degree `d`.
    pub fn grading_project(&self, d: u32) -> Self {
        self.filter(|k| k.degree() == d)
    }

    pub fn filter(&self, keep: impl Fn(&WeylKey) -> bool) -> Self {
        let terms = self.terms.iter().filter(|(k, _)| keep(k)).map(|(k, f)| (k.clone(), f.clone())).collect();
        WeylElement { space: self.space.clone(), terms }
    }

    /// Largest total degree present.
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(WeylKey::degree).max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(WeylKey::degree).min()
    }

    /// The y-independent part.
    pub fn central_part(&self) -> Self {
        self.filter(|k| k.y_degree() == 0)
    }

    /// The y-dependent part.
    pub fn noncentral_part(&self) -> Self {
        self.filter(|k| k.y_degree() > 0)
    }

    pub fn is_central(&self) -> bool {
        self.terms.keys().all(|k| k.y_degree() == 0)
    }

    /// `y`-free coefficients per ħ power, `[f₀, f₁, …]` with `2k ≤ D`.
    pub fn central_series(&self) -> Vec<BaseFunction<S>> {
        let n = (self.space.trunc / 2) as usize + 1;
        let mut out = vec![self.space.base_zero(); n];
        for (k, f) in &self.terms {
            if k.y_degree() == 0 {
                out[k.hbar as usize] = f.clone();
            }
        }
        out
    }

    /// `∂/∂y^{i+1}`, a derivation of the Moyal product.
    pub fn partial_y(&self, i: usize) -> Self {
        let mut out = self.space.zero();
        for (k, f) in &self.terms {
            let e = k.y[i];
            if e == 0 {
                continue;
            }
            let mut y = k.y.clone();
            y[i] -= 1;
            out.add_term(WeylKey::new(k.hbar, y), &f.scale(&S::from_i64(e as i64)));
        }
        out
    }

    /// Commutative (symmetric-algebra) multiplication by `y^{i+1}`.
    pub fn sym_mul_y(&self, i: usize) -> Self {
        let mut out = self.space.zero();
        for (k, f) in &self.terms {
            let mut y = k.y.clone();
            y[i] += 1;
            out.add_term(WeylKey::new(k.hbar, y), f);
        }
        out
    }

    /// `∂/∂x^{i+1}` applied to every coefficient.
    pub fn partial_x(&self, i: usize) -> Self {
        self.map_coefficients(|f| f.partial(i))
    }

    /// Moyal product keeping only result terms of degree `≤ cap`, stamped
    /// with `cap`. Terms of the inputs are taken as exact, so a cap above the
    /// inputs' truncation is only meaningful for inputs known exactly there.
    pub(crate) fn mul_capped(&self, other: &Self, cap: u32) -> Self {
        if let Err(e) = self.space.check_family(&other.space) {
            panic!("{e}");
        }
        let space = self.space.with_trunc(cap);
        let mut acc: BTreeMap<WeylKey, BaseFunction<S>> = BTreeMap::new();
        let fiber = &self.space.fiber;
        for (ka, fa) in &self.terms {
            let da = ka.degree();
            if da > cap {
                continue;
            }
            for (kb, fb) in &other.terms {
                if da + kb.degree() > cap {
                    continue;
                }
                let fab = fa.mul(fb);
                if fab.is_zero() {
                    continue;
                }
                for (m, gamma, c) in fiber.monomial_product(&ka.y, &kb.y).iter() {
                    let key = WeylKey::new(ka.hbar + kb.hbar + m, gamma.clone());
                    let term = fab.scale(c);
                    match acc.get_mut(&key) {
                        Some(slot) => slot.add_scaled(&term, &S::one()),
                        None => {
                            acc.insert(key, term);
                        }
                    }
                }
            }
        }
        acc.retain(|_, f| !f.is_zero());
        WeylElement { space, terms: acc }
    }

    /// The Moyal product. Panics on incompatible operands; see
    /// [`weyl_mul`] for the checked form.
    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same(other);
        self.mul_capped(other, self.space.trunc)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.space.check_same(&other.space)?;
        Ok(self.mul_capped(other, self.space.trunc))
    }

    /// `[a, b]` with result capped at `cap`.
    pub(crate) fn commutator_capped(&self, other: &Self, cap: u32) -> Self {
        let ab = self.mul_capped(other, cap);
        let ba = other.mul_capped(self, cap);
        ab.sub(&ba)
    }

    /// Divide by `iħ`; every term must carry at least one power of ħ.
    /// The result is stamped two degrees lower.
    pub(crate) fn div_ihbar(&self) -> Result<Self> {
        let trunc = self.space.trunc.checked_sub(2).ok_or_else(|| {
            Error::Precondition("division by ħ needs truncation degree at least 2".into())
        })?;
        let mut out = self.space.with_trunc(trunc).zero();
        let minus_i = S::i().neg();
        for (k, f) in &self.terms {
            if k.hbar == 0 {
                if f.is_negligible() {
                    continue;
                }
                return Err(Error::Consistency(format!("term {f} y^{:?} is not divisible by ħ", k.y)));
            }
            out.add_term(WeylKey::new(k.hbar - 1, k.y.clone()), &f.scale(&minus_i));
        }
        Ok(out)
    }

    /// `Σ_j a^j / j!`. Requires a vanishing `(0, 0)` component.
    pub fn exp(&self) -> Result<Self> {
        if !self.leading().is_zero() {
            return Err(Error::Precondition(format!(
                "exponential needs a zero constant term, found {}",
                self.leading()
            )));
        }
        let mut out = self.space.one();
        let mut power = self.space.one();
        let mut j = 1i64;
        loop {
            power = power.mul(self).scale(&S::from_ratio(1, j));
            if power.is_zero() {
                break;
            }
            out = out.add(&power);
            j += 1;
        }
        Ok(out)
    }

    /// Inverse by a Neumann series around the leading component, which
    /// must be a unit of the base ring.
    pub fn inverse(&self) -> Result<Self> {
        let lead = self.leading();
        let lead_inv = lead.unit_inverse().ok_or_else(|| {
            Error::NotInvertible(format!(
                "component (k=0, α=0) = {lead} is not a unit of the {} coefficient ring",
                self.ring()
            ))
        })?;
        // The leading part of `x` is zero up to rounding; drop it so the series is nilpotent.
        let x = self.scale_base(&lead_inv).sub(&self.space.one()).filter(|k| k.degree() > 0);
        let minus_x = x.neg();
        let mut sum = self.space.one();
        let mut power = self.space.one();
        loop {
            power = power.mul(&minus_x);
            if power.is_zero() {
                break;
            }
            sum = sum.add(&power);
        }
        Ok(sum.scale_base(&lead_inv))
    }

    /// `Log(u) = Σ_{n≥1} (-1)^{n+1} (u - 1)^n / n` for `u` with leading
    /// component exactly `1`.
    pub fn log(&self) -> Result<Self> {
        if self.leading() != self.space.base_one() {
            return Err(Error::Precondition(format!(
                "logarithm needs leading component 1, found {}",
                self.leading()
            )));
        }
        let x = self.sub(&self.space.one());
        let mut out = self.space.zero();
        let mut power = self.space.one();
        let mut n = 1i64;
        loop {
            power = power.mul(&x);
            if power.is_zero() {
                break;
            }
            let sign = if n % 2 == 1 { 1 } else { -1 };
            out.add_scaled(&power, &S::from_ratio(sign, n));
            n += 1;
        }
        Ok(out)
    }
}

/// Checked Moyal product.
pub fn weyl_mul<S: Scalar>(a: &WeylElement<S>, b: &WeylElement<S>) -> Result<WeylElement<S>> {
    a.try_mul(b)
}

/// `c` with `iħ c = a∘b − b∘a`, stamped with truncation `D − 2`.
pub fn weyl_commutator_over_ihbar<S: Scalar>(a: &WeylElement<S>, b: &WeylElement<S>) -> Result<WeylElement<S>> {
    a.space.check_same(&b.space)?;
    a.commutator_capped(b, a.trunc()).div_ihbar()
}

pub fn weyl_exp<S: Scalar>(a: &WeylElement<S>) -> Result<WeylElement<S>> {
    a.exp()
}

pub fn weyl_inverse<S: Scalar>(u: &WeylElement<S>) -> Result<WeylElement<S>> {
    u.inverse()
}

pub fn weyl_log<S: Scalar>(u: &WeylElement<S>) -> Result<WeylElement<S>> {
    u.log()
}

pub fn grading_project<S: Scalar>(a: &WeylElement<S>, d: u32) -> Result<WeylElement<S>> {
    if d > a.trunc() {
        return Err(Error::Precondition(format!("degree {d} above truncation {}", a.trunc())));
    }
    Ok(a.grading_project(d))
}
