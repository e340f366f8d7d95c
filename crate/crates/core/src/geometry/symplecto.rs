use std::collections::BTreeMap;
use std::fmt;

use crate::base::{BaseFunction, BaseKey, Ring};
use crate::error::{Error, Result};
use crate::geometry::form::{mask_indices, wedge_sign, ScalarForm};
use crate::linalg::{self, Matrix};
use crate::scalar::Scalar;
use crate::weyl::{WeylElement, WeylKey, YIndex};

/// Translation part of an affine map. On the torus it is stored as the unit
/// phases `e^{i b_j}` so that pullbacks of Fourier modes stay exact.
#[derive(Clone, PartialEq)]
pub enum Shift<S> {
    Vector(Vec<S>),
    Phases(Vec<S>),
}

/// `x ↦ A x + b` with `Aᵀ J A = J`; `A` integral on the torus.
#[derive(Clone, PartialEq)]
pub struct AffineSymplecto<S> {
    ring: Ring,
    a: Matrix<S>,
    a_inv: Matrix<S>,
    shift: Shift<S>,
}

impl<S: Scalar> fmt::Debug for AffineSymplecto<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x ↦ {:?}·x", self.a)?;
        match &self.shift {
            Shift::Vector(b) => write!(f, " + {b:?}"),
            Shift::Phases(p) => write!(f, " shifted by phases {p:?}"),
        }
    }
}

fn check_symplectic<S: Scalar>(a: &[Vec<S>]) -> Result<()> {
    let d = a.len();
    if d == 0 || !d.is_multiple_of(2) || a.iter().any(|r| r.len() != d) {
        return Err(Error::Invalid("linear part must be square of even size".into()));
    }
    let j: Matrix<S> = crate::weyl::standard_j(d / 2);
    let lhs = linalg::matmul(&linalg::matmul(&linalg::transpose(a), &j), a);
    if !linalg::approx_eq(&lhs, &j) {
        return Err(Error::Invalid(format!("linear part {a:?} does not preserve ω (AᵀJA ≠ J)")));
    }
    Ok(())
}

impl<S: Scalar> AffineSymplecto<S> {
    pub fn euclidean(a: Matrix<S>, b: Vec<S>) -> Result<Self> {
        check_symplectic(&a)?;
        if b.len() != a.len() {
            return Err(Error::Invalid("translation length differs from dimension".into()));
        }
        let a_inv = linalg::inverse(&a).ok_or_else(|| Error::Invalid("singular linear part".into()))?;
        Ok(AffineSymplecto { ring: Ring::Euclidean, a, a_inv, shift: Shift::Vector(b) })
    }

    /// Torus map `x ↦ A x + b` given by `A ∈ Sp(2n, ℤ)` and phases `e^{i b_j}`.
    pub fn torus(a: Matrix<S>, phases: Vec<S>) -> Result<Self> {
        check_symplectic(&a)?;
        if phases.len() != a.len() {
            return Err(Error::Invalid("phase vector length differs from dimension".into()));
        }
        for (i, row) in a.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if v.as_integer().is_none() {
                    return Err(Error::Invalid(format!(
                        "torus map needs an integral linear part; entry ({}, {}) is {v}",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        for p in &phases {
            if !p.mul(&p.conj()).sub(&S::one()).is_negligible() {
                return Err(Error::Invalid(format!("translation phase {p} is not of modulus one")));
            }
        }
        let a_inv = linalg::inverse(&a).ok_or_else(|| Error::Invalid("singular linear part".into()))?;
        Ok(AffineSymplecto { ring: Ring::Torus, a, a_inv, shift: Shift::Phases(phases) })
    }

    pub fn identity(ring: Ring, dim: usize) -> Self {
        let shift = match ring {
            Ring::Euclidean => Shift::Vector(vec![S::zero(); dim]),
            Ring::Torus => Shift::Phases(vec![S::one(); dim]),
        };
        AffineSymplecto { ring, a: linalg::identity(dim), a_inv: linalg::identity(dim), shift }
    }

    pub fn linear(ring: Ring, a: Matrix<S>) -> Result<Self> {
        let d = a.len();
        match ring {
            Ring::Euclidean => Self::euclidean(a, vec![S::zero(); d]),
            Ring::Torus => Self::torus(a, vec![S::one(); d]),
        }
    }

    /// Pure torus translation by phases.
    pub fn translation(phases: Vec<S>) -> Result<Self> {
        let d = phases.len();
        Self::torus(linalg::identity(d), phases)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }

    pub fn linear_part(&self) -> &Matrix<S> {
        &self.a
    }

    pub fn linear_inverse(&self) -> &Matrix<S> {
        &self.a_inv
    }

    pub fn shift(&self) -> &Shift<S> {
        &self.shift
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.ring, self.dim())
    }

    /// `Π_j phase_j^{v_j}` for an integer vector.
    fn phase_power(phases: &[S], v: &[i64]) -> S {
        phases.iter().zip(v).fold(S::one(), |acc, (p, &e)| {
            acc.mul(&p.powi(e).expect("phases are units"))
        })
    }

    fn int_row(&self, i: usize) -> Vec<i64> {
        self.a[i].iter().map(|v| v.as_integer().expect("integral torus map")).collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        assert!(self.ring == other.ring && self.dim() == other.dim(), "composing maps of different bases");
        let a = linalg::matmul(&self.a, &other.a);
        let a_inv = linalg::matmul(&other.a_inv, &self.a_inv);
        let shift = match (&self.shift, &other.shift) {
            (Shift::Vector(b1), Shift::Vector(b2)) => {
                Shift::Vector(linalg::matvec(&self.a, b2).iter().zip(b1).map(|(x, y)| x.add(y)).collect())
            }
            (Shift::Phases(p1), Shift::Phases(p2)) => Shift::Phases(
                (0..self.dim()).map(|i| Self::phase_power(p2, &self.int_row(i)).mul(&p1[i])).collect(),
            ),
            _ => unreachable!("ring tag and shift kind always agree"),
        };
        AffineSymplecto { ring: self.ring, a, a_inv, shift }
    }

    pub fn inverse(&self) -> Self {
        let a = self.a_inv.clone();
        let shift = match &self.shift {
            Shift::Vector(b) => Shift::Vector(linalg::matvec(&a, b).iter().map(Scalar::neg).collect()),
            Shift::Phases(p) => {
                let inv = AffineSymplecto { ring: self.ring, a: a.clone(), a_inv: self.a.clone(), shift: self.shift.clone() };
                Shift::Phases(
                    (0..self.dim())
                        .map(|i| Self::phase_power(p, &inv.int_row(i)).inv().expect("unit phase"))
                        .collect(),
                )
            }
        };
        AffineSymplecto { ring: self.ring, a, a_inv: self.a.clone(), shift }
    }

    /// Image of a point of `ℝ²ⁿ`.
    pub fn apply(&self, x: &[S]) -> Result<Vec<S>> {
        match &self.shift {
            Shift::Vector(b) => Ok(linalg::matvec(&self.a, x).iter().zip(b).map(|(u, v)| u.add(v)).collect()),
            Shift::Phases(_) => Err(Error::Unsupported("points of the torus are not represented exactly".into())),
        }
    }

    /// Whether `p` is a fixed point (euclidean maps only).
    pub fn fixes(&self, p: &[S]) -> Result<bool> {
        let q = self.apply(p)?;
        Ok(q.iter().zip(p).all(|(a, b)| a.approx_eq(b)))
    }

    /// `f ∘ γ`.
    pub fn pullback_base(&self, f: &BaseFunction<S>) -> BaseFunction<S> {
        assert!(f.ring() == self.ring && f.dim() == self.dim(), "pullback across different bases");
        let d = self.dim();
        match &self.shift {
            Shift::Phases(p) => {
                let cols: Vec<Vec<i64>> =
                    (0..d).map(|j| (0..d).map(|i| self.a[i][j].as_integer().expect("integral")).collect()).collect();
                let mut out = BaseFunction::zero(Ring::Torus, d);
                for (m, c) in f.terms() {
                    let mv: Vec<i64> = m.iter().map(|&v| v as i64).collect();
                    // e^{i m·(Ax+b)} = e^{i (Aᵀm)·x} Π phase^m
                    let key: BaseKey =
                        cols.iter().map(|col| col.iter().zip(&mv).map(|(a, b)| a * b).sum::<i64>() as i32).collect();
                    out.add_term(key, &c.mul(&Self::phase_power(p, &mv)));
                }
                out
            }
            Shift::Vector(b) => {
                let images: Vec<BaseFunction<S>> = (0..d)
                    .map(|i| {
                        let mut l = BaseFunction::constant(Ring::Euclidean, d, b[i].clone());
                        for j in 0..d {
                            l.add_scaled(&BaseFunction::coordinate(d, j), &self.a[i][j]);
                        }
                        l
                    })
                    .collect();
                let mut powers: Vec<Vec<BaseFunction<S>>> =
                    images.iter().map(|_| vec![BaseFunction::one(Ring::Euclidean, d)]).collect();
                let mut out = BaseFunction::zero(Ring::Euclidean, d);
                for (e, c) in f.terms() {
                    let mut t = BaseFunction::constant(Ring::Euclidean, d, c.clone());
                    for (i, &k) in e.iter().enumerate() {
                        while powers[i].len() <= k as usize {
                            let next = powers[i].last().expect("nonempty").mul(&images[i]);
                            powers[i].push(next);
                        }
                        t = t.mul(&powers[i][k as usize]);
                    }
                    out.add_scaled(&t, &S::one());
                }
                out
            }
        }
    }

    /// Pullback of `dx^{mask}` as a combination of wedge masks.
    pub fn pullback_wedge(&self, mask: u32) -> BTreeMap<u32, S> {
        let mut acc: BTreeMap<u32, S> = BTreeMap::from([(0, S::one())]);
        for i in mask_indices(mask) {
            let mut next: BTreeMap<u32, S> = BTreeMap::new();
            for (m, c) in &acc {
                for j in 0..self.dim() {
                    let aij = &self.a[i][j];
                    if aij.is_zero() {
                        continue;
                    }
                    if let Some(sign) = wedge_sign(*m, 1 << j) {
                        let slot = next.entry(m | (1 << j)).or_insert_with(S::zero);
                        *slot = slot.add(&c.mul(aij).mul(&S::from_i64(sign)));
                    }
                }
            }
            next.retain(|_, c| !c.is_zero());
            acc = next;
        }
        acc
    }

    pub fn pullback_form(&self, form: &ScalarForm<S>) -> ScalarForm<S> {
        let mut out = ScalarForm::zero(form.ring(), form.dim(), form.degree());
        for (m, f) in form.components() {
            let g = self.pullback_base(f);
            for (m2, c) in self.pullback_wedge(*m) {
                out.add_mask(m2, &g.scale(&c));
            }
        }
        out
    }

    /// Fiber substitution `yⁱ ↦ Σ_j Aⁱ_j yʲ` on a symmetric monomial.
    pub fn pullback_y_monomial(&self, alpha: &[u32]) -> BTreeMap<YIndex, S> {
        let d = self.dim();
        let mut acc: BTreeMap<YIndex, S> = BTreeMap::from([(vec![0; d], S::one())]);
        for (i, &e) in alpha.iter().enumerate() {
            for _ in 0..e {
                let mut next: BTreeMap<YIndex, S> = BTreeMap::new();
                for (k, c) in &acc {
                    for j in 0..d {
                        if self.a[i][j].is_zero() {
                            continue;
                        }
                        let mut k2 = k.clone();
                        k2[j] += 1;
                        let slot = next.entry(k2).or_insert_with(S::zero);
                        *slot = slot.add(&c.mul(&self.a[i][j]));
                    }
                }
                next.retain(|_, c| !c.is_zero());
                acc = next;
            }
        }
        acc
    }

    /// Pullback of a Weyl section: `x ↦ γ(x)` in coefficients and `y ↦ A y`.
    pub fn pullback_weyl(&self, s: &WeylElement<S>) -> WeylElement<S> {
        let mut out = s.space().zero();
        let mut cache: BTreeMap<YIndex, BTreeMap<YIndex, S>> = BTreeMap::new();
        for (k, f) in s.terms() {
            let g = self.pullback_base(f);
            let images = cache.entry(k.y.clone()).or_insert_with(|| self.pullback_y_monomial(&k.y));
            for (y, c) in images.iter() {
                out.add_term(WeylKey::new(k.hbar, y.clone()), &g.scale(c));
            }
        }
        out
    }
}
