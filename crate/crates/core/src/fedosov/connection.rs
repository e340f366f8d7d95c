use serde::Serialize;

use crate::base::{BaseFunction, Ring};
use crate::error::{Error, Result};
use crate::fedosov::form::WeylForm;
use crate::fedosov::ops::{delta, delta_inv, inner_connection, inner_curvature, nabla0_unchecked};
use crate::geometry::{AffineConnection, AffineSymplecto, ChartManifold, FormSeries};
use crate::scalar::Scalar;
use crate::weyl::{WeylElement, WeylSpace};

/// Extra degrees carried by `r` beyond the public truncation, so that every
/// derived quantity through degree `D` is exact.
pub const WORK_MARGIN: u32 = 2;

/// Residuals recorded when a connection is built. All are exact zeros for
/// exact scalars.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificates {
    /// Largest coefficient of `∇∇s` through degree `D − 1` over a fixed panel
    /// of test sections.
    pub flatness_residual: f64,
    /// Largest coefficient of `δ⁻¹ r`.
    pub delta_inv_r: f64,
    /// Largest coefficient of `𝒦 − ω − iħθ` through degree `D + 1`.
    pub curvature_residual: f64,
}

impl Certificates {
    pub fn all_zero(&self) -> bool {
        self.flatness_residual == 0.0 && self.delta_inv_r == 0.0 && self.curvature_residual == 0.0
    }
}

/// `∇ = −δ + ∇₀ + (1/iħ)[r, ·]` with curvature `𝒦 = ω + iħθ`.
#[derive(Clone)]
pub struct FedosovConnection<S> {
    manifold: ChartManifold,
    connection: AffineConnection<S>,
    theta: FormSeries<S>,
    trunc: u32,
    /// Homogeneous parts of `r` by total degree, each stamped with the work
    /// truncation `D + WORK_MARGIN`.
    r_parts: Vec<WeylForm<S>>,
    gamma_inner: WeylForm<S>,
    curvature_inner: WeylForm<S>,
    certificates: Option<Certificates>,
}

impl<S: Scalar> std::fmt::Debug for FedosovConnection<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FedosovConnection")
            .field("manifold", &self.manifold)
            .field("trunc", &self.trunc)
            .field("certificates", &self.certificates)
            .finish_non_exhaustive()
    }
}

impl<S: Scalar> FedosovConnection<S> {
    pub fn manifold(&self) -> ChartManifold {
        self.manifold
    }

    pub fn connection(&self) -> &AffineConnection<S> {
        &self.connection
    }

    pub fn theta(&self) -> &FormSeries<S> {
        &self.theta
    }

    /// Public truncation degree `D`.
    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    /// Reliable ħ-order `⌊D/2⌋` of star products.
    pub fn reliable_order(&self) -> u32 {
        self.trunc / 2
    }

    pub fn work_trunc(&self) -> u32 {
        self.trunc + WORK_MARGIN
    }

    /// Weyl space at truncation `D`.
    pub fn space(&self) -> WeylSpace<S> {
        self.gamma_inner.space().with_trunc(self.trunc)
    }

    pub fn space_at(&self, trunc: u32) -> WeylSpace<S> {
        self.gamma_inner.space().with_trunc(trunc)
    }

    /// `r` through the work truncation.
    pub fn r(&self) -> WeylForm<S> {
        let mut out = WeylForm::zero(&self.space_at(self.work_trunc()), 1);
        for p in &self.r_parts {
            out = out.add(p);
        }
        out
    }

    pub(crate) fn r_part(&self, degree: u32) -> Option<&WeylForm<S>> {
        self.r_parts.get(degree as usize).filter(|p| !p.is_zero())
    }

    pub fn gamma_inner(&self) -> &WeylForm<S> {
        &self.gamma_inner
    }

    pub fn curvature_inner(&self) -> &WeylForm<S> {
        &self.curvature_inner
    }

    pub fn certificates(&self) -> Option<&Certificates> {
        self.certificates.as_ref()
    }

    /// `∇s` for a form `s` whose coefficients are exact through degree
    /// `cap + 1`; the result is exact through `cap ≤ D`.
    pub fn nabla_capped(&self, s: &WeylForm<S>, cap: u32) -> WeylForm<S> {
        assert!(cap <= self.trunc + WORK_MARGIN - 2, "cap {cap} beyond what r supports");
        let s_hi = s.restamp(cap + 1);
        let mut out = delta(&s_hi).neg().restamp(cap);
        out = out.add(&nabla0_unchecked(&self.connection, &s_hi.restamp(cap)));
        for d in 3..=(cap + 2) {
            let Some(rd) = self.r_part(d) else { continue };
            // [r_d, s_e] lands in degree d + e − 2 ≤ cap.
            let part = s_hi.map(|a| a.filter(|k| k.degree() + d <= cap + 2));
            if part.is_zero() {
                continue;
            }
            out = out.add(&rd.restamp(cap + 2).bracket_over_ihbar_capped(&part, cap));
        }
        out
    }

    /// `∇s`, stamped one degree below `s`.
    pub fn nabla(&self, s: &WeylForm<S>) -> Result<WeylForm<S>> {
        let t = s.trunc();
        if t == 0 || t > self.trunc + 1 {
            return Err(Error::Precondition(format!(
                "∇ needs sections with truncation in 1..={}, got {t}",
                self.trunc + 1
            )));
        }
        self.space().check_family(s.space())?;
        Ok(self.nabla_capped(s, t - 1))
    }

    /// `∇(∇s)` through degree `D − 1` for a section known exactly through
    /// degree `D + 1`.
    pub fn curvature_on(&self, s: &WeylForm<S>) -> WeylForm<S> {
        let first = self.nabla_capped(s, self.trunc);
        self.nabla_capped(&first, self.trunc - 1)
    }

    /// `𝒦 = ω + R̃ − δr + ∇₀r + (1/iħ) r ∧ r` through degree `D + 1`.
    pub fn curvature_form(&self) -> WeylForm<S> {
        let w = self.work_trunc();
        let cap = w - 1;
        let r = self.r();
        let omega = WeylForm::from_scalar_form(&self.space_at(cap), &self.manifold.omega());
        let rr = r.wedge_capped(&r, cap + 2).div_ihbar().expect("r ∧ r is a commutator");
        omega
            .add(&self.curvature_inner.restamp(cap))
            .sub(&delta(&r).restamp(cap))
            .add(&nabla0_unchecked(&self.connection, &r).restamp(cap))
            .add(&rr)
    }

    /// `ω + iħθ` at the given truncation.
    pub fn expected_curvature(&self, trunc: u32) -> WeylForm<S> {
        let space = self.space_at(trunc);
        let omega = WeylForm::from_scalar_form(&space, &self.manifold.omega());
        let theta = WeylForm::from_form_series(&space, &self.theta).mul_hbar(1).scale(&S::i());
        omega.add(&theta)
    }

    /// Deterministic panel of test sections used for the flatness certificate.
    pub fn test_panel(&self) -> Vec<WeylElement<S>> {
        let space = self.space_at(self.trunc + 1);
        let d = space.dim();
        let mut out = Vec::new();
        for i in 0..d {
            out.push(space.generator(i));
            let f = match space.ring() {
                Ring::Euclidean => BaseFunction::coordinate(d, i),
                Ring::Torus => {
                    let mut key = vec![0; d];
                    key[i] = 1;
                    BaseFunction::term(Ring::Torus, d, key, S::one())
                }
            };
            out.push(space.from_base(f.clone()).mul(&space.generator((i + 1) % d)));
            out.push(space.generator(i).mul(&space.generator((i + 1) % d)).mul(&space.generator(i)).add(&space.hbar()));
        }
        out
    }

    fn compute_certificates(&self) -> Certificates {
        let cap = self.trunc + 1;
        let curv = self.curvature_form().sub(&self.expected_curvature(cap));
        let flat = self
            .test_panel()
            .into_iter()
            .map(|s| self.curvature_on(&WeylForm::from_element(s)).max_abs())
            .fold(0.0, f64::max);
        Certificates {
            flatness_residual: flat,
            delta_inv_r: delta_inv(&self.r()).max_abs(),
            curvature_residual: curv.max_abs(),
        }
    }

    /// Pull every piece of data back along `γ`: the result is the connection
    /// `γ*∇` (with `γ*Γ`, `γ*θ`, `γ*r`).
    pub fn pullback(&self, g: &AffineSymplecto<S>) -> Self {
        let connection = self.connection.pullback(g);
        let gamma_inner = inner_connection(&connection, self.gamma_inner.space());
        FedosovConnection {
            manifold: self.manifold,
            theta: self.theta.map(|t| g.pullback_form(t)),
            trunc: self.trunc,
            r_parts: self.r_parts.iter().map(|p| p.pullback(g)).collect(),
            curvature_inner: inner_curvature(&gamma_inner),
            gamma_inner,
            connection,
            certificates: None,
        }
    }

    /// Same curvature data, i.e. `r`, `Γ` and `θ` all agree.
    pub fn same_data(&self, other: &Self) -> bool {
        self.trunc == other.trunc
            && self.connection.sub(&other.connection).is_negligible()
            && self.r().sub(&other.r()).is_negligible()
            && self.theta.sub(&other.theta).is_negligible()
    }
}

/// Solve `r = δ⁻¹(R̃ − iħθ + ∇₀r + (1/iħ) r ∧ r)` degree by degree.
pub fn build_fedosov<S: Scalar>(
    m: ChartManifold,
    c: &AffineConnection<S>,
    theta: &FormSeries<S>,
    trunc: u32,
) -> Result<FedosovConnection<S>> {
    if trunc < 2 {
        return Err(Error::Precondition("truncation degree must be at least 2".into()));
    }
    if c.ring() != m.kind || c.dim() != m.dim() {
        return Err(Error::Mismatch("connection and manifold differ".into()));
    }
    if theta.ring() != m.kind || theta.dim() != m.dim() || theta.degree() != 2 {
        return Err(Error::Mismatch("θ must be a 2-form series on the manifold".into()));
    }
    c.require_symplectic()?;
    theta.check_closed()?;
    let theta = theta.with_order(theta.order());
    let work = trunc + WORK_MARGIN;
    let space = m.weyl_space::<S>(work);
    let gamma_inner = inner_connection(c, &space);
    let curvature_inner = inner_curvature(&gamma_inner);
    let source = curvature_inner.sub(&WeylForm::from_form_series(&space, &theta).mul_hbar(1).scale(&S::i()));

    let mut r_parts: Vec<WeylForm<S>> = vec![WeylForm::zero(&space, 1); work as usize + 1];
    for d in 2..work {
        let mut rhs = source.grading_project(d);
        rhs = rhs.add(&nabla0_unchecked(c, &r_parts[d as usize]));
        for d1 in 3..d {
            let d2 = d + 2 - d1;
            if d2 < 3 {
                continue;
            }
            let (a, b) = (&r_parts[d1 as usize], &r_parts[d2 as usize]);
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let prod = a.wedge_capped(b, work + 2).div_ihbar()?.restamp(work);
            rhs = rhs.add(&prod);
        }
        r_parts[d as usize + 1] = delta_inv(&rhs).grading_project(d + 1);
    }

    let mut f = FedosovConnection {
        manifold: m,
        connection: c.clone(),
        theta,
        trunc,
        r_parts,
        gamma_inner: gamma_inner.clone(),
        curvature_inner,
        certificates: None,
    };
    let cert = f.compute_certificates();
    f.certificates = Some(cert);
    Ok(f)
}
