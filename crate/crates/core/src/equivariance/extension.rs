use std::fmt;

use serde::Serialize;

use crate::equivariance::gnabla::{describe_term, GnablaElement};
use crate::error::{Error, Result};
use crate::fedosov::{probe_functions, tau_function, FedosovConnection, WeylForm};
use crate::geometry::{AffineSymplecto, GroupAction, GroupKind};
use crate::scalar::Scalar;
use crate::weyl::WeylElement;

/// One relation whose composed automorphism failed to match.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResidualEntry {
    pub relation: String,
    pub residual_norm: f64,
    pub first_noncentral_term: Option<String>,
}

/// Outcome of a cocycle check: `entries` lists only failing relations.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CocycleReport {
    pub relations_checked: usize,
    /// Generators whose `A_γ` was tested on flat probe sections.
    pub flatness_checked: usize,
    pub entries: Vec<ResidualEntry>,
}

impl CocycleReport {
    pub fn is_homomorphism(&self) -> bool {
        self.entries.is_empty()
    }
}

fn residual_entry<S: Scalar>(relation: String, residual: &WeylElement<S>) -> Option<ResidualEntry> {
    let form = WeylForm::from_element(residual.clone());
    form.first_noncentral().map(|t| ResidualEntry {
        relation,
        residual_norm: residual.noncentral_part().max_abs(),
        first_noncentral_term: Some(describe_term(&t)),
    })
}

/// Candidate lifts `A_γ = Ad U_γ ∘ γ*` of a group action, one unit per
/// generator.
#[derive(Clone)]
pub struct ExtensionAssignment<S> {
    action: GroupAction<S>,
    fc: FedosovConnection<S>,
    units: Vec<WeylElement<S>>,
    inverses: Vec<WeylElement<S>>,
}

impl<S: Scalar> fmt::Debug for ExtensionAssignment<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ExtensionAssignment").field("action", &self.action).field("units", &self.units).finish()
    }
}

/// `Ad U ∘ γ*` applied to `s`.
fn conjugate_pullback<S: Scalar>(u: &WeylElement<S>, u_inv: &WeylElement<S>, g: &AffineSymplecto<S>, s: &WeylElement<S>) -> WeylElement<S> {
    u.mul(&g.pullback_weyl(s)).mul(u_inv)
}

impl<S: Scalar> ExtensionAssignment<S> {
    /// Checks that every `Ad U_γ ∘ γ*` maps flat probe sections to flat
    /// sections.
    pub fn new(action: GroupAction<S>, fc: FedosovConnection<S>, units: Vec<WeylElement<S>>) -> Result<Self> {
        let out = Self::new_unchecked(action, fc, units)?;
        let probes: Vec<WeylElement<S>> = probe_functions(out.fc.manifold())
            .iter()
            .map(|f| tau_function(&out.fc, f))
            .collect::<Result<_>>()?;
        for (gi, g) in out.action.generators().iter().enumerate() {
            for (pi, s) in probes.iter().enumerate() {
                let image = conjugate_pullback(&out.units[gi], &out.inverses[gi], g, s);
                let curv = out.fc.nabla(&WeylForm::from_element(image))?;
                if !curv.is_negligible() {
                    return Err(Error::Precondition(format!(
                        "lift of generator {} does not preserve flatness (probe {pi}, residual norm {})",
                        gi + 1,
                        curv.max_abs()
                    )));
                }
            }
        }
        Ok(out)
    }

    /// Only shape and invertibility are checked.
    pub fn new_unchecked(action: GroupAction<S>, fc: FedosovConnection<S>, units: Vec<WeylElement<S>>) -> Result<Self> {
        if action.ring() != fc.manifold().kind || action.dim() != fc.manifold().dim() {
            return Err(Error::Mismatch("action and connection live on different bases".into()));
        }
        if units.len() != action.generators().len() {
            return Err(Error::Invalid(format!(
                "{} units for {} generators",
                units.len(),
                action.generators().len()
            )));
        }
        let space = fc.space();
        for u in &units {
            space.check_same(u.space())?;
        }
        let inverses = units.iter().map(WeylElement::inverse).collect::<Result<_>>()?;
        Ok(ExtensionAssignment { action, fc, units, inverses })
    }

    /// All units equal to 1.
    pub fn trivial(action: GroupAction<S>, fc: FedosovConnection<S>) -> Result<Self> {
        let units = vec![fc.space().one(); action.generators().len()];
        Self::new(action, fc, units)
    }

    pub fn action(&self) -> &GroupAction<S> {
        &self.action
    }

    pub fn connection(&self) -> &FedosovConnection<S> {
        &self.fc
    }

    pub fn units(&self) -> &[WeylElement<S>] {
        &self.units
    }

    /// `A_γ(s)` for generator `gi`.
    pub fn apply(&self, gi: usize, s: &WeylElement<S>) -> WeylElement<S> {
        conjugate_pullback(&self.units[gi], &self.inverses[gi], &self.action.generators()[gi], s)
    }

    /// Units on every element of a finite group, composed along the word
    /// normal form: `U_{e·g} = U_g · g*(U_e)`.
    pub fn element_units(&self) -> Option<Vec<WeylElement<S>>> {
        let elements = self.action.elements()?;
        let mut out = vec![self.fc.space().one(); elements.len()];
        for x in self.action.elements_in_word_order() {
            if let Some((e, gi)) = self.action.word(x) {
                out[x] = self.units[gi].mul(&self.action.generators()[gi].pullback_weyl(&out[e]));
            }
        }
        Some(out)
    }

    /// `A_x(s)` for element `x` of a finite group.
    pub fn apply_element(&self, x: usize, s: &WeylElement<S>) -> Option<WeylElement<S>> {
        let units = self.element_units()?;
        let g = &self.action.elements()?[x];
        let inv = units[x].inverse().ok()?;
        Some(conjugate_pullback(&units[x], &inv, g, s))
    }
}

/// One entry per generator whose `A_γ` carries some flat probe section to a
/// section with `∇ ≠ 0`.
fn flatness_entries<S: Scalar>(e: &ExtensionAssignment<S>) -> Vec<ResidualEntry> {
    let fc = &e.fc;
    let probes: Vec<WeylElement<S>> =
        probe_functions(fc.manifold()).iter().filter_map(|f| tau_function(fc, f).ok()).collect();
    let mut out = Vec::new();
    for gi in 0..e.action.generators().len() {
        let mut worst: Option<(f64, WeylForm<S>)> = None;
        for s in &probes {
            let Ok(curv) = fc.nabla(&WeylForm::from_element(e.apply(gi, s))) else { continue };
            if curv.is_negligible() {
                continue;
            }
            let norm = curv.max_abs();
            if worst.as_ref().is_none_or(|(w, _)| norm > *w) {
                worst = Some((norm, curv));
            }
        }
        if let Some((norm, curv)) = worst {
            out.push(ResidualEntry {
                relation: format!("∇ ∘ A_g{}", gi + 1),
                residual_norm: norm,
                first_noncentral_term: curv.first_noncentral().map(|t| describe_term(&t)),
            });
        }
    }
    out
}

/// Residual `U_γ · γ*(U_μ) · U_{μγ}⁻¹` for every pair of a finite group, or
/// the commutator relations of `ℤᵏ`; only non-central residuals are listed.
/// Generators whose `A_γ` does not preserve flat sections are listed too,
/// since for `ℤᵏ` the relations alone do not see a non-central unit.
pub fn check_cocycle<S: Scalar>(e: &ExtensionAssignment<S>) -> CocycleReport {
    let act = &e.action;
    let mut entries = flatness_entries(e);
    let mut checked = 0;
    match act.kind() {
        GroupKind::Finite { order } => {
            let units = e.element_units().expect("finite");
            let elements = act.elements().expect("finite");
            let table = act.table().expect("finite");
            let inverses: Vec<_> = units.iter().map(|u| u.inverse().expect("units stay invertible")).collect();
            for mu in 0..order {
                for ga in 0..order {
                    checked += 1;
                    let residual = units[ga].mul(&elements[ga].pullback_weyl(&units[mu])).mul(&inverses[table[mu][ga]]);
                    if let Some(entry) = residual_entry(format!("e{mu}·e{ga}"), &residual) {
                        entries.push(entry);
                    }
                }
            }
        }
        GroupKind::FreeAbelian { rank } => {
            let gens = act.generators();
            for a in 0..rank {
                for b in (a + 1)..rank {
                    checked += 1;
                    let ab = e.units[a].mul(&gens[a].pullback_weyl(&e.units[b]));
                    let ba = e.units[b].mul(&gens[b].pullback_weyl(&e.units[a]));
                    let residual = ab.mul(&ba.inverse().expect("units stay invertible"));
                    if let Some(entry) = residual_entry(format!("[g{}, g{}]", a + 1, b + 1), &residual) {
                        entries.push(entry);
                    }
                }
            }
        }
    }
    CocycleReport { relations_checked: checked, flatness_checked: act.generators().len(), entries }
}

/// Per-generator members `S_γ` of the equivariance group, meant as a
/// cocycle for the automorphisms `A_γ` of an assignment.
#[derive(Clone)]
pub struct GnablaCocycle<S> {
    pub per_generator: Vec<GnablaElement<S>>,
}

impl<S: Scalar> fmt::Debug for GnablaCocycle<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.per_generator).finish()
    }
}

impl<S: Scalar> GnablaCocycle<S> {
    /// `S_γ · A_γ(S_μ) · S_{μγ}⁻¹` central on every relation.
    pub fn check(&self, e: &ExtensionAssignment<S>) -> Result<CocycleReport> {
        let act = &e.action;
        if self.per_generator.len() != act.generators().len() {
            return Err(Error::Invalid("one cocycle value per generator is required".into()));
        }
        let s: Vec<WeylElement<S>> = self.per_generator.iter().map(|g| g.unit().clone()).collect();
        let mut entries = Vec::new();
        let mut checked = 0;
        match act.kind() {
            GroupKind::Finite { order } => {
                let units = e.element_units().expect("finite");
                let elements = act.elements().expect("finite");
                let table = act.table().expect("finite");
                let unit_inv: Vec<_> = units.iter().map(|u| u.inverse()).collect::<Result<_>>()?;
                let a = |x: usize, v: &WeylElement<S>| conjugate_pullback(&units[x], &unit_inv[x], &elements[x], v);
                let mut all = vec![e.fc.space().one(); order];
                for x in act.elements_in_word_order() {
                    if let Some((p, gi)) = act.word(x) {
                        let g = act.generator_elements().expect("finite")[gi];
                        all[x] = s[gi].mul(&a(g, &all[p]));
                    }
                }
                let all_inv: Vec<_> = all.iter().map(|u| u.inverse()).collect::<Result<_>>()?;
                for mu in 0..order {
                    for ga in 0..order {
                        checked += 1;
                        let residual = all[ga].mul(&a(ga, &all[mu])).mul(&all_inv[table[mu][ga]]);
                        if let Some(entry) = residual_entry(format!("e{mu}·e{ga}"), &residual) {
                            entries.push(entry);
                        }
                    }
                }
            }
            GroupKind::FreeAbelian { rank } => {
                for x in 0..rank {
                    for y in (x + 1)..rank {
                        checked += 1;
                        let xy = s[x].mul(&e.apply(x, &s[y]));
                        let yx = s[y].mul(&e.apply(y, &s[x]));
                        let residual = xy.mul(&yx.inverse()?);
                        if let Some(entry) = residual_entry(format!("[g{}, g{}]", x + 1, y + 1), &residual) {
                            entries.push(entry);
                        }
                    }
                }
            }
        }
        Ok(CocycleReport { relations_checked: checked, flatness_checked: 0, entries })
    }
}

/// `B_γ = Ad S_γ ∘ A_γ`, i.e. units `S_γ U_γ`.
pub fn twist_action<S: Scalar>(s: &GnablaCocycle<S>, e: &ExtensionAssignment<S>) -> Result<ExtensionAssignment<S>> {
    let report = s.check(e)?;
    if let Some(first) = report.entries.first() {
        return Err(Error::Precondition(format!(
            "twisting data is not a cocycle: relation {} has residual {}",
            first.relation, first.residual_norm
        )));
    }
    let units = s.per_generator.iter().zip(&e.units).map(|(sg, u)| sg.unit().mul(u)).collect();
    ExtensionAssignment::new(e.action.clone(), e.fc.clone(), units)
}
