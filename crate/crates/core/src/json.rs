//! Canonical JSON forms of the core data types. Scalars are strings such as
//! `"3/4-1/2 i"`; wedge and Christoffel indices are 1-based.

use serde::{Deserialize, Serialize};

use crate::base::{BaseFunction, BaseSeries, Ring};
use crate::error::{Error, Result};
use crate::fedosov::{FedosovConnection, WeylForm};
use crate::geometry::{mask_indices, AffineConnection, AffineSymplecto, ChartManifold, FormSeries, GroupAction, ScalarForm, Shift};
use crate::scalar::Scalar;
use crate::weyl::{WeylElement, WeylKey, WeylSpace};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    /// Exponent vector (plane) or frequency vector (torus).
    pub m: Vec<i32>,
    pub c: String,
}

pub type FunctionJson = Vec<TermJson>;

pub fn function_to_json<S: Scalar>(f: &BaseFunction<S>) -> FunctionJson {
    f.terms().map(|(k, c)| TermJson { m: k.clone(), c: c.to_text() }).collect()
}

pub fn function_from_json<S: Scalar>(ring: Ring, dim: usize, j: &FunctionJson) -> Result<BaseFunction<S>> {
    let mut out = BaseFunction::zero(ring, dim);
    for t in j {
        if t.m.len() != dim {
            return Err(Error::Mismatch(format!("term key {:?} has length {}, expected {dim}", t.m, t.m.len())));
        }
        if ring == Ring::Euclidean && t.m.iter().any(|&e| e < 0) {
            return Err(Error::Invalid(format!("negative exponent in polynomial term {:?}", t.m)));
        }
        out.add_term(t.m.clone(), &S::parse_text(&t.c)?);
    }
    Ok(out)
}

/// `Σ ħᵏ f_k` as `{"order", "terms": [f_0, f_1, …]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesJson {
    pub order: Option<u32>,
    pub terms: Vec<FunctionJson>,
}

pub fn series_to_json<S: Scalar>(s: &BaseSeries<S>) -> SeriesJson {
    SeriesJson { order: Some(s.order()), terms: s.terms().iter().map(function_to_json).collect() }
}

/// Missing `order` means exact through `default_order`.
pub fn series_from_json<S: Scalar>(ring: Ring, dim: usize, j: &SeriesJson, default_order: u32) -> Result<BaseSeries<S>> {
    let terms = j.terms.iter().map(|t| function_from_json(ring, dim, t)).collect::<Result<Vec<_>>>()?;
    if terms.is_empty() {
        return Ok(BaseSeries::new(ring, dim, vec![], j.order.unwrap_or(default_order)));
    }
    Ok(BaseSeries::new(ring, dim, terms, j.order.unwrap_or(default_order)))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeylTermJson {
    pub k: u32,
    pub alpha: Vec<u32>,
    pub coef: FunctionJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeylElementJson {
    pub n: usize,
    #[serde(rename = "D")]
    pub trunc: u32,
    pub ring: Ring,
    pub terms: Vec<WeylTermJson>,
}

pub fn weyl_to_json<S: Scalar>(a: &WeylElement<S>) -> WeylElementJson {
    WeylElementJson {
        n: a.dim() / 2,
        trunc: a.trunc(),
        ring: a.ring(),
        terms: a
            .terms()
            .map(|(k, f)| WeylTermJson { k: k.hbar, alpha: k.y.clone(), coef: function_to_json(f) })
            .collect(),
    }
}

/// Parses into the given space; `n`, ring and `D` must match it.
pub fn weyl_from_json<S: Scalar>(space: &WeylSpace<S>, j: &WeylElementJson) -> Result<WeylElement<S>> {
    if j.n * 2 != space.dim() || j.ring != space.ring() || j.trunc != space.trunc() {
        return Err(Error::Mismatch(format!(
            "element with n={}, ring={}, D={} does not fit the space n={}, ring={}, D={}",
            j.n,
            j.ring,
            j.trunc,
            space.half_dim(),
            space.ring(),
            space.trunc()
        )));
    }
    let mut out = space.zero();
    for t in &j.terms {
        if t.alpha.len() != space.dim() {
            return Err(Error::Mismatch(format!("multi-index {:?} has the wrong length", t.alpha)));
        }
        let key = WeylKey::new(t.k, t.alpha.clone());
        if key.degree() > space.trunc() {
            return Err(Error::Invalid(format!("term ħ^{} y^{:?} exceeds the truncation degree", t.k, t.alpha)));
        }
        out.add_term(key, &function_from_json(space.ring(), space.dim(), &t.coef)?);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormComponentJson {
    pub dx: Vec<usize>,
    pub f: FunctionJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormJson {
    pub degree: usize,
    pub components: Vec<FormComponentJson>,
}

pub fn form_to_json<S: Scalar>(f: &ScalarForm<S>) -> FormJson {
    FormJson {
        degree: f.degree(),
        components: f
            .components()
            .map(|(m, c)| FormComponentJson { dx: mask_indices(*m).iter().map(|i| i + 1).collect(), f: function_to_json(c) })
            .collect(),
    }
}

pub fn form_from_json<S: Scalar>(ring: Ring, dim: usize, j: &FormJson) -> Result<ScalarForm<S>> {
    let mut out = ScalarForm::zero(ring, dim, j.degree);
    for c in &j.components {
        if c.dx.len() != j.degree || c.dx.iter().any(|&i| i == 0 || i > dim) {
            return Err(Error::Invalid(format!("wedge indices {:?} do not fit a {}-form in dimension {dim}", c.dx, j.degree)));
        }
        let idx: Vec<usize> = c.dx.iter().map(|i| i - 1).collect();
        out.add_component(&idx, &function_from_json(ring, dim, &c.f)?);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormSeriesJson {
    pub order: Option<u32>,
    pub terms: Vec<FormJson>,
}

pub fn form_series_to_json<S: Scalar>(s: &FormSeries<S>) -> FormSeriesJson {
    FormSeriesJson { order: Some(s.order()), terms: s.terms().iter().map(form_to_json).collect() }
}

pub fn form_series_from_json<S: Scalar>(
    ring: Ring,
    dim: usize,
    degree: usize,
    j: &FormSeriesJson,
    default_order: u32,
) -> Result<FormSeries<S>> {
    let mut terms = j.terms.iter().map(|t| form_from_json(ring, dim, t)).collect::<Result<Vec<_>>>()?;
    if terms.iter().any(|t| t.degree() != degree) {
        return Err(Error::Mismatch(format!("expected a series of {degree}-forms")));
    }
    if terms.is_empty() {
        terms.push(ScalarForm::zero(ring, dim, degree));
    }
    Ok(FormSeries::from_terms(terms, j.order.unwrap_or(default_order)))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChristoffelJson {
    pub k: usize,
    pub i: usize,
    pub j: usize,
    pub f: FunctionJson,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConnectionJson {
    /// Sparse `Γᵏᵢⱼ`; the symmetric partner `Γᵏⱼᵢ` must be listed too.
    #[serde(default)]
    pub christoffel: Vec<ChristoffelJson>,
}

pub fn connection_to_json<S: Scalar>(c: &AffineConnection<S>) -> ConnectionJson {
    let d = c.dim();
    let mut christoffel = Vec::new();
    for k in 0..d {
        for i in 0..d {
            for j in 0..d {
                let f = c.symbol(k, i, j);
                if !f.is_zero() {
                    christoffel.push(ChristoffelJson { k: k + 1, i: i + 1, j: j + 1, f: function_to_json(f) });
                }
            }
        }
    }
    ConnectionJson { christoffel }
}

pub fn connection_from_json<S: Scalar>(m: ChartManifold, j: &ConnectionJson) -> Result<AffineConnection<S>> {
    let d = m.dim();
    let mut c = AffineConnection::flat(m.kind, d);
    for e in &j.christoffel {
        if [e.k, e.i, e.j].iter().any(|&x| x == 0 || x > d) {
            return Err(Error::Invalid(format!("Christoffel index ({}, {}, {}) out of range 1..={d}", e.k, e.i, e.j)));
        }
        c.set_symbol(e.k - 1, e.i - 1, e.j - 1, function_from_json(m.kind, d, &e.f)?);
    }
    Ok(c)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymplectoJson {
    #[serde(rename = "A")]
    pub a: Vec<Vec<String>>,
    /// Translation vector on the plane.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<String>>,
    /// Unit phases `e^{i b_j}` of a torus translation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phases: Option<Vec<String>>,
}

pub fn symplecto_to_json<S: Scalar>(g: &AffineSymplecto<S>) -> SymplectoJson {
    let a = g.linear_part().iter().map(|r| r.iter().map(Scalar::to_text).collect()).collect();
    match g.shift() {
        Shift::Vector(b) => SymplectoJson { a, b: Some(b.iter().map(Scalar::to_text).collect()), phases: None },
        Shift::Phases(p) => SymplectoJson { a, b: None, phases: Some(p.iter().map(Scalar::to_text).collect()) },
    }
}

fn parse_vec<S: Scalar>(v: &[String]) -> Result<Vec<S>> {
    v.iter().map(|s| S::parse_text(s)).collect()
}

pub fn symplecto_from_json<S: Scalar>(m: ChartManifold, j: &SymplectoJson) -> Result<AffineSymplecto<S>> {
    let d = m.dim();
    let a: Vec<Vec<S>> = j.a.iter().map(|r| parse_vec(r)).collect::<Result<_>>()?;
    if a.len() != d || a.iter().any(|r| r.len() != d) {
        return Err(Error::Mismatch(format!("A must be {d}×{d}")));
    }
    match m.kind {
        Ring::Euclidean => {
            if j.phases.is_some() {
                return Err(Error::Invalid("phases describe torus translations; use b on the plane".into()));
            }
            let b = match &j.b {
                Some(b) => parse_vec(b)?,
                None => vec![S::zero(); d],
            };
            if b.len() != d {
                return Err(Error::Mismatch(format!("b must have length {d}")));
            }
            AffineSymplecto::euclidean(a, b)
        }
        Ring::Torus => {
            if j.b.is_some() {
                return Err(Error::Invalid("torus translations are given by unit phases, not b".into()));
            }
            let p = match &j.phases {
                Some(p) => parse_vec(p)?,
                None => vec![S::one(); d],
            };
            if p.len() != d {
                return Err(Error::Mismatch(format!("phases must have length {d}")));
            }
            AffineSymplecto::torus(a, p)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupJson {
    /// Either a multiplication table with generator element indices, or
    /// nothing (the group generated by the maps).
    Finite {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        table: Option<Vec<Vec<usize>>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        generator_elements: Option<Vec<usize>>,
    },
    FreeAbelian,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionJson {
    pub group: GroupJson,
    pub generators: Vec<SymplectoJson>,
}

pub fn action_from_json<S: Scalar>(m: ChartManifold, j: &ActionJson) -> Result<GroupAction<S>> {
    let gens = j.generators.iter().map(|g| symplecto_from_json(m, g)).collect::<Result<Vec<_>>>()?;
    match &j.group {
        GroupJson::Finite { table: None, generator_elements: None } => GroupAction::finite_from_generators(gens),
        GroupJson::Finite { table: Some(t), generator_elements: Some(ge) } => {
            GroupAction::finite_from_table(t.clone(), ge.clone(), gens)
        }
        GroupJson::Finite { .. } => {
            Err(Error::Invalid("a finite group needs both table and generator_elements, or neither".into()))
        }
        GroupJson::FreeAbelian => GroupAction::free_abelian(gens),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeylFormTermJson {
    pub dx: Vec<usize>,
    pub k: u32,
    pub alpha: Vec<u32>,
    pub coef: FunctionJson,
}

pub fn weyl_form_to_json<S: Scalar>(f: &WeylForm<S>) -> Vec<WeylFormTermJson> {
    let mut out = Vec::new();
    for (m, a) in f.components() {
        for (k, c) in a.terms() {
            out.push(WeylFormTermJson {
                dx: mask_indices(*m).iter().map(|i| i + 1).collect(),
                k: k.hbar,
                alpha: k.y.clone(),
                coef: function_to_json(c),
            });
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificatesJson {
    pub flatness_residual: f64,
    pub delta_inv_r: f64,
    pub curvature_residual: f64,
}

/// Dump of a built connection.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FedosovDump {
    pub manifold: ChartManifold,
    #[serde(rename = "D")]
    pub trunc: u32,
    pub theta: FormSeriesJson,
    pub connection: ConnectionJson,
    pub r_terms: Vec<WeylFormTermJson>,
    pub certificates: CertificatesJson,
}

pub fn fedosov_dump<S: Scalar>(fc: &FedosovConnection<S>) -> FedosovDump {
    let c = fc.certificates().cloned().unwrap_or(crate::fedosov::Certificates {
        flatness_residual: f64::NAN,
        delta_inv_r: f64::NAN,
        curvature_residual: f64::NAN,
    });
    FedosovDump {
        manifold: fc.manifold(),
        trunc: fc.trunc(),
        theta: form_series_to_json(fc.theta()),
        connection: connection_to_json(fc.connection()),
        r_terms: weyl_form_to_json(&fc.r()),
        certificates: CertificatesJson {
            flatness_residual: c.flatness_residual,
            delta_inv_r: c.delta_inv_r,
            curvature_residual: c.curvature_residual,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Exact;

    #[test]
    fn weyl_round_trip() {
        let space = WeylSpace::<Exact>::standard(1, Ring::Torus, 4);
        let f = BaseFunction::term(Ring::Torus, 2, vec![1, -2], Exact::from_gaussian((3, 4), (-1, 2)));
        let a = space.monomial(1, vec![1, 0], f).add(&space.generator(1));
        let j = weyl_to_json(&a);
        let text = serde_json::to_string(&j).unwrap();
        assert!(text.contains("\"D\":4"));
        let back: WeylElementJson = serde_json::from_str(&text).unwrap();
        assert_eq!(weyl_from_json(&space, &back).unwrap(), a);
    }
}
