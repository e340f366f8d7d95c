//! One function per subcommand. Each returns a serializable result and a
//! list of contract-violation findings.

use fedosov_core::base::{BaseFunction, BaseSeries, Ring};
use fedosov_core::cohomology::{
    connecting_map_h2, find_fixed_point, fixed_point_invariant, period_map, simplicial_cohomology, t1_class,
    t1_report, twisted_conjugate_series, z_h1_invariants, Coefficients, CohomologyReport, H2Class, SimplicialComplex,
    T1Class, T1Report,
};
use fedosov_core::equivariance::{
    central_witness, check_cocycle, dmap, gnabla_membership, harmonic_witness, morphism_residual, solve_lift,
    CentralExponent, CocycleReport, ExtensionAssignment, GnablaElement, Membership,
};
use fedosov_core::fedosov::{build_fedosov, poisson_bracket, probe_functions, sigma, star, tau, FedosovConnection, WeylForm};
use fedosov_core::geometry::{AffineSymplecto, ChartManifold, FormSeries, GroupAction, ScalarForm};
use fedosov_core::json::{
    action_from_json, connection_from_json, fedosov_dump, form_series_from_json, form_series_to_json, function_to_json,
    series_from_json, series_to_json, symplecto_from_json, weyl_from_json, weyl_to_json, FedosovDump, FormSeriesJson,
    FunctionJson, SeriesJson, WeylElementJson,
};
use fedosov_core::{Scalar, WeylElement};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

use crate::error::{AtPointer, CliError};
use crate::random;
use crate::scenario::{BuiltinComplex, Command, ComplexJson, Scenario, ScalarChoice};

/// Largest certificate entry tolerated for approximate scalars.
const APPROX_CERTIFICATE_TOL: f64 = 1e-8;

pub struct Outcome {
    pub result: Value,
    pub findings: Vec<String>,
}

pub struct Context<'a> {
    pub scenario: &'a Scenario,
    pub command: Command,
    pub trunc: Option<u32>,
    pub rng: ChaCha8Rng,
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("reports serialize")
}

fn texts<S: Scalar>(v: &[S]) -> Vec<String> {
    v.iter().map(Scalar::to_text).collect()
}

fn within_tolerance(x: f64, choice: ScalarChoice) -> bool {
    match choice {
        ScalarChoice::Exact => x == 0.0,
        ScalarChoice::Approx => x <= APPROX_CERTIFICATE_TOL,
    }
}

impl Context<'_> {
    fn trunc(&self) -> u32 {
        self.trunc.expect("validated")
    }

    fn order(&self) -> u32 {
        self.trunc() / 2
    }

    fn manifold(&self) -> Result<ChartManifold, CliError> {
        let m = self.scenario.manifold.expect("validated");
        if m.n == 0 || m.n > 4 {
            return Err(CliError::schema("/manifold/n", format!("half-dimension must be in 1..=4, got {}", m.n)));
        }
        Ok(m)
    }

    fn theta<S: Scalar>(&self, m: ChartManifold, j: Option<&FormSeriesJson>, pointer: &str) -> Result<FormSeries<S>, CliError> {
        match j {
            Some(j) => form_series_from_json(m.kind, m.dim(), 2, j, self.order()).at(pointer),
            None => Ok(FormSeries::zero(m.kind, m.dim(), 2, self.order())),
        }
    }

    fn build<S: Scalar>(&self, m: ChartManifold, theta: &FormSeries<S>, theta_pointer: &str) -> Result<FedosovConnection<S>, CliError> {
        let c = match &self.scenario.connection {
            Some(j) => connection_from_json(m, j).at("/connection")?,
            None => fedosov_core::geometry::AffineConnection::flat(m.kind, m.dim()),
        };
        c.require_symplectic().at("/connection")?;
        theta.check_closed().at(theta_pointer)?;
        Ok(build_fedosov(m, &c, theta, self.trunc())?)
    }

    fn connection<S: Scalar>(&self) -> Result<(ChartManifold, FedosovConnection<S>), CliError> {
        let m = self.manifold()?;
        let theta = self.theta(m, self.scenario.theta.as_ref(), "/theta")?;
        let fc = self.build(m, &theta, "/theta")?;
        Ok((m, fc))
    }

    fn series<S: Scalar>(&self, m: ChartManifold, j: &SeriesJson, pointer: &str) -> Result<BaseSeries<S>, CliError> {
        series_from_json(m.kind, m.dim(), j, self.order()).at(pointer)
    }

    fn random_pairs<S: Scalar>(&mut self, m: ChartManifold) -> Vec<(BaseSeries<S>, BaseSeries<S>)> {
        let Some(spec) = self.scenario.random_pairs.clone() else { return Vec::new() };
        let order = self.order();
        (0..spec.count)
            .map(|_| {
                let f = random::function(&mut self.rng, m, spec.degree);
                let g = random::function(&mut self.rng, m, spec.degree);
                (BaseSeries::constant(f, order), BaseSeries::constant(g, order))
            })
            .collect()
    }

    fn scalars<S: Scalar>(&self, v: &[String], pointer: &str) -> Result<Vec<S>, CliError> {
        v.iter().enumerate().map(|(i, s)| S::parse_text(s).at(&format!("{pointer}/{i}"))).collect()
    }
}

pub fn run<S: Scalar>(ctx: &mut Context<'_>) -> Result<Outcome, CliError> {
    match ctx.command {
        Command::Star => run_star::<S>(ctx),
        Command::FedosovBuild => run_build::<S>(ctx),
        Command::FlatSection => run_flat_section::<S>(ctx),
        Command::Lift => run_lift::<S>(ctx),
        Command::CocycleCheck => run_cocycle::<S>(ctx),
        Command::Dmap => run_dmap::<S>(ctx),
        Command::Witness => run_witness::<S>(ctx),
        Command::Classify => run_classify::<S>(ctx),
        Command::Cech => run_cech(ctx),
        Command::H2Connect => run_h2(ctx),
    }
}

#[derive(Serialize)]
struct OrderEntry {
    order: usize,
    coefficient: FunctionJson,
}

fn table<S: Scalar>(s: &BaseSeries<S>) -> Vec<OrderEntry> {
    s.terms().iter().enumerate().map(|(k, f)| OrderEntry { order: k, coefficient: function_to_json(f) }).collect()
}

#[derive(Serialize)]
struct StarPair {
    f: SeriesJson,
    g: SeriesJson,
    product: Vec<OrderEntry>,
    /// First ħ-order where `f⋆g − g⋆f − iħ{f,g}` is nonzero.
    commutator_defect_order: Option<u32>,
    unit_law: bool,
}

#[derive(Serialize)]
struct StarResult {
    reliable_order: u32,
    pairs: Vec<StarPair>,
}

fn run_star<S: Scalar>(ctx: &mut Context<'_>) -> Result<Outcome, CliError> {
    let (m, fc) = ctx.connection::<S>()?;
    let sc = ctx.scenario;
    let mut pairs = Vec::new();
    if let (Some(f), Some(g)) = (&sc.f, &sc.g) {
        pairs.push((ctx.series(m, f, "/f")?, ctx.series(m, g, "/g")?));
    }
    pairs.extend(ctx.random_pairs::<S>(m));
    let order = ctx.order();
    let one = BaseSeries::constant(BaseFunction::one(m.kind, m.dim()), order);
    let mut findings = Vec::new();
    let mut out = Vec::new();
    for (idx, (f, g)) in pairs.iter().enumerate() {
        let fg = star(&fc, f, g)?;
        let gf = star(&fc, g, f)?;
        let pb = poisson_bracket(f.coefficient(0)?, g.coefficient(0)?);
        let zero = BaseFunction::zero(m.kind, m.dim());
        let expected = BaseSeries::new(m.kind, m.dim(), vec![zero, pb.scale(&S::i())], order);
        let defect = fg.sub(&gf).sub(&expected).valuation();
        if defect.is_some_and(|v| v < 2) {
            findings.push(format!("pair {idx}: commutator differs from iħ{{f,g}} at order {}", defect.unwrap_or(0)));
        }
        let unit_law = star(&fc, &one, f)?.sub(f).is_negligible() && star(&fc, f, &one)?.sub(f).is_negligible();
        if !unit_law {
            findings.push(format!("pair {idx}: 1 is not a two-sided unit"));
        }
        out.push(StarPair {
            f: series_to_json(f),
            g: series_to_json(g),
            product: table(&fg),
            commutator_defect_order: defect,
            unit_law,
        });
    }
    Ok(Outcome { result: to_value(&StarResult { reliable_order: order, pairs: out }), findings })
}

#[derive(Serialize)]
struct BuildResult {
    dump: FedosovDump,
    rebuild_identical: bool,
}

fn run_build<S: Scalar>(ctx: &mut Context<'_>) -> Result<Outcome, CliError> {
    let (m, fc) = ctx.connection::<S>()?;
    let again = build_fedosov(m, fc.connection(), fc.theta(), fc.trunc())?;
    let rebuild_identical = again.same_data(&fc);
    let dump = fedosov_dump(&fc);
    let mut findings = Vec::new();
    let choice = ctx.scenario.scalar;
    let c = &dump.certificates;
    for (name, v) in [
        ("flatness_residual", c.flatness_residual),
        ("delta_inv_r", c.delta_inv_r),
        ("curvature_residual", c.curvature_residual),
    ] {
        if !within_tolerance(v, choice) {
            findings.push(format!("certificate {name} = {v:e}"));
        }
    }
    if !rebuild_identical {
        findings.push("rebuilding from the same data changed r".into());
    }
    Ok(Outcome { result: to_value(&BuildResult { dump, rebuild_identical }), findings })
}

#[derive(Serialize)]
struct SectionEntry {
    function: SeriesJson,
    section: WeylElementJson,
    nabla_residual: f64,
    symbol_matches: bool,
}

fn run_flat_section<S: Scalar>(ctx: &mut Context<'_>) -> Result<Outcome, CliError> {
    let (m, fc) = ctx.connection::<S>()?;
    let mut findings = Vec::new();
    let mut out = Vec::new();
    for (i, j) in ctx.scenario.functions.as_ref().expect("validated").iter().enumerate() {
        let pointer = format!("/functions/{i}");
        let f = ctx.series(m, j, &pointer)?;
        let s = tau(&fc, &f).at(&pointer)?;
        let nabla_residual = fc.nabla(&WeylForm::from_element(s.clone()))?.max_abs();
        let symbol_matches = sigma(&s).agrees_through(&f, ctx.order())?;
        if !within_tolerance(nabla_residual, ctx.scenario.scalar) {
            findings.push(format!("function {i}: ∇τ(f) has norm {nabla_residual:e}"));
        }
        if !symbol_matches {
            findings.push(format!("function {i}: σ(τ(f)) ≠ f"));
        }
        out.push(SectionEntry { function: series_to_json(&f), section: weyl_to_json(&s), nabla_residual, symbol_matches });
    }
    Ok(Outcome { result: to_value(&out), findings })
}

#[derive(Serialize)]
struct MorphismEntry {
    f: SeriesJson,
    g: SeriesJson,
    residual_order: Option<u32>,
    residual_norm: f64,
}

#[derive(Serialize)]
struct LiftResult {
    unit: WeylElementJson,
    checked_through_order: u32,
    pairs: Vec<MorphismEntry>,
}

fn run_lift<S: Scalar>(ctx: &mut Context<'_>) -> Result<Outcome, CliError> {
    let m = ctx.manifold()?;
    let sc = ctx.scenario;
    let theta = ctx.theta::<S>(m, sc.theta.as_ref(), "/theta")?;
    let target_theta = match &sc.target_theta {
        Some(_) => ctx.theta::<S>(m, sc.target_theta.as_ref(), "/target_theta")?,
        None => theta.clone(),
    };
    let source = ctx.build(m, &theta, "/theta")?;
    let target = ctx.build(m, &target_theta, "/target_theta")?;
    let gamma = match &sc.gamma {
        Some(j) => symplecto_from_json(m, j).at("/gamma")?,
        None => AffineSymplecto::identity(m.kind, m.dim()),
    };
    let primitive = match &sc.primitive {
        Some(j) => Some(form_series_from_json(m.kind, m.dim(), 1, j, ctx.order()).at("/primitive")?),
        None => None,
    };
    let u = solve_lift(&source, &target, &gamma, primitive.as_ref())?;
    let order = ctx.order();
    let probes = probe_functions::<S>(m);
    let mut pairs: Vec<(BaseSeries<S>, BaseSeries<S>)> = (0..probes.len())
        .map(|i| {
            let a = BaseSeries::constant(probes[i].clone(), order);
            let b = BaseSeries::constant(probes[(i + 1) % probes.len()].clone(), order);
            (a, b)
        })
        .collect();
    pairs.extend(ctx.random_pairs::<S>(m));
    let mut findings = Vec::new();
    let mut out = Vec::new();
    for (idx, (f, g)) in pairs.iter().enumerate() {
        let res = morphism_residual(&source, &target, &u, &gamma, f, g)?;
        let residual_norm = res.terms().iter().map(BaseFunction::max_abs).fold(0.0, f64::max);
        let residual_order = if res.is_negligible() { None } else { res.valuation() };
        if let Some(k) = residual_order {
            findings.push(format!("pair {idx}: induced map fails to intertwine at ħ^{k}"));
        }
        out.push(MorphismEntry { f: series_to_json(f), g: series_to_json(g), residual_order, residual_norm });
    }
    let result = LiftResult { unit: weyl_to_json(&u), checked_through_order: order, pairs: out };
    Ok(Outcome { result: to_value(&result), findings })
}

#[derive(Serialize)]
struct CocycleResult {
    units: Vec<WeylElementJson>,
    /// Whether every `Ad U_γ ∘ γ*` maps flat sections to flat sections.
    units_preserve_flatness: bool,
    report: CocycleReport,
}

fn run_cocycle<S: Scalar>(ctx: &mut Context<'_>) -> Result<Outcome, CliError> {
    let (m, fc) = ctx.connection::<S>()?;
    let sc = ctx.scenario;
    let act = action_from_json::<S>(m, sc.action.as_ref().expect("validated")).at("/action")?;
    let space = fc.space();
    let ngen = act.generators().len();
    let mut units: Vec<WeylElement<S>> = match &sc.units {
        Some(list) => {
            if list.len() != ngen {
                return Err(CliError::schema("/units", format!("expected {ngen} units, one per generator")));
            }
            list.iter()
                .enumerate()
                .map(|(i, j)| weyl_from_json(&space, j).at(&format!("/units/{i}")))
                .collect::<Result<_, _>>()?
        }
        None => vec![space.one(); ngen],
    };
    if let Some(p) = &sc.perturb {
        if p.generator == 0 || p.generator > ngen {
            return Err(CliError::schema("/perturb/generator", format!("generator index must be in 1..={ngen}")));
        }
        let i = ctx.rng.gen_range(0..space.dim());
        let c: S = random::nonzero_rational(&mut ctx.rng);
        let bump = space.generator(i).scale(&c);
        units[p.generator - 1] = units[p.generator - 1].add(&bump);
    }
    let units_preserve_flatness = ExtensionAssignment::new(act.clone(), fc.clone(), units.clone()).is_ok();
    let e = ExtensionAssignment::new_unchecked(act, fc, units.clone())?;
    let report = check_cocycle(&e);
    let findings = report
        .entries
        .iter()
        .map(|r| {
            format!(
                "relation {}: non-central residual of norm {:e}, first term {}",
                r.relation,
                r.residual_norm,
                r.first_noncentral_term.as_deref().unwrap_or("?")
            )
        })
        .collect();
    let result = CocycleResult { units: units.iter().map(weyl_to_json).collect(), units_preserve_flatness, report };
    Ok(Outcome { result: to_value(&result), findings })
}

#[derive(Serialize)]
struct T1Json {
    harmonic: Vec<String>,
    tail: Vec<Vec<String>>,
}

fn t1_json<S: Scalar>(c: &T1Class<S>) -> T1Json {
    T1Json { harmonic: texts(&c.harmonic), tail: c.tail.iter().map(|v| texts(v)).collect() }
}

#[derive(Serialize)]
struct PeriodsJson {
    /// Per ħ-order, periods over the coordinate cycles divided by 2π.
    per_order: Vec<Vec<String>>,
    integral: bool,
    t1: T1Json,
}

fn periods_json<S: Scalar>(g: &GnablaElement<S>) -> Result<Option<PeriodsJson>, CliError> {
    if g.beta().ring() != Ring::Torus {
        return Ok(None);
    }
    let p = period_map(g.beta())?;
    Ok(Some(PeriodsJson {
        per_order: p.per_order.iter().map(|v| texts(v)).collect(),
        integral: p.is_integral(),
        t1: t1_json(&t1_class(g)?),
    }))
}

#[derive(Serialize)]
struct DmapResult {
    member: bool,
    beta: Option<FormSeriesJson>,
    periods: Option<PeriodsJson>,
    rejection: Option<String>,
}

fn run_dmap<S: Scalar>(ctx: &mut Context<'_>) -> Result<Outcome, CliError> {
    let (m, fc) = ctx.connection::<S>()?;
    let sc = ctx.scenario;
    let mut findings = Vec::new();
    let (member, expected) = if let Some(j) = &sc.unit {
        let u = weyl_from_json(&fc.space(), j).at("/unit")?;
        (gnabla_membership(&fc, &u).at("/unit")?, None)
    } else {
        let c = sc.central.as_ref().expect("validated");
        let tail = match &c.tail {
            Some(t) => ctx.series(m, t, "/central/tail")?,
            None => BaseSeries::new(m.kind, m.dim(), vec![], ctx.order()),
        };
        let data = CentralExponent {
            constant: S::parse_text(&c.constant).at("/central/constant")?,
            mode: c.mode.clone(),
            tail,
        };
        let g = central_witness(&fc, &data).at("/central")?;
        (Membership::Member(g), Some(data.differential()))
    };
    let result = match member {
        Membership::Member(g) => {
            let beta = dmap(&g);
            if let Some(exp) = expected {
                if !beta.sub(&exp).is_negligible() {
                    findings.push("𝔻(e^α) differs from dα".into());
                }
            }
            DmapResult {
                member: true,
                beta: Some(form_series_to_json(&beta)),
                periods: periods_json(&g)?,
                rejection: None,
            }
        }
        Membership::Rejected(r) => {
            let msg = format!("{r:?}");
            findings.push(format!("not in the equivariance group: {msg}"));
            DmapResult { member: false, beta: None, periods: None, rejection: Some(msg) }
        }
    };
    Ok(Outcome { result: to_value(&result), findings })
}

fn covector_form<S: Scalar>(m: ChartManifold, c: &[S], order: u32) -> FormSeries<S> {
    let mut form = ScalarForm::zero(m.kind, m.dim(), 1);
    for (i, ci) in c.iter().enumerate() {
        form.add_component(&[i], &BaseFunction::constant(m.kind, m.dim(), ci.clone()));
    }
    FormSeries::constant(form, order)
}

fn covectors<S: Scalar>(ctx: &mut Context<'_>, m: ChartManifold) -> Result<Vec<Vec<S>>, CliError> {
    let mut out = Vec::new();
    if let Some(list) = &ctx.scenario.covectors {
        for (i, v) in list.iter().enumerate() {
            let pointer = format!("/covectors/{i}");
            if v.len() != m.dim() {
                return Err(CliError::schema(&pointer, format!("covector needs {} entries", m.dim())));
            }
            out.push(ctx.scalars(v, &pointer)?);
        }
    }
    for _ in 0..ctx.scenario.random_covectors.unwrap_or(0) {
        out.push((0..m.dim()).map(|_| random::gaussian(&mut ctx.rng)).collect());
    }
    Ok(out)
}

#[derive(Serialize)]
struct WitnessEntry {
    covector: Vec<String>,
    unit: WeylElementJson,
    beta: FormSeriesJson,
    hits_covector: bool,
    periods: Option<PeriodsJson>,
}

fn run_witness<S: Scalar>(ctx: &mut Context<'_>) -> Result<Outcome, CliError> {
    let (m, fc) = ctx.connection::<S>()?;
    let mut findings = Vec::new();
    let mut out = Vec::new();
    for (i, c) in covectors::<S>(ctx, m)?.iter().enumerate() {
        let g = harmonic_witness(&fc, c)?;
        let beta = dmap(&g);
        let hits_covector = beta.sub(&covector_form(m, c, beta.order())).is_negligible();
        if !hits_covector {
            findings.push(format!("witness {i}: 𝔻g differs from the requested covector"));
        }
        out.push(WitnessEntry {
            covector: texts(c),
            unit: weyl_to_json(g.unit()),
            beta: form_series_to_json(&beta),
            hits_covector,
            periods: periods_json(&g)?,
        });
    }
    Ok(Outcome { result: to_value(&out), findings })
}

#[derive(Serialize)]
struct TorusInvariant {
    covector: Vec<String>,
    t1: Option<T1Json>,
}

#[derive(Serialize)]
struct PlaneInvariant {
    constant: String,
    fixed_point: Vec<String>,
    value: String,
    samples: usize,
    orbit_constant: bool,
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum ClassifyResult {
    Torus { invariants: Vec<TorusInvariant>, pairwise_distinct: bool },
    Plane { invariants: Vec<PlaneInvariant>, separates: bool },
}

fn run_classify<S: Scalar>(ctx: &mut Context<'_>) -> Result<Outcome, CliError> {
    let (m, fc) = ctx.connection::<S>()?;
    let act: GroupAction<S> = action_from_json(m, ctx.scenario.action.as_ref().expect("validated")).at("/action")?;
    let mut findings = Vec::new();
    let result = match m.kind {
        Ring::Torus => {
            let cs = covectors::<S>(ctx, m)?;
            let mut reports = Vec::new();
            let mut out = Vec::new();
            for c in &cs {
                let g = harmonic_witness(&fc, c)?;
                let r = z_h1_invariants(&fc, &act, &g).at("/action")?;
                out.push(TorusInvariant { covector: texts(c), t1: r.t1.as_ref().map(t1_json) });
                reports.push(r);
            }
            let pairwise_distinct =
                (0..reports.len()).all(|i| (i + 1..reports.len()).all(|j| reports[i].distinguishes(&reports[j])));
            ClassifyResult::Torus { invariants: out, pairwise_distinct }
        }
        Ring::Euclidean => {
            let constants = ctx
                .scenario
                .constants
                .as_ref()
                .ok_or_else(|| CliError::schema("/constants", "classification on the plane needs constants"))?;
            let constants: Vec<S> = ctx.scalars(constants, "/constants")?;
            let gen = act.generators().first().expect("validated").clone();
            let p = find_fixed_point(&gen)
                .ok_or_else(|| CliError::schema("/action", "the generator has no fixed point"))?;
            let samples = ctx.scenario.samples.unwrap_or(10);
            let order = ctx.order();
            let mut out = Vec::new();
            for (ci, c) in constants.iter().enumerate() {
                let g = BaseSeries::constant(BaseFunction::constant(m.kind, m.dim(), c.clone()), order);
                let value = fixed_point_invariant(&act, &p, &g).at("/action")?;
                let mut orbit_constant = true;
                for _ in 0..samples {
                    let mut terms = vec![BaseFunction::constant(m.kind, m.dim(), random::nonzero_rational(&mut ctx.rng))];
                    for _ in 1..=order {
                        terms.push(random::function(&mut ctx.rng, m, 2));
                    }
                    let b = BaseSeries::new(m.kind, m.dim(), terms, order);
                    let h = twisted_conjugate_series(&fc, &gen, &g, &b).at("/action")?;
                    let v = fixed_point_invariant(&act, &p, &h)?;
                    if !v.approx_eq(&value) {
                        orbit_constant = false;
                    }
                }
                if !orbit_constant {
                    findings.push(format!("constant {ci}: fixed-point value changed along its orbit"));
                }
                out.push(PlaneInvariant {
                    constant: c.to_text(),
                    fixed_point: texts(&p),
                    value: value.to_text(),
                    samples,
                    orbit_constant,
                });
            }
            let separates = (0..out.len()).all(|i| {
                (i + 1..out.len()).all(|j| !constants[i].approx_eq(&constants[j]) && out[i].value != out[j].value)
            });
            ClassifyResult::Plane { invariants: out, separates }
        }
    };
    Ok(Outcome { result: to_value(&result), findings })
}

#[derive(Serialize)]
struct CechResult {
    simplex_counts: [usize; 3],
    cohomology: Vec<CohomologyReport>,
    t1: T1Report,
}

fn run_cech(ctx: &mut Context<'_>) -> Result<Outcome, CliError> {
    let sc = ctx.scenario;
    let k = match sc.complex.as_ref().expect("validated") {
        ComplexJson::Builtin { builtin: BuiltinComplex::Tetrahedron } => SimplicialComplex::tetrahedron_boundary(),
        ComplexJson::Builtin { builtin: BuiltinComplex::Torus } => SimplicialComplex::torus_seven(),
        ComplexJson::Explicit { vertices, triangles } => {
            SimplicialComplex::from_triangles(*vertices, triangles).at("/complex")?
        }
    };
    let coeffs = sc.coefficients.clone().unwrap_or_else(|| vec![Coefficients::Integers, Coefficients::Complex]);
    let cohomology = coeffs.iter().map(|&c| simplicial_cohomology(&k, c)).collect();
    let order = ctx.trunc.map_or(2, |d| d / 2);
    let result = CechResult { simplex_counts: k.simplex_counts(), cohomology, t1: t1_report(&k, order) };
    Ok(Outcome { result: to_value(&result), findings: Vec::new() })
}

fn run_h2(ctx: &mut Context<'_>) -> Result<Outcome, CliError> {
    let sc = ctx.scenario;
    let class: H2Class =
        connecting_map_h2(sc.extension.as_ref().expect("validated"), sc.eta.as_ref().expect("validated")).at("/eta")?;
    let mut findings = Vec::new();
    if !class.cocycle_identity_holds {
        findings.push("lifted cochain violates the 2-cocycle identity".into());
    }
    if !class.relift_consistent {
        findings.push("a different choice of lifts changed the class".into());
    }
    Ok(Outcome { result: to_value(&class), findings })
}
