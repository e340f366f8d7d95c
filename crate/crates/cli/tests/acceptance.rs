//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Every comparison uses exact scalars, so the pinned tolerance is 0
//! throughout; the only numeric budget is the runtime bound of criterion 1.

#[path = "../../core/tests/common/mod.rs"]
mod common;
#[path = "../../core/tests/oracles/mod.rs"]
mod oracles;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use common::{
    constant_theta, plane, poly, random_function, random_poly, random_symplectic_connection, random_trig, rng,
    small_gaussian, small_rational, torus, torus_with,
};
use fedosov_core::cohomology::{
    connecting_map_h2, find_fixed_point, fixed_point_invariant, period_map, simplicial_cohomology, t1_class,
    twisted_conjugate_series, z_h1_invariants, ActingGroup, CentralExtension, Coefficients, FiniteGroup,
    SimplicialComplex,
};
use fedosov_core::equivariance::{
    central_witness, check_cocycle, dmap, gnabla_membership, harmonic_witness, morphism_residual, solve_lift,
    CentralExponent, ExtensionAssignment, GnablaElement,
};
use fedosov_core::fedosov::{build_fedosov, delta_inv, poisson_bracket, probe_functions, star, tau_function, FedosovConnection, WeylForm};
use fedosov_core::geometry::{
    average_connection, connection_obstruction_cocycle, AffineConnection, AffineSymplecto, ChartManifold, FormSeries,
    GroupAction, ScalarForm,
};
use fedosov_core::{BaseFunction, BaseSeries, Exact, Ring, Scalar};
use oracles::enumeration::liftable;
use oracles::moyal::polynomial_star;
use rand::Rng;

const MOYAL_BUDGET: Duration = Duration::from_secs(60);

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn ex(p: i64, q: i64) -> Exact {
    Exact::from_ratio(p, q)
}

fn series(f: BaseFunction<Exact>, order: u32) -> BaseSeries<Exact> {
    BaseSeries::constant(f, order)
}

fn linear(ring: Ring, a: [[i64; 2]; 2]) -> AffineSymplecto<Exact> {
    let m = a.iter().map(|row| row.iter().map(|&x| Exact::from_i64(x)).collect()).collect();
    AffineSymplecto::linear(ring, m).unwrap()
}

fn translation(phases: [Exact; 2]) -> AffineSymplecto<Exact> {
    AffineSymplecto::torus(vec![vec![ex(1, 1), ex(0, 1)], vec![ex(0, 1), ex(1, 1)]], phases.to_vec()).unwrap()
}

fn moyal_equivalence() -> Outcome {
    let start = Instant::now();
    let fc = plane(8);
    let mut r = rng(1);
    for pair in 0..20 {
        let f = random_poly(&mut r, 2, 4);
        let g = random_poly(&mut r, 2, 4);
        let got = ok(star(&fc, &series(f.clone(), 4), &series(g.clone(), 4)))?;
        let expected = polynomial_star(1, &poly(&f), &poly(&g), 4);
        for (k, e) in expected.iter().enumerate() {
            ensure(poly(ok(got.coefficient(k as u32))?) == *e, || format!("pair {pair} differs at ħ^{k}"))?;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < MOYAL_BUDGET, || format!("took {elapsed:?}, budget {MOYAL_BUDGET:?}"))?;
    Ok(format!("20 pairs, degree ≤ 4, ħ⁰..ħ⁴ exact, {:.1}s of {}s", elapsed.as_secs_f64(), MOYAL_BUDGET.as_secs()))
}

fn quantization_axioms() -> Outcome {
    let mut r = rng(2);
    let cases: [(FedosovConnection<Exact>, u32); 2] = [(plane(6), 2), (torus(1, 6), 1)];
    for (fc, deg) in &cases {
        let ring = fc.manifold().kind;
        let order = fc.reliable_order();
        let one = series(BaseFunction::one(ring, 2), order);
        for t in 0..50 {
            let f = series(random_function(&mut r, ring, 2, *deg), order);
            let g = series(random_function(&mut r, ring, 2, *deg), order);
            let h = series(random_function(&mut r, ring, 2, *deg), order);
            ensure(ok(star(fc, &one, &f))? == f && ok(star(fc, &f, &one))? == f, || format!("{ring:?}: unit law fails"))?;
            let fg = ok(star(fc, &f, &g))?;
            let comm = fg.sub(&ok(star(fc, &g, &f))?);
            let bracket = poisson_bracket(ok(f.coefficient(0))?, ok(g.coefficient(0))?).scale(&Exact::i());
            ensure(ok(comm.coefficient(0))?.is_zero() && ok(comm.coefficient(1))?.sub(&bracket).is_zero(), || {
                format!("{ring:?}: commutator − iħ{{f,g}} has a term below ħ²")
            })?;
            let left = ok(star(fc, &fg, &h))?;
            let right = ok(star(fc, &f, &ok(star(fc, &g, &h))?))?;
            ensure(ok(left.agrees_through(&right, order))?, || format!("{ring:?}: associativity fails on triple {t}"))?;
        }
    }
    Ok("ℝ² and 𝕋² (θ = dx∧dy), D = 6, 50 triples each, residuals exactly 0 through ħ³".into())
}

fn curved_connection() -> AffineConnection<Exact> {
    let d = 2;
    let x1 = BaseFunction::<Exact>::coordinate(d, 0);
    let zero = BaseFunction::zero(Ring::Euclidean, d);
    let mut lowered = vec![vec![vec![zero; d]; d]; d];
    lowered[0][0][0] = x1;
    for (a, b, c) in [(0, 1, 1), (1, 0, 1), (1, 1, 0)] {
        lowered[a][b][c] = BaseFunction::one(Ring::Euclidean, d);
    }
    AffineConnection::from_lowered(Ring::Euclidean, &lowered).unwrap()
}

fn fedosov_contracts() -> Outcome {
    let plane_zero = FormSeries::zero(Ring::Euclidean, 2, 2, 3);
    let builds = [
        ("ℝ² flat", ok(build_fedosov(ChartManifold::euclidean(1), &AffineConnection::flat(Ring::Euclidean, 2), &plane_zero, 6))?),
        ("𝕋² θ = 3dx∧dy", torus(3, 6)),
        ("ℝ² curved", ok(build_fedosov(ChartManifold::euclidean(1), &curved_connection(), &plane_zero, 5))?),
    ];
    for (name, fc) in &builds {
        let cert = fc.certificates().ok_or("missing certificates")?;
        ensure(cert.all_zero(), || format!("{name}: {cert:?}"))?;
        ensure(delta_inv(&fc.r()).is_zero(), || format!("{name}: δ⁻¹r ≠ 0"))?;
        for f in probe_functions::<Exact>(fc.manifold()) {
            let t = ok(tau_function(fc, &f))?;
            ensure(ok(fc.nabla(&WeylForm::from_element(t)))?.is_zero(), || format!("{name}: ∇τ(f) ≠ 0"))?;
        }
        let again = ok(build_fedosov(fc.manifold(), fc.connection(), fc.theta(), fc.trunc()))?;
        ensure(again.same_data(fc) && again.r() == fc.r(), || format!("{name}: rebuild differs"))?;
    }
    Ok("3 builds: flatness, curvature, δ⁻¹r certificates exactly 0; rebuild identical".into())
}

fn gauge_equivalence() -> Outcome {
    let trunc = 6;
    let mut r = rng(4);
    // One random Fourier mode per component keeps θ + dη sparse.
    let mut eta = ScalarForm::zero(Ring::Torus, 2, 1);
    for i in 0..2 {
        let mode = vec![r.gen_range(-1..=1), r.gen_range(-1..=1)];
        eta.add_component(&[i], &BaseFunction::term(Ring::Torus, 2, mode, small_gaussian(&mut r)));
    }
    let theta = constant_theta(Exact::one());
    let src = torus_with(theta.clone(), trunc);
    let tgt = torus_with(theta.add(&eta.exterior_d()), trunc);
    let id = AffineSymplecto::identity(Ring::Torus, 2);
    let u = ok(solve_lift(&src, &tgt, &id, Some(&FormSeries::constant(eta.neg(), trunc / 2))))?;
    for pair in 0..10 {
        let f = series(random_trig(&mut r, 2, 1), 3);
        let h = series(random_trig(&mut r, 2, 1), 3);
        let res = ok(morphism_residual(&src, &tgt, &u, &id, &f, &h))?;
        ensure(res.with_order(3).terms().iter().all(BaseFunction::is_zero), || format!("pair {pair}: {res:?}"))?;
    }
    Ok("θ vs θ + dη on 𝕋², D = 6, 10 pairs, morphism residual exactly 0 through ħ³".into())
}

fn extensions() -> Outcome {
    let fc = plane(4);
    let mut r = rng(5);
    let quarter = linear(Ring::Euclidean, [[0, -1], [1, 0]]);
    let half = linear(Ring::Euclidean, [[-1, 0], [0, -1]]);
    let tfc = torus(0, 4);
    let rot = Exact::from_gaussian((3, 5), (4, 5));
    let cases = [
        ("ℤ/4 on ℝ²", ok(GroupAction::finite_from_generators(vec![quarter]))?, fc.clone()),
        ("ℤ/2 on ℝ²", ok(GroupAction::finite_from_generators(vec![half]))?, fc),
        ("ℤ/4 translations of 𝕋²", ok(GroupAction::finite_from_generators(vec![translation([Exact::i(), Exact::one()])]))?, tfc.clone()),
        (
            "ℤ² translations of 𝕋²",
            ok(GroupAction::free_abelian(vec![translation([rot.clone(), Exact::one()]), translation([Exact::one(), rot])]))?,
            tfc,
        ),
    ];
    let mut relations = 0;
    for (name, act, fc) in cases {
        let e = ok(ExtensionAssignment::trivial(act.clone(), fc.clone()))?;
        let report = check_cocycle(&e);
        ensure(report.is_homomorphism(), || format!("{name}: {:?}", report.entries))?;
        relations += report.relations_checked;
        let space = fc.space();
        let gi = r.gen_range(0..act.generators().len());
        let mut units = vec![space.one(); act.generators().len()];
        let c = small_gaussian(&mut r).add(&Exact::from_gaussian((1, 1), (1, 1)));
        units[gi] = units[gi].add(&space.generator(r.gen_range(0..2)).scale(&c));
        let perturbed = ok(ExtensionAssignment::new_unchecked(act, fc, units))?;
        ensure(!check_cocycle(&perturbed).is_homomorphism(), || format!("{name}: perturbation of generator {gi} missed"))?;
    }
    Ok(format!("4 actions, {relations} relations central; seeded perturbations detected"))
}

fn random_torus_connection<R: Rng>(r: &mut R) -> AffineConnection<Exact> {
    let d = 2;
    let zero = BaseFunction::zero(Ring::Torus, d);
    let mut lowered = vec![vec![vec![zero; d]; d]; d];
    for a in 0..d {
        for b in a..d {
            for c in b..d {
                let f = random_trig(r, d, 1);
                for (x, y, z) in [(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)] {
                    lowered[x][y][z] = f.clone();
                }
            }
        }
    }
    AffineConnection::from_lowered(Ring::Torus, &lowered).unwrap()
}

fn averaging() -> Outcome {
    let mut r = rng(6);
    let groups = [
        ok(GroupAction::finite_from_generators(vec![linear(Ring::Euclidean, [[0, -1], [1, 0]])]))?,
        ok(GroupAction::finite_from_generators(vec![linear(Ring::Euclidean, [[-1, 0], [0, -1]])]))?,
        ok(GroupAction::finite_from_generators(vec![linear(Ring::Torus, [[0, -1], [1, 0]])]))?,
        ok(GroupAction::finite_from_generators(vec![translation([Exact::i(), Exact::one()])]))?,
    ];
    for act in &groups {
        for _ in 0..10 {
            let c = match act.ring() {
                Ring::Euclidean => random_symplectic_connection(&mut r, 2),
                Ring::Torus => random_torus_connection(&mut r),
            };
            let avg = ok(average_connection(act, &c))?;
            let elements = act.elements().ok_or("finite group expected")?;
            ensure(elements.iter().all(|g| avg.is_invariant_under(g)), || "average not invariant".into())?;
            ensure(avg.check().ok(), || format!("average fails {:?}", avg.check()))?;
            ensure(ok(connection_obstruction_cocycle(act, &avg))?.is_zero(), || "obstruction of average ≠ 0".into())?;
        }
    }
    Ok("4 finite groups × 10 connections: averages invariant, torsion-free, symplectic; obstruction 0".into())
}

fn random_exponent<R: Rng>(r: &mut R, ring: Ring, order: u32) -> CentralExponent<Exact> {
    let mut tail = vec![BaseFunction::zero(ring, 2)];
    for _ in 1..=order {
        tail.push(random_function(r, ring, 2, 1));
    }
    let mode = match ring {
        Ring::Torus => Some(vec![r.gen_range(-2..=2), r.gen_range(-2..=2)]),
        Ring::Euclidean => None,
    };
    CentralExponent { constant: small_gaussian(r).add(&Exact::from_i64(7)), mode, tail: BaseSeries::new(ring, 2, tail, order) }
}

fn random_member<R: Rng>(r: &mut R, fc: &FedosovConnection<Exact>) -> Result<GnablaElement<Exact>, String> {
    let h = ok(harmonic_witness(fc, &[small_gaussian(r), small_gaussian(r)]))?;
    let c = ok(central_witness(fc, &random_exponent(r, Ring::Torus, 1)))?;
    let key = vec![r.gen_range(-1..=1), r.gen_range(-1..=1)];
    let mode = BaseFunction::term(Ring::Torus, 2, key, small_rational(r).add(&Exact::from_i64(9)));
    let flat = ok(GnablaElement::new(fc, &ok(tau_function(fc, &mode))?))?;
    ok(ok(h.product(fc, &c))?.product(fc, &flat))
}

fn covector_form(c: &[Exact]) -> ScalarForm<Exact> {
    let mut f = ScalarForm::zero(Ring::Torus, 2, 1);
    for (i, ci) in c.iter().enumerate() {
        f.add_component(&[i], &BaseFunction::constant(Ring::Torus, 2, ci.clone()));
    }
    f
}

fn gnabla_suite() -> Outcome {
    let fc = torus(1, 4);
    let mut r = rng(7);
    let order = 1;
    let members = (0..30).map(|_| random_member(&mut r, &fc)).collect::<Result<Vec<_>, _>>()?;
    for (i, a) in members.iter().enumerate() {
        let b = &members[(i + 1) % members.len()];
        let ab = ok(a.product(&fc, b))?;
        let inv = ok(a.inverse(&fc))?;
        ensure(dmap(&ab).with_order(order) == dmap(a).add(&dmap(b)).with_order(order), || format!("𝔻 not additive at {i}"))?;
        ensure(dmap(&inv).with_order(order) == dmap(a).neg().with_order(order), || format!("𝔻(g⁻¹) ≠ −𝔻g at {i}"))?;
    }
    for fc in [torus(2, 6), plane(6)] {
        let ring = fc.manifold().kind;
        for _ in 0..5 {
            let data = random_exponent(&mut r, ring, 2);
            let g = ok(central_witness(&fc, &data))?;
            ensure(dmap(&g).with_order(2) == data.differential().with_order(2), || format!("𝔻(e^α) ≠ dα on {ring:?}"))?;
        }
    }
    let fc6 = torus(2, 6);
    for _ in 0..10 {
        let c = vec![small_gaussian(&mut r), small_gaussian(&mut r)];
        let g = ok(harmonic_witness(&fc6, &c))?;
        ensure(ok(gnabla_membership(&fc6, g.unit()))?.is_member(), || "witness is not a member".into())?;
        let beta = dmap(&g);
        ensure(beta == FormSeries::constant(covector_form(&c), beta.order()), || format!("witness misses {c:?}"))?;
    }
    let lattice = [Exact::from_gaussian((0, 1), (3, 1)), Exact::from_gaussian((0, 1), (-2, 1))];
    let off = [Exact::from_gaussian((0, 1), (1, 2)), Exact::from_gaussian((1, 1), (0, 1))];
    ensure(ok(period_map(&dmap(&ok(harmonic_witness(&fc, &lattice))?)))?.is_integral(), || "lattice periods not integral".into())?;
    ensure(!ok(period_map(&dmap(&ok(harmonic_witness(&fc, &off))?)))?.is_integral(), || "non-lattice periods integral".into())?;
    Ok("30 members closed under product/inverse, 𝔻 additive, 𝔻(e^α) = dα, 10 witnesses exact, periods separate iℤ".into())
}

fn rotation_about(c: &[Exact]) -> AffineSymplecto<Exact> {
    let a = vec![vec![ex(3, 5), ex(-4, 5)], vec![ex(4, 5), ex(3, 5)]];
    let b = (0..2).map(|i| c[i].sub(&a[i][0].mul(&c[0])).sub(&a[i][1].mul(&c[1]))).collect();
    AffineSymplecto::euclidean(a, b).unwrap()
}

fn classification() -> Outcome {
    let fc = torus(1, 4);
    let act = ok(GroupAction::free_abelian(vec![translation([
        Exact::from_gaussian((3, 5), (4, 5)),
        Exact::from_gaussian((5, 13), (12, 13)),
    ])]))?;
    let covectors: Vec<[Exact; 2]> = (1..=3)
        .flat_map(|a| (0..2).map(move |b| [Exact::from_gaussian((0, 1), (a, 4)), Exact::from_gaussian((b, 3), (1, 5))]))
        .collect();
    let mut reports = Vec::new();
    for c in &covectors {
        let g = ok(harmonic_witness(&fc, c))?;
        ensure(!ok(period_map(g.beta()))?.is_integral(), || format!("{c:?} has integral periods"))?;
        let class = ok(t1_class(&g))?;
        let reduced: Vec<Exact> = c.iter().map(Scalar::reduce_mod_imaginary_integers).collect();
        ensure(class.harmonic == reduced, || format!("T¹ class of {c:?} is {:?}", class.harmonic))?;
        reports.push(ok(z_h1_invariants(&fc, &act, &g))?);
    }
    let identity = ok(z_h1_invariants(&fc, &act, &ok(GnablaElement::new(&fc, &fc.space().one()))?))?;
    for (i, a) in reports.iter().enumerate() {
        ensure(a.distinguishes(&identity), || format!("witness {i} looks trivial"))?;
        for (j, b) in reports.iter().enumerate().skip(i + 1) {
            ensure(a.distinguishes(b), || format!("witnesses {i} and {j} not separated"))?;
        }
    }

    let pfc = plane(4);
    let mut r = rng(8);
    let rot = rotation_about(&[ex(1, 3), ex(-1, 2)]);
    let pact = ok(GroupAction::free_abelian(vec![rot.clone()]))?;
    let p = find_fixed_point(&rot).ok_or("no fixed point")?;
    for orbit in 0..50 {
        let g = BaseSeries::new(Ring::Euclidean, 2, vec![random_poly(&mut r, 2, 2), random_poly(&mut r, 2, 1)], 2);
        let value = ok(fixed_point_invariant(&pact, &p, &g))?;
        let b0 = BaseFunction::constant(Ring::Euclidean, 2, small_gaussian(&mut r).add(&Exact::from_i64(6)));
        let b = BaseSeries::new(Ring::Euclidean, 2, vec![b0, random_poly(&mut r, 2, 2)], 2);
        let h = ok(twisted_conjugate_series(&pfc, &rot, &g, &b))?;
        ensure(ok(fixed_point_invariant(&pact, &p, &h))? == value, || format!("orbit {orbit} changes the invariant"))?;
    }
    let constant = |c: i64| series(BaseFunction::constant(Ring::Euclidean, 2, Exact::from_i64(c)), 2);
    ensure(
        ok(fixed_point_invariant(&pact, &p, &constant(2)))? != ok(fixed_point_invariant(&pact, &p, &constant(5)))?,
        || "constants not separated".into(),
    )?;
    Ok(format!("{} torus witnesses pairwise distinct and nontrivial; 50 plane orbits constant, constants separated", reports.len()))
}

fn cohomology_backends() -> Outcome {
    for coeff in [Coefficients::Integers, Coefficients::Complex] {
        let s = simplicial_cohomology(&SimplicialComplex::tetrahedron_boundary(), coeff);
        ensure(s.rank(1) == 0, || format!("{coeff:?}: tetrahedron H¹ rank {}", s.rank(1)))?;
        let t = simplicial_cohomology(&SimplicialComplex::torus_seven(), coeff);
        ensure(t.rank(1) == 2 && t.torsion(1).is_empty(), || format!("{coeff:?}: torus H¹ rank {}", t.rank(1)))?;
    }
    let ident: Vec<usize> = (0..4).collect();
    let gamma = FiniteGroup::cyclic(2);
    let act = vec![ident.clone(), ident];
    let ext = CentralExtension {
        extension: FiniteGroup::cyclic(4),
        quotient: FiniteGroup::cyclic(2),
        projection: vec![0, 1, 0, 1],
        kernel_generator: 2,
        acting: ActingGroup::Finite { group: gamma.clone(), action: act.clone() },
    };
    for eta in [vec![0, 1], vec![0, 0]] {
        let class = ok(connecting_map_h2(&ext, &eta))?;
        let expected = liftable(&ext.extension.table, &ext.projection, &gamma.table, &act, &eta);
        ensure(class.trivial == expected, || format!("η = {eta:?}: class trivial = {}", class.trivial))?;
        ensure(class.cocycle_identity_holds && class.relift_consistent, || format!("η = {eta:?}: inconsistent class"))?;
    }
    Ok("tetrahedron H¹ = 0, torus H¹ ≅ ℤ² (ℤ and ℂ); ℤ/4 toy class matches enumeration".into())
}

fn scenario_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../scenarios")
}

fn determinism() -> Outcome {
    let mut files: Vec<PathBuf> = ok(std::fs::read_dir(scenario_dir()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    for path in &files {
        let text = ok(std::fs::read_to_string(path))?;
        let json: serde_json::Value = ok(serde_json::from_str(&text))?;
        let command = json["command"].as_str().ok_or_else(|| format!("{} names no command", path.display()))?;
        let run = || {
            Command::new(env!("CARGO_BIN_EXE_fedosov")).arg(command).arg("--scenario").arg(path).arg("--seed").arg("7").output()
        };
        let (a, b) = (ok(run())?, ok(run())?);
        ensure(a.stdout == b.stdout && a.stderr == b.stderr && a.status.code() == b.status.code(), || {
            format!("{} differs between runs", path.display())
        })?;
    }
    Ok(format!("{} scenarios rerun with seed 7, byte-identical", files.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("Moyal equivalence", moyal_equivalence),
        ("quantization axioms", quantization_axioms),
        ("Fedosov contracts", fedosov_contracts),
        ("gauge equivalence", gauge_equivalence),
        ("extensions of invariant actions", extensions),
        ("averaging", averaging),
        ("equivariance group and 𝔻", gnabla_suite),
        ("classification invariants", classification),
        ("cohomology backends", cohomology_backends),
        ("CLI determinism", determinism),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{secs:.1}s]", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    if failures > 0 {
        println!("{failures} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
