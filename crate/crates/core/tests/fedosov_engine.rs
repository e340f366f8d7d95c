mod common;
mod oracles;

use common::{plane, poly, random_fiber, random_function, random_poly, random_symplectic_connection, random_trig, rng, torus};
use fedosov_core::fedosov::{
    build_fedosov, delta, delta_inv, poisson_bracket, project_00, sigma, star, tau, tau_function, FedosovConnection,
    WeylForm,
};
use fedosov_core::geometry::{AffineConnection, ChartManifold, FormSeries};
use fedosov_core::{BaseFunction, BaseSeries, Exact, Ring, Scalar, WeylSpace};
use oracles::moyal::{fourier_star, polynomial_star};
use oracles::taylor::taylor_coefficients;
use proptest::prelude::*;
use rand::Rng;

fn series(f: &BaseFunction<Exact>, order: u32) -> BaseSeries<Exact> {
    BaseSeries::constant(f.clone(), order)
}

fn assert_matches_oracle(got: &BaseSeries<Exact>, expected: &[oracles::cx::Poly], ring: Ring) {
    for (k, e) in expected.iter().enumerate() {
        let have = got.coefficient(k as u32).unwrap();
        assert_eq!(poly(have), *e, "{ring:?} ħ^{k}");
    }
}

#[test]
fn plane_star_is_moyal() {
    let fc = plane(8);
    let mut r = rng(101);
    for _ in 0..6 {
        let f = random_poly(&mut r, 2, 4);
        let g = random_poly(&mut r, 2, 4);
        let got = star(&fc, &series(&f, 4), &series(&g, 4)).unwrap();
        assert_matches_oracle(&got, &polynomial_star(1, &poly(&f), &poly(&g), 4), Ring::Euclidean);
    }
}

#[test]
fn flat_torus_star_is_moyal() {
    let fc = torus(0, 6);
    let mut r = rng(102);
    for _ in 0..4 {
        let f = random_trig(&mut r, 2, 1);
        let g = random_trig(&mut r, 2, 1);
        let got = star(&fc, &series(&f, 3), &series(&g, 3)).unwrap();
        assert_matches_oracle(&got, &fourier_star(1, &poly(&f), &poly(&g), 3), Ring::Torus);
    }
}

#[test]
fn flat_plane_sections_are_taylor_expansions() {
    let fc = plane(6);
    let mut r = rng(103);
    for _ in 0..5 {
        let f = random_poly(&mut r, 2, 5);
        let t = tau_function(&fc, &f).unwrap();
        let taylor = taylor_coefficients(&poly(&f), 2, 6);
        let mut seen = 0;
        for (k, c) in t.terms() {
            assert_eq!(k.hbar, 0, "no quantum corrections on the flat plane");
            let expected = taylor.get(&k.y).cloned().unwrap_or_default();
            assert_eq!(poly(c), expected, "y^{:?}", k.y);
            seen += 1;
        }
        let expected_count = taylor.iter().filter(|(a, p)| a.iter().sum::<u32>() <= 6 && !p.is_empty()).count();
        assert_eq!(seen, expected_count);
    }
}

fn curved_examples() -> Vec<FedosovConnection<Exact>> {
    let mut r = rng(104);
    let m = ChartManifold::euclidean(1);
    let mut out = vec![plane(6), torus(3, 6)];
    for _ in 0..2 {
        let c = random_symplectic_connection(&mut r, 1);
        out.push(build_fedosov(m, &c, &FormSeries::zero(Ring::Euclidean, 2, 2, 0), 5).unwrap());
    }
    out
}

#[test]
fn certificates_vanish_and_rebuild_is_idempotent() {
    for fc in curved_examples() {
        let cert = fc.certificates().unwrap();
        assert!(cert.all_zero(), "{cert:?}");
        assert!(delta_inv(&fc.r()).is_zero());
        let again = build_fedosov(fc.manifold(), fc.connection(), fc.theta(), fc.trunc()).unwrap();
        assert!(again.same_data(&fc));
        assert_eq!(again.r(), fc.r());
    }
}

#[test]
fn flat_sections_are_annihilated() {
    let mut r = rng(105);
    for fc in curved_examples() {
        for _ in 0..3 {
            let f = random_function(&mut r, fc.manifold().kind, 2, 3);
            let t = tau(&fc, &series(&f, fc.reliable_order())).unwrap();
            assert!(fc.nabla(&WeylForm::from_element(t.clone())).unwrap().is_zero());
            assert_eq!(sigma(&t).coefficient(0).unwrap(), &f);
        }
    }
}

#[test]
fn star_product_axioms_on_curved_data() {
    let mut r = rng(106);
    for fc in curved_examples() {
        let ring = fc.manifold().kind;
        let order = fc.reliable_order();
        let one = series(&BaseFunction::one(ring, 2), order);
        for _ in 0..3 {
            let f = series(&random_function(&mut r, ring, 2, 2), order);
            let g = series(&random_function(&mut r, ring, 2, 2), order);
            let h = series(&random_function(&mut r, ring, 2, 2), order);
            assert_eq!(star(&fc, &one, &f).unwrap(), f);
            assert_eq!(star(&fc, &f, &one).unwrap(), f);
            let fg = star(&fc, &f, &g).unwrap();
            let comm = fg.sub(&star(&fc, &g, &f).unwrap());
            assert!(comm.coefficient(0).unwrap().is_zero());
            let bracket = poisson_bracket(f.coefficient(0).unwrap(), g.coefficient(0).unwrap()).scale(&Exact::i());
            assert_eq!(comm.coefficient(1).unwrap(), &bracket);
            let left = star(&fc, &fg, &h).unwrap();
            let right = star(&fc, &f, &star(&fc, &g, &h).unwrap()).unwrap();
            assert!(left.agrees_through(&right, order).unwrap());
        }
    }
}

#[test]
fn non_symplectic_connection_is_rejected() {
    let mut c = AffineConnection::<Exact>::flat(Ring::Euclidean, 2);
    c.set_symbol(0, 0, 1, BaseFunction::one(Ring::Euclidean, 2));
    let m = ChartManifold::euclidean(1);
    assert!(build_fedosov(m, &c, &FormSeries::zero(Ring::Euclidean, 2, 2, 0), 4).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn homotopy_identity(seed in any::<u64>(), degree in 0usize..=2, torus in any::<bool>()) {
        let ring = if torus { Ring::Torus } else { Ring::Euclidean };
        let mut r = rng(seed);
        let space = WeylSpace::<Exact>::standard(1, ring, 6);
        let mut s = WeylForm::zero(&space, degree);
        let index_sets: &[&[usize]] = match degree {
            0 => &[&[]],
            1 => &[&[0], &[1]],
            _ => &[&[0, 1]],
        };
        for idx in index_sets {
            let coeff = random_fiber(&mut r, &space, 5).scale_base(&random_function(&mut r, ring, 2, 1));
            s = s.add(&WeylForm::monomial(coeff, idx));
        }
        // δ⁻¹ vanishes on 0-forms.
        let lhs = if degree == 0 {
            delta_inv(&delta(&s))
        } else {
            delta(&delta_inv(&s)).add(&delta_inv(&delta(&s)))
        };
        prop_assert_eq!(lhs, s.sub(&project_00(&s)));
        prop_assert!(delta(&delta(&s)).is_zero());
        prop_assert!(delta_inv(&delta_inv(&s)).is_zero());
    }

    #[test]
    fn tau_is_linear_and_sigma_inverts_it(seed in any::<u64>()) {
        let fc = plane(4);
        let mut r = rng(seed);
        let f = random_poly(&mut r, 2, 3);
        let g = random_poly(&mut r, 2, 3);
        let c = Exact::from_ratio(r.gen_range(-4..=4), 3);
        let lhs = tau_function(&fc, &f.add(&g.scale(&c))).unwrap();
        let rhs = tau_function(&fc, &f).unwrap().add(&tau_function(&fc, &g).unwrap().scale(&c));
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(poly(sigma(&lhs).coefficient(0).unwrap()), poly(&f.add(&g.scale(&c))));
    }
}
