mod common;
mod oracles;

use std::collections::BTreeMap;

use common::{normal, random_fiber, rng, small_gaussian};
use fedosov_core::weyl::{weyl_commutator_over_ihbar, weyl_exp, weyl_log};
use fedosov_core::{Exact, Ring, Scalar, WeylKey, WeylSpace};
use oracles::normal_order;
use proptest::prelude::*;

fn space(n: usize, trunc: u32) -> WeylSpace<Exact> {
    WeylSpace::standard(n, Ring::Euclidean, trunc)
}

#[test]
fn product_matches_tensor_algebra_rewriting() {
    for (n, trunc, seed) in [(1, 6, 1), (1, 8, 2), (2, 4, 3)] {
        let sp = space(n, trunc);
        let mut r = rng(seed);
        let mut memo = BTreeMap::new();
        for _ in 0..6 {
            let a = random_fiber(&mut r, &sp, trunc.min(4));
            let b = random_fiber(&mut r, &sp, trunc.min(4));
            let lhs = normal(n, &a.mul(&b), &mut memo);
            let na = normal(n, &a, &mut memo);
            let nb = normal(n, &b, &mut memo);
            let rhs = normal_order::product(n, &na, &nb, trunc, &mut memo);
            assert_eq!(lhs, rhs, "n={n} D={trunc}");
        }
    }
}

#[test]
fn generators_satisfy_canonical_relations() {
    let sp = space(2, 4);
    for i in 0..4 {
        for j in 0..4 {
            let c = sp.generator(i).mul(&sp.generator(j)).sub(&sp.generator(j).mul(&sp.generator(i)));
            let expected = match (i, j) {
                (0, 2) | (1, 3) => sp.hbar().scale(&Exact::i()),
                (2, 0) | (3, 1) => sp.hbar().scale(&Exact::i()).neg(),
                _ => sp.zero(),
            };
            assert_eq!(c, expected, "[y{}, y{}]", i + 1, j + 1);
        }
    }
}

#[test]
fn truncation_drops_high_degree() {
    let sp = space(1, 3);
    let y = sp.generator(0);
    let cube = y.mul(&y).mul(&y);
    assert_eq!(cube.coefficient(0, &[3, 0]).constant_term(), Exact::one());
    assert!(cube.mul(&y).is_zero());
}

#[test]
fn exp_and_log_are_inverse() {
    let sp = space(1, 6);
    let mut r = rng(9);
    for _ in 0..5 {
        let mut a = random_fiber(&mut r, &sp, 4);
        a = a.filter(|k: &WeylKey| k.degree() > 0);
        let e = weyl_exp(&a).unwrap();
        assert_eq!(weyl_log(&e).unwrap(), a);
    }
}

#[test]
fn commutator_over_ihbar_of_generators_is_bracket() {
    let sp = space(1, 4);
    let c = weyl_commutator_over_ihbar(&sp.generator(0), &sp.generator(1)).unwrap();
    assert_eq!(c, sp.one().restamp(c.trunc()));
}

fn arb_element(trunc: u32) -> impl Strategy<Value = Vec<(u32, u32, u32, i64, i64)>> {
    prop::collection::vec((0..=trunc / 2, 0..=trunc, 0..=trunc, -4i64..=4, 1i64..=3), 0..6)
}

fn build(sp: &WeylSpace<Exact>, raw: &[(u32, u32, u32, i64, i64)]) -> fedosov_core::WeylElement<Exact> {
    let mut a = sp.zero();
    for &(k, p, q, num, den) in raw {
        if 2 * k + p + q <= sp.trunc() {
            let f = fedosov_core::BaseFunction::constant(Ring::Euclidean, 2, Exact::from_ratio(num, den));
            a.add_term(WeylKey::new(k, vec![p, q]), &f);
        }
    }
    a
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn product_is_associative(a in arb_element(6), b in arb_element(6), c in arb_element(6)) {
        let sp = space(1, 6);
        let (a, b, c) = (build(&sp, &a), build(&sp, &b), build(&sp, &c));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn product_respects_grading(a in arb_element(6), b in arb_element(6)) {
        let sp = space(1, 6);
        let (a, b) = (build(&sp, &a), build(&sp, &b));
        for da in 0..=6 {
            for db in 0..=(6 - da) {
                let p = a.grading_project(da).mul(&b.grading_project(db));
                prop_assert!(p.terms().all(|(k, _)| k.degree() == da + db));
            }
        }
    }

    #[test]
    fn inverse_is_two_sided(a in arb_element(6), c in 1i64..=5) {
        let sp = space(1, 6);
        let u = build(&sp, &a).filter(|k| k.degree() > 0).add(&sp.constant(Exact::from_i64(c)));
        let v = u.inverse().unwrap();
        prop_assert_eq!(u.mul(&v), sp.one());
        prop_assert_eq!(v.mul(&u), sp.one());
    }
}

#[test]
fn gaussian_scalars_round_trip_through_text() {
    let mut r = rng(4);
    for _ in 0..50 {
        let c = small_gaussian(&mut r);
        assert_eq!(Exact::parse_text(&c.to_text()).unwrap(), c);
    }
}
