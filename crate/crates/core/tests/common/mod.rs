//! Builders, seeded generators and conversions to the oracle types.
#![allow(dead_code)]

use std::collections::BTreeMap;

use fedosov_core::fedosov::{build_fedosov, FedosovConnection};
use fedosov_core::geometry::{AffineConnection, ChartManifold, FormSeries, ScalarForm};
use fedosov_core::{BaseFunction, Exact, Ring, Scalar, WeylElement, WeylKey, WeylSpace};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::oracles::cx::{Cx, Poly};
use crate::oracles::normal_order::{self, Normal};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn cx(e: &Exact) -> Cx {
    Cx::new(e.re().clone(), e.im().clone())
}

pub fn exact(c: &Cx) -> Exact {
    Exact::new(c.re.clone(), c.im.clone())
}

pub fn poly(f: &BaseFunction<Exact>) -> Poly {
    f.terms().map(|(k, c)| (k.clone(), cx(c))).collect()
}

pub fn base(ring: Ring, dim: usize, p: &Poly) -> BaseFunction<Exact> {
    BaseFunction::from_terms(ring, dim, p.iter().map(|(k, c)| (k.clone(), exact(c))))
}

/// Sorted-order image of an element with constant coefficients.
pub fn normal(n: usize, a: &WeylElement<Exact>, memo: &mut BTreeMap<Vec<usize>, Normal>) -> Normal {
    let mut out = Normal::new();
    for (k, f) in a.terms() {
        assert!(f.is_constant(), "oracle needs constant coefficients");
        let part = normal_order::from_symmetric(n, &k.y, memo);
        let part = normal_order::shift_hbar(&part, k.hbar);
        out = normal_order::add(&out, &normal_order::scale(&part, &cx(&f.constant_term())));
    }
    out
}

pub fn small_rational<R: Rng>(rng: &mut R) -> Exact {
    Exact::from_ratio(rng.gen_range(-5..=5), rng.gen_range(1..=4))
}

pub fn small_gaussian<R: Rng>(rng: &mut R) -> Exact {
    Exact::from_gaussian((rng.gen_range(-5..=5), rng.gen_range(1..=4)), (rng.gen_range(-5..=5), rng.gen_range(1..=4)))
}

/// Random polynomial of total degree at most `deg`, about half the
/// monomials present.
pub fn random_poly<R: Rng>(rng: &mut R, dim: usize, deg: u32) -> BaseFunction<Exact> {
    let mut f = BaseFunction::zero(Ring::Euclidean, dim);
    for key in exponents(dim, deg) {
        if rng.gen_bool(0.5) {
            f.add_term(key, &small_gaussian(rng));
        }
    }
    f
}

/// Random trigonometric polynomial with frequencies in `[-max, max]`.
pub fn random_trig<R: Rng>(rng: &mut R, dim: usize, max: i32) -> BaseFunction<Exact> {
    let mut f = BaseFunction::zero(Ring::Torus, dim);
    let mut keys = vec![vec![]];
    for _ in 0..dim {
        keys = keys
            .into_iter()
            .flat_map(|k: Vec<i32>| {
                (-max..=max).map(move |m| {
                    let mut v = k.clone();
                    v.push(m);
                    v
                })
            })
            .collect();
    }
    for key in keys {
        if rng.gen_bool(0.4) {
            f.add_term(key, &small_gaussian(rng));
        }
    }
    f
}

pub fn random_function<R: Rng>(rng: &mut R, ring: Ring, dim: usize, deg: u32) -> BaseFunction<Exact> {
    match ring {
        Ring::Euclidean => random_poly(rng, dim, deg),
        Ring::Torus => random_trig(rng, dim, deg.min(2) as i32),
    }
}

pub fn exponents(dim: usize, deg: u32) -> Vec<Vec<i32>> {
    let mut out = vec![vec![]];
    for _ in 0..dim {
        let mut next = Vec::new();
        for e in &out {
            let used: i32 = e.iter().sum();
            for k in 0..=(deg as i32 - used) {
                let mut v: Vec<i32> = e.clone();
                v.push(k);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// Random fiber element with constant coefficients, all keys of degree at
/// most `max_degree`.
pub fn random_fiber<R: Rng>(rng: &mut R, space: &WeylSpace<Exact>, max_degree: u32) -> WeylElement<Exact> {
    let d = space.dim();
    let mut a = space.zero();
    for k in 0..=max_degree / 2 {
        for y in exponents(d, max_degree - 2 * k) {
            if rng.gen_bool(0.3) {
                let y: Vec<u32> = y.iter().map(|&e| e as u32).collect();
                let f = BaseFunction::constant(space.ring(), d, small_gaussian(rng));
                a.add_term(WeylKey::new(k, y), &f);
            }
        }
    }
    a
}

pub fn plane(trunc: u32) -> FedosovConnection<Exact> {
    let m = ChartManifold::euclidean(1);
    build_fedosov(m, &AffineConnection::flat(Ring::Euclidean, 2), &FormSeries::zero(Ring::Euclidean, 2, 2, trunc / 2), trunc)
        .unwrap()
}

/// `c · dx¹ ∧ dx²` on `𝕋²`.
pub fn constant_theta(c: Exact) -> ScalarForm<Exact> {
    let mut t = ScalarForm::zero(Ring::Torus, 2, 2);
    t.add_component(&[0, 1], &BaseFunction::constant(Ring::Torus, 2, c));
    t
}

pub fn torus_with(theta: ScalarForm<Exact>, trunc: u32) -> FedosovConnection<Exact> {
    let m = ChartManifold::torus(1);
    build_fedosov(m, &AffineConnection::flat(Ring::Torus, 2), &FormSeries::constant(theta, trunc / 2), trunc).unwrap()
}

pub fn torus(c: i64, trunc: u32) -> FedosovConnection<Exact> {
    torus_with(constant_theta(Exact::from_i64(c)), trunc)
}

/// Symplectic torsion-free connection on `ℝ²` from a totally symmetric
/// lowered table with random polynomial entries.
pub fn random_symplectic_connection<R: Rng>(rng: &mut R, deg: u32) -> AffineConnection<Exact> {
    let d = 2;
    let zero = BaseFunction::zero(Ring::Euclidean, d);
    let mut lowered = vec![vec![vec![zero; d]; d]; d];
    for a in 0..d {
        for b in a..d {
            for c in b..d {
                let f = random_real_poly(rng, d, deg);
                for (x, y, z) in [(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)] {
                    lowered[x][y][z] = f.clone();
                }
            }
        }
    }
    AffineConnection::from_lowered(Ring::Euclidean, &lowered).unwrap()
}

pub fn random_real_poly<R: Rng>(rng: &mut R, dim: usize, deg: u32) -> BaseFunction<Exact> {
    let mut f = BaseFunction::zero(Ring::Euclidean, dim);
    for key in exponents(dim, deg) {
        if rng.gen_bool(0.5) {
            f.add_term(key, &small_rational(rng));
        }
    }
    f
}
