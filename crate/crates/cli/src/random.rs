//! Seeded test data. Every draw goes through one ChaCha stream so that a
//! scenario and its seed determine the report.

use fedosov_core::base::{BaseFunction, Ring};
use fedosov_core::geometry::ChartManifold;
use fedosov_core::Scalar;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rational<S: Scalar, R: Rng>(rng: &mut R) -> S {
    let p = rng.gen_range(-4i64..=4);
    let q = rng.gen_range(1i64..=4);
    S::from_ratio(p, q)
}

pub fn nonzero_rational<S: Scalar, R: Rng>(rng: &mut R) -> S {
    loop {
        let c: S = rational(rng);
        if !c.is_zero() {
            return c;
        }
    }
}

pub fn gaussian<S: Scalar, R: Rng>(rng: &mut R) -> S {
    let re = (rng.gen_range(-4i64..=4), rng.gen_range(1i64..=4));
    let im = (rng.gen_range(-4i64..=4), rng.gen_range(1i64..=4));
    S::from_gaussian(re, im)
}

/// Monomial exponents of total degree at most `deg` in `dim` variables.
pub fn exponents(dim: usize, deg: u32) -> Vec<Vec<i32>> {
    let mut out = vec![vec![]];
    for _ in 0..dim {
        let mut next = Vec::new();
        for e in &out {
            let used: i32 = e.iter().sum();
            for k in 0..=(deg as i32 - used) {
                let mut v = e.clone();
                v.push(k);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// Frequencies in `[-max, max]^dim`.
pub fn frequencies(dim: usize, max: u32) -> Vec<Vec<i32>> {
    let m = max as i32;
    let mut out = vec![vec![]];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|e: Vec<i32>| {
                (-m..=m).map(move |k| {
                    let mut v = e.clone();
                    v.push(k);
                    v
                })
            })
            .collect();
    }
    out
}

/// Sparse random function: each admissible key is kept with probability
/// one half and given a random rational coefficient.
pub fn function<S: Scalar>(rng: &mut ChaCha8Rng, m: ChartManifold, degree: u32) -> BaseFunction<S> {
    let keys = match m.kind {
        Ring::Euclidean => exponents(m.dim(), degree),
        Ring::Torus => frequencies(m.dim(), degree),
    };
    let mut f = BaseFunction::zero(m.kind, m.dim());
    for k in keys {
        if rng.gen_bool(0.5) {
            let c: S = rational(rng);
            f.add_term(k, &c);
        }
    }
    f
}
