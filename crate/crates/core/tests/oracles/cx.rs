use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Gaussian rational `re + im·i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cx {
    pub re: BigRational,
    pub im: BigRational,
}

pub fn q(p: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(d))
}

impl Cx {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Cx { re, im }
    }

    pub fn zero() -> Self {
        Cx::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Cx::new(BigRational::one(), BigRational::zero())
    }

    pub fn i() -> Self {
        Cx::new(BigRational::zero(), BigRational::one())
    }

    pub fn rat(p: i64, d: i64) -> Self {
        Cx::new(q(p, d), BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Cx::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Cx::new(&self.re - &o.re, &self.im - &o.im)
    }

    pub fn mul(&self, o: &Self) -> Self {
        Cx::new(&self.re * &o.re - &self.im * &o.im, &self.re * &o.im + &self.im * &o.re)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Cx::new(&self.re * r, &self.im * r)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Cx::one(), |acc, _| acc.mul(self))
    }
}

/// Sparse polynomial (exponent keys) or trigonometric polynomial
/// (frequency keys).
pub type Poly = BTreeMap<Vec<i32>, Cx>;

pub fn poly_add_term(p: &mut Poly, key: Vec<i32>, c: &Cx) {
    if c.is_zero() {
        return;
    }
    let slot = p.entry(key.clone()).or_insert_with(Cx::zero);
    *slot = slot.add(c);
    if slot.is_zero() {
        p.remove(&key);
    }
}

pub fn poly_add(a: &Poly, b: &Poly) -> Poly {
    let mut out = a.clone();
    for (k, c) in b {
        poly_add_term(&mut out, k.clone(), c);
    }
    out
}

pub fn poly_scale(a: &Poly, c: &Cx) -> Poly {
    let mut out = Poly::new();
    for (k, x) in a {
        poly_add_term(&mut out, k.clone(), &x.mul(c));
    }
    out
}

/// Product of polynomials (keys add); valid for both monomials and
/// Fourier modes.
pub fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ka, x) in a {
        for (kb, y) in b {
            let k: Vec<i32> = ka.iter().zip(kb).map(|(s, t)| s + t).collect();
            poly_add_term(&mut out, k, &x.mul(y));
        }
    }
    out
}

/// `∂/∂xⁱ` of a polynomial.
pub fn poly_partial(a: &Poly, i: usize) -> Poly {
    let mut out = Poly::new();
    for (k, c) in a {
        if k[i] > 0 {
            let mut k2 = k.clone();
            k2[i] -= 1;
            poly_add_term(&mut out, k2, &c.scale(&q(k[i] as i64, 1)));
        }
    }
    out
}

/// `∂/∂xⁱ` of a trigonometric polynomial: `e^{im·x} ↦ i mᵢ e^{im·x}`.
pub fn fourier_partial(a: &Poly, i: usize) -> Poly {
    let mut out = Poly::new();
    for (k, c) in a {
        poly_add_term(&mut out, k.clone(), &c.mul(&Cx::i()).scale(&q(k[i] as i64, 1)));
    }
    out
}
