//! Coefficient fields.
//!
//! Two variants implement [`Scalar`]: [`Exact`] (Gaussian rationals, i.e.
//! pairs of arbitrary-precision rationals) and [`Approx`] (double precision
//! complex numbers compared with an absolute tolerance). Every container in
//! the crate is generic over exactly one of them, so mixing variants is a
//! type error.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Which scalar variant a container is built over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalarKind {
    Exact,
    Approx,
}

/// Field operations shared by both coefficient variants.
///
/// Arithmetic is spelled out as methods rather than operator traits so that
/// generic code can work on references without higher-ranked bounds.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    const KIND: ScalarKind;

    fn zero() -> Self;
    fn one() -> Self;
    /// The imaginary unit.
    fn i() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    /// Real and imaginary parts given as rationals `num/den`.
    fn from_gaussian(re: (i64, i64), im: (i64, i64)) -> Self {
        Self::from_ratio(re.0, re.1).add(&Self::from_ratio(im.0, im.1).mul(&Self::i()))
    }

    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; `None` for (numerically) zero values.
    fn inv(&self) -> Option<Self>;
    fn conj(&self) -> Self;

    /// Exactly zero. Used to decide storage: zero coefficients are never kept.
    fn is_zero(&self) -> bool;
    /// Zero up to the variant's tolerance (exact zero for [`Exact`]).
    fn is_negligible(&self) -> bool;
    fn approx_eq(&self, other: &Self) -> bool {
        self.sub(other).is_negligible()
    }

    fn to_c64(&self) -> (f64, f64);
    /// Build from a double-precision complex number. Exact scalars convert
    /// the binary floating point value exactly.
    fn from_c64(re: f64, im: f64) -> Option<Self>;

    /// `Some(k)` when the value is the real integer `k`.
    fn as_integer(&self) -> Option<i64>;
    /// True when the value lies in `iℤ` (up to tolerance for [`Approx`]).
    fn is_imaginary_integer(&self) -> bool;
    /// Reduce the imaginary part into `[0, 1)`, i.e. the class modulo `iℤ`.
    fn reduce_mod_imaginary_integers(&self) -> Self;
    /// A real number suitable for ordering and reporting magnitudes.
    fn magnitude(&self) -> f64 {
        let (re, im) = self.to_c64();
        re.hypot(im)
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Integer power, negative exponents allowed for invertible values.
    fn powi(&self, e: i64) -> Option<Self> {
        if e >= 0 {
            Some(self.pow(e as u32))
        } else {
            self.inv().map(|v| v.pow((-e) as u32))
        }
    }

    /// Textual form used in JSON documents.
    fn to_text(&self) -> String {
        self.to_string()
    }
    fn parse_text(s: &str) -> Result<Self>;
}

// ---------------------------------------------------------------------------
// Exact

/// Gaussian rational `re + i·im`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Exact {
    re: BigRational,
    im: BigRational,
}

impl Exact {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Exact { re, im }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    fn ratio(num: i64, den: i64) -> BigRational {
        assert!(den != 0, "zero denominator");
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
}

impl fmt::Debug for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{} i", self.im),
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "{}-{} i", self.re, -self.im.clone())
                } else {
                    write!(f, "{}+{} i", self.re, self.im)
                }
            }
        }
    }
}

impl Scalar for Exact {
    const KIND: ScalarKind = ScalarKind::Exact;

    fn zero() -> Self {
        Exact { re: BigRational::zero(), im: BigRational::zero() }
    }
    fn one() -> Self {
        Exact { re: BigRational::one(), im: BigRational::zero() }
    }
    fn i() -> Self {
        Exact { re: BigRational::zero(), im: BigRational::one() }
    }
    fn from_i64(v: i64) -> Self {
        Exact { re: BigRational::from_integer(BigInt::from(v)), im: BigRational::zero() }
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Exact { re: Self::ratio(num, den), im: BigRational::zero() }
    }

    fn add(&self, o: &Self) -> Self {
        Exact { re: &self.re + &o.re, im: &self.im + &o.im }
    }
    fn sub(&self, o: &Self) -> Self {
        Exact { re: &self.re - &o.re, im: &self.im - &o.im }
    }
    fn mul(&self, o: &Self) -> Self {
        if self.im.is_zero() && o.im.is_zero() {
            return Exact { re: &self.re * &o.re, im: BigRational::zero() };
        }
        Exact {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
    fn neg(&self) -> Self {
        Exact { re: -self.re.clone(), im: -self.im.clone() }
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Some(Exact { re: &self.re / &norm, im: -(&self.im / &norm) })
    }
    fn conj(&self) -> Self {
        Exact { re: self.re.clone(), im: -self.im.clone() }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn to_c64(&self) -> (f64, f64) {
        (self.re.to_f64().unwrap_or(f64::NAN), self.im.to_f64().unwrap_or(f64::NAN))
    }
    fn from_c64(re: f64, im: f64) -> Option<Self> {
        Some(Exact { re: BigRational::from_float(re)?, im: BigRational::from_float(im)? })
    }

    fn as_integer(&self) -> Option<i64> {
        if self.im.is_zero() && self.re.is_integer() {
            self.re.to_integer().to_i64()
        } else {
            None
        }
    }
    fn is_imaginary_integer(&self) -> bool {
        self.re.is_zero() && self.im.is_integer()
    }
    fn reduce_mod_imaginary_integers(&self) -> Self {
        Exact { re: self.re.clone(), im: &self.im - self.im.floor() }
    }

    fn parse_text(s: &str) -> Result<Self> {
        parse_complex(s, |t| parse_rational(t).map(|r| Exact { re: r, im: BigRational::zero() }))
    }
}

fn parse_rational(t: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("not a rational number: {t:?}"));
    if let Some((n, d)) = t.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(BigRational::new(n, d))
    } else if let Some((ip, fp)) = t.split_once('.') {
        // Decimal literal, converted exactly.
        let neg = ip.trim_start().starts_with('-');
        let ip = ip.trim().trim_start_matches(['-', '+']);
        let digits = format!("{}{}", if ip.is_empty() { "0" } else { ip }, fp);
        let n = BigInt::from_str(&digits).map_err(|_| bad())?;
        let d = num_traits::pow(BigInt::from(10), fp.len());
        let r = BigRational::new(n, d);
        Ok(if neg { -r } else { r })
    } else {
        Ok(BigRational::from_integer(BigInt::from_str(t.trim()).map_err(|_| bad())?))
    }
}

/// Split `a+b i`, `a-b i`, `b i`, `a` and hand the pieces to `real`.
fn parse_complex<S: Scalar>(s: &str, real: impl Fn(&str) -> Result<S>) -> Result<S> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty scalar".into()));
    }
    let Some(body) = compact.strip_suffix('i') else {
        return real(&compact);
    };
    // Find the sign separating real and imaginary parts (not a leading sign,
    // not an exponent sign).
    let bytes = body.as_bytes();
    let mut split = None;
    for idx in (1..bytes.len()).rev() {
        if (bytes[idx] == b'+' || bytes[idx] == b'-') && !matches!(bytes[idx - 1], b'e' | b'E') {
            split = Some(idx);
            break;
        }
    }
    let imag_of = |t: &str| -> Result<S> {
        let t = match t {
            "" | "+" => "1",
            "-" => "-1",
            other => other,
        };
        Ok(real(t)?.mul(&S::i()))
    };
    match split {
        Some(idx) => {
            let re = real(&body[..idx])?;
            let im_txt = &body[idx..];
            let im_txt = im_txt.strip_prefix('+').unwrap_or(im_txt);
            Ok(re.add(&imag_of(im_txt)?))
        }
        None => imag_of(body),
    }
}

// ---------------------------------------------------------------------------
// Approx

/// Absolute tolerance used by [`Approx`] comparisons.
pub const APPROX_EPS: f64 = 1e-9;

/// Double precision complex number with tolerance-based equality.
#[derive(Clone, Copy)]
pub struct Approx {
    pub re: f64,
    pub im: f64,
}

impl Approx {
    pub fn new(re: f64, im: f64) -> Self {
        Approx { re, im }
    }

    /// `e^{iθ}`.
    pub fn unit(theta: f64) -> Self {
        Approx { re: theta.cos(), im: theta.sin() }
    }
}

impl PartialEq for Approx {
    fn eq(&self, other: &Self) -> bool {
        self.approx_eq(other)
    }
}

impl fmt::Debug for Approx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Approx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im == 0.0 {
            write!(f, "{:?}", self.re)
        } else if self.im < 0.0 {
            write!(f, "{:?}-{:?} i", self.re, -self.im)
        } else {
            write!(f, "{:?}+{:?} i", self.re, self.im)
        }
    }
}

impl Scalar for Approx {
    const KIND: ScalarKind = ScalarKind::Approx;

    fn zero() -> Self {
        Approx { re: 0.0, im: 0.0 }
    }
    fn one() -> Self {
        Approx { re: 1.0, im: 0.0 }
    }
    fn i() -> Self {
        Approx { re: 0.0, im: 1.0 }
    }
    fn from_i64(v: i64) -> Self {
        Approx { re: v as f64, im: 0.0 }
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Approx { re: num as f64 / den as f64, im: 0.0 }
    }

    fn add(&self, o: &Self) -> Self {
        Approx { re: self.re + o.re, im: self.im + o.im }
    }
    fn sub(&self, o: &Self) -> Self {
        Approx { re: self.re - o.re, im: self.im - o.im }
    }
    fn mul(&self, o: &Self) -> Self {
        Approx { re: self.re * o.re - self.im * o.im, im: self.re * o.im + self.im * o.re }
    }
    fn neg(&self) -> Self {
        Approx { re: -self.re, im: -self.im }
    }
    fn inv(&self) -> Option<Self> {
        let norm = self.re * self.re + self.im * self.im;
        if self.is_negligible() || norm == 0.0 {
            return None;
        }
        Some(Approx { re: self.re / norm, im: -self.im / norm })
    }
    fn conj(&self) -> Self {
        Approx { re: self.re, im: -self.im }
    }

    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn is_negligible(&self) -> bool {
        self.re.hypot(self.im) <= APPROX_EPS
    }

    fn to_c64(&self) -> (f64, f64) {
        (self.re, self.im)
    }
    fn from_c64(re: f64, im: f64) -> Option<Self> {
        (re.is_finite() && im.is_finite()).then_some(Approx { re, im })
    }

    fn as_integer(&self) -> Option<i64> {
        let k = self.re.round();
        (self.im.abs() <= APPROX_EPS && (self.re - k).abs() <= APPROX_EPS).then_some(k as i64)
    }
    fn is_imaginary_integer(&self) -> bool {
        self.re.abs() <= APPROX_EPS && (self.im - self.im.round()).abs() <= APPROX_EPS
    }
    fn reduce_mod_imaginary_integers(&self) -> Self {
        let mut frac = self.im - self.im.floor();
        if !(APPROX_EPS..=1.0 - APPROX_EPS).contains(&frac) {
            frac = 0.0;
        }
        Approx { re: self.re, im: frac }
    }

    fn parse_text(s: &str) -> Result<Self> {
        parse_complex(s, |t| {
            if t.contains('/') {
                let r = parse_rational(t)?;
                return Ok(Approx { re: r.to_f64().unwrap_or(f64::NAN), im: 0.0 });
            }
            t.parse::<f64>()
                .map(|re| Approx { re, im: 0.0 })
                .map_err(|_| Error::Parse(format!("not a number: {t:?}")))
        })
    }
}
