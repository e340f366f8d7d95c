use serde::Serialize;

use crate::base::Ring;
use crate::cohomology::simplicial::{simplicial_cohomology, Coefficients, SimplicialComplex};
use crate::equivariance::GnablaElement;
use crate::error::{Error, Result};
use crate::geometry::FormSeries;
use crate::scalar::Scalar;

/// Periods of a closed 1-form series over the coordinate cycles of the
/// torus, stored divided by `2π` (so the integral lattice is `iℤ`).
#[derive(Clone, Debug, PartialEq)]
pub struct Periods<S> {
    /// `per_order[k][i]`: ħᵏ-coefficient of the period over cycle `i`, over `2π`.
    pub per_order: Vec<Vec<S>>,
}

impl<S: Scalar> Periods<S> {
    /// ħ⁰ periods all lie in `2πiℤ`.
    pub fn is_integral(&self) -> bool {
        self.per_order.first().is_none_or(|p| p.iter().all(S::is_imaginary_integer))
    }

    pub fn is_zero(&self) -> bool {
        self.per_order.iter().flatten().all(S::is_negligible)
    }

    pub fn add(&self, other: &Self) -> Self {
        let per_order = self
            .per_order
            .iter()
            .zip(&other.per_order)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.add(y)).collect())
            .collect();
        Periods { per_order }
    }
}

/// For trigonometric-polynomial coefficients the period over cycle `i` is
/// `2π` times the constant Fourier coefficient of the `dxⁱ` component.
pub fn period_map<S: Scalar>(beta: &FormSeries<S>) -> Result<Periods<S>> {
    if beta.ring() != Ring::Torus {
        return Err(Error::Unsupported("periods are defined on the torus only".into()));
    }
    if beta.degree() != 1 {
        return Err(Error::Mismatch(format!("periods need a 1-form, got degree {}", beta.degree())));
    }
    beta.check_closed()?;
    let per_order = beta
        .terms()
        .iter()
        .map(|t| (0..t.dim()).map(|i| t.component(&[i]).constant_term()).collect())
        .collect();
    Ok(Periods { per_order })
}

/// Class in `H¹(M,ℂ)/H¹(M,ℤ) ⊕ ħH¹(M)[[ħ]]`: ħ⁰ periods reduced modulo
/// `2πiℤ`, higher orders verbatim (all divided by `2π`).
#[derive(Clone, Debug, PartialEq)]
pub struct T1Class<S> {
    pub harmonic: Vec<S>,
    pub tail: Vec<Vec<S>>,
}

impl<S: Scalar> T1Class<S> {
    pub fn is_zero(&self) -> bool {
        self.harmonic.iter().chain(self.tail.iter().flatten()).all(S::is_negligible)
    }

    /// Equality with tolerance for approximate scalars.
    pub fn same(&self, other: &Self) -> bool {
        let close = |a: &[S], b: &[S]| a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.approx_eq(y));
        close(&self.harmonic, &other.harmonic)
            && self.tail.len() == other.tail.len()
            && self.tail.iter().zip(&other.tail).all(|(a, b)| close(a, b))
    }
}

pub fn t1_class_of_periods<S: Scalar>(p: &Periods<S>) -> T1Class<S> {
    let harmonic = p.per_order[0].iter().map(S::reduce_mod_imaginary_integers).collect();
    T1Class { harmonic, tail: p.per_order[1..].to_vec() }
}

/// `T¹` class of `𝔻g`.
pub fn t1_class<S: Scalar>(g: &GnablaElement<S>) -> Result<T1Class<S>> {
    Ok(t1_class_of_periods(&period_map(g.beta())?))
}

/// Shape of `T¹_ħ` computed from a triangulation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct T1Report {
    /// `dim_ℂ H¹(M, ℂ)`.
    pub complex_rank: usize,
    /// Rank of the lattice `H¹(M, ℤ)` (free part).
    pub lattice_rank: usize,
    /// `dim H¹` of the ħᵏ tail for `k = 1..=order`.
    pub tail_ranks: Vec<usize>,
}

pub fn t1_report(k: &SimplicialComplex, order: u32) -> T1Report {
    let c = simplicial_cohomology(k, Coefficients::Complex).rank(1);
    let z = simplicial_cohomology(k, Coefficients::Integers).rank(1);
    T1Report { complex_rank: c, lattice_rank: z, tail_ranks: vec![c; order as usize] }
}
