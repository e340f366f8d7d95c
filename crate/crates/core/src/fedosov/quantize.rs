use crate::base::{BaseFunction, BaseSeries, Ring};
use crate::error::{Error, Result};
use crate::fedosov::connection::FedosovConnection;
use crate::fedosov::form::WeylForm;
use crate::geometry::ChartManifold;
use crate::fedosov::ops::{delta_inv, nabla0_unchecked};
use crate::scalar::Scalar;
use crate::weyl::{WeylElement, WeylKey};

/// The flat section `τ(f)` with `σ(τ(f)) = f`, solved degree by degree from
/// `τ = f + δ⁻¹(∇₀τ + (1/iħ)[r, τ])`. Stamped with truncation `D`.
pub fn tau<S: Scalar>(fc: &FedosovConnection<S>, f: &BaseSeries<S>) -> Result<WeylElement<S>> {
    tau_at(fc, f, fc.trunc())
}

/// `τ(f)` through degree `trunc ≤ D + 1`.
pub fn tau_at<S: Scalar>(fc: &FedosovConnection<S>, f: &BaseSeries<S>, trunc: u32) -> Result<WeylElement<S>> {
    if f.ring() != fc.manifold().kind || f.dim() != fc.manifold().dim() {
        return Err(Error::Mismatch("function series over a different base".into()));
    }
    if trunc > fc.trunc() + 1 {
        return Err(Error::Precondition(format!("τ is available through degree {}", fc.trunc() + 1)));
    }
    if 2 * f.order() + 1 < trunc {
        return Err(Error::Precondition(format!(
            "input reliable through ħ^{} cannot determine τ through degree {trunc}",
            f.order()
        )));
    }
    let space = fc.space_at(trunc);
    let d = space.dim();
    let mut parts: Vec<WeylElement<S>> = Vec::with_capacity(trunc as usize + 1);
    for j in 0..=trunc {
        let mut part = space.zero();
        if j % 2 == 0 {
            if let Ok(fk) = f.coefficient(j / 2) {
                part.add_term(WeylKey::new(j / 2, vec![0; d]), fk);
            }
        }
        if j > 0 {
            // δτ_j = (∇₀τ_{j−1} + Σ (1/iħ)[r_e, τ_{j+1−e}])
            let prev = WeylForm::from_element(parts[j as usize - 1].clone());
            let mut rhs = nabla0_unchecked(fc.connection(), &prev);
            for e in 3..=(j + 1) {
                let Some(re) = fc.r_part(e) else { continue };
                let t = &parts[(j + 1 - e) as usize];
                if t.is_zero() {
                    continue;
                }
                let tf = WeylForm::from_element(t.clone());
                rhs = rhs.add(&re.restamp(trunc + 2).bracket_over_ihbar_capped(&tf, trunc).restamp(trunc));
            }
            let lifted = delta_inv(&rhs.grading_project(j - 1)).component(0).grading_project(j);
            part = part.add(&lifted);
        }
        parts.push(part);
    }
    let mut out = space.zero();
    for p in &parts {
        out = out.add(p);
    }
    Ok(out)
}

/// `τ` of a single function (no ħ corrections).
pub fn tau_function<S: Scalar>(fc: &FedosovConnection<S>, f: &BaseFunction<S>) -> Result<WeylElement<S>> {
    tau(fc, &BaseSeries::constant(f.clone(), fc.reliable_order()))
}

/// The `y`-degree-0 part, per ħ power, reliable through `⌊D/2⌋`.
pub fn sigma<S: Scalar>(s: &WeylElement<S>) -> BaseSeries<S> {
    let order = s.trunc() / 2;
    BaseSeries::new(s.ring(), s.dim(), s.central_series(), order)
}

/// `f ⋆ g = σ(τ(f) ∘ τ(g))`, reliable through `ħ^{⌊D/2⌋}`.
pub fn star<S: Scalar>(fc: &FedosovConnection<S>, f: &BaseSeries<S>, g: &BaseSeries<S>) -> Result<BaseSeries<S>> {
    let tf = tau(fc, f)?;
    let tg = tau(fc, g)?;
    Ok(sigma(&tf.mul(&tg)))
}

/// `{f, g} = Λ^{ij} ∂ᵢf ∂ⱼg` with `Λ = J`.
pub fn poisson_bracket<S: Scalar>(f: &BaseFunction<S>, g: &BaseFunction<S>) -> BaseFunction<S> {
    let d = f.dim();
    let n = d / 2;
    let mut out = BaseFunction::zero(f.ring(), d);
    for i in 0..n {
        out = out.add(&f.partial(i).mul(&g.partial(n + i)));
        out = out.sub(&f.partial(n + i).mul(&g.partial(i)));
    }
    out
}

/// Small deterministic set of functions used to probe automorphisms:
/// coordinates and quadratic monomials on `ℝ²ⁿ`, first Fourier modes on `𝕋²ⁿ`.
pub fn probe_functions<S: Scalar>(m: ChartManifold) -> Vec<BaseFunction<S>> {
    let d = m.dim();
    let mut out = Vec::new();
    match m.kind {
        Ring::Euclidean => {
            for i in 0..d {
                out.push(BaseFunction::coordinate(d, i));
            }
            for i in 0..d {
                out.push(BaseFunction::coordinate(d, i).mul(&BaseFunction::coordinate(d, (i + 1) % d)));
            }
        }
        Ring::Torus => {
            for i in 0..d {
                let mut key = vec![0; d];
                key[i] = 1;
                out.push(BaseFunction::term(Ring::Torus, d, key.clone(), S::one()));
                key[(i + 1) % d] = -1;
                out.push(BaseFunction::term(Ring::Torus, d, key, S::one()));
            }
        }
    }
    out
}

/// Inverse for the star product, `σ(τ(f)⁻¹)`; the ħ⁰ term of `f` must be a
/// unit of the base ring.
pub fn star_inverse<S: Scalar>(fc: &FedosovConnection<S>, f: &BaseSeries<S>) -> Result<BaseSeries<S>> {
    Ok(sigma(&tau(fc, f)?.inverse()?))
}
