use std::fmt;

use serde::Serialize;

use crate::base::{BaseFunction, Ring};
use crate::error::{Error, Result};
use crate::geometry::action::{GroupAction, GroupKind};
use crate::geometry::symplecto::AffineSymplecto;
use crate::scalar::Scalar;

/// Christoffel symbols `Γᵏᵢⱼ`, stored as `symbols[k][i][j]`.
///
/// The same container holds differences of connections, which are tensors.
#[derive(Clone, PartialEq)]
pub struct AffineConnection<S> {
    ring: Ring,
    symbols: Vec<Vec<Vec<BaseFunction<S>>>>,
}

impl<S: Scalar> fmt::Debug for AffineConnection<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.dim();
        let mut any = false;
        for k in 0..d {
            for i in 0..d {
                for j in 0..d {
                    let g = &self.symbols[k][i][j];
                    if !g.is_zero() {
                        writeln!(f, "Γ^{}_{}{} = {g}", k + 1, i + 1, j + 1)?;
                        any = true;
                    }
                }
            }
        }
        if !any {
            f.write_str("Γ = 0")?;
        }
        Ok(())
    }
}

/// Outcome of [`AffineConnection::check`]; indices are 1-based `(k, i, j)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectionReport {
    pub torsion_free: bool,
    pub symplectic: bool,
    pub torsion_violation: Option<[usize; 3]>,
    pub symplectic_violation: Option<[usize; 3]>,
}

impl ConnectionReport {
    pub fn ok(&self) -> bool {
        self.torsion_free && self.symplectic
    }
}

impl<S: Scalar> AffineConnection<S> {
    pub fn flat(ring: Ring, dim: usize) -> Self {
        let z = BaseFunction::zero(ring, dim);
        AffineConnection { ring, symbols: vec![vec![vec![z; dim]; dim]; dim] }
    }

    pub fn from_symbols(ring: Ring, symbols: Vec<Vec<Vec<BaseFunction<S>>>>) -> Result<Self> {
        let d = symbols.len();
        if d == 0 || !d.is_multiple_of(2) {
            return Err(Error::Invalid("Christoffel table must have even size".into()));
        }
        for row in &symbols {
            if row.len() != d || row.iter().any(|r| r.len() != d) {
                return Err(Error::Invalid("Christoffel table must be d×d×d".into()));
            }
            for f in row.iter().flatten() {
                if f.ring() != ring || f.dim() != d {
                    return Err(Error::Mismatch("Christoffel entry over a different base".into()));
                }
            }
        }
        Ok(AffineConnection { ring, symbols })
    }

    /// Connection whose lowered symbols `Γ_{kij} = ω_{kl} Γˡᵢⱼ` are the given
    /// table; a totally symmetric table yields a symplectic torsion-free
    /// connection.
    pub fn from_lowered(ring: Ring, lowered: &[Vec<Vec<BaseFunction<S>>>]) -> Result<Self> {
        let d = lowered.len();
        let n = d / 2;
        let mut out = Self::flat(ring, d);
        // Γˡ = Σ_k (ω⁻¹)^{lk} Γ_k with ω⁻¹ = Jᵀ.
        for l in 0..d {
            let (k, sign) = if l < n { (l + n, -1) } else { (l - n, 1) };
            for i in 0..d {
                for j in 0..d {
                    out.symbols[l][i][j] = lowered[k][i][j].scale(&S::from_i64(sign));
                }
            }
        }
        Self::from_symbols(ring, out.symbols)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn dim(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbol(&self, k: usize, i: usize, j: usize) -> &BaseFunction<S> {
        &self.symbols[k][i][j]
    }

    pub fn symbols(&self) -> &[Vec<Vec<BaseFunction<S>>>] {
        &self.symbols
    }

    pub fn set_symbol(&mut self, k: usize, i: usize, j: usize, f: BaseFunction<S>) {
        self.symbols[k][i][j] = f;
    }

    pub fn is_flat(&self) -> bool {
        self.symbols.iter().flatten().flatten().all(BaseFunction::is_zero)
    }

    pub fn is_negligible(&self) -> bool {
        self.symbols.iter().flatten().flatten().all(BaseFunction::is_negligible)
    }

    /// `Γ_{kij} = Σ_l ω_{kl} Γˡᵢⱼ` with `ω = J`.
    pub fn lowered(&self, k: usize, i: usize, j: usize) -> BaseFunction<S> {
        let n = self.dim() / 2;
        if k < n {
            self.symbols[k + n][i][j].clone()
        } else {
            self.symbols[k - n][i][j].neg()
        }
    }

    pub fn check(&self) -> ConnectionReport {
        let d = self.dim();
        let mut torsion = None;
        let mut sympl = None;
        for k in 0..d {
            for i in 0..d {
                for j in 0..d {
                    if torsion.is_none() && !self.symbols[k][i][j].sub(&self.symbols[k][j][i]).is_negligible() {
                        torsion = Some([k + 1, i + 1, j + 1]);
                    }
                    // ∇ω = 0 ⇔ Γ_{kij} = Γ_{jik} for ω constant.
                    if sympl.is_none() && !self.lowered(k, i, j).sub(&self.lowered(j, i, k)).is_negligible() {
                        sympl = Some([k + 1, i + 1, j + 1]);
                    }
                }
            }
        }
        ConnectionReport {
            torsion_free: torsion.is_none(),
            symplectic: sympl.is_none(),
            torsion_violation: torsion,
            symplectic_violation: sympl,
        }
    }

    pub fn require_symplectic(&self) -> Result<()> {
        let r = self.check();
        if let Some(v) = r.torsion_violation {
            return Err(Error::Precondition(format!("connection has torsion at Γ^{}_{}{}", v[0], v[1], v[2])));
        }
        if let Some(v) = r.symplectic_violation {
            return Err(Error::Precondition(format!(
                "connection does not preserve ω at lowered index ({}, {}, {})",
                v[0], v[1], v[2]
            )));
        }
        Ok(())
    }

    fn zip(&self, other: &Self, op: impl Fn(&BaseFunction<S>, &BaseFunction<S>) -> BaseFunction<S>) -> Self {
        assert!(self.ring == other.ring && self.dim() == other.dim(), "connections over different bases");
        let d = self.dim();
        let symbols = (0..d)
            .map(|k| (0..d).map(|i| (0..d).map(|j| op(&self.symbols[k][i][j], &other.symbols[k][i][j])).collect()).collect())
            .collect();
        AffineConnection { ring: self.ring, symbols }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, BaseFunction::add)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, BaseFunction::sub)
    }

    pub fn scale(&self, c: &S) -> Self {
        self.zip(self, |a, _| a.scale(c))
    }

    /// `(γ*Γ)ᵏᵢⱼ(x) = (A⁻¹)ᵏ_l Γˡ_{mn}(γx) Aᵐᵢ Aⁿⱼ`; exact for affine maps, and
    /// equally valid for connection differences.
    pub fn pullback(&self, g: &AffineSymplecto<S>) -> Self {
        let d = self.dim();
        let a = g.linear_part();
        let ai = g.linear_inverse();
        let pulled: Vec<Vec<Vec<BaseFunction<S>>>> = self
            .symbols
            .iter()
            .map(|m| m.iter().map(|r| r.iter().map(|f| g.pullback_base(f)).collect()).collect())
            .collect();
        let mut out = Self::flat(self.ring, d);
        for k in 0..d {
            for i in 0..d {
                for j in 0..d {
                    let mut acc = BaseFunction::zero(self.ring, d);
                    for l in 0..d {
                        if ai[k][l].is_zero() {
                            continue;
                        }
                        for m in 0..d {
                            if a[m][i].is_zero() {
                                continue;
                            }
                            for n in 0..d {
                                if a[n][j].is_zero() || pulled[l][m][n].is_zero() {
                                    continue;
                                }
                                acc.add_scaled(&pulled[l][m][n], &ai[k][l].mul(&a[m][i]).mul(&a[n][j]));
                            }
                        }
                    }
                    out.symbols[k][i][j] = acc;
                }
            }
        }
        out
    }

    pub fn is_invariant_under(&self, g: &AffineSymplecto<S>) -> bool {
        self.pullback(g).sub(self).is_negligible()
    }
}

/// `(1/|G|) Σ_g g*Γ` over a finite group.
pub fn average_connection<S: Scalar>(act: &GroupAction<S>, c: &AffineConnection<S>) -> Result<AffineConnection<S>> {
    let elements = act.elements().ok_or_else(|| {
        Error::Unsupported("averaging needs a finite group; this action is free abelian".into())
    })?;
    let mut acc = AffineConnection::flat(c.ring(), c.dim());
    for g in elements {
        acc = acc.add(&c.pullback(g));
    }
    Ok(acc.scale(&S::from_ratio(1, elements.len() as i64)))
}

/// `D(γ) = γ*Γ − Γ` for every generator (and every element of a finite
/// group), with a coboundary witness when one exists.
#[derive(Clone)]
pub struct Obstruction<S> {
    /// Per generator, in generator order.
    pub per_generator: Vec<AffineConnection<S>>,
    /// Per element for finite groups, in element order.
    pub per_element: Option<Vec<AffineConnection<S>>>,
    /// `T` with `D(γ) = T − γ*T`; for finite groups always present
    /// (`T = average(Γ) − Γ`).
    pub coboundary_witness: Option<AffineConnection<S>>,
}

impl<S: Scalar> fmt::Debug for Obstruction<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Obstruction")
            .field("per_generator", &self.per_generator)
            .field("coboundary_witness", &self.coboundary_witness)
            .finish()
    }
}

impl<S: Scalar> Obstruction<S> {
    pub fn is_zero(&self) -> bool {
        self.per_generator.iter().all(AffineConnection::is_negligible)
    }
}

pub fn connection_obstruction_cocycle<S: Scalar>(act: &GroupAction<S>, c: &AffineConnection<S>) -> Result<Obstruction<S>> {
    let per_generator: Vec<_> = act.generators().iter().map(|g| c.pullback(g).sub(c)).collect();
    let (per_element, witness) = match act.kind() {
        GroupKind::Finite { .. } => {
            let elements = act.elements().expect("finite");
            let per: Vec<_> = elements.iter().map(|g| c.pullback(g).sub(c)).collect();
            let t = average_connection(act, c)?.sub(c);
            for (g, d) in elements.iter().zip(&per) {
                if !t.sub(&t.pullback(g)).sub(d).is_negligible() {
                    return Err(Error::Consistency("averaging witness does not bound the obstruction".into()));
                }
            }
            (Some(per), Some(t))
        }
        GroupKind::FreeAbelian { .. } => (None, None),
    };
    Ok(Obstruction { per_generator, per_element, coboundary_witness: witness })
}
