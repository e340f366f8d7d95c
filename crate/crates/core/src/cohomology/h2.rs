use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cohomology::snf::smith_normal_form;
use crate::error::{Error, Result};

/// Finite group by multiplication table; element 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGroup {
    pub table: Vec<Vec<usize>>,
}

impl FiniteGroup {
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::Invalid("group table must be square with entries below the order".into()));
        }
        for i in 0..n {
            if table[0][i] != i || table[i][0] != i {
                return Err(Error::Invalid("element 0 must be the identity".into()));
            }
            if !(0..n).any(|j| table[i][j] == 0) {
                return Err(Error::Invalid(format!("element {i} has no inverse")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::Invalid(format!("table is not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        Ok(FiniteGroup { table })
    }

    /// `ℤ/m` with element `k` the residue `k`.
    pub fn cyclic(m: usize) -> Self {
        FiniteGroup { table: (0..m).map(|i| (0..m).map(|j| (i + j) % m).collect()).collect() }
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        (0..self.order()).find(|&b| self.table[a][b] == 0).expect("validated")
    }
}

/// How the acting group `Γ` is given: a finite table with one automorphism
/// of `E` (a permutation) per element, or `ℤ` with the automorphism of the
/// generator. Composition follows `(μγ)(x) = γ(μ(x))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ActingGroup {
    Finite { group: FiniteGroup, action: Vec<Vec<usize>> },
    Integers { generator: Vec<usize> },
}

/// Central extension `1 → A → E → G → 1` of finite groups with compatible
/// `Γ`-actions; `A = ker π` must be cyclic, generated by `kernel_generator`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralExtension {
    pub extension: FiniteGroup,
    pub quotient: FiniteGroup,
    pub projection: Vec<usize>,
    pub kernel_generator: usize,
    pub acting: ActingGroup,
}

/// A 2-cocycle `a(γ, μ) = E_γ γ(E_μ) E_{μγ}⁻¹` valued in `A ≅ ℤ/m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct H2Class {
    pub modulus: usize,
    /// `cocycle[γ][μ]` as an exponent of the kernel generator; empty for `Γ = ℤ`.
    pub cocycle: Vec<Vec<usize>>,
    pub trivial: bool,
    /// `b` with `a(γ, μ) = b_γ + γ(b_μ) − b_{μγ}` when the class is trivial.
    pub coboundary_witness: Option<Vec<usize>>,
    pub cocycle_identity_holds: bool,
    /// Re-lifting with a different section gives the same class.
    pub relift_consistent: bool,
}

struct Prepared<'a> {
    ext: &'a CentralExtension,
    /// Exponent of each kernel element, `None` outside `A`.
    log: Vec<Option<usize>>,
    modulus: usize,
}

impl<'a> Prepared<'a> {
    fn new(ext: &'a CentralExtension) -> Result<Self> {
        let e = &ext.extension;
        let g = &ext.quotient;
        if ext.projection.len() != e.order() || ext.projection.iter().any(|&x| x >= g.order()) {
            return Err(Error::Invalid("projection must map every element of E into G".into()));
        }
        for a in 0..e.order() {
            for b in 0..e.order() {
                if ext.projection[e.mul(a, b)] != g.mul(ext.projection[a], ext.projection[b]) {
                    return Err(Error::Invalid(format!("projection is not a homomorphism at ({a}, {b})")));
                }
            }
        }
        if (0..g.order()).any(|q| !ext.projection.contains(&q)) {
            return Err(Error::Invalid("projection is not surjective".into()));
        }
        let kernel: Vec<usize> = (0..e.order()).filter(|&x| ext.projection[x] == 0).collect();
        for &a in &kernel {
            for x in 0..e.order() {
                if e.mul(a, x) != e.mul(x, a) {
                    return Err(Error::Precondition(format!("kernel element {a} is not central (fails against {x})")));
                }
            }
        }
        let mut log = vec![None; e.order()];
        let mut x = 0;
        let mut k = 0;
        loop {
            log[x] = Some(k);
            x = e.mul(x, ext.kernel_generator);
            k += 1;
            if x == 0 {
                break;
            }
            if k > e.order() {
                return Err(Error::Invalid("kernel generator has no finite order".into()));
            }
        }
        if ext.projection[ext.kernel_generator] != 0 {
            return Err(Error::Invalid("kernel generator must map to the identity".into()));
        }
        if k != kernel.len() {
            return Err(Error::Unsupported(format!(
                "the kernel has order {} but the generator has order {k}; only cyclic kernels are handled",
                kernel.len()
            )));
        }
        let check_aut = |perm: &[usize]| -> Result<()> {
            if perm.len() != e.order() {
                return Err(Error::Invalid("automorphism must permute all of E".into()));
            }
            for a in 0..e.order() {
                for b in 0..e.order() {
                    if perm[e.mul(a, b)] != e.mul(perm[a], perm[b]) {
                        return Err(Error::Invalid("action is not by automorphisms of E".into()));
                    }
                }
            }
            Ok(())
        };
        match &ext.acting {
            ActingGroup::Finite { group, action } => {
                if action.len() != group.order() {
                    return Err(Error::Invalid("one automorphism per element of Γ is required".into()));
                }
                for perm in action {
                    check_aut(perm)?;
                }
                for mu in 0..group.order() {
                    for ga in 0..group.order() {
                        let composed: Vec<usize> = (0..e.order()).map(|x| action[ga][action[mu][x]]).collect();
                        if composed != action[group.mul(mu, ga)] {
                            return Err(Error::Invalid(format!("action violates (μγ)(x) = γ(μ(x)) at ({mu}, {ga})")));
                        }
                    }
                }
            }
            ActingGroup::Integers { generator } => check_aut(generator)?,
        }
        Ok(Prepared { ext, log, modulus: k })
    }

    fn act_e(&self, gamma: usize, x: usize) -> usize {
        match &self.ext.acting {
            ActingGroup::Finite { action, .. } => action[gamma][x],
            ActingGroup::Integers { generator } => generator[x],
        }
    }

    fn act_g(&self, gamma: usize, q: usize) -> usize {
        let x = self.ext.projection.iter().position(|&p| p == q).expect("surjective");
        self.ext.projection[self.act_e(gamma, x)]
    }

    /// Multiplier `k_γ` with `γ(a₀) = a₀^{k_γ}`.
    fn kernel_multiplier(&self, gamma: usize) -> usize {
        self.log[self.act_e(gamma, self.ext.kernel_generator)].expect("A is Γ-stable")
    }

    fn cocycle_for(&self, group: &FiniteGroup, lift: &[usize]) -> Result<Vec<Vec<usize>>> {
        let e = &self.ext.extension;
        let n = group.order();
        let mut a = vec![vec![0; n]; n];
        for ga in 0..n {
            for mu in 0..n {
                let prod = e.mul(e.mul(lift[ga], self.act_e(ga, lift[mu])), e.inv(lift[group.mul(mu, ga)]));
                a[ga][mu] = self.log[prod].ok_or_else(|| {
                    Error::Precondition(format!("η is not a cocycle: the defect at ({ga}, {mu}) leaves the kernel"))
                })?;
            }
        }
        Ok(a)
    }

    /// Solve `a(γ, μ) ≡ b_γ + k_γ b_μ − b_{μγ} (mod m)`.
    fn coboundary(&self, group: &FiniteGroup, a: &[Vec<usize>]) -> Option<Vec<usize>> {
        let n = group.order();
        let m = self.modulus;
        let rows = n * n;
        let cols = n + rows;
        let mut mat = vec![vec![BigInt::zero(); cols]; rows];
        let mut rhs = vec![BigInt::zero(); rows];
        for ga in 0..n {
            for mu in 0..n {
                let r = ga * n + mu;
                mat[r][ga] += 1;
                mat[r][mu] += BigInt::from(self.kernel_multiplier(ga));
                mat[r][group.mul(mu, ga)] -= 1;
                mat[r][n + r] = BigInt::from(m);
                rhs[r] = BigInt::from(a[ga][mu]);
            }
        }
        let snf = smith_normal_form(&mat, cols);
        let sol = snf.solve(&rhs)?;
        let mb = BigInt::from(m);
        Some(sol[..n].iter().map(|x| x.mod_floor(&mb).to_usize().expect("residue")).collect())
    }
}

/// The class in `H²(Γ, A)` of the obstruction to lifting a 1-cocycle
/// `η: Γ → G` (with `η_{μγ} = η_γ · γ(η_μ)`) to `E`. For `Γ = ℤ`, `eta` has
/// a single entry and the class is always trivial.
pub fn connecting_map_h2(ext: &CentralExtension, eta: &[usize]) -> Result<H2Class> {
    let prep = Prepared::new(ext)?;
    let g = &ext.quotient;
    match &ext.acting {
        ActingGroup::Integers { .. } => {
            if eta.len() != 1 || eta[0] >= g.order() {
                return Err(Error::Invalid("a cocycle on ℤ is given by one element of G".into()));
            }
            Ok(H2Class {
                modulus: prep.modulus,
                cocycle: Vec::new(),
                trivial: true,
                coboundary_witness: Some(vec![0]),
                cocycle_identity_holds: true,
                relift_consistent: true,
            })
        }
        ActingGroup::Finite { group, .. } => {
            let n = group.order();
            if eta.len() != n || eta.iter().any(|&x| x >= g.order()) {
                return Err(Error::Invalid("η needs one element of G per element of Γ".into()));
            }
            for mu in 0..n {
                for ga in 0..n {
                    if eta[group.mul(mu, ga)] != g.mul(eta[ga], prep.act_g(ga, eta[mu])) {
                        return Err(Error::Precondition(format!("η fails the cocycle condition at ({mu}, {ga})")));
                    }
                }
            }
            let preimages = |q: usize| -> Vec<usize> { (0..ext.extension.order()).filter(|&x| ext.projection[x] == q).collect() };
            let lift: Vec<usize> = eta.iter().map(|&q| preimages(q)[0]).collect();
            let relift: Vec<usize> = eta.iter().map(|&q| *preimages(q).last().expect("surjective")).collect();
            let a = prep.cocycle_for(group, &lift)?;
            let a2 = prep.cocycle_for(group, &relift)?;
            let m = prep.modulus;
            let mut identity = true;
            for ga in 0..n {
                for mu in 0..n {
                    for nu in 0..n {
                        let lhs = a[ga][mu] + a[group.mul(mu, ga)][nu];
                        let rhs = prep.kernel_multiplier(ga) * a[mu][nu] + a[ga][group.mul(nu, mu)];
                        if (lhs + m * m - rhs % m) % m != 0 {
                            identity = false;
                        }
                    }
                }
            }
            let witness = prep.coboundary(group, &a);
            let diff: Vec<Vec<usize>> =
                (0..n).map(|i| (0..n).map(|j| (a2[i][j] + m - a[i][j]) % m).collect()).collect();
            let relift_consistent = prep.coboundary(group, &diff).is_some();
            Ok(H2Class {
                modulus: m,
                cocycle: a,
                trivial: witness.is_some(),
                coboundary_witness: witness,
                cocycle_identity_holds: identity,
                relift_consistent,
            })
        }
    }
}
