//! Brute-force answers for small cohomology questions.

use std::collections::BTreeSet;

/// `dim H¹` over `𝔽₂` of a 2-complex: `log₂(#cocycles / #coboundaries)`
/// by enumerating every edge and vertex cochain.
pub fn h1_dim_f2(vertices: usize, edges: &[[usize; 2]], triangles: &[[usize; 3]]) -> u32 {
    let edge_index = |a: usize, b: usize| {
        let (a, b) = (a.min(b), a.max(b));
        edges.iter().position(|e| *e == [a, b]).expect("edge of triangle")
    };
    let tri_masks: Vec<u64> = triangles
        .iter()
        .map(|t| (1u64 << edge_index(t[0], t[1])) | (1 << edge_index(t[1], t[2])) | (1 << edge_index(t[0], t[2])))
        .collect();
    let mut cocycles: u64 = 0;
    for c in 0u64..(1 << edges.len()) {
        if tri_masks.iter().all(|m| (c & m).count_ones() % 2 == 0) {
            cocycles += 1;
        }
    }
    let mut boundaries = BTreeSet::new();
    for v in 0u64..(1 << vertices) {
        let mut c = 0u64;
        for (i, e) in edges.iter().enumerate() {
            if ((v >> e[0]) ^ (v >> e[1])) & 1 == 1 {
                c |= 1 << i;
            }
        }
        boundaries.insert(c);
    }
    (cocycles / boundaries.len() as u64).trailing_zeros()
}

/// Whether some choice of preimages `E_γ ∈ π⁻¹(η_γ)` satisfies
/// `E_γ · γ(E_μ) = E_{μγ}` for all `γ, μ` (so the class vanishes).
///
/// `e_mul` is the table of `E`, `gamma_mul[μ][γ] = μγ`, `act[γ]` the
/// permutation of `E` by which `γ` acts.
pub fn liftable(
    e_mul: &[Vec<usize>],
    projection: &[usize],
    gamma_mul: &[Vec<usize>],
    act: &[Vec<usize>],
    eta: &[usize],
) -> bool {
    let order = gamma_mul.len();
    let fibres: Vec<Vec<usize>> =
        eta.iter().map(|&g| (0..e_mul.len()).filter(|&x| projection[x] == g).collect()).collect();
    let mut choice = vec![0usize; order];
    loop {
        let lift: Vec<usize> = (0..order).map(|g| fibres[g][choice[g]]).collect();
        let ok = (0..order).all(|ga| {
            (0..order).all(|mu| e_mul[lift[ga]][act[ga][lift[mu]]] == lift[gamma_mul[mu][ga]])
        });
        if ok {
            return true;
        }
        let mut i = 0;
        loop {
            if i == order {
                return false;
            }
            choice[i] += 1;
            if choice[i] < fibres[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}
