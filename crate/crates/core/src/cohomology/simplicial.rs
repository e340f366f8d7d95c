use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::cohomology::snf::smith_normal_form;
use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{Exact, Scalar};

/// Simplicial complex of dimension at most 2, simplices stored as sorted
/// vertex lists; orientation follows vertex order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialComplex {
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
    pub triangles: Vec<[usize; 3]>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coefficients {
    #[serde(rename = "Z")]
    Integers,
    #[serde(rename = "C")]
    Complex,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub degree: usize,
    /// Free rank over ℤ, or the dimension over ℂ.
    pub rank: usize,
    /// Invariant factors of the torsion part (ℤ only), as decimal strings.
    pub torsion: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyReport {
    pub coefficients: Coefficients,
    pub degrees: Vec<DegreeReport>,
}

impl CohomologyReport {
    pub fn rank(&self, degree: usize) -> usize {
        self.degrees[degree].rank
    }

    pub fn torsion(&self, degree: usize) -> &[String] {
        &self.degrees[degree].torsion
    }
}

impl SimplicialComplex {
    /// Validates sortedness, vertex range and presence of all faces.
    pub fn new(vertices: usize, mut edges: Vec<[usize; 2]>, mut triangles: Vec<[usize; 3]>) -> Result<Self> {
        for e in &edges {
            if e[0] >= e[1] || e[1] >= vertices {
                return Err(Error::Invalid(format!("edge {e:?} must be increasing with vertices < {vertices}")));
            }
        }
        for t in &triangles {
            if t[0] >= t[1] || t[1] >= t[2] || t[2] >= vertices {
                return Err(Error::Invalid(format!("triangle {t:?} must be increasing with vertices < {vertices}")));
            }
        }
        edges.sort();
        triangles.sort();
        if edges.windows(2).any(|w| w[0] == w[1]) || triangles.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Invalid("repeated simplex".into()));
        }
        let edge_set: BTreeSet<[usize; 2]> = edges.iter().copied().collect();
        for t in &triangles {
            for face in [[t[1], t[2]], [t[0], t[2]], [t[0], t[1]]] {
                if !edge_set.contains(&face) {
                    return Err(Error::Invalid(format!("face {face:?} of triangle {t:?} is missing")));
                }
            }
        }
        Ok(SimplicialComplex { vertices, edges, triangles })
    }

    /// Closure of a list of triangles (vertex lists in any order).
    pub fn from_triangles(vertices: usize, triangles: &[[usize; 3]]) -> Result<Self> {
        let mut tris = BTreeSet::new();
        let mut edges = BTreeSet::new();
        for t in triangles {
            let mut s = *t;
            s.sort_unstable();
            tris.insert(s);
            edges.insert([s[0], s[1]]);
            edges.insert([s[0], s[2]]);
            edges.insert([s[1], s[2]]);
        }
        Self::new(vertices, edges.into_iter().collect(), tris.into_iter().collect())
    }

    /// Boundary of the tetrahedron, a nerve of the sphere.
    pub fn tetrahedron_boundary() -> Self {
        Self::from_triangles(4, &[[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]).expect("valid complex")
    }

    /// The 7-vertex triangulation of the torus: triangles `{i, i+1, i+3}`
    /// and `{i, i+2, i+3}` modulo 7.
    pub fn torus_seven() -> Self {
        let tris: Vec<[usize; 3]> = (0..7)
            .flat_map(|i| [[i, (i + 1) % 7, (i + 3) % 7], [i, (i + 2) % 7, (i + 3) % 7]])
            .collect();
        Self::from_triangles(7, &tris).expect("valid complex")
    }

    pub fn simplex_counts(&self) -> [usize; 3] {
        [self.vertices, self.edges.len(), self.triangles.len()]
    }

    /// Coboundary `C^k → C^{k+1}` as an integer matrix (rows indexed by
    /// `(k+1)`-simplices).
    pub fn coboundary(&self, k: usize) -> Vec<Vec<i64>> {
        match k {
            0 => self
                .edges
                .iter()
                .map(|e| {
                    let mut row = vec![0; self.vertices];
                    row[e[1]] += 1;
                    row[e[0]] -= 1;
                    row
                })
                .collect(),
            1 => {
                let index: BTreeMap<[usize; 2], usize> = self.edges.iter().enumerate().map(|(i, e)| (*e, i)).collect();
                self.triangles
                    .iter()
                    .map(|t| {
                        let mut row = vec![0; self.edges.len()];
                        row[index[&[t[1], t[2]]]] += 1;
                        row[index[&[t[0], t[2]]]] -= 1;
                        row[index[&[t[0], t[1]]]] += 1;
                        row
                    })
                    .collect()
            }
            _ => Vec::new(),
        }
    }
}

/// Cohomology in degrees 0, 1, 2 from the coboundary matrices.
pub fn simplicial_cohomology(k: &SimplicialComplex, coeff: Coefficients) -> CohomologyReport {
    let counts = k.simplex_counts();
    let mut ranks = [0usize; 2];
    let mut torsion: [Vec<String>; 2] = [Vec::new(), Vec::new()];
    for deg in 0..2 {
        let m = k.coboundary(deg);
        match coeff {
            Coefficients::Integers => {
                let big: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
                let snf = smith_normal_form(&big, counts[deg]);
                ranks[deg] = snf.rank();
                torsion[deg] = snf.torsion().iter().map(ToString::to_string).collect();
            }
            Coefficients::Complex => {
                let q: Vec<Vec<Exact>> = m.iter().map(|r| r.iter().map(|&x| Exact::from_i64(x)).collect()).collect();
                ranks[deg] = if q.is_empty() { 0 } else { linalg::rank(&q) };
            }
        }
    }
    let degrees = (0..3)
        .map(|deg| {
            let out_rank = if deg < 2 { ranks[deg] } else { 0 };
            let in_rank = if deg > 0 { ranks[deg - 1] } else { 0 };
            DegreeReport {
                degree: deg,
                rank: counts[deg] - out_rank - in_rank,
                // Torsion of Hᵏ comes from the invariant factors of δ^{k−1}.
                torsion: if deg > 0 && coeff == Coefficients::Integers { torsion[deg - 1].clone() } else { Vec::new() },
            }
        })
        .collect();
    CohomologyReport { coefficients: coeff, degrees }
}
