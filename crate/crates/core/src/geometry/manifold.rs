use serde::{Deserialize, Serialize};

use crate::base::{BaseFunction, Ring};
use crate::geometry::form::ScalarForm;
use crate::scalar::Scalar;
use crate::weyl::WeylSpace;

/// `ℝ²ⁿ` or `𝕋²ⁿ` with the constant symplectic form `ω = Σ dxⁱ ∧ dx^{n+i}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartManifold {
    pub kind: Ring,
    pub n: usize,
}

impl ChartManifold {
    pub fn euclidean(n: usize) -> Self {
        ChartManifold { kind: Ring::Euclidean, n }
    }

    pub fn torus(n: usize) -> Self {
        ChartManifold { kind: Ring::Torus, n }
    }

    pub fn dim(&self) -> usize {
        2 * self.n
    }

    /// Matrix of `ω`; equal to the bracket matrix of the fiber.
    pub fn omega_matrix<S: Scalar>(&self) -> Vec<Vec<S>> {
        crate::weyl::standard_j(self.n)
    }

    pub fn omega<S: Scalar>(&self) -> ScalarForm<S> {
        let mut w = ScalarForm::zero(self.kind, self.dim(), 2);
        for i in 0..self.n {
            w.add_component(&[i, self.n + i], &BaseFunction::one(self.kind, self.dim()));
        }
        w
    }

    pub fn weyl_space<S: Scalar>(&self, trunc: u32) -> WeylSpace<S> {
        WeylSpace::standard(self.n, self.kind, trunc)
    }
}
