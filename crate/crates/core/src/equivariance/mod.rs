//! The Fedosov equivariance group, the 𝔻-map, lifts of symplectomorphisms
//! and extensions of group actions to the quantized algebra.

mod extension;
mod gnabla;
mod lift;
mod witness;

pub use extension::{check_cocycle, twist_action, CocycleReport, ExtensionAssignment, GnablaCocycle, ResidualEntry};
pub use gnabla::{
    central_witness, dmap, gnabla_membership, CentralExponent, GnablaElement, Membership, NoncentralTerm, Rejection,
};
pub use lift::{apply_lift, morphism_residual, self_lift, solve_lift, transport};
pub use witness::harmonic_witness;
