//! Simplicial cohomology, periods and `T¹`, and the group-cohomology
//! invariants used to separate extensions of group actions.

mod h2;
mod invariants;
mod periods;
mod simplicial;
mod snf;

pub use h2::{connecting_map_h2, ActingGroup, CentralExtension, FiniteGroup, H2Class};
pub use invariants::{
    find_fixed_point, fixed_point_invariant, twisted_conjugate_element, twisted_conjugate_series, z_h1_invariants,
    ZH1Report,
};
pub use periods::{period_map, t1_class, t1_class_of_periods, t1_report, Periods, T1Class, T1Report};
pub use simplicial::{simplicial_cohomology, CohomologyReport, Coefficients, DegreeReport, SimplicialComplex};
pub use snf::{smith_normal_form, SmithForm};
