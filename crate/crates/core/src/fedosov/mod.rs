//! Fedosov connections on the Weyl bundle and the star products they define.

mod connection;
mod form;
mod ops;
mod quantize;

pub use connection::{build_fedosov, Certificates, FedosovConnection, WORK_MARGIN};
pub use form::WeylForm;
pub use ops::{delta, delta_inv, inner_connection, inner_curvature, nabla0, nabla0_unchecked, project_00};
pub use quantize::{poisson_bracket, probe_functions, sigma, star, star_inverse, tau, tau_at, tau_function};
