//! Chart-level geometry on `ℝ²ⁿ` and `𝕋²ⁿ`.

mod action;
mod connection;
mod form;
mod manifold;
mod symplecto;

pub use action::{GroupAction, GroupKind};
pub use connection::{average_connection, connection_obstruction_cocycle, AffineConnection, ConnectionReport, Obstruction};
pub use form::{mask_indices, wedge_sign, FormSeries, ScalarForm};
pub(crate) use form::indices_to_mask as form_mask;
pub use manifold::ChartManifold;
pub use symplecto::{AffineSymplecto, Shift};
