//! Test-only reference implementations. None of these share code with the
//! library: they work on their own rational-complex coefficient type and
//! recompute every quantity from its defining formula.
#![allow(dead_code)]

pub mod cx;
pub mod enumeration;
pub mod finite_difference;
pub mod moyal;
pub mod normal_order;
pub mod taylor;
