//! Two-component spinor wave equations with scale-invariant nonlinearities on uniform grids.
//!
//! The crate evaluates nonlinearities that are homogeneous of degree zero in
//! the two-component field, regularises their nodal singularities with the
//! leading relativistic small component, integrates the resulting equations
//! in time and computes first-order energy shifts on linear eigenstates.

pub mod error;
pub mod evolution;
pub mod field;
pub mod harness;
pub mod nonlinearity;
pub mod spectra;

pub use error::{Error, Result};
pub use field::{Boundary, GridSpec, PhysicalParams, Spinor, SpinorField};
pub use nonlinearity::{NonlinearityKind, RegularizationMode, TimeInput};
