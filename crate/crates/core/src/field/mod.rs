//! Grids, two-component spinor fields and the differential machinery shared
//! by every other module.

mod gauge;
mod grid;
mod ops;
pub mod pauli;
mod params;
pub mod spectral;
mod spinor;
mod spinor_field;
mod sum;

pub use gauge::GaugePotential;
pub use grid::{Boundary, DerivativeScheme, GridSpec};
pub use ops::{
    gradient, inner, laplacian, scalar_derivative, scalar_laplacian, small_component, spin_density,
    COVARIANT_COUPLING,
};
pub(crate) use ops::small_component_from_gradient;
pub use params::PhysicalParams;
pub use spinor::{Component, Spinor};
pub use spinor_field::SpinorField;
pub use sum::CompensatedSum;
