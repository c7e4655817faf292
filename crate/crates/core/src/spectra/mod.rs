//! Analytic eigenstates, first-order shifts and their behaviour at nodes
//! and under grid refinement.

mod enhancement;
mod nodes;
mod shift;
mod states;
mod study;

pub use enhancement::{enhancement_profile, EnhancementProfile};
pub use nodes::{node_scan, Node};
pub use shift::{shift_for_state, shift_functional, ShiftReport};
pub use states::{hermite_function, make_eigenstate, AnalyticState, Family};
pub use study::{convergence_study, fit_slope, Classification, ConvergenceReport, CONVERGENT_SLOPE, DIVERGENT_SLOPE};
