//! Steenrod modules attached to `MT(d,r)`: the Thom-twisted ideal, the
//! frame-space quotient, the submodule `C_θ`, rational dimension data and
//! the periodicity check.

mod builders;
mod module;
mod periodicity;
mod rational;

pub use builders::{ctheta_module, mt_module, reduced_bundle_module, restriction_map, v_module, MtError, MtModule};
pub use module::{ModuleError, ModuleMap, TruncatedModule};
pub use periodicity::{periodicity_check, PeriodicityFailure, PeriodicityReport};
pub use rational::{rational_dimensions, DimensionTable, RationalPart};
