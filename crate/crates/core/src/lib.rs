//! Cambrian semilattices of Coxeter groups, built from sortable elements,
//! together with their EL-labeling by sorting-word positions, Möbius values
//! and the homotopy types of their intervals. All arithmetic is exact.

pub mod cambrian;
pub mod coxeter;
pub mod field;
pub mod generators;
pub mod io;
pub mod shelling;
pub mod sortable;

pub use cambrian::{CambrianError, CambrianPoset, ClosedInterval};
pub use coxeter::{CoxeterError, CoxeterMatrix, CoxeterSystem, GroupElement};
pub use generators::GeneratorSet;
pub use shelling::{IntervalReport, ShellingError};
pub use sortable::{CoxeterWord, SortableError, SortingWord};
