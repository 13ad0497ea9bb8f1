//! Hodge numbers of smooth complete intersections computed from the Hodge
//! numbers of linear sections, by degenerating each hypersurface into a
//! union of two of lower degree and reading off the limit mixed Hodge
//! structure.

pub mod algebra;
pub mod cli;
pub mod diagnostics;
pub mod engine;
pub mod error;
pub mod io;
pub mod oracles;
pub mod variety;
pub mod verify;

pub use algebra::{BigradedDims, Dim, HodgeDiamond, WeightGradedMHS};
pub use engine::{Engine, PrimConvention, SplitPlan};
pub use error::{HodgeError, Result};
pub use variety::{AmbientSpec, CiSpec, CustomAmbient, MemoKey, MemoStore};
