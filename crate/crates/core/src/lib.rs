//! Apollonian depth, tangency spinors, mirror symmetry groups and packing
//! generation, with exact rational arithmetic where the inputs allow it.

pub mod depth;
pub mod error;
pub mod numerics;
pub mod packing;
pub mod render;
pub mod spinor;
pub mod symmetry;
pub mod verify;

pub use error::{Error, Result};
