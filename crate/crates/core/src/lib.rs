//! Chern-Moser normal forms of real hypersurfaces in complex space.

pub mod chains;
pub mod error;
pub mod hyperquadric;
pub mod levi;
pub mod normal_forms;
pub mod normalize;
pub mod series;

pub use error::{Error, Result};
