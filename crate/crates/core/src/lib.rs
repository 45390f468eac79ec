pub mod complex;
pub mod cyclic;
pub mod dissection;
pub mod error;
pub mod graph;
pub mod hom;
pub mod homology;
pub mod linalg;
pub mod verify;

pub use error::{Error, Result};
