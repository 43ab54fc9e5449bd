pub mod analysis;
pub mod cli;
pub mod count;
pub mod document;
pub mod error;
pub mod exterior;
pub mod field;
pub mod flats;
pub mod graph;
pub mod linalg;
pub mod rigidity;

pub use error::{Error, Result};
