//! Exact weighted simplicial spanning tree counts and simplicial effective
//! resistance, with closed forms for shifted and color-shifted complexes.

pub mod cli;
pub mod complex;
pub mod corpus;
pub mod error;
pub mod families;
pub mod linalg;
pub mod network;
pub mod trees;
pub mod verify;

pub use complex::{Chain, Facet, FacetId, Simplex, SimplicialComplex, Vertex};
pub use error::{Error, Result};
pub use linalg::Rational;
