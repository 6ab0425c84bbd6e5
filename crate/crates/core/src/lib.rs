//! Exact computer algebra for contractads: ordered graphs, admissible trees,
//! free shuffle contractads, monomial orders, Gröbner bases, Koszul duality,
//! bar homology and Orlik-Solomon combinatorics.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod graph_core;
pub mod grobner;
pub mod homology;
pub mod linalg;
pub mod orders;
pub mod orlik_solomon;
pub mod par;
pub mod presets;
pub mod trees;

pub use error::{Error, Result};
