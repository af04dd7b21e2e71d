//! Finite polar spaces, their Grassmann graphs, and machine verification of
//! isometric-embedding and apartment properties at desk scale.
//!
//! The building blocks, bottom to top:
//!
//! - [`algebra`]: GF(q) arithmetic for q <= 9, canonical subspaces, forms;
//! - [`polar`]: polar spaces (classical, thin, residues) and their axioms;
//! - [`grassmann`]: the Grassmann graph on k-dimensional singular subspaces,
//!   the closed-form distance, and BFS cross-checks;
//! - [`cliques`]: lines, stars, tops, big stars, maximal-clique and triangle
//!   classification, regular pairs of triangles;
//! - [`apartments`]: frames, apartments, frame search and apartment detection;
//! - [`embeddings`]: vertex maps, induced embeddings, the decomposition
//!   cascade, distance-pruned embedding search, and the statement checkers;
//! - [`io`]: canonical serialization, the content-addressed cache, exports.

pub mod algebra;
pub mod apartments;
pub mod cliques;
pub mod embeddings;
pub mod error;
pub mod grassmann;
pub mod io;
pub mod polar;
pub mod util;

pub use error::{Error, Result};
