//! Strong discrete Morse theory on finite simplicial complexes.
//!
//! The crate covers the combinatorics of complexes (stars, links, dominated
//! vertices, strong collapses and cores), Forman's discrete Morse functions,
//! the strong critical objects of a function (critical simplices together
//! with critical vertex/edge pairs left over by the strong collapse sets),
//! the simplicial Lusternik–Schnirelmann category via contiguity classes, and
//! builders and optimizers for Morse functions with few critical objects.

pub mod builder;
pub mod collapse;
pub mod complex;
pub mod contiguity;
pub mod dot;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod iso;
pub mod morse;
pub mod optimize;
pub mod simplex;
pub mod strong;
pub mod value;

pub use complex::{SimplexSet, SimplicialComplex};
pub use error::{Error, Result};
pub use morse::{validate_dmf, GradientField, GradientPair, MorseFunction};
pub use simplex::{Simplex, VertexId};
pub use value::{LevelValue, Rational};
