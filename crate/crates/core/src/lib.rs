//! Morse decompositions of combinatorial dynamical systems on simplicial
//! complexes, and the persistence of those decompositions.

pub mod complex;
pub mod dynamics;
pub mod error;
pub mod homology;
pub mod mvf;
pub mod nerve;
pub mod pipeline;
pub mod sampled_map;
mod util;

pub use complex::{Geometry, Point, SimplexId, SimplexSet, SimplicialComplex};
pub use dynamics::{DynamicalSystem, MorseDecomposition};
pub use error::{Error, Result};
